#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace rfde {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Which half of [-1, 1] a mesh covers: Plus is [0, 1], Minus is [-1, 0].
enum class MeshSide { Plus, Minus };

/// Uniform partition of [0, 1] or [-1, 0] into L intervals of width h = 1/L.
class OuterMesh {
public:
    OuterMesh(int intervals, MeshSide side);

    MeshSide side() const { return side_; }
    int intervals() const { return intervals_; }
    double step() const { return step_; }
    double left() const { return side_ == MeshSide::Plus ? 0.0 : -1.0; }
    double right() const { return side_ == MeshSide::Plus ? 1.0 : 0.0; }
    double node(int i) const { return left() + i * step_; }
    std::vector<double> nodes() const;

    struct Location {
        int interval;  // 0-based
        double local;  // position in [0, 1] within the interval
    };

    /// Interval containing t, taken from the right at interior outer nodes
    /// (the last interval owns the right endpoint). Throws DomainError
    /// outside [left, right].
    Location locate(double t) const;

private:
    int intervals_;
    MeshSide side_;
    double step_;
};

OuterMesh outer_mesh(int intervals, MeshSide side);

enum class AbscissaeFamily { GaussLegendre, Chebyshev, Custom };

std::string to_string(AbscissaeFamily family);
AbscissaeFamily abscissae_family_from_string(const std::string& name);

/// Interior collocation abscissae 0 < c_1 < ... < c_m < 1 on the reference
/// interval, together with the extra node c_0 = 0 used by the piecewise
/// Lagrange representation.
class InnerAbscissae {
public:
    InnerAbscissae(std::vector<double> values, AbscissaeFamily family);

    int degree() const { return static_cast<int>(values_.size()); }
    AbscissaeFamily family() const { return family_; }
    std::span<const double> values() const { return values_; }
    /// {0, c_1, ..., c_m}
    std::span<const double> reference_nodes() const { return reference_; }
    std::span<const double> barycentric_weights() const { return weights_; }

private:
    std::vector<double> values_;
    std::vector<double> reference_;
    std::vector<double> weights_;
    AbscissaeFamily family_;
};

/// Gauss-Legendre or Chebyshev abscissae of size m; Custom is rejected here
/// (construct InnerAbscissae directly).
InnerAbscissae inner_abscissae(int m, AbscissaeFamily family = AbscissaeFamily::GaussLegendre);

/// Lagrange basis l_j(t), j = 0..m, for the given pairwise distinct nodes.
std::vector<double> lagrange_weights(std::span<const double> nodes, double t);

/// Derivatives l_j'(t) of the Lagrange basis.
std::vector<double> lagrange_derivative_weights(std::span<const double> nodes, double t);

struct LebesgueConstants {
    double value;       // max_t sum_j |l_j(t)|
    double derivative;  // max_t sum_j |l_j'(t)|
};

/// Lebesgue constants on [0, 1] estimated on a uniform grid of `samples`
/// points (endpoints included). The estimate is a lower bound of the true
/// maximum that is exact whenever the maximizer lies on the grid, which is
/// the case for the endpoints where the maximum is usually attained.
LebesgueConstants lebesgue_constants(std::span<const double> nodes, int samples = 10001);

/// Node values (v_{1,0}, v_{1,1}, ..., v_{L,m}) in R^d, node-major.
class NodeVector {
public:
    NodeVector() = default;
    NodeVector(std::size_t nodes, int dim, double fill = 0.0);
    NodeVector(std::size_t nodes, int dim, std::vector<double> data);

    std::size_t nodes() const { return nodes_; }
    int dim() const { return dim_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(std::size_t node, int k) { return data_[node * dim_ + k]; }
    double operator()(std::size_t node, int k) const { return data_[node * dim_ + k]; }

    std::span<double> node(std::size_t i) { return {data_.data() + i * dim_, static_cast<std::size_t>(dim_)}; }
    std::span<const double> node(std::size_t i) const {
        return {data_.data() + i * dim_, static_cast<std::size_t>(dim_)};
    }

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

    bool operator==(const NodeVector&) const = default;

private:
    std::size_t nodes_ = 0;
    int dim_ = 0;
    std::vector<double> data_;
};

/// Positions of the 1 + L*m nodes: the left endpoint, then t_{i,j} = t_{i-1} + c_j h.
std::vector<double> node_points(const OuterMesh& mesh, const InnerAbscissae& abscissae);

using VectorFunction = std::function<Vector(double)>;

/// Sampling at the mesh nodes (restriction).
NodeVector restrict_to_nodes(const VectorFunction& f, const OuterMesh& mesh, const InnerAbscissae& abscissae);

/// Continuous piecewise polynomial of degree m interpolating node values at
/// the left endpoint and at every inner node (prolongation). On interval i the
/// value at the left outer node is inherited from interval i-1 by continuity.
class PiecewisePolynomial {
public:
    PiecewisePolynomial(OuterMesh mesh, InnerAbscissae abscissae, NodeVector values);

    const OuterMesh& mesh() const { return mesh_; }
    const InnerAbscissae& abscissae() const { return abscissae_; }
    const NodeVector& node_values() const { return values_; }
    int dim() const { return values_.dim(); }
    int degree() const { return abscissae_.degree(); }

    Vector value(double t) const;
    /// First derivative; from the right at interior outer nodes.
    Vector derivative(double t) const;

    /// Values at the left end of every interval plus the right endpoint
    /// (L + 1 entries), as fixed by continuity.
    NodeVector outer_values() const;

    /// Local node values of interval i (0-based): entry (j, k) for j = 0..m.
    double local_value(int interval, int j, int k) const {
        return local_[(static_cast<std::size_t>(interval) * (degree() + 1) + j) * dim() + k];
    }

private:
    OuterMesh mesh_;
    InnerAbscissae abscissae_;
    NodeVector values_;
    std::vector<double> local_;
};

PiecewisePolynomial prolong(NodeVector values, const OuterMesh& mesh, const InnerAbscissae& abscissae);

/// q(t) = integral of p from the mesh's left endpoint to t, computed exactly:
/// accumulated interval integrals plus per-interval integrated Lagrange weights.
class PiecewiseIntegral {
public:
    explicit PiecewiseIntegral(PiecewisePolynomial integrand);

    const PiecewisePolynomial& integrand() const { return integrand_; }
    int dim() const { return integrand_.dim(); }

    Vector value(double t) const;
    Vector derivative(double t) const { return integrand_.value(t); }

    /// q at the right endpoint (the full integral).
    Vector total() const;

private:
    PiecewisePolynomial integrand_;
    std::vector<double> cumulative_;  // (L + 1) * d
    std::vector<double> gauss_nodes_;
    std::vector<double> gauss_weights_;
};

PiecewiseIntegral antiderivative(const PiecewisePolynomial& p);

/// Primary discretization shared by both halves: L intervals, abscissae c.
struct Discretization {
    int intervals;
    InnerAbscissae abscissae;

    OuterMesh plus() const { return OuterMesh(intervals, MeshSide::Plus); }
    OuterMesh minus() const { return OuterMesh(intervals, MeshSide::Minus); }
    std::size_t node_count() const { return 1 + static_cast<std::size_t>(intervals) * abscissae.degree(); }
    int degree() const { return abscissae.degree(); }
};

}  // namespace rfde
