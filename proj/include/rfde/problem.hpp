#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rfde/mesh.hpp"
#include "rfde/quadrature.hpp"

namespace rfde {

/// Read-only history segment sigma -> y(sigma) over [-tau, 0] in physical time.
class StateView {
public:
    StateView(double tau, VectorFunction eval) : tau_(tau), eval_(std::move(eval)) {}

    double tau() const { return tau_; }

    /// Throws DomainError outside [-tau, 0].
    Vector operator()(double sigma) const;

    /// sup-norm estimate on a uniform grid of `samples` points.
    double sup_norm(int samples = 101) const;

private:
    double tau_;
    VectorFunction eval_;
};

/// y(t + lag) with lag in [-tau, 0].
struct DiscreteDelay {
    double lag;
};

/// Integral over [-tau, 0] of kernel(theta) * y(t + theta).
struct DistributedDelay {
    std::function<double(double)> kernel;
};

using DelayTerm = std::variant<DiscreteDelay, DistributedDelay>;

/// G(psi) = combine(T_1 psi, ..., T_n psi), where each T_p is a delay term
/// with values in R^d. The optional combine_jacobian returns the d x d blocks
/// d combine / d T_p, which makes DG exact.
struct RFDEProblem {
    std::string name;
    int dim = 1;
    double tau = 1.0;
    std::vector<DelayTerm> terms;
    std::function<Vector(std::span<const Vector>)> combine;
    std::function<std::vector<Matrix>(std::span<const Vector>)> combine_jacobian;
    std::map<std::string, double> params;

    void validate() const;
};

/// Term values T_p(state); distributed terms integrated adaptively (Gauss-Kronrod).
std::vector<Vector> term_values(const RFDEProblem& problem, const StateView& state);

Vector eval_rhs(const RFDEProblem& problem, const StateView& state);

enum class DirectionalMode { Auto, FiniteDifference };

/// DG(state)[direction]. Auto uses combine_jacobian when available and falls
/// back to central differences with eps = 1e-6 * max(1, |state|_inf).
Vector eval_rhs_directional(const RFDEProblem& problem, const StateView& state, const StateView& direction,
                            DirectionalMode mode = DirectionalMode::Auto);

/// Linear functional delta -> sum_q blocks[q] * delta(sigmas[q]).
struct PointFunctional {
    std::vector<double> sigmas;
    std::vector<Matrix> blocks;

    Vector apply(const std::function<Vector(double)>& delta) const;
    /// Row-sum operator norm bound sum_q |blocks[q]|_inf.
    double norm() const;
};

/// G_M: the problem with every distributed term replaced by an M-node
/// Gauss-Legendre rule on [-tau, 0]. Discrete terms are untouched.
class DiscretizedRhs {
public:
    DiscretizedRhs(RFDEProblem base, int quadrature_nodes);

    const RFDEProblem& base() const { return base_; }
    int quadrature_nodes() const { return nodes_; }
    int dim() const { return base_.dim; }
    double tau() const { return base_.tau; }
    bool has_distributed() const { return has_distributed_; }

    std::span<const double> quadrature_points() const { return rule_.nodes; }
    std::span<const double> quadrature_weights() const { return rule_.weights; }

    Vector evaluate(const StateView& state) const;
    /// DG_M(state) as a point functional.
    PointFunctional linearize(const StateView& state) const;

private:
    std::vector<Vector> terms(const StateView& state) const;
    std::vector<Matrix> combine_blocks(std::span<const Vector> values) const;

    RFDEProblem base_;
    int nodes_;
    bool has_distributed_ = false;
    QuadratureRule rule_;
};

DiscretizedRhs discretize_rhs(const RFDEProblem& problem, int quadrature_nodes);

struct PeriodGuard {
    double omega;
    int multiple;
};

/// Smallest k >= 1 with k * omega_guess >= 1.05 * tau.
PeriodGuard period_guard(double tau, double omega_guess);

}  // namespace rfde
