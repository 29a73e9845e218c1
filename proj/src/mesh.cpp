#include "rfde/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rfde/errors.hpp"
#include "rfde/quadrature.hpp"

namespace rfde {

namespace {

// Outer-node snapping tolerance in local (reference-interval) units.
constexpr double kSnap = 1e-12;
// Slack accepted beyond the mesh domain before raising DomainError.
constexpr double kDomainSlack = 1e-12;

}  // namespace

OuterMesh::OuterMesh(int intervals, MeshSide side) : intervals_(intervals), side_(side), step_(0.0) {
    if (intervals < 1) {
        throw InvalidMesh("outer mesh needs L >= 1, got " + std::to_string(intervals));
    }
    step_ = 1.0 / intervals;
}

std::vector<double> OuterMesh::nodes() const {
    std::vector<double> out(intervals_ + 1);
    for (int i = 0; i <= intervals_; ++i) {
        out[i] = node(i);
    }
    // Pin the endpoints exactly.
    out.front() = left();
    out.back() = right();
    return out;
}

OuterMesh::Location OuterMesh::locate(double t) const {
    if (!(t >= left() - kDomainSlack && t <= right() + kDomainSlack)) {
        throw DomainError("t = " + std::to_string(t) + " outside mesh domain [" + std::to_string(left()) + ", " +
                          std::to_string(right()) + "]");
    }
    const double x = std::clamp((t - left()) * intervals_, 0.0, static_cast<double>(intervals_));
    int i = static_cast<int>(std::floor(x));
    double s = x - i;
    if (s > 1.0 - kSnap) {
        ++i;
        s = 0.0;
    }
    if (i >= intervals_) {
        return {intervals_ - 1, 1.0};
    }
    return {i, s};
}

OuterMesh outer_mesh(int intervals, MeshSide side) { return OuterMesh(intervals, side); }

std::string to_string(AbscissaeFamily family) {
    switch (family) {
        case AbscissaeFamily::GaussLegendre:
            return "gauss-legendre";
        case AbscissaeFamily::Chebyshev:
            return "chebyshev";
        case AbscissaeFamily::Custom:
            return "custom";
    }
    return "custom";
}

AbscissaeFamily abscissae_family_from_string(const std::string& name) {
    if (name == "gauss-legendre") return AbscissaeFamily::GaussLegendre;
    if (name == "chebyshev") return AbscissaeFamily::Chebyshev;
    if (name == "custom") return AbscissaeFamily::Custom;
    throw InvalidMesh("unknown abscissae family '" + name + "'");
}

InnerAbscissae::InnerAbscissae(std::vector<double> values, AbscissaeFamily family)
    : values_(std::move(values)), family_(family) {
    if (values_.empty()) {
        throw InvalidMesh("inner abscissae: need m >= 1");
    }
    for (std::size_t j = 0; j < values_.size(); ++j) {
        const double lower = j == 0 ? 0.0 : values_[j - 1];
        if (!(values_[j] > lower) || !(values_[j] < 1.0)) {
            throw InvalidMesh("inner abscissae must satisfy 0 < c_1 < ... < c_m < 1");
        }
    }
    reference_.reserve(values_.size() + 1);
    reference_.push_back(0.0);
    reference_.insert(reference_.end(), values_.begin(), values_.end());

    weights_.assign(reference_.size(), 1.0);
    for (std::size_t j = 0; j < reference_.size(); ++j) {
        for (std::size_t k = 0; k < reference_.size(); ++k) {
            if (k != j) weights_[j] /= reference_[j] - reference_[k];
        }
    }
}

InnerAbscissae inner_abscissae(int m, AbscissaeFamily family) {
    if (m < 1) {
        throw InvalidMesh("inner abscissae: need m >= 1, got " + std::to_string(m));
    }
    std::vector<double> c(m);
    switch (family) {
        case AbscissaeFamily::GaussLegendre:
            c = gauss_legendre(m, 0.0, 1.0).nodes;
            break;
        case AbscissaeFamily::Chebyshev:
            for (int j = 1; j <= m; ++j) {
                c[j - 1] = 0.5 * (1.0 - std::cos((2.0 * j - 1.0) * std::numbers::pi / (2.0 * m)));
            }
            break;
        case AbscissaeFamily::Custom:
            throw InvalidMesh("custom abscissae must be given explicitly");
    }
    return InnerAbscissae(std::move(c), family);
}

namespace {

void check_distinct(std::span<const double> nodes) {
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        for (std::size_t k = j + 1; k < nodes.size(); ++k) {
            if (nodes[j] == nodes[k]) {
                throw InvalidMesh("Lagrange nodes must be pairwise distinct");
            }
        }
    }
}

// Fills l_j(t) and l_j'(t) with the product rule; O(m^2).
void lagrange_basis(std::span<const double> nodes, double t, double* values, double* derivatives) {
    const std::size_t n = nodes.size();
    for (std::size_t j = 0; j < n; ++j) {
        double val = 1.0;
        double der = 0.0;
        double denom = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            der = der * (t - nodes[k]) + val;
            val *= t - nodes[k];
            denom *= nodes[j] - nodes[k];
        }
        if (values) values[j] = val / denom;
        if (derivatives) derivatives[j] = der / denom;
    }
}

}  // namespace

std::vector<double> lagrange_weights(std::span<const double> nodes, double t) {
    check_distinct(nodes);
    std::vector<double> out(nodes.size());
    lagrange_basis(nodes, t, out.data(), nullptr);
    return out;
}

std::vector<double> lagrange_derivative_weights(std::span<const double> nodes, double t) {
    check_distinct(nodes);
    std::vector<double> out(nodes.size());
    lagrange_basis(nodes, t, nullptr, out.data());
    return out;
}

LebesgueConstants lebesgue_constants(std::span<const double> nodes, int samples) {
    check_distinct(nodes);
    samples = std::max(samples, 2);
    std::vector<double> l(nodes.size());
    std::vector<double> dl(nodes.size());
    LebesgueConstants out{0.0, 0.0};
    for (int i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / (samples - 1);
        lagrange_basis(nodes, t, l.data(), dl.data());
        double sum = 0.0;
        double dsum = 0.0;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            sum += std::abs(l[j]);
            dsum += std::abs(dl[j]);
        }
        out.value = std::max(out.value, sum);
        out.derivative = std::max(out.derivative, dsum);
    }
    return out;
}

NodeVector::NodeVector(std::size_t nodes, int dim, double fill)
    : nodes_(nodes), dim_(dim), data_(nodes * static_cast<std::size_t>(dim), fill) {}

NodeVector::NodeVector(std::size_t nodes, int dim, std::vector<double> data)
    : nodes_(nodes), dim_(dim), data_(std::move(data)) {
    if (data_.size() != nodes_ * static_cast<std::size_t>(dim_)) {
        throw InvalidMesh("node vector: expected " + std::to_string(nodes_ * dim_) + " entries, got " +
                          std::to_string(data_.size()));
    }
}

std::vector<double> node_points(const OuterMesh& mesh, const InnerAbscissae& abscissae) {
    const int m = abscissae.degree();
    std::vector<double> out;
    out.reserve(1 + static_cast<std::size_t>(mesh.intervals()) * m);
    out.push_back(mesh.left());
    for (int i = 0; i < mesh.intervals(); ++i) {
        const double start = mesh.node(i);
        for (double c : abscissae.values()) {
            out.push_back(start + c * mesh.step());
        }
    }
    return out;
}

NodeVector restrict_to_nodes(const VectorFunction& f, const OuterMesh& mesh, const InnerAbscissae& abscissae) {
    const auto points = node_points(mesh, abscissae);
    const Vector first = f(points.front());
    const int d = static_cast<int>(first.size());
    NodeVector out(points.size(), d);
    for (std::size_t n = 0; n < points.size(); ++n) {
        const Vector value = n == 0 ? first : f(points[n]);
        if (value.size() != d) {
            throw InvalidMesh("restrict: function changed output dimension");
        }
        for (int k = 0; k < d; ++k) out(n, k) = value[k];
    }
    return out;
}

PiecewisePolynomial::PiecewisePolynomial(OuterMesh mesh, InnerAbscissae abscissae, NodeVector values)
    : mesh_(mesh), abscissae_(std::move(abscissae)), values_(std::move(values)) {
    const int m = abscissae_.degree();
    const int L = mesh_.intervals();
    const int d = values_.dim();
    if (values_.nodes() != 1 + static_cast<std::size_t>(L) * m) {
        throw InvalidMesh("prolong: node vector has " + std::to_string(values_.nodes()) + " nodes, mesh needs " +
                          std::to_string(1 + L * m));
    }
    // Basis evaluated at the right end of the reference interval carries the
    // left value of each interval over to the next one.
    std::vector<double> at_right(m + 1);
    lagrange_basis(abscissae_.reference_nodes(), 1.0, at_right.data(), nullptr);

    local_.assign(static_cast<std::size_t>(L) * (m + 1) * d, 0.0);
    for (int i = 0; i < L; ++i) {
        double* block = local_.data() + static_cast<std::size_t>(i) * (m + 1) * d;
        for (int k = 0; k < d; ++k) {
            if (i == 0) {
                block[k] = values_(0, k);
            } else {
                const double* prev = block - static_cast<std::ptrdiff_t>((m + 1) * d);
                double left = 0.0;
                for (int j = 0; j <= m; ++j) left += at_right[j] * prev[j * d + k];
                block[k] = left;
            }
            for (int j = 1; j <= m; ++j) {
                block[j * d + k] = values_(1 + static_cast<std::size_t>(i) * m + (j - 1), k);
            }
        }
    }
}

Vector PiecewisePolynomial::value(double t) const {
    const auto loc = mesh_.locate(t);
    const int m = degree();
    const int d = dim();
    double l[64];
    std::vector<double> heap;
    double* basis = l;
    if (m + 1 > 64) {
        heap.resize(m + 1);
        basis = heap.data();
    }
    lagrange_basis(abscissae_.reference_nodes(), loc.local, basis, nullptr);
    Vector out = Vector::Zero(d);
    const double* block = local_.data() + static_cast<std::size_t>(loc.interval) * (m + 1) * d;
    for (int j = 0; j <= m; ++j) {
        for (int k = 0; k < d; ++k) out[k] += basis[j] * block[j * d + k];
    }
    return out;
}

Vector PiecewisePolynomial::derivative(double t) const {
    const auto loc = mesh_.locate(t);
    const int m = degree();
    const int d = dim();
    std::vector<double> basis(m + 1);
    lagrange_basis(abscissae_.reference_nodes(), loc.local, nullptr, basis.data());
    Vector out = Vector::Zero(d);
    const double* block = local_.data() + static_cast<std::size_t>(loc.interval) * (m + 1) * d;
    for (int j = 0; j <= m; ++j) {
        for (int k = 0; k < d; ++k) out[k] += basis[j] * block[j * d + k];
    }
    return out / mesh_.step();
}

NodeVector PiecewisePolynomial::outer_values() const {
    const int L = mesh_.intervals();
    NodeVector out(static_cast<std::size_t>(L) + 1, dim());
    for (int i = 0; i < L; ++i) {
        for (int k = 0; k < dim(); ++k) out(i, k) = local_value(i, 0, k);
    }
    const Vector last = value(mesh_.right());
    for (int k = 0; k < dim(); ++k) out(L, k) = last[k];
    return out;
}

PiecewisePolynomial prolong(NodeVector values, const OuterMesh& mesh, const InnerAbscissae& abscissae) {
    return PiecewisePolynomial(mesh, abscissae, std::move(values));
}

PiecewiseIntegral::PiecewiseIntegral(PiecewisePolynomial integrand) : integrand_(std::move(integrand)) {
    const int m = integrand_.degree();
    const int d = integrand_.dim();
    const int L = integrand_.mesh().intervals();
    const double h = integrand_.mesh().step();
    // Degree-m integrand: a Gauss rule with m/2 + 1 points is exact; use m + 1.
    const auto rule = gauss_legendre(m + 1, 0.0, 1.0);
    gauss_nodes_ = rule.nodes;
    gauss_weights_ = rule.weights;

    // Integrated basis over the full reference interval.
    std::vector<double> full(m + 1, 0.0);
    std::vector<double> basis(m + 1);
    for (std::size_t q = 0; q < gauss_nodes_.size(); ++q) {
        lagrange_basis(integrand_.abscissae().reference_nodes(), gauss_nodes_[q], basis.data(), nullptr);
        for (int j = 0; j <= m; ++j) full[j] += gauss_weights_[q] * basis[j];
    }

    cumulative_.assign(static_cast<std::size_t>(L + 1) * d, 0.0);
    for (int i = 0; i < L; ++i) {
        for (int k = 0; k < d; ++k) {
            double piece = 0.0;
            for (int j = 0; j <= m; ++j) piece += full[j] * integrand_.local_value(i, j, k);
            cumulative_[(i + 1) * d + k] = cumulative_[i * d + k] + h * piece;
        }
    }
}

Vector PiecewiseIntegral::value(double t) const {
    const auto loc = integrand_.mesh().locate(t);
    const int m = integrand_.degree();
    const int d = dim();
    const double h = integrand_.mesh().step();

    Vector out(d);
    for (int k = 0; k < d; ++k) out[k] = cumulative_[loc.interval * d + k];
    if (loc.local == 0.0) {
        return out;
    }
    // W_j(s) = integral_0^s l_j = s * sum_q w_q l_j(s x_q), exact for degree m.
    std::vector<double> integrated(m + 1, 0.0);
    std::vector<double> basis(m + 1);
    for (std::size_t q = 0; q < gauss_nodes_.size(); ++q) {
        lagrange_basis(integrand_.abscissae().reference_nodes(), loc.local * gauss_nodes_[q], basis.data(), nullptr);
        for (int j = 0; j <= m; ++j) integrated[j] += gauss_weights_[q] * basis[j];
    }
    for (int k = 0; k < d; ++k) {
        double piece = 0.0;
        for (int j = 0; j <= m; ++j) piece += integrated[j] * integrand_.local_value(loc.interval, j, k);
        out[k] += h * loc.local * piece;
    }
    return out;
}

Vector PiecewiseIntegral::total() const {
    const int d = dim();
    const int L = integrand_.mesh().intervals();
    Vector out(d);
    for (int k = 0; k < d; ++k) out[k] = cumulative_[L * d + k];
    return out;
}

PiecewiseIntegral antiderivative(const PiecewisePolynomial& p) { return PiecewiseIntegral(p); }

}  // namespace rfde
