#include "rfde/problem.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rfde/errors.hpp"

namespace rfde {

namespace {

constexpr double kDomainSlack = 1e-12;

Vector integrate_distributed(const DistributedDelay& term, const StateView& state, int dim) {
    Vector out(dim);
    for (int k = 0; k < dim; ++k) {
        auto integrand = [&](double theta) { return term.kernel(theta) * state(theta)[k]; };
        out[k] = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, -state.tau(), 0.0, 15,
                                                                               1e-12);
    }
    return out;
}

// d combine / d T_p by central differences in term space.
std::vector<Matrix> combine_blocks_fd(const RFDEProblem& problem, std::span<const Vector> values) {
    std::vector<Vector> work(values.begin(), values.end());
    std::vector<Matrix> blocks;
    blocks.reserve(values.size());
    for (std::size_t p = 0; p < values.size(); ++p) {
        Matrix block(problem.dim, values[p].size());
        for (Eigen::Index c = 0; c < values[p].size(); ++c) {
            const double base = values[p][c];
            const double eps = 1e-6 * std::max(1.0, std::abs(base));
            work[p][c] = base + eps;
            const Vector plus = problem.combine(work);
            work[p][c] = base - eps;
            const Vector minus = problem.combine(work);
            work[p][c] = base;
            block.col(c) = (plus - minus) / (2.0 * eps);
        }
        blocks.push_back(std::move(block));
    }
    return blocks;
}

}  // namespace

Vector StateView::operator()(double sigma) const {
    if (!(sigma >= -tau_ - kDomainSlack && sigma <= kDomainSlack)) {
        throw DomainError("state evaluated at sigma = " + std::to_string(sigma) + " outside [-" +
                          std::to_string(tau_) + ", 0]");
    }
    return eval_(std::clamp(sigma, -tau_, 0.0));
}

double StateView::sup_norm(int samples) const {
    samples = std::max(samples, 2);
    double out = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double sigma = -tau_ + tau_ * i / (samples - 1);
        out = std::max(out, (*this)(sigma).lpNorm<Eigen::Infinity>());
    }
    return out;
}

void RFDEProblem::validate() const {
    if (dim < 1) throw DomainError("problem '" + name + "': dimension must be positive");
    if (!(tau > 0.0)) throw DomainError("problem '" + name + "': tau must be positive");
    if (!combine) throw DomainError("problem '" + name + "': missing right-hand side");
    for (const auto& term : terms) {
        if (const auto* d = std::get_if<DiscreteDelay>(&term)) {
            if (d->lag < -tau || d->lag > 0.0) {
                throw DomainError("problem '" + name + "': lag " + std::to_string(d->lag) + " outside [-tau, 0]");
            }
        } else if (!std::get<DistributedDelay>(term).kernel) {
            throw DomainError("problem '" + name + "': distributed term without kernel");
        }
    }
}

std::vector<Vector> term_values(const RFDEProblem& problem, const StateView& state) {
    std::vector<Vector> values;
    values.reserve(problem.terms.size());
    for (const auto& term : problem.terms) {
        if (const auto* d = std::get_if<DiscreteDelay>(&term)) {
            values.push_back(state(d->lag));
        } else {
            values.push_back(integrate_distributed(std::get<DistributedDelay>(term), state, problem.dim));
        }
    }
    return values;
}

Vector eval_rhs(const RFDEProblem& problem, const StateView& state) {
    const auto values = term_values(problem, state);
    return problem.combine(values);
}

Vector eval_rhs_directional(const RFDEProblem& problem, const StateView& state, const StateView& direction,
                            DirectionalMode mode) {
    if (mode == DirectionalMode::Auto && problem.combine_jacobian) {
        const auto values = term_values(problem, state);
        const auto deltas = term_values(problem, direction);
        const auto blocks = problem.combine_jacobian(values);
        Vector out = Vector::Zero(problem.dim);
        for (std::size_t p = 0; p < blocks.size(); ++p) out += blocks[p] * deltas[p];
        return out;
    }
    const double eps = 1e-6 * std::max(1.0, state.sup_norm());
    const StateView plus(state.tau(), [&](double s) -> Vector { return state(s) + eps * direction(s); });
    const StateView minus(state.tau(), [&](double s) -> Vector { return state(s) - eps * direction(s); });
    return (eval_rhs(problem, plus) - eval_rhs(problem, minus)) / (2.0 * eps);
}

Vector PointFunctional::apply(const std::function<Vector(double)>& delta) const {
    Vector out;
    for (std::size_t q = 0; q < sigmas.size(); ++q) {
        const Vector contribution = blocks[q] * delta(sigmas[q]);
        if (q == 0) {
            out = contribution;
        } else {
            out += contribution;
        }
    }
    return out;
}

double PointFunctional::norm() const {
    double out = 0.0;
    for (const auto& block : blocks) out += block.cwiseAbs().rowwise().sum().maxCoeff();
    return out;
}

DiscretizedRhs::DiscretizedRhs(RFDEProblem base, int quadrature_nodes) : base_(std::move(base)), nodes_(quadrature_nodes) {
    if (quadrature_nodes < 1) {
        throw InvalidMesh("secondary discretization needs M >= 1, got " + std::to_string(quadrature_nodes));
    }
    base_.validate();
    has_distributed_ = std::any_of(base_.terms.begin(), base_.terms.end(),
                                   [](const DelayTerm& t) { return std::holds_alternative<DistributedDelay>(t); });
    rule_ = gauss_legendre(nodes_, -base_.tau, 0.0);
}

std::vector<Vector> DiscretizedRhs::terms(const StateView& state) const {
    std::vector<Vector> values;
    values.reserve(base_.terms.size());
    for (const auto& term : base_.terms) {
        if (const auto* d = std::get_if<DiscreteDelay>(&term)) {
            values.push_back(state(d->lag));
        } else {
            const auto& kernel = std::get<DistributedDelay>(term).kernel;
            Vector sum = Vector::Zero(base_.dim);
            for (int q = 0; q < nodes_; ++q) {
                sum += (rule_.weights[q] * kernel(rule_.nodes[q])) * state(rule_.nodes[q]);
            }
            values.push_back(std::move(sum));
        }
    }
    return values;
}

std::vector<Matrix> DiscretizedRhs::combine_blocks(std::span<const Vector> values) const {
    if (base_.combine_jacobian) return base_.combine_jacobian(values);
    return combine_blocks_fd(base_, values);
}

Vector DiscretizedRhs::evaluate(const StateView& state) const {
    const auto values = terms(state);
    return base_.combine(values);
}

PointFunctional DiscretizedRhs::linearize(const StateView& state) const {
    const auto values = terms(state);
    const auto blocks = combine_blocks(values);
    PointFunctional out;
    for (std::size_t p = 0; p < base_.terms.size(); ++p) {
        if (const auto* d = std::get_if<DiscreteDelay>(&base_.terms[p])) {
            out.sigmas.push_back(d->lag);
            out.blocks.push_back(blocks[p]);
        } else {
            const auto& kernel = std::get<DistributedDelay>(base_.terms[p]).kernel;
            for (int q = 0; q < nodes_; ++q) {
                out.sigmas.push_back(rule_.nodes[q]);
                out.blocks.push_back((rule_.weights[q] * kernel(rule_.nodes[q])) * blocks[p]);
            }
        }
    }
    return out;
}

DiscretizedRhs discretize_rhs(const RFDEProblem& problem, int quadrature_nodes) {
    return DiscretizedRhs(problem, quadrature_nodes);
}

PeriodGuard period_guard(double tau, double omega_guess) {
    if (!(tau > 0.0) || !(omega_guess > 0.0)) {
        throw DomainError("period_guard needs positive tau and period guess");
    }
    const double target = tau * 1.05;
    int k = 1;
    while (k * omega_guess < target) ++k;
    return {k * omega_guess, k};
}

}  // namespace rfde
