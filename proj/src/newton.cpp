#include "rfde/newton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/LU>

#include "rfde/errors.hpp"

namespace rfde {

namespace {

constexpr double kMinRcond = 1e-14;
constexpr double kOmegaMargin = 1.01;
constexpr double kMinSeedAmplitude = 1e-6;

bool finite(const Vector& x) { return x.allFinite(); }

}  // namespace

SolveReport newton_solve(const DiscreteUnknowns& x0, const CollocationSystem& system, const NewtonSettings& settings) {
    const double tau = system.rhs().tau();
    const auto omega_index = static_cast<Eigen::Index>(system.size()) - 1;
    Vector x = pack(x0);
    Vector f = system.residual(x);
    if (!finite(f)) throw NumericalError("residual is not finite at the initial guess");

    SolveReport report;
    int iterations = 0;
    bool stalled = false;
    while (f.lpNorm<Eigen::Infinity>() > settings.tol && iterations < settings.max_iter) {
        const Matrix jac = system.jacobian(x, settings.jacobian, settings.policy);
        const Eigen::PartialPivLU<Matrix> lu(jac);
        const double rcond = lu.rcond();
        report.jacobian_condition_estimate = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
        if (!(rcond >= kMinRcond)) {
            throw SingularJacobian("Newton matrix is numerically singular (rcond = " + std::to_string(rcond) +
                                   "); the cycle may be non-hyperbolic or the phase condition degenerate");
        }
        const Vector step = lu.solve(-f);
        const double norm = f.norm();

        double lambda = 1.0;
        bool accepted = false;
        for (int h = 0; h <= settings.max_halvings; ++h, lambda *= 0.5) {
            Vector trial = x + lambda * step;
            if (!(trial[omega_index] > kOmegaMargin * tau)) continue;
            Vector f_trial;
            try {
                f_trial = system.residual(trial);
            } catch (const DomainError&) {
                continue;
            }
            if (finite(f_trial) && f_trial.norm() < norm) {
                x = std::move(trial);
                f = std::move(f_trial);
                accepted = true;
                break;
            }
        }
        ++iterations;
        if (!accepted) {
            stalled = true;
            break;
        }
    }

    report.solution = unpack(x, system.nodes(), system.dim());
    report.residual_norm = f.lpNorm<Eigen::Infinity>();
    report.newton_iterations = iterations;
    report.converged = report.residual_norm <= settings.tol;
    if (!report.converged && settings.throw_on_failure) {
        throw NoConvergence(std::string("Newton ") + (stalled ? "stalled (no decrease after step halving)" : "hit max_iter") +
                            " after " + std::to_string(iterations) + " iterations, residual " +
                            std::to_string(report.residual_norm));
    }
    return report;
}

DiscreteUnknowns restrict_guess(const VectorFunction& guess, double omega, const Discretization& disc) {
    constexpr double h = 1e-6;
    const VectorFunction derivative = [&](double t) -> Vector { return (guess(t + h) - guess(t - h)) / (2.0 * h); };
    DiscreteUnknowns x;
    x.u = restrict_to_nodes(derivative, disc.plus(), disc.abscissae);
    x.psi = restrict_to_nodes(guess, disc.minus(), disc.abscissae);
    x.omega = omega;
    return x;
}

DiscreteUnknowns unknowns_of(const CandidateSolution& v, double omega) {
    return {v.u().node_values(), v.psi().node_values(), omega};
}

DiscreteUnknowns restrict_candidate(const CandidateSolution& v, double omega, const Discretization& disc) {
    DiscreteUnknowns x;
    x.u = restrict_to_nodes([&](double t) { return v.derivative(t); }, disc.plus(), disc.abscissae);
    x.psi = restrict_to_nodes([&](double t) { return v.value(t); }, disc.minus(), disc.abscissae);
    x.omega = omega;
    return x;
}

std::vector<int> mesh_sequence(int intervals, int coarse) {
    std::vector<int> levels{intervals};
    if (coarse > 0) {
        for (int next = (intervals + 1) / 2; next >= coarse && next < levels.back(); next = (next + 1) / 2) {
            levels.push_back(next);
        }
    }
    std::reverse(levels.begin(), levels.end());
    return levels;
}

PeriodicSolution solve_periodic(const RFDEProblem& problem, const SolveConfig& config, const VectorFunction& guess,
                                double omega_guess, const PhaseCondition& phase) {
    const auto guard = period_guard(problem.tau, omega_guess);
    VectorFunction profile = guess;
    if (guard.multiple > 1) {
        profile = [guess, k = guard.multiple](double t) { return guess(k * t); };
    }
    const auto rhs = discretize_rhs(problem, config.quadrature_nodes);
    const auto abscissae = inner_abscissae(config.degree, config.family);
    const auto levels = mesh_sequence(config.intervals, config.coarse_intervals);

    std::optional<PeriodicSolution> seed;
    NewtonSettings coarse_newton = config.newton;
    coarse_newton.throw_on_failure = false;
    for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
        Discretization disc{levels[k], abscissae};
        CollocationSystem system(rhs, disc, phase);
        const auto x0 = seed ? restrict_candidate(seed->v, seed->omega, disc) : restrict_guess(profile, guard.omega, disc);
        try {
            auto report = newton_solve(x0, system, coarse_newton);
            if (!report.converged) continue;
            auto v = system.candidate(report.solution);
            if (amplitude(v) < kMinSeedAmplitude) continue;
            const double omega = report.solution.omega;
            seed.emplace(PeriodicSolution{std::move(disc), std::move(v), omega, std::move(report)});
        } catch (const Error&) {
        }
    }

    Discretization disc{config.intervals, abscissae};
    CollocationSystem system(rhs, disc, phase);
    const auto x0 = seed ? restrict_candidate(seed->v, seed->omega, disc) : restrict_guess(profile, guard.omega, disc);
    auto report = newton_solve(x0, system, config.newton);
    auto v = system.candidate(report.solution);
    const double omega = report.solution.omega;
    return {std::move(disc), std::move(v), omega, std::move(report)};
}

PhaseCondition default_phase(const CatalogProblem& entry) { return TrivialPhase{0, entry.guess(0.0)[0]}; }

PeriodicSolution solve_catalog(const CatalogProblem& entry, const SolveConfig& config) {
    return solve_periodic(entry.problem, config, entry.guess, entry.omega_guess, default_phase(entry));
}

double amplitude(const CandidateSolution& v, int samples) {
    samples = std::max(samples, 2);
    Vector lo = Vector::Constant(v.dim(), std::numeric_limits<double>::infinity());
    Vector hi = -lo;
    for (int i = 0; i < samples; ++i) {
        const Vector y = v.value(static_cast<double>(i) / (samples - 1));
        lo = lo.cwiseMin(y);
        hi = hi.cwiseMax(y);
    }
    return (hi - lo).maxCoeff();
}

}  // namespace rfde
