#include "rfde/continuation.hpp"

#include "rfde/errors.hpp"

namespace rfde {

namespace {

constexpr double kZeroAmplitude = 1e-6;

}  // namespace

std::string to_string(StepStatus status) {
    switch (status) {
        case StepStatus::Converged:
            return "ok";
        case StepStatus::NoConvergence:
            return "no-convergence";
        case StepStatus::ZeroAmplitude:
            return "zero-amplitude";
        case StepStatus::Failed:
            return "failed";
    }
    return "failed";
}

std::vector<double> linspace(double from, double to, int steps) {
    if (steps < 1) throw UsageError("continuation needs at least one step");
    if (steps == 1) return {from};
    std::vector<double> out(steps);
    for (int i = 0; i < steps; ++i) out[i] = from + (to - from) * i / (steps - 1);
    out.back() = to;
    return out;
}

std::vector<ContinuationStep> continue_natural(const std::string& problem_name,
                                               const std::map<std::string, double>& fixed_params,
                                               const std::string& param, const std::vector<double>& values,
                                               const SolveConfig& config) {
    SolveConfig settings = config;
    settings.newton.throw_on_failure = false;

    std::vector<ContinuationStep> steps;
    std::shared_ptr<const PeriodicSolution> previous;
    for (double value : values) {
        auto params = fixed_params;
        params[param] = value;
        const auto entry = catalog_problem(problem_name, params);

        ContinuationStep step;
        step.param = value;
        step.status = StepStatus::Failed;
        try {
            PeriodicSolution solved = [&] {
                if (!previous) return solve_catalog(entry, settings);
                const auto reference = std::make_shared<const CandidateSolution>(previous->v);
                const auto& disc = previous->discretization;
                CollocationSystem system(discretize_rhs(entry.problem, settings.quadrature_nodes), disc,
                                         IntegralPhase{reference});
                auto report = newton_solve(unknowns_of(previous->v, previous->omega), system, settings.newton);
                auto v = system.candidate(report.solution);
                const double omega = report.solution.omega;
                return PeriodicSolution{disc, std::move(v), omega, std::move(report)};
            }();
            step.omega = solved.omega;
            step.newton_iterations = solved.report.newton_iterations;
            step.residual_norm = solved.report.residual_norm;
            step.amplitude = amplitude(solved.v);
            if (!solved.report.converged) {
                step.status = StepStatus::NoConvergence;
                step.message = "Newton did not converge";
            } else if (step.amplitude < kZeroAmplitude) {
                step.status = StepStatus::ZeroAmplitude;
                step.message = "converged to an equilibrium";
                step.solution = std::make_shared<const PeriodicSolution>(std::move(solved));
            } else {
                step.status = StepStatus::Converged;
                step.solution = std::make_shared<const PeriodicSolution>(std::move(solved));
                previous = step.solution;
            }
        } catch (const SingularJacobian& e) {
            step.status = StepStatus::NoConvergence;
            step.message = e.what();
        } catch (const Error& e) {
            step.status = StepStatus::Failed;
            step.message = e.what();
        }
        steps.push_back(std::move(step));
    }
    return steps;
}

}  // namespace rfde
