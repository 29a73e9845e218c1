#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rfde/newton.hpp"

namespace rfde {

enum class StepStatus { Converged, NoConvergence, ZeroAmplitude, Failed };

std::string to_string(StepStatus status);

struct ContinuationStep {
    double param = 0.0;
    StepStatus status = StepStatus::Failed;
    double omega = 0.0;
    int newton_iterations = 0;
    double residual_norm = 0.0;
    double amplitude = 0.0;
    std::string message;
    /// Set when Newton converged (including zero-amplitude convergence).
    std::shared_ptr<const PeriodicSolution> solution;
};

/// Points from `from` to `to` inclusive; a single point when steps == 1.
std::vector<double> linspace(double from, double to, int steps);

/// Natural continuation in one catalog parameter. The first value is solved
/// from the catalog guess with the default trivial phase; each later value
/// starts from the last converged solution and uses it as the reference of an
/// integral phase condition. Failures are recorded, never thrown.
std::vector<ContinuationStep> continue_natural(const std::string& problem_name,
                                               const std::map<std::string, double>& fixed_params,
                                               const std::string& param, const std::vector<double>& values,
                                               const SolveConfig& config);

}  // namespace rfde
