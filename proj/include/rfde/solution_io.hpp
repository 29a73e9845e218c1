#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rfde/convergence.hpp"
#include "rfde/continuation.hpp"
#include "rfde/floquet.hpp"
#include "rfde/newton.hpp"

namespace rfde {

inline constexpr int kSchemaVersion = 1;

struct SolutionFile {
    int schema_version = kSchemaVersion;
    std::string problem;
    std::map<std::string, double> params;
    int dim = 0;
    double tau = 0.0;
    int intervals = 0;
    int degree = 0;
    int quadrature_nodes = 0;
    AbscissaeFamily family = AbscissaeFamily::GaussLegendre;
    std::vector<double> abscissae;
    double omega = 0.0;
    std::vector<double> u;
    std::vector<double> psi;
    double residual_norm = 0.0;
    int newton_iterations = 0;
    bool converged = false;
    std::optional<double> condition_estimate;

    bool operator==(const SolutionFile&) const = default;

    Discretization discretization() const;
    DiscreteUnknowns unknowns() const;
};

SolutionFile make_solution_file(const RFDEProblem& problem, const PeriodicSolution& solved, int quadrature_nodes);

/// JSON with stable key order; doubles written in shortest round-trip form.
void save_solution(const std::filesystem::path& path, const SolutionFile& file);

/// Throws IoError if unreadable, SchemaError on version or shape mismatch.
SolutionFile load_solution(const std::filesystem::path& path);

std::string solution_to_json(const SolutionFile& file);
SolutionFile solution_from_json(const std::string& text);

void write_convergence_csv(const std::filesystem::path& path, const ConvergenceReport& report);
void write_floquet_csv(const std::filesystem::path& path, const FloquetReport& report);
void write_continuation_csv(const std::filesystem::path& path, const std::vector<ContinuationStep>& steps);
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& trajectory);

}  // namespace rfde
