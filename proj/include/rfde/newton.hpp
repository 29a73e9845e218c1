#pragma once

#include <optional>
#include <vector>

#include "rfde/catalog.hpp"
#include "rfde/collocation.hpp"

namespace rfde {

struct NewtonSettings {
    double tol = 1e-10;
    int max_iter = 50;
    int max_halvings = 20;
    JacobianMode jacobian = JacobianMode::Analytic;
    ExecutionPolicy policy = ExecutionPolicy::Parallel;
    /// Raise NoConvergence instead of returning an unconverged report.
    bool throw_on_failure = true;
};

struct SolveReport {
    DiscreteUnknowns solution;
    double residual_norm = 0.0;  // infinity norm
    int newton_iterations = 0;
    bool converged = false;
    std::optional<double> jacobian_condition_estimate;  // 1 / rcond of the last LU
};

/// Damped Newton with dense partial-pivoting LU. Steps are halved until the
/// residual 2-norm decreases and omega stays above 1.01 tau.
SolveReport newton_solve(const DiscreteUnknowns& x0, const CollocationSystem& system,
                         const NewtonSettings& settings = {});

struct PeriodicSolution {
    Discretization discretization;
    CandidateSolution v;
    double omega;
    SolveReport report;
};

struct SolveConfig {
    int intervals = 20;
    int degree = 3;
    AbscissaeFamily family = AbscissaeFamily::GaussLegendre;
    int quadrature_nodes = 20;
    NewtonSettings newton;
    /// Coarsest level of the mesh sequence; 0 solves on the target mesh only.
    int coarse_intervals = 10;
};

/// Interval counts visited by solve_periodic: halving (rounded up) from the
/// target while the result stays >= coarse, in increasing order.
std::vector<int> mesh_sequence(int intervals, int coarse);

/// Restriction of a rescaled-time profile g (psi = g on [-1, 0], u = g' on
/// [0, 1] by central differences) to the discrete unknowns.
DiscreteUnknowns restrict_guess(const VectorFunction& guess, double omega, const Discretization& disc);

/// Unknowns reproducing a computed candidate (its node values).
DiscreteUnknowns unknowns_of(const CandidateSolution& v, double omega);

/// Candidate from another mesh sampled at the nodes of `disc`.
DiscreteUnknowns restrict_candidate(const CandidateSolution& v, double omega, const Discretization& disc);

/// period_guard, discretize_rhs, restriction of the guess, Newton, Green operator.
/// With coarse_intervals set, each coarser level of mesh_sequence is solved
/// first and its candidate seeds the next; a coarse level that fails or lands
/// on an equilibrium is skipped.
PeriodicSolution solve_periodic(const RFDEProblem& problem, const SolveConfig& config, const VectorFunction& guess,
                                double omega_guess, const PhaseCondition& phase);

/// Catalog defaults: its guess, omega_guess and a trivial phase on component 0
/// pinned to guess(0).
PeriodicSolution solve_catalog(const CatalogProblem& entry, const SolveConfig& config);

PhaseCondition default_phase(const CatalogProblem& entry);

/// max v - min v over a component-wise sampled grid on [0, 1].
double amplitude(const CandidateSolution& v, int samples = 401);

}  // namespace rfde
