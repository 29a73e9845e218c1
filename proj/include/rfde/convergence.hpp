#pragma once

#include <string>
#include <vector>

#include "rfde/newton.hpp"
#include "rfde/oracle.hpp"

namespace rfde {

/// A periodic profile in physical time with one of its upward section crossings.
struct ReferenceProfile {
    double period;
    double crossing;
    VectorFunction value;
    VectorFunction derivative;
};

ReferenceProfile exact_reference(const ExactOrbit& exact, const Section& section);
ReferenceProfile oracle_reference(const ReferenceOrbit& orbit);

struct ProfileErrors {
    double err_v;       // sup over the grid of |v - ref|
    double err_vprime;  // sup over the grid of |v' - ref'|
    double err_omega;   // |omega - period|
    double shift;       // computed crossing time in rescaled units
};

/// Upward crossing of v_component = level in [0, 1) closest to 0 (circularly).
/// Throws NoCycleDetected if v does not cross the section.
double solution_crossing(const CandidateSolution& v, const Section& section);

/// Phase-aligned errors of (v, omega) against the reference on a uniform
/// grid of `samples` points over [-1, 1]: v(t) is compared with
/// ref(crossing + period (t - shift)).
ProfileErrors compare_with_reference(const CandidateSolution& v, double omega, const ReferenceProfile& reference,
                                     const Section& section, int samples = 2001);

enum class ReferenceKind { Exact, Oracle };

struct OracleSettings {
    double dt = 1e-3;
    double t_transient = 200.0;
};

struct ConvergenceLevel {
    int intervals;
    double h;
    ProfileErrors errors;
    double error;  // max(err_v, err_omega)
    double order;  // NaN on the first level
    double seconds;
    int newton_iterations;
};

struct ConvergenceReport {
    std::string problem;
    int degree;
    int quadrature_nodes;
    ReferenceKind reference;
    double reference_period;
    std::vector<ConvergenceLevel> levels;
};

/// Solves at each L (strictly increasing, no repeats) and estimates
/// order = log(e_i / e_{i+1}) / log(L_{i+1} / L_i).
ConvergenceReport run_convergence_study(const CatalogProblem& entry, int degree, const std::vector<int>& intervals,
                                        int quadrature_nodes, ReferenceKind reference,
                                        const OracleSettings& oracle = {}, const NewtonSettings& newton = {});

}  // namespace rfde
