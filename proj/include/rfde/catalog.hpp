#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rfde/problem.hpp"

namespace rfde {

/// Poincare section y_component = level, crossed upward. Component is 0-based.
struct Section {
    int component = 0;
    double level = 0.0;
};

/// Closed-form periodic orbit in physical time.
struct ExactOrbit {
    double period;
    VectorFunction value;
    VectorFunction derivative;
};

struct CatalogProblem {
    RFDEProblem problem;
    /// Initial profile in rescaled time (1-periodic), usable on [-1, 1].
    VectorFunction guess;
    double omega_guess;
    Section section;
    /// Physical-time history on [-tau, 0] for the time integrator.
    VectorFunction history;
    std::optional<ExactOrbit> exact;
};

std::vector<std::string> catalog_names();

/// Built-in problem by name with key=value parameter overrides.
/// Throws UsageError on unknown names or parameters.
CatalogProblem catalog_problem(const std::string& name, const std::map<std::string, double>& overrides = {});

}  // namespace rfde
