#pragma once

#include <memory>
#include <variant>

#include "rfde/greens.hpp"

namespace rfde {

/// v_k(0) - level, with k 0-based.
struct TrivialPhase {
    int component = 0;
    double level = 0.0;
};

/// Integral over [0, 1] of v(t)^T ref'(t).
struct IntegralPhase {
    std::shared_ptr<const CandidateSolution> reference;
};

using PhaseCondition = std::variant<TrivialPhase, IntegralPhase>;

/// p(v). The integral uses per-interval Gauss-Legendre with m + 2 points on
/// the Plus mesh, exact for the piecewise polynomial integrand.
double phase_eval(const PhaseCondition& phase, const CandidateSolution& v);

/// p(v) minus its constant part: the derivative of p, which is affine in v.
double phase_linear(const PhaseCondition& phase, const CandidateSolution& v);

void validate_phase(const PhaseCondition& phase, int dim);

}  // namespace rfde
