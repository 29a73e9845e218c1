#include "rfde/phase.hpp"

#include "rfde/errors.hpp"
#include "rfde/quadrature.hpp"

namespace rfde {

namespace {

double integral_phase(const IntegralPhase& phase, const CandidateSolution& v) {
    const auto& mesh = v.u().mesh();
    const auto rule = gauss_legendre(v.u().degree() + 2, 0.0, 1.0);
    double sum = 0.0;
    for (int i = 0; i < mesh.intervals(); ++i) {
        double piece = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double t = mesh.node(i) + rule.nodes[q] * mesh.step();
            piece += rule.weights[q] * v.value(t).dot(phase.reference->derivative(t));
        }
        sum += mesh.step() * piece;
    }
    return sum;
}

}  // namespace

double phase_eval(const PhaseCondition& phase, const CandidateSolution& v) {
    if (const auto* trivial = std::get_if<TrivialPhase>(&phase)) {
        return v.psi_at_zero()[trivial->component] - trivial->level;
    }
    return integral_phase(std::get<IntegralPhase>(phase), v);
}

double phase_linear(const PhaseCondition& phase, const CandidateSolution& v) {
    if (const auto* trivial = std::get_if<TrivialPhase>(&phase)) {
        return v.psi_at_zero()[trivial->component];
    }
    return integral_phase(std::get<IntegralPhase>(phase), v);
}

void validate_phase(const PhaseCondition& phase, int dim) {
    if (const auto* trivial = std::get_if<TrivialPhase>(&phase)) {
        if (trivial->component < 0 || trivial->component >= dim) {
            throw UsageError("trivial phase component " + std::to_string(trivial->component + 1) +
                             " outside 1.." + std::to_string(dim));
        }
        return;
    }
    const auto& ref = std::get<IntegralPhase>(phase).reference;
    if (!ref) throw UsageError("integral phase needs a reference solution");
    if (ref->dim() != dim) throw UsageError("integral phase reference has the wrong dimension");
}

}  // namespace rfde
