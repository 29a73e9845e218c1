#include "rfde/greens.hpp"

#include "rfde/errors.hpp"

namespace rfde {

CandidateSolution::CandidateSolution(PiecewisePolynomial u, PiecewisePolynomial psi)
    : integral_(std::move(u)), psi_(std::move(psi)) {
    if (integral_.integrand().mesh().side() != MeshSide::Plus || psi_.mesh().side() != MeshSide::Minus) {
        throw InvalidMesh("green_apply: u must live on the Plus mesh and psi on the Minus mesh");
    }
    if (integral_.dim() != psi_.dim()) {
        throw InvalidMesh("green_apply: u and psi dimensions differ");
    }
    psi0_ = psi_.value(0.0);
}

Vector CandidateSolution::value(double t) const {
    if (t < 0.0) return psi_.value(t);
    return psi0_ + integral_.value(t);
}

Vector CandidateSolution::derivative(double t) const {
    if (t < 0.0) return psi_.derivative(t);
    return integral_.derivative(t);
}

CandidateSolution green_apply(const NodeVector& u, const NodeVector& psi, const Discretization& disc) {
    if (u.nodes() != disc.node_count() || psi.nodes() != disc.node_count() || u.dim() != psi.dim()) {
        throw InvalidMesh("green_apply: shape mismatch between u, psi and the discretization");
    }
    return CandidateSolution(PiecewisePolynomial(disc.plus(), disc.abscissae, u),
                             PiecewisePolynomial(disc.minus(), disc.abscissae, psi));
}

StateView state_view(const CandidateSolution& v, double t, double omega, double tau) {
    if (omega < tau) {
        throw PeriodBelowDelay("period " + std::to_string(omega) + " below maximum delay " + std::to_string(tau));
    }
    return StateView(tau, [&v, t, omega](double sigma) { return v.value(t + sigma / omega); });
}

NodeVector final_state(const CandidateSolution& v, const Discretization& disc) {
    const auto points = node_points(disc.minus(), disc.abscissae);
    NodeVector out(points.size(), v.dim());
    for (std::size_t n = 0; n < points.size(); ++n) {
        const Vector value = v.value(1.0 + points[n]);
        for (int k = 0; k < v.dim(); ++k) out(n, k) = value[k];
    }
    return out;
}

}  // namespace rfde
