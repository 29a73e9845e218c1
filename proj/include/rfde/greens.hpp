#pragma once

#include "rfde/mesh.hpp"
#include "rfde/problem.hpp"

namespace rfde {

/// v = G(u, psi): psi on [-1, 0], psi(0) + integral of u on [0, 1].
class CandidateSolution {
public:
    CandidateSolution(PiecewisePolynomial u, PiecewisePolynomial psi);

    int dim() const { return psi_.dim(); }
    const PiecewisePolynomial& u() const { return integral_.integrand(); }
    const PiecewisePolynomial& psi() const { return psi_; }
    const PiecewiseIntegral& integral() const { return integral_; }
    const Vector& psi_at_zero() const { return psi0_; }

    /// v(t) for t in [-1, 1].
    Vector value(double t) const;
    /// Right derivative of v; equals u(t) on [0, 1].
    Vector derivative(double t) const;

private:
    PiecewiseIntegral integral_;
    PiecewisePolynomial psi_;
    Vector psi0_;
};

CandidateSolution green_apply(const NodeVector& u, const NodeVector& psi, const Discretization& disc);

/// sigma -> v(t + sigma / omega) on [-tau, 0]. The view refers to `v`, which
/// must outlive it. Throws PeriodBelowDelay if omega < tau.
StateView state_view(const CandidateSolution& v, double t, double omega, double tau);

/// Restriction to the Minus nodes of theta -> v(1 + theta).
NodeVector final_state(const CandidateSolution& v, const Discretization& disc);

}  // namespace rfde
