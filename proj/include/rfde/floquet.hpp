#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "rfde/greens.hpp"
#include "rfde/parallel.hpp"
#include "rfde/problem.hpp"

namespace rfde {

/// Linearization around (v*, omega*): direction -> omega* DG_M(v*_t o s_omega*)[direction].
class LinearizedOperator {
public:
    LinearizedOperator(std::shared_ptr<const CandidateSolution> base, double omega, DiscretizedRhs rhs);

    const CandidateSolution& base() const { return *base_; }
    double omega() const { return omega_; }
    const DiscretizedRhs& rhs() const { return rhs_; }
    int dim() const { return rhs_.dim(); }

    Vector action(double t, const StateView& direction) const;
    /// The action at time t as a point functional (blocks include omega*).
    PointFunctional functional(double t) const;

private:
    std::shared_ptr<const CandidateSolution> base_;
    double omega_;
    DiscretizedRhs rhs_;
};

LinearizedOperator build_linearized_operator(std::shared_ptr<const CandidateSolution> base, double omega,
                                             const DiscretizedRhs& rhs);

/// Matrix of the discrete period map on the Minus node coordinates. Column k
/// solves the linear collocation problem u_r = L*(t_r)[G(u, e_k)] (one LU for
/// all columns) and restricts theta -> G(u, e_k)(1 + theta).
Matrix monodromy_matrix(const LinearizedOperator& op, const Discretization& disc,
                        ExecutionPolicy policy = ExecutionPolicy::Parallel);

struct FloquetReport {
    std::vector<std::complex<double>> multipliers;  // sorted by decreasing modulus
    double trivial_error;                           // min |mu - 1|
    bool hyperbolic;
    double threshold;
};

/// Eigenvalues by Eigen's real Schur (QR) solver. Hyperbolic iff exactly one
/// multiplier has ||mu| - 1| < threshold and it satisfies |mu - 1| < threshold.
FloquetReport multipliers_and_check(const Matrix& monodromy, double threshold = 1e-2);

}  // namespace rfde
