#pragma once

#include <vector>

#include "rfde/greens.hpp"
#include "rfde/parallel.hpp"
#include "rfde/phase.hpp"
#include "rfde/problem.hpp"

namespace rfde {

/// (u, psi, omega): derivative node values on [0, 1], state node values on
/// [-1, 0], and the period.
struct DiscreteUnknowns {
    NodeVector u;
    NodeVector psi;
    double omega = 0.0;

    bool operator==(const DiscreteUnknowns&) const = default;
};

/// Flat layout [u (node-major), psi (node-major), omega].
Vector pack(const DiscreteUnknowns& x);
DiscreteUnknowns unpack(const Vector& flat, std::size_t nodes, int dim);

enum class JacobianMode { FiniteDifference, Analytic };

/// Candidate for the unit vector e_column of the (u, psi) part of the layout.
CandidateSolution basis_candidate(const Discretization& disc, int dim, std::size_t column);

/// The square system x - Phi_{L,M}(x) = 0 in residual form:
///   U-block  u_r - omega G_M(v_{t_r} o s_omega)  at the 1 + Lm Plus nodes,
///   A-block  psi_r - v(1 + t_r)                  at the 1 + Lm Minus nodes,
///   phase    p(v).
class CollocationSystem {
public:
    CollocationSystem(DiscretizedRhs rhs, Discretization disc, PhaseCondition phase);

    const DiscretizedRhs& rhs() const { return rhs_; }
    const Discretization& discretization() const { return disc_; }
    const PhaseCondition& phase() const { return phase_; }
    int dim() const { return rhs_.dim(); }
    std::size_t nodes() const { return disc_.node_count(); }
    /// 2 (1 + Lm) d + 1
    std::size_t size() const { return 2 * nodes() * static_cast<std::size_t>(dim()) + 1; }
    const std::vector<double>& plus_nodes() const { return plus_nodes_; }
    const std::vector<double>& minus_nodes() const { return minus_nodes_; }

    CandidateSolution candidate(const DiscreteUnknowns& x) const;

    Vector residual(const DiscreteUnknowns& x) const;
    Vector residual(const Vector& flat) const { return residual(unpack(flat, nodes(), dim())); }

    /// FiniteDifference: central columns with step 1e-7 max(1, |x_j|), forward
    /// in omega. Analytic: exact linearization of every block.
    Matrix jacobian(const Vector& flat, JacobianMode mode = JacobianMode::Analytic,
                    ExecutionPolicy policy = ExecutionPolicy::Parallel) const;

    /// Linearizations omega DG_M(v_{t_r} o s_omega) of the U-block rows.
    std::vector<PointFunctional> row_functionals(const CandidateSolution& v, double omega) const;

    /// U-block rows of a linear direction dv: du_r - sum_q A_rq dv(t_r + sigma_q / omega),
    /// with A_rq already scaled by omega. out has (1 + Lm) d entries.
    void linear_u_rows(const std::vector<PointFunctional>& rows, double omega, const NodeVector& du,
                       const CandidateSolution& dv, Eigen::Ref<Vector> out) const;

private:
    Matrix jacobian_fd(const Vector& flat, ExecutionPolicy policy) const;
    Matrix jacobian_analytic(const Vector& flat, ExecutionPolicy policy) const;

    DiscretizedRhs rhs_;
    Discretization disc_;
    PhaseCondition phase_;
    std::vector<double> plus_nodes_;
    std::vector<double> minus_nodes_;
};

}  // namespace rfde
