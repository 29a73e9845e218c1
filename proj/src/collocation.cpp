#include "rfde/collocation.hpp"

#include <algorithm>
#include <cmath>

#include "rfde/errors.hpp"

namespace rfde {

Vector pack(const DiscreteUnknowns& x) {
    const auto nu = static_cast<Eigen::Index>(x.u.size());
    const auto npsi = static_cast<Eigen::Index>(x.psi.size());
    Vector flat(nu + npsi + 1);
    std::copy(x.u.data().begin(), x.u.data().end(), flat.data());
    std::copy(x.psi.data().begin(), x.psi.data().end(), flat.data() + nu);
    flat[nu + npsi] = x.omega;
    return flat;
}

DiscreteUnknowns unpack(const Vector& flat, std::size_t nodes, int dim) {
    const auto block = static_cast<Eigen::Index>(nodes * dim);
    if (flat.size() != 2 * block + 1) {
        throw InvalidMesh("unpack: expected " + std::to_string(2 * block + 1) + " unknowns, got " +
                          std::to_string(flat.size()));
    }
    DiscreteUnknowns x;
    x.u = NodeVector(nodes, dim, std::vector<double>(flat.data(), flat.data() + block));
    x.psi = NodeVector(nodes, dim, std::vector<double>(flat.data() + block, flat.data() + 2 * block));
    x.omega = flat[2 * block];
    return x;
}

CandidateSolution basis_candidate(const Discretization& disc, int dim, std::size_t column) {
    const std::size_t block = disc.node_count() * dim;
    NodeVector du(disc.node_count(), dim);
    NodeVector dpsi(disc.node_count(), dim);
    if (column < block) {
        du.data()[column] = 1.0;
    } else {
        dpsi.data()[column - block] = 1.0;
    }
    return green_apply(du, dpsi, disc);
}

CollocationSystem::CollocationSystem(DiscretizedRhs rhs, Discretization disc, PhaseCondition phase)
    : rhs_(std::move(rhs)), disc_(std::move(disc)), phase_(std::move(phase)) {
    validate_phase(phase_, rhs_.dim());
    plus_nodes_ = node_points(disc_.plus(), disc_.abscissae);
    minus_nodes_ = node_points(disc_.minus(), disc_.abscissae);
}

CandidateSolution CollocationSystem::candidate(const DiscreteUnknowns& x) const {
    return green_apply(x.u, x.psi, disc_);
}

Vector CollocationSystem::residual(const DiscreteUnknowns& x) const {
    const int d = dim();
    const std::size_t n = nodes();
    if (x.u.dim() != d || x.psi.dim() != d) {
        throw InvalidMesh("residual: unknowns have dimension " + std::to_string(x.u.dim()) + ", problem has " +
                          std::to_string(d));
    }
    const auto v = candidate(x);
    Vector out(static_cast<Eigen::Index>(size()));
    for (std::size_t r = 0; r < n; ++r) {
        const Vector g = rhs_.evaluate(state_view(v, plus_nodes_[r], x.omega, rhs_.tau()));
        for (int k = 0; k < d; ++k) out[r * d + k] = x.u(r, k) - x.omega * g[k];
    }
    const std::size_t offset = n * d;
    for (std::size_t r = 0; r < n; ++r) {
        const Vector end = v.value(1.0 + minus_nodes_[r]);
        for (int k = 0; k < d; ++k) out[offset + r * d + k] = x.psi(r, k) - end[k];
    }
    out[out.size() - 1] = phase_eval(phase_, v);
    return out;
}

std::vector<PointFunctional> CollocationSystem::row_functionals(const CandidateSolution& v, double omega) const {
    std::vector<PointFunctional> rows;
    rows.reserve(nodes());
    for (double t : plus_nodes_) {
        auto functional = rhs_.linearize(state_view(v, t, omega, rhs_.tau()));
        for (auto& block : functional.blocks) block *= omega;
        rows.push_back(std::move(functional));
    }
    return rows;
}

void CollocationSystem::linear_u_rows(const std::vector<PointFunctional>& rows, double omega, const NodeVector& du,
                                      const CandidateSolution& dv, Eigen::Ref<Vector> out) const {
    const int d = dim();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const double t = plus_nodes_[r];
        const Vector image = rows[r].apply([&](double sigma) { return dv.value(t + sigma / omega); });
        for (int k = 0; k < d; ++k) out[r * d + k] = du(r, k) - image[k];
    }
}

Matrix CollocationSystem::jacobian(const Vector& flat, JacobianMode mode, ExecutionPolicy policy) const {
    if (flat.size() != static_cast<Eigen::Index>(size())) {
        throw InvalidMesh("jacobian: wrong number of unknowns");
    }
    return mode == JacobianMode::Analytic ? jacobian_analytic(flat, policy) : jacobian_fd(flat, policy);
}

Matrix CollocationSystem::jacobian_fd(const Vector& flat, ExecutionPolicy policy) const {
    const auto n = static_cast<Eigen::Index>(size());
    Matrix jac(n, n);
    const Vector base = residual(flat);
    for_each_index(n, policy, [&](std::ptrdiff_t j) {
        Vector x = flat;
        const double step = 1e-7 * std::max(1.0, std::abs(flat[j]));
        if (j == n - 1) {
            // omega: one-sided, increasing
            x[j] = flat[j] + step;
            jac.col(j) = (residual(x) - base) / step;
            return;
        }
        x[j] = flat[j] + step;
        const Vector plus = residual(x);
        x[j] = flat[j] - step;
        const Vector minus = residual(x);
        jac.col(j) = (plus - minus) / (2.0 * step);
    });
    return jac;
}

Matrix CollocationSystem::jacobian_analytic(const Vector& flat, ExecutionPolicy policy) const {
    const int d = dim();
    const std::size_t nn = nodes();
    const auto x = unpack(flat, nn, d);
    const auto v = candidate(x);
    const double omega = x.omega;
    const auto rows = row_functionals(v, omega);
    const auto n = static_cast<Eigen::Index>(size());
    const auto block = static_cast<Eigen::Index>(nn * d);

    Matrix jac = Matrix::Zero(n, n);
    for_each_index(2 * block, policy, [&](std::ptrdiff_t c) {
        const auto dv = basis_candidate(disc_, d, static_cast<std::size_t>(c));
        NodeVector du(nn, d);
        NodeVector dpsi(nn, d);
        if (c < block) {
            du.data()[c] = 1.0;
        } else {
            dpsi.data()[c - block] = 1.0;
        }
        Vector column(n);
        linear_u_rows(rows, omega, du, dv, column.head(block));
        for (std::size_t r = 0; r < nn; ++r) {
            const Vector end = dv.value(1.0 + minus_nodes_[r]);
            for (int k = 0; k < d; ++k) column[block + r * d + k] = dpsi(r, k) - end[k];
        }
        column[n - 1] = phase_linear(phase_, dv);
        jac.col(c) = column;
    });

    // d/domega of u_r - omega G(v(t_r + . / omega)) = -(G - DG[v'(t_r + s / omega) s / omega]).
    for (std::size_t r = 0; r < nn; ++r) {
        const double t = plus_nodes_[r];
        const Vector g = rhs_.evaluate(state_view(v, t, omega, rhs_.tau()));
        Vector drift = Vector::Zero(d);
        for (std::size_t q = 0; q < rows[r].sigmas.size(); ++q) {
            const double s = rows[r].sigmas[q];
            drift += (rows[r].blocks[q] / omega) * (v.derivative(t + s / omega) * (s / omega));
        }
        jac.block(static_cast<Eigen::Index>(r) * d, n - 1, d, 1) = -(g - drift);
    }
    return jac;
}

}  // namespace rfde
