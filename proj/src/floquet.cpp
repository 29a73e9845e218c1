#include "rfde/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "rfde/collocation.hpp"
#include "rfde/errors.hpp"

namespace rfde {

namespace {

constexpr double kMinRcond = 1e-14;

// -sum_q A_rq dv(t_r + sigma_q / omega) for every Plus node r.
void apply_rows(const std::vector<PointFunctional>& rows, const std::vector<double>& nodes, double omega,
                const CandidateSolution& dv, Eigen::Ref<Vector> out) {
    const int d = dv.dim();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const double t = nodes[r];
        const Vector image = rows[r].apply([&](double sigma) { return dv.value(t + sigma / omega); });
        out.segment(static_cast<Eigen::Index>(r) * d, d) = -image;
    }
}

}  // namespace

LinearizedOperator::LinearizedOperator(std::shared_ptr<const CandidateSolution> base, double omega, DiscretizedRhs rhs)
    : base_(std::move(base)), omega_(omega), rhs_(std::move(rhs)) {
    if (!base_) throw DomainError("linearized operator needs a base solution");
    if (omega_ < rhs_.tau()) {
        throw PeriodBelowDelay("period " + std::to_string(omega_) + " below maximum delay");
    }
}

PointFunctional LinearizedOperator::functional(double t) const {
    auto out = rhs_.linearize(state_view(*base_, t, omega_, rhs_.tau()));
    for (auto& block : out.blocks) block *= omega_;
    return out;
}

Vector LinearizedOperator::action(double t, const StateView& direction) const {
    return functional(t).apply([&](double sigma) { return direction(sigma); });
}

LinearizedOperator build_linearized_operator(std::shared_ptr<const CandidateSolution> base, double omega,
                                             const DiscretizedRhs& rhs) {
    return LinearizedOperator(std::move(base), omega, rhs);
}

Matrix monodromy_matrix(const LinearizedOperator& op, const Discretization& disc, ExecutionPolicy policy) {
    const int d = op.dim();
    const std::size_t nn = disc.node_count();
    const auto block = static_cast<Eigen::Index>(nn * d);
    const auto plus = node_points(disc.plus(), disc.abscissae);

    std::vector<PointFunctional> rows;
    rows.reserve(nn);
    for (double t : plus) rows.push_back(op.functional(t));

    // J_UU = I - L*G(., 0) and J_Upsi = -L*G(0, .) in node coordinates.
    Matrix juu(block, block);
    Matrix jupsi(block, block);
    for_each_index(2 * block, policy, [&](std::ptrdiff_t c) {
        const auto dv = basis_candidate(disc, d, static_cast<std::size_t>(c));
        Vector column(block);
        apply_rows(rows, plus, op.omega(), dv, column);
        if (c < block) {
            column[c] += 1.0;
            juu.col(c) = column;
        } else {
            jupsi.col(c - block) = column;
        }
    });

    const Eigen::PartialPivLU<Matrix> lu(juu);
    const double rcond = lu.rcond();
    if (!(rcond >= kMinRcond)) {
        throw SingularJacobian("linear collocation system of the monodromy is singular (rcond = " +
                               std::to_string(rcond) + ")");
    }

    Matrix monodromy(block, block);
    for_each_index(block, policy, [&](std::ptrdiff_t k) {
        const Vector u = lu.solve(-jupsi.col(k));
        NodeVector du(nn, d, std::vector<double>(u.data(), u.data() + block));
        NodeVector psi(nn, d);
        psi.data()[k] = 1.0;
        const auto v = green_apply(du, psi, disc);
        const auto end = final_state(v, disc);
        monodromy.col(k) = Eigen::Map<const Vector>(end.data().data(), block);
    });
    return monodromy;
}

FloquetReport multipliers_and_check(const Matrix& monodromy, double threshold) {
    if (monodromy.rows() != monodromy.cols()) throw NumericalError("monodromy matrix must be square");
    Eigen::EigenSolver<Matrix> solver(monodromy, false);
    if (solver.info() != Eigen::Success) throw NumericalError("eigenvalue iteration did not converge");

    FloquetReport report;
    report.threshold = threshold;
    const auto& values = solver.eigenvalues();
    report.multipliers.assign(values.data(), values.data() + values.size());
    std::stable_sort(report.multipliers.begin(), report.multipliers.end(),
                     [](const auto& a, const auto& b) { return std::abs(a) > std::abs(b); });

    report.trivial_error = std::numeric_limits<double>::infinity();
    int near_circle = 0;
    bool trivial_near = false;
    for (const auto& mu : report.multipliers) {
        const double to_one = std::abs(mu - 1.0);
        report.trivial_error = std::min(report.trivial_error, to_one);
        if (std::abs(std::abs(mu) - 1.0) < threshold) {
            ++near_circle;
            trivial_near = trivial_near || to_one < threshold;
        }
    }
    report.hyperbolic = near_circle == 1 && trivial_near;
    return report;
}

}  // namespace rfde
