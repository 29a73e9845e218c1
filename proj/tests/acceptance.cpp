// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "rfde/convergence.hpp"
#include "rfde/floquet.hpp"
#include "rfde/newton.hpp"
#include "rfde/oracle.hpp"
#include "rfde/solution_io.hpp"

using namespace rfde;
using std::numbers::pi;

namespace {

constexpr double kOrderLow2 = 1.7, kOrderHigh2 = 3.2;
constexpr double kOrderLow3 = 2.7, kOrderHigh3 = 4.2;
constexpr double kMaxSeconds = 120.0;
constexpr double kPeriodTol = 1e-4;
constexpr double kProfileTol = 1e-3;
constexpr double kRelativePeriodTol = 1e-4;
constexpr double kTrivialTol = 1e-4;
constexpr double kGreenBound = 3.0 + 1e-8;
constexpr double kRatioSlack = 0.15;
constexpr double kJacobianTol = 1e-5;
constexpr double kQuadratureTol = 1e-8;

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* format, auto... args) {
    char buffer[512];
    std::snprintf(buffer, sizeof buffer, format, args...);
    return buffer;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Discretization make_disc(int intervals, int degree) { return {intervals, inner_abscissae(degree)}; }

SolveConfig config(int intervals, int degree, int quadrature = 20) {
    SolveConfig c;
    c.intervals = intervals;
    c.degree = degree;
    c.quadrature_nodes = quadrature;
    return c;
}

VectorFunction lift(std::function<double(double)> f) {
    return [f = std::move(f)](double t) { return Vector::Constant(1, f(t)); };
}

double interpolation_error(int intervals, int degree, const std::function<double(double)>& f) {
    const OuterMesh mesh(intervals, MeshSide::Plus);
    const auto c = inner_abscissae(degree);
    const auto p = prolong(restrict_to_nodes(lift(f), mesh, c), mesh, c);
    double worst = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        const double t = i / 4000.0;
        worst = std::max(worst, std::abs(p.value(t)[0] - f(t)));
    }
    return worst;
}

NodeVector random_nodes(std::mt19937& rng, std::size_t nodes, int dim, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> unit(lo, hi);
    NodeVector x(nodes, dim);
    for (double& e : x.data()) e = unit(rng);
    return x;
}

double sup_on(const std::function<Vector(double)>& f, double a, double b, int samples) {
    double out = 0.0;
    for (int i = 0; i <= samples; ++i) out = std::max(out, f(a + (b - a) * i / samples).lpNorm<Eigen::Infinity>());
    return out;
}

FloquetReport floquet_of(const CatalogProblem& entry, const PeriodicSolution& solved, int quadrature,
                         Matrix* monodromy = nullptr) {
    const auto op = build_linearized_operator(std::make_shared<const CandidateSolution>(solved.v), solved.omega,
                                              discretize_rhs(entry.problem, quadrature));
    Matrix m = monodromy_matrix(op, solved.discretization);
    auto report = multipliers_and_check(m);
    if (monodromy) *monodromy = std::move(m);
    return report;
}

Outcome criterion1() {
    const auto start = std::chrono::steady_clock::now();
    const auto entry = catalog_problem("mms");
    std::string detail;
    bool pass = true;
    auto check = [&](int degree, const std::vector<int>& levels, double lo, double hi) {
        const auto report = run_convergence_study(entry, degree, levels, 20, ReferenceKind::Exact);
        detail += fmt("m=%d orders", degree);
        for (std::size_t i = 1; i < report.levels.size(); ++i) {
            const double order = report.levels[i].order;
            detail += fmt(" %.3f", order);
            pass = pass && order >= lo && order <= hi;
        }
        detail += fmt(" (want [%.1f, %.1f]); ", lo, hi);
    };
    check(2, {10, 20, 40, 80}, kOrderLow2, kOrderHigh2);
    check(3, {10, 20, 40}, kOrderLow3, kOrderHigh3);
    const double seconds = seconds_since(start);
    pass = pass && seconds <= kMaxSeconds;
    return {pass, detail + fmt("%.1f s", seconds)};
}

Outcome criterion2() {
    const auto solved = solve_catalog(catalog_problem("mms"), config(40, 3));
    const double gap = std::abs(solved.omega - 2.0);
    return {gap <= kPeriodTol, fmt("|omega - 2| = %.3e (want <= %.0e)", gap, kPeriodTol)};
}

Outcome criterion3() {
    const auto start = std::chrono::steady_clock::now();
    const auto entry = catalog_problem("logistic", {{"r", 2.0}});
    const auto solved = solve_catalog(entry, config(40, 3));
    const auto orbit = extract_reference_orbit(entry.problem, entry.history, 200.0, entry.section, 1e-3);
    const auto errors = compare_with_reference(solved.v, solved.omega, oracle_reference(orbit), entry.section);
    const double relative = errors.err_omega / orbit.period;
    const double seconds = seconds_since(start);
    const bool pass = errors.err_v <= kProfileTol && relative <= kRelativePeriodTol && seconds <= kMaxSeconds;
    return {pass, fmt("profile %.3e (want <= %.0e), period %.3e relative (want <= %.0e), %.1f s", errors.err_v, kProfileTol,
                      relative, kRelativePeriodTol, seconds)};
}

Outcome criterion4() {
    std::string detail;
    bool pass = true;
    for (const char* name : {"mms", "logistic"}) {
        const auto entry = catalog_problem(name);
        const auto solved = solve_catalog(entry, config(40, 3));
        const auto report = floquet_of(entry, solved, 20);
        detail += fmt("%s trivial_error %.3e", name, report.trivial_error);
        pass = pass && report.trivial_error <= kTrivialTol;
        if (std::string(name) == "logistic") {
            // every multiplier but the one closest to 1 strictly inside the unit circle
            double largest = 0.0;
            bool skipped = false;
            for (const auto& mu : report.multipliers) {
                if (!skipped && std::abs(mu - 1.0) == report.trivial_error) {
                    skipped = true;
                    continue;
                }
                largest = std::max(largest, std::abs(mu));
            }
            detail += fmt(", largest nontrivial |mu| %.4g, hyperbolic %s", largest, report.hyperbolic ? "yes" : "no");
            pass = pass && largest < 1.0 && report.hyperbolic;
        }
        detail += "; ";
    }
    return {pass, detail};
}

double green_ratio(std::mt19937& rng, int intervals, int degree) {
    const auto disc = make_disc(intervals, degree);
    const auto u = random_nodes(rng, disc.node_count(), 1);
    const auto psi = random_nodes(rng, disc.node_count(), 1);
    const auto v = green_apply(u, psi, disc);
    const auto pu = prolong(u, disc.plus(), disc.abscissae);
    const auto pp = prolong(psi, disc.minus(), disc.abscissae);
    const double nu = sup_on([&](double t) { return pu.value(t); }, 0.0, 1.0, 2000);
    const double np = sup_on([&](double t) { return pp.value(t); }, -1.0, 0.0, 2000) +
                      sup_on([&](double t) { return pp.derivative(t); }, -1.0, 0.0, 2000);
    const double nv = sup_on([&](double t) { return v.value(t); }, -1.0, 1.0, 2000) +
                      sup_on([&](double t) { return v.derivative(t); }, -1.0, 1.0, 2000);
    return nv / std::max(nu, np);
}

Outcome criterion5() {
    std::mt19937 rng(2024);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) worst = std::max(worst, green_ratio(rng, 1 + trial % 12, 1 + trial % 4));
    return {worst <= kGreenBound, fmt("worst ratio %.6f over 1000 pairs (want <= 3 + 1e-8)", worst)};
}

Outcome criterion6() {
    auto f = [](double t) { return std::sin(2.0 * pi * t); };
    std::string detail;
    bool pass = true;
    for (int m = 1; m <= 3; ++m) {
        const double target = std::pow(2.0, m + 1);
        detail += fmt("m=%d ratios", m);
        double previous = interpolation_error(10, m, f);
        for (int L : {20, 40, 80}) {
            const double e = interpolation_error(L, m, f);
            const double ratio = previous / e;
            detail += fmt(" %.2f", ratio);
            pass = pass && std::abs(ratio - target) <= kRatioSlack * target;
            previous = e;
        }
        detail += fmt(" (want %g +- 15%%); ", target);
    }
    return {pass, detail};
}

// Random smooth states: the catalog guess plus three random Fourier modes per
// component, omega within 10% of the catalog value.
double jacobian_discrepancy(const char* name, std::mt19937& rng, int points) {
    const auto entry = catalog_problem(name);
    const auto disc = make_disc(8, 3);
    const CollocationSystem system(discretize_rhs(entry.problem, 10), disc, default_phase(entry));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const int d = entry.problem.dim;
    double worst = 0.0;
    for (int k = 0; k < points; ++k) {
        Matrix coeff(d, 6);
        for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff.data()[i] = 0.3 * unit(rng);
        const VectorFunction state = [&](double t) {
            Vector y = entry.guess(t);
            for (int c = 0; c < d; ++c)
                for (int j = 1; j <= 3; ++j)
                    y[c] += (coeff(c, 2 * j - 2) * std::cos(2.0 * pi * j * t) + coeff(c, 2 * j - 1) * std::sin(2.0 * pi * j * t)) / j;
            return y;
        };
        const Vector flat = pack(restrict_guess(state, entry.omega_guess * (1.0 + 0.1 * unit(rng)), disc));
        const Matrix analytic = system.jacobian(flat, JacobianMode::Analytic);
        const Matrix fd = system.jacobian(flat, JacobianMode::FiniteDifference);
        worst = std::max(worst, ((analytic - fd).array().abs() / analytic.array().abs().max(1.0)).maxCoeff());
    }
    return worst;
}

Outcome criterion7() {
    std::mt19937 rng(7);
    std::string detail;
    bool pass = true;
    for (const auto& name : catalog_names()) {
        const double worst = jacobian_discrepancy(name.c_str(), rng, 5);
        detail += fmt("%s %.2e; ", name.c_str(), worst);
        pass = pass && worst <= kJacobianTol;
    }
    return {pass, detail + fmt("(want <= %.0e)", kJacobianTol)};
}

Outcome criterion8() {
    const auto entry = catalog_problem("dist-logistic");
    const double reference = solve_catalog(entry, config(40, 3, 40)).omega;
    std::string detail;
    bool pass = true;
    for (int M : {10, 15, 20, 30}) {
        const double gap = std::abs(solve_catalog(entry, config(40, 3, M)).omega - reference);
        detail += fmt("M=%d %.2e; ", M, gap);
        pass = pass && gap <= kQuadratureTol;
    }
    return {pass, detail + fmt("(want <= %.0e)", kQuadratureTol)};
}

// Invariant suites, each returning its worst measured quantity against a bound.
struct Invariant {
    std::string name;
    double measured;
    double bound;
    bool ok() const { return measured <= bound; }
};

std::vector<Invariant> mesh_invariants() {
    std::vector<Invariant> out;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> unit(-1.0, 1.0), where(0.0, 1.0);

    double unity = 0.0;
    for (int m = 1; m <= 6; ++m) {
        for (auto family : {AbscissaeFamily::GaussLegendre, AbscissaeFamily::Chebyshev}) {
            const auto c = inner_abscissae(m, family);
            for (int s = 0; s < 1000; ++s) {
                double sum = 0.0;
                for (double w : lagrange_weights(c.reference_nodes(), where(rng))) sum += w;
                unity = std::max(unity, std::abs(sum - 1.0));
            }
        }
    }
    out.push_back({"mesh: partition of unity", unity, 1e-12});

    double idempotence = 0.0;
    for (int m = 1; m <= 4; ++m) {
        const OuterMesh mesh(8, MeshSide::Minus);
        const auto c = inner_abscissae(m);
        const auto p = prolong(random_nodes(rng, 1 + 8 * m, 1), mesh, c);
        const auto again = prolong(restrict_to_nodes([&](double t) { return p.value(t); }, mesh, c), mesh, c);
        for (int s = 0; s < 1000; ++s) {
            const double t = -where(rng);
            idempotence = std::max(idempotence, std::abs(again.value(t)[0] - p.value(t)[0]));
        }
    }
    out.push_back({"mesh: projection idempotence", idempotence, 1e-10});

    for (int m = 1; m <= 3; ++m) {
        const auto c = inner_abscissae(m);
        const double lambda = lebesgue_constants(c.reference_nodes()).value;
        double worst = 0.0;
        for (int trial = 0; trial < 1000; ++trial) {
            const int L = 1 + trial % 40;
            const double a = 10.0 * unit(rng), b = 6.0 * unit(rng), k = unit(rng);
            auto f = [=](double t) { return std::clamp(std::sin(a * t + b) + k * std::abs(t - 0.5), -1.0, 1.0); };
            const OuterMesh mesh(L, MeshSide::Plus);
            const auto p = prolong(restrict_to_nodes(lift(f), mesh, c), mesh, c);
            double norm = 0.0, image = 0.0;
            for (int i = 0; i <= 2000; ++i) {
                norm = std::max(norm, std::abs(f(i / 2000.0)));
                image = std::max(image, std::abs(p.value(i / 2000.0)[0]));
            }
            worst = std::max(worst, image / norm);
        }
        out.push_back({fmt("mesh: operator bound m=%d (Lambda %.4f)", m, lambda), worst, lambda + 1e-8});
    }

    auto g = [](double t) { return std::abs(std::sin(3.0 * t)); };
    double growth = 0.0;
    for (int m = 1; m <= 3; ++m) {
        double previous = interpolation_error(10, m, g);
        for (int L : {20, 40, 80}) {
            const double e = interpolation_error(L, m, g);
            growth = std::max(growth, e / previous);
            previous = e;
        }
    }
    out.push_back({"mesh: |sin 3t| error ratio under refinement", growth, 1.1});

    const OuterMesh mesh(5, MeshSide::Plus);
    const auto c = inner_abscissae(3);
    const auto q = antiderivative(prolong(random_nodes(rng, 16, 1), mesh, c));
    double derivative = 0.0;
    const double h = 1e-3;
    for (int s = 0; s < 200; ++s) {
        const double t = where(rng);
        const double local = t * 5.0 - std::floor(t * 5.0);
        if (local < 0.02 || local > 0.98) continue;
        const double fd = (-q.value(t + 2 * h)[0] + 8 * q.value(t + h)[0] - 8 * q.value(t - h)[0] + q.value(t - 2 * h)[0]) /
                          (12 * h);
        derivative = std::max(derivative, std::abs(fd - q.derivative(t)[0]));
    }
    out.push_back({"mesh: antiderivative derivative", derivative, 1e-10});
    return out;
}

std::vector<Invariant> problem_invariants() {
    std::vector<Invariant> out;
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto random_state = [&](int dim) {
        Matrix coeff(dim, 4);
        for (int i = 0; i < dim; ++i) coeff.row(i) << 1.0 + 0.5 * unit(rng), unit(rng), 3.0 * unit(rng), unit(rng);
        return StateView(1.0, [coeff](double s) {
            Vector y(coeff.rows());
            for (int i = 0; i < coeff.rows(); ++i) y[i] = coeff(i, 0) + coeff(i, 1) * std::sin(coeff(i, 2) * s + coeff(i, 3));
            return y;
        });
    };

    double passthrough = 0.0;
    for (const char* name : {"logistic", "mms"}) {
        const auto entry = catalog_problem(name);
        const auto g = discretize_rhs(entry.problem, 7);
        for (int k = 0; k < 100; ++k) {
            const auto state = random_state(entry.problem.dim);
            passthrough = std::max(passthrough, (eval_rhs(entry.problem, state) - g.evaluate(state)).lpNorm<Eigen::Infinity>());
        }
    }
    out.push_back({"problem: discrete-only pass-through", passthrough, 0.0});

    double weights = 0.0;
    const auto dist = catalog_problem("dist-logistic");
    for (int M : {1, 3, 10, 40}) {
        const auto g = discretize_rhs(dist.problem, M);
        double sum = 0.0;
        for (double w : g.quadrature_weights()) sum += w;
        weights = std::max(weights, std::abs(sum - dist.problem.tau));
    }
    out.push_back({"problem: quadrature weights sum to tau", weights, 1e-12});

    double linearity = 0.0;
    for (int k = 0; k < 20; ++k) {
        const auto state = random_state(1), d1 = random_state(1), d2 = random_state(1);
        const double a = 2.0 * unit(rng), b = 2.0 * unit(rng);
        const StateView combo(1.0, [&](double s) { return Vector(a * d1(s) + b * d2(s)); });
        for (auto mode : {DirectionalMode::Auto, DirectionalMode::FiniteDifference}) {
            const double lhs = eval_rhs_directional(dist.problem, state, combo, mode)[0];
            const double rhs = a * eval_rhs_directional(dist.problem, state, d1, mode)[0] +
                               b * eval_rhs_directional(dist.problem, state, d2, mode)[0];
            linearity = std::max(linearity, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
    }
    out.push_back({"problem: directional derivative linearity", linearity, 1e-4});
    return out;
}

std::vector<Invariant> greens_invariants() {
    std::vector<Invariant> out;
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    double lipschitz = 0.0, junction = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const auto disc = make_disc(2 + trial % 6, 1 + trial % 3);
        const auto u = random_nodes(rng, disc.node_count(), 1);
        const auto psi = random_nodes(rng, disc.node_count(), 1);
        const auto v = green_apply(u, psi, disc);
        const auto pu = prolong(u, disc.plus(), disc.abscissae);
        const auto pp = prolong(psi, disc.minus(), disc.abscissae);
        const double lip = std::max(sup_on([&](double t) { return pu.value(t); }, 0.0, 1.0, 2000),
                                    sup_on([&](double t) { return pp.value(t); }, -1.0, 0.0, 2000) +
                                        sup_on([&](double t) { return pp.derivative(t); }, -1.0, 0.0, 2000));
        for (int s = 0; s < 1000; ++s) {
            const double t1 = unit(rng), t2 = unit(rng);
            lipschitz = std::max(lipschitz, std::abs(v.value(t1)[0] - v.value(t2)[0]) - lip * std::abs(t1 - t2));
        }
        junction = std::max(junction, std::abs(v.value(0.0)[0] - v.psi().value(0.0)[0]));
    }
    out.push_back({"greens: Lipschitz bound excess", lipschitz, 1e-8});
    out.push_back({"greens: v(0) = psi(0)", junction, 0.0});
    return out;
}

std::vector<Invariant> solver_invariants() {
    std::vector<Invariant> out;
    double periodicity = 0.0, phase = 0.0, lipschitz = 0.0;
    for (const char* name : {"logistic", "mms", "dist-logistic"}) {
        const auto entry = catalog_problem(name);
        const auto solved = solve_catalog(entry, config(20, 3));
        const auto& disc = solved.discretization;
        const auto points = node_points(disc.minus(), disc.abscissae);
        const auto& psi = solved.report.solution.psi;
        for (std::size_t n = 0; n < points.size(); ++n) {
            const Vector at = solved.v.value(1.0 + points[n]);
            for (int k = 0; k < psi.dim(); ++k) periodicity = std::max(periodicity, std::abs(psi(n, k) - at[k]));
        }
        const auto condition = default_phase(entry);
        phase = std::max(phase, std::abs(phase_eval(condition, solved.v)));

        const CollocationSystem system(discretize_rhs(entry.problem, 20), disc, condition);
        double dg = 0.0;
        for (const auto& row : system.row_functionals(solved.v, solved.omega)) dg = std::max(dg, row.norm());
        const double slope = sup_on([&](double t) { return solved.v.derivative(t); }, -1.0, 1.0, 2000);
        double quotient = 0.0;
        for (int i = 0; i < 2000; ++i) {
            const double a = i / 2000.0, b = (i + 1) / 2000.0;
            quotient = std::max(quotient, (solved.v.derivative(b) - solved.v.derivative(a)).lpNorm<Eigen::Infinity>() / (b - a));
        }
        lipschitz = std::max(lipschitz, quotient / (1.1 * dg * slope));
    }
    out.push_back({"solver: discrete periodicity", periodicity, 1e-10});
    out.push_back({"solver: phase exactness", phase, 1e-10});
    out.push_back({"solver: u* Lipschitz quotient / bound", lipschitz, 1.0});

    std::size_t mismatch = 0;
    for (int L : {1, 4, 9}) {
        for (int m : {1, 3}) {
            const auto entry = catalog_problem("mms");
            const auto disc = make_disc(L, m);
            const CollocationSystem system(discretize_rhs(entry.problem, 4), disc, default_phase(entry));
            const auto x = restrict_guess(entry.guess, 2.0, disc);
            const std::size_t n = 2 * (1 + L * m) * 2 + 1;
            mismatch += static_cast<std::size_t>(system.residual(x).size()) != n;
            mismatch += static_cast<std::size_t>(system.jacobian(pack(x)).cols()) != n;
        }
    }
    out.push_back({"solver: square system mismatches", static_cast<double>(mismatch), 0.0});

    std::mt19937 rng(19);
    double jacobian = 0.0;
    for (const auto& name : catalog_names()) jacobian = std::max(jacobian, jacobian_discrepancy(name.c_str(), rng, 2));
    out.push_back({"solver: analytic vs FD Jacobian", jacobian, 1e-5});
    return out;
}

std::vector<Invariant> floquet_invariants() {
    std::vector<Invariant> out;
    const auto mms = catalog_problem("mms");
    double growth = 0.0, previous = std::numeric_limits<double>::infinity();
    for (int L : {10, 20, 40}) {
        const double e = floquet_of(mms, solve_catalog(mms, config(L, 3)), 20).trivial_error;
        growth = std::max(growth, e - 1.2 * previous);
        previous = e;
    }
    out.push_back({"floquet: mms trivial error growth beyond 20%", growth, 1e-13});

    double fixed = 0.0;
    for (const char* name : {"mms", "logistic"}) {
        const auto entry = catalog_problem(name);
        const auto solved = solve_catalog(entry, config(40, 3));
        Matrix monodromy;
        floquet_of(entry, solved, 20, &monodromy);
        const auto& disc = solved.discretization;
        const auto points = node_points(disc.minus(), disc.abscissae);
        const int d = solved.v.dim();
        Vector phi(static_cast<Eigen::Index>(points.size()) * d);
        for (std::size_t n = 0; n < points.size(); ++n)
            phi.segment(static_cast<Eigen::Index>(n) * d, d) = solved.v.derivative(points[n]);
        fixed = std::max(fixed, (monodromy * phi - phi).lpNorm<Eigen::Infinity>() / phi.lpNorm<Eigen::Infinity>());
    }
    out.push_back({"floquet: orbit derivative fixed by monodromy", fixed, 1e-2});
    return out;
}

std::vector<Invariant> oracle_invariants() {
    const auto entry = catalog_problem("logistic");
    std::vector<double> periods;
    for (double dt : {0.04, 0.02, 0.01})
        periods.push_back(extract_reference_orbit(entry.problem, entry.history, 200.0, entry.section, dt).period);
    const double ratio = std::abs(periods[0] - periods[1]) / std::abs(periods[1] - periods[2]);
    return {{"oracle: dt-halving ratio deviation from 16", std::abs(ratio - 16.0) / 16.0, 0.3}};
}

std::vector<Invariant> io_invariants() {
    const auto dir = std::filesystem::temp_directory_path() / "rfde_acceptance";
    std::filesystem::create_directories(dir);
    double mismatches = 0.0;
    for (const auto& name : catalog_names()) {
        const auto entry = catalog_problem(name);
        const auto file = make_solution_file(entry.problem, solve_catalog(entry, config(12, 3)), 20);
        const auto path = dir / (name + ".json");
        save_solution(path, file);
        mismatches += !(load_solution(path) == file);
        mismatches += solution_to_json(file) != solution_to_json(
                                                    make_solution_file(entry.problem, solve_catalog(entry, config(12, 3)), 20));
    }
    std::filesystem::remove_all(dir);
    return {{"io: round-trip and determinism mismatches", mismatches, 0.0}};
}

Outcome criterion9() {
    std::vector<Invariant> all;
    for (auto suite : {mesh_invariants, problem_invariants, greens_invariants, solver_invariants, floquet_invariants,
                       oracle_invariants, io_invariants}) {
        for (auto& inv : suite()) all.push_back(std::move(inv));
    }
    std::string detail;
    int failed = 0;
    for (const auto& inv : all) {
        std::printf("    %-50s %.3e (bound %.3e) %s\n", inv.name.c_str(), inv.measured, inv.bound,
                    inv.ok() ? "ok" : "VIOLATED");
        if (!inv.ok()) {
            ++failed;
            detail += inv.name + "; ";
        }
    }
    return {failed == 0, fmt("%d of %zu invariants violated", failed, all.size()) + (failed ? ": " + detail : "")};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
        {"FEM order against the exact mms orbit", criterion1},
        {"mms period accuracy", criterion2},
        {"logistic against the time-integration oracle", criterion3},
        {"trivial Floquet multiplier and logistic stability", criterion4},
        {"Green-operator bound", criterion5},
        {"interpolation order", criterion6},
        {"Jacobian consistency", criterion7},
        {"secondary discretization", criterion8},
        {"invariant suites", criterion9},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        failures += !outcome.pass;
        std::printf("criterion %zu: %s  %s [%.1f s] %s\n", i + 1, outcome.pass ? "PASS" : "FAIL", criteria[i].first,
                    seconds_since(start), outcome.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
