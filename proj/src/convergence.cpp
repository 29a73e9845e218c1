#include "rfde/convergence.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "rfde/errors.hpp"

namespace rfde {

namespace {

constexpr int kCrossingSamples = 2000;
constexpr double kBisectionTol = 1e-13;

// Upward zero crossings of f on [a, b], refined by bisection.
std::vector<double> upward_roots(const std::function<double(double)>& f, double a, double b, int samples) {
    std::vector<double> out;
    double previous = f(a);
    for (int i = 1; i <= samples; ++i) {
        const double t = a + (b - a) * i / samples;
        const double current = f(t);
        if (previous < 0.0 && current >= 0.0) {
            double lo = a + (b - a) * (i - 1) / samples;
            double hi = t;
            while (hi - lo > kBisectionTol) {
                const double mid = 0.5 * (lo + hi);
                (f(mid) < 0.0 ? lo : hi) = mid;
            }
            out.push_back(0.5 * (lo + hi));
        }
        previous = current;
    }
    return out;
}

}  // namespace

ReferenceProfile exact_reference(const ExactOrbit& exact, const Section& section) {
    const auto roots = upward_roots([&](double t) { return exact.value(t)[section.component] - section.level; }, 0.0,
                                    exact.period, kCrossingSamples);
    if (roots.empty()) throw NoCycleDetected("exact orbit does not cross the section");
    return {exact.period, roots.front(), exact.value, exact.derivative};
}

ReferenceProfile oracle_reference(const ReferenceOrbit& orbit) {
    auto shared = std::make_shared<ReferenceOrbit>(orbit);
    return {orbit.period, 0.0, [shared](double s) { return shared->value(s); },
            [shared](double s) { return shared->derivative(s); }};
}

double solution_crossing(const CandidateSolution& v, const Section& section) {
    const auto roots = upward_roots([&](double t) { return v.value(t)[section.component] - section.level; }, 0.0,
                                    1.0, kCrossingSamples);
    if (roots.empty()) throw NoCycleDetected("computed solution does not cross the section");
    double best = roots.front();
    for (double t : roots) {
        if (std::min(t, 1.0 - t) < std::min(best, 1.0 - best)) best = t;
    }
    return best;
}

ProfileErrors compare_with_reference(const CandidateSolution& v, double omega, const ReferenceProfile& reference,
                                     const Section& section, int samples) {
    ProfileErrors out{0.0, 0.0, std::abs(omega - reference.period), solution_crossing(v, section)};
    for (int i = 0; i < samples; ++i) {
        const double t = -1.0 + 2.0 * i / (samples - 1);
        const double physical = reference.crossing + reference.period * (t - out.shift);
        out.err_v = std::max(out.err_v, (v.value(t) - reference.value(physical)).lpNorm<Eigen::Infinity>());
        out.err_vprime = std::max(
            out.err_vprime,
            (v.derivative(t) - reference.period * reference.derivative(physical)).lpNorm<Eigen::Infinity>());
    }
    return out;
}

ConvergenceReport run_convergence_study(const CatalogProblem& entry, int degree, const std::vector<int>& intervals,
                                        int quadrature_nodes, ReferenceKind reference, const OracleSettings& oracle,
                                        const NewtonSettings& newton) {
    if (intervals.empty()) throw InvalidMesh("convergence study needs at least one mesh level");
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (intervals[i] < 1) throw InvalidMesh("mesh levels must be positive");
        if (i > 0 && intervals[i] <= intervals[i - 1]) {
            throw InvalidMesh("mesh levels must be strictly increasing without repeats");
        }
    }

    ReferenceProfile profile;
    if (reference == ReferenceKind::Exact) {
        if (!entry.exact) throw UsageError("problem '" + entry.problem.name + "' has no closed-form orbit");
        profile = exact_reference(*entry.exact, entry.section);
    } else {
        profile = oracle_reference(
            extract_reference_orbit(entry.problem, entry.history, oracle.t_transient, entry.section, oracle.dt));
    }

    ConvergenceReport report{entry.problem.name, degree, quadrature_nodes, reference, profile.period, {}};
    SolveConfig config;
    config.degree = degree;
    config.quadrature_nodes = quadrature_nodes;
    config.newton = newton;
    for (int L : intervals) {
        config.intervals = L;
        const auto start = std::chrono::steady_clock::now();
        const auto solved = solve_catalog(entry, config);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        ConvergenceLevel level;
        level.intervals = L;
        level.h = 1.0 / L;
        level.errors = compare_with_reference(solved.v, solved.omega, profile, entry.section);
        level.error = std::max(level.errors.err_v, level.errors.err_omega);
        level.order = std::numeric_limits<double>::quiet_NaN();
        if (!report.levels.empty()) {
            const auto& prev = report.levels.back();
            level.order = std::log(prev.error / level.error) / std::log(static_cast<double>(L) / prev.intervals);
        }
        level.seconds = seconds;
        level.newton_iterations = solved.report.newton_iterations;
        report.levels.push_back(level);
    }
    return report;
}

}  // namespace rfde
