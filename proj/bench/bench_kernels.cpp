#include <benchmark/benchmark.h>

#include <map>
#include <memory>

#include "rfde/floquet.hpp"
#include "rfde/newton.hpp"

using namespace rfde;

namespace {

struct Fixture {
    CatalogProblem entry;
    PeriodicSolution solved;
    CollocationSystem system;
    Vector flat;
};

// Converged dist-logistic cycle at L intervals, m = 3, M = 20.
const Fixture& fixture(int intervals) {
    static std::map<int, std::unique_ptr<Fixture>> cache;
    auto& slot = cache[intervals];
    if (!slot) {
        auto entry = catalog_problem("dist-logistic");
        SolveConfig c;
        c.intervals = intervals;
        auto solved = solve_catalog(entry, c);
        CollocationSystem system(discretize_rhs(entry.problem, c.quadrature_nodes), solved.discretization,
                                 default_phase(entry));
        Vector flat = pack(solved.report.solution);
        slot = std::make_unique<Fixture>(Fixture{std::move(entry), std::move(solved), std::move(system), std::move(flat)});
    }
    return *slot;
}

ExecutionPolicy policy_of(const benchmark::State& state) {
    return state.range(1) == 0 ? ExecutionPolicy::Serial : ExecutionPolicy::Parallel;
}

void label(benchmark::State& state) { state.SetLabel(state.range(1) == 0 ? "serial" : "parallel"); }

void BM_JacobianAnalytic(benchmark::State& state) {
    const auto& f = fixture(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(f.system.jacobian(f.flat, JacobianMode::Analytic, policy_of(state)));
    label(state);
}

void BM_JacobianFiniteDifference(benchmark::State& state) {
    const auto& f = fixture(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.system.jacobian(f.flat, JacobianMode::FiniteDifference, policy_of(state)));
    }
    label(state);
}

void BM_Monodromy(benchmark::State& state) {
    const auto& f = fixture(static_cast<int>(state.range(0)));
    const auto op = build_linearized_operator(std::make_shared<const CandidateSolution>(f.solved.v), f.solved.omega,
                                              f.system.rhs());
    for (auto _ : state) benchmark::DoNotOptimize(monodromy_matrix(op, f.solved.discretization, policy_of(state)));
    label(state);
}

}  // namespace

BENCHMARK(BM_JacobianAnalytic)->ArgsProduct({{10, 20, 40}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JacobianFiniteDifference)->ArgsProduct({{10, 20}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Monodromy)->ArgsProduct({{10, 20, 40}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
