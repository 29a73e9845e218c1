#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "rfde/catalog.hpp"
#include "rfde/continuation.hpp"
#include "rfde/convergence.hpp"
#include "rfde/errors.hpp"
#include "rfde/floquet.hpp"
#include "rfde/newton.hpp"
#include "rfde/oracle.hpp"
#include "rfde/solution_io.hpp"

namespace {

using namespace rfde;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
    std::map<std::string, double> out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::string text = item.substr(eq + 1);
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != text.size()) throw UsageError("parameter '" + key + "' needs a number, got '" + text + "'");
        out[key] = value;
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            std::size_t used = 0;
            const int value = std::stoi(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(value);
        } catch (const std::exception&) {
            throw UsageError("expected a comma-separated list of integers, got '" + text + "'");
        }
    }
    if (out.empty()) throw UsageError("empty list of mesh levels");
    return out;
}

// trivial, trivial:k=K,level=Y, or integral.
PhaseCondition parse_phase(const std::string& text, const CatalogProblem& entry, const Discretization& disc) {
    if (text == "integral") {
        const auto x = restrict_guess(entry.guess, entry.omega_guess, disc);
        return IntegralPhase{std::make_shared<const CandidateSolution>(green_apply(x.u, x.psi, disc))};
    }
    if (text.rfind("trivial", 0) != 0) throw UsageError("unknown phase condition '" + text + "'");
    TrivialPhase phase = std::get<TrivialPhase>(default_phase(entry));
    if (text.size() > 7) {
        if (text[7] != ':') throw UsageError("unknown phase condition '" + text + "'");
        std::vector<std::string> items;
        std::stringstream stream(text.substr(8));
        std::string item;
        while (std::getline(stream, item, ',')) items.push_back(item);
        for (const auto& [key, value] : parse_params(items)) {
            if (key == "k") {
                phase.component = static_cast<int>(value) - 1;
                if (phase.component + 1 != value) throw UsageError("phase component k must be an integer");
            } else if (key == "level") {
                phase.level = value;
            } else {
                throw UsageError("unknown trivial phase key '" + key + "'");
            }
        }
    }
    validate_phase(phase, entry.problem.dim);
    return phase;
}

struct SolveOptions {
    std::string problem;
    std::vector<std::string> params;
    int L = 20;
    int m = 3;
    int M = 20;
    std::string family = "gauss-legendre";
    std::string phase = "trivial";
    std::string jacobian = "analytic";
    double tol = 1e-10;
    int max_iter = 50;
    std::string out;
};

SolveConfig make_config(const SolveOptions& o) {
    SolveConfig config;
    config.intervals = o.L;
    config.degree = o.m;
    config.quadrature_nodes = o.M;
    try {
        config.family = abscissae_family_from_string(o.family);
    } catch (const InvalidMesh& e) {
        throw UsageError(e.what());
    }
    if (config.family == AbscissaeFamily::Custom) throw UsageError("custom abscissae are not available from the CLI");
    if (o.jacobian == "analytic") {
        config.newton.jacobian = JacobianMode::Analytic;
    } else if (o.jacobian == "fd") {
        config.newton.jacobian = JacobianMode::FiniteDifference;
    } else {
        throw UsageError("--jacobian must be analytic or fd");
    }
    config.newton.tol = o.tol;
    config.newton.max_iter = o.max_iter;
    return config;
}

int run_solve(const SolveOptions& o) {
    const auto entry = catalog_problem(o.problem, parse_params(o.params));
    const auto config = make_config(o);
    const Discretization disc{config.intervals, inner_abscissae(config.degree, config.family)};
    const auto phase = parse_phase(o.phase, entry, disc);
    const auto solved = solve_periodic(entry.problem, config, entry.guess, entry.omega_guess, phase);
    save_solution(o.out, make_solution_file(entry.problem, solved, config.quadrature_nodes));
    std::cout << "omega " << std::setprecision(15) << solved.omega << "\nnewton_iterations "
              << solved.report.newton_iterations << "\nresidual_norm " << solved.report.residual_norm << "\n";
    return kExitOk;
}

struct ConvergeOptions {
    std::string problem;
    std::vector<std::string> params;
    int m = 3;
    std::string levels;
    int M = 20;
    std::string reference = "exact";
    double dt = 1e-3;
    double t_transient = 200.0;
    std::string out;
};

int run_converge(const ConvergeOptions& o) {
    const auto entry = catalog_problem(o.problem, parse_params(o.params));
    ReferenceKind kind;
    if (o.reference == "exact") {
        kind = ReferenceKind::Exact;
    } else if (o.reference == "oracle") {
        kind = ReferenceKind::Oracle;
    } else {
        throw UsageError("--reference must be exact or oracle");
    }
    const auto report =
        run_convergence_study(entry, o.m, parse_int_list(o.levels), o.M, kind, OracleSettings{o.dt, o.t_transient});
    write_convergence_csv(o.out, report);
    std::cout << std::setprecision(6);
    for (const auto& level : report.levels) {
        std::cout << "L " << level.intervals << "  error " << level.error << "  order " << level.order << "\n";
    }
    return kExitOk;
}

struct FloquetOptions {
    std::string solution;
    double threshold = 1e-2;
    std::string out;
};

int run_floquet(const FloquetOptions& o) {
    const auto file = load_solution(o.solution);
    const auto entry = catalog_problem(file.problem, file.params);
    const auto disc = file.discretization();
    const auto x = file.unknowns();
    auto v = std::make_shared<const CandidateSolution>(green_apply(x.u, x.psi, disc));
    const auto op = build_linearized_operator(v, x.omega, discretize_rhs(entry.problem, file.quadrature_nodes));
    const auto report = multipliers_and_check(monodromy_matrix(op, disc), o.threshold);
    write_floquet_csv(o.out, report);
    std::cout << std::setprecision(6) << "trivial_error " << report.trivial_error << "\nhyperbolic "
              << (report.hyperbolic ? "true" : "false") << "\n";
    return kExitOk;
}

struct ContinueOptions {
    std::string problem;
    std::string param;
    std::vector<std::string> fixed;
    double from = 0.0;
    double to = 0.0;
    int steps = 1;
    SolveOptions solve;
    std::string out;
};

int run_continue(const ContinueOptions& o) {
    auto config = make_config(o.solve);
    const auto steps = continue_natural(o.problem, parse_params(o.fixed), o.param, linspace(o.from, o.to, o.steps), config);
    write_continuation_csv(o.out, steps);
    std::cout << std::setprecision(8);
    for (const auto& step : steps) {
        std::cout << o.param << " " << step.param << "  omega " << step.omega << "  " << to_string(step.status) << "\n";
    }
    return kExitOk;
}

struct IntegrateOptions {
    std::string problem;
    std::vector<std::string> params;
    double t_end = 0.0;
    double dt = 1e-3;
    std::string out;
};

int run_integrate(const IntegrateOptions& o) {
    const auto entry = catalog_problem(o.problem, parse_params(o.params));
    if (!(o.t_end > 0.0)) throw UsageError("--t-end must be positive");
    const auto trajectory = integrate_method_of_steps(entry.problem, entry.history, o.t_end, o.dt);
    write_trajectory_csv(o.out, trajectory);
    std::cout << "steps " << trajectory.steps() << "\n";
    return kExitOk;
}

void add_common_solve_flags(CLI::App* cmd, SolveOptions& o, bool require_mesh) {
    auto* L = cmd->add_option("--L", o.L, "number of mesh intervals")->check(CLI::PositiveNumber);
    auto* m = cmd->add_option("--m", o.m, "collocation degree")->check(CLI::PositiveNumber);
    if (require_mesh) {
        L->required();
        m->required();
    }
    cmd->add_option("--M", o.M, "quadrature nodes per distributed term")->check(CLI::PositiveNumber);
    cmd->add_option("--family", o.family, "abscissae: gauss-legendre or chebyshev");
    cmd->add_option("--jacobian", o.jacobian, "analytic or fd");
    cmd->add_option("--tol", o.tol, "Newton tolerance (residual infinity norm)")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", o.max_iter, "Newton iteration cap")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Periodic solutions of retarded functional differential equations by piecewise collocation"};
    app.require_subcommand(1);

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "compute a periodic solution and save it as JSON");
    solve_cmd->add_option("--problem", solve.problem, "catalog problem")->required();
    solve_cmd->add_option("--param", solve.params, "parameter override key=value (repeatable)");
    add_common_solve_flags(solve_cmd, solve, true);
    solve_cmd->add_option("--phase", solve.phase, "trivial[:k=K,level=Y] (K 1-based) or integral");
    solve_cmd->add_option("--out", solve.out, "output JSON file")->required();

    ConvergeOptions converge;
    auto* converge_cmd = app.add_subcommand("converge", "mesh refinement study, CSV report");
    converge_cmd->add_option("--problem", converge.problem, "catalog problem")->required();
    converge_cmd->add_option("--param", converge.params, "parameter override key=value (repeatable)");
    converge_cmd->add_option("--m", converge.m, "collocation degree")->required()->check(CLI::PositiveNumber);
    converge_cmd->add_option("--L", converge.levels, "comma-separated mesh levels, e.g. 10,20,40")->required();
    converge_cmd->add_option("--M", converge.M, "quadrature nodes per distributed term")->check(CLI::PositiveNumber);
    converge_cmd->add_option("--reference", converge.reference, "exact or oracle");
    converge_cmd->add_option("--dt", converge.dt, "oracle step")->check(CLI::PositiveNumber);
    converge_cmd->add_option("--t-transient", converge.t_transient, "oracle transient")->check(CLI::NonNegativeNumber);
    converge_cmd->add_option("--out", converge.out, "output CSV file")->required();

    FloquetOptions floquet;
    auto* floquet_cmd = app.add_subcommand("floquet", "Floquet multipliers of a saved solution, CSV report");
    floquet_cmd->add_option("--solution", floquet.solution, "solution JSON file")->required();
    floquet_cmd->add_option("--threshold", floquet.threshold, "unit-circle margin")->check(CLI::PositiveNumber);
    floquet_cmd->add_option("--out", floquet.out, "output CSV file")->required();

    ContinueOptions cont;
    auto* continue_cmd = app.add_subcommand("continue", "natural parameter continuation, CSV report");
    continue_cmd->add_option("--problem", cont.problem, "catalog problem")->required();
    continue_cmd->add_option("--param", cont.param, "parameter to vary")->required();
    continue_cmd->add_option("--set", cont.fixed, "fixed parameter key=value (repeatable)");
    continue_cmd->add_option("--from", cont.from, "first parameter value")->required();
    continue_cmd->add_option("--to", cont.to, "last parameter value")->required();
    continue_cmd->add_option("--steps", cont.steps, "number of parameter values")->required()->check(CLI::PositiveNumber);
    add_common_solve_flags(continue_cmd, cont.solve, false);
    continue_cmd->add_option("--out", cont.out, "output CSV file")->required();

    IntegrateOptions integrate;
    auto* integrate_cmd = app.add_subcommand("integrate", "method-of-steps time integration, CSV trajectory");
    integrate_cmd->add_option("--problem", integrate.problem, "catalog problem")->required();
    integrate_cmd->add_option("--param", integrate.params, "parameter override key=value (repeatable)");
    integrate_cmd->add_option("--t-end", integrate.t_end, "final time")->required();
    integrate_cmd->add_option("--dt", integrate.dt, "step size")->check(CLI::PositiveNumber);
    integrate_cmd->add_option("--out", integrate.out, "output CSV file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*solve_cmd) return run_solve(solve);
        if (*converge_cmd) return run_converge(converge);
        if (*floquet_cmd) return run_floquet(floquet);
        if (*continue_cmd) return run_continue(cont);
        if (*integrate_cmd) return run_integrate(integrate);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    } catch (const InvalidMesh& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NoConvergence& e) {
        std::cerr << "no convergence: " << e.what() << "\n";
        return kExitFailure;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
