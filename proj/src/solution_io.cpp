#include "rfde/solution_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "rfde/errors.hpp"

namespace rfde {

namespace {

using Json = nlohmann::ordered_json;

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << std::setprecision(17);
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

template <typename T>
T field(const Json& json, const char* key) {
    if (!json.contains(key)) throw SchemaError(std::string("solution file lacks field '") + key + "'");
    try {
        return json.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("solution file field '") + key + "' has the wrong type: " + e.what());
    }
}

}  // namespace

Discretization SolutionFile::discretization() const {
    return {intervals, InnerAbscissae(abscissae, family)};
}

DiscreteUnknowns SolutionFile::unknowns() const {
    const std::size_t nodes = 1 + static_cast<std::size_t>(intervals) * degree;
    return {NodeVector(nodes, dim, u), NodeVector(nodes, dim, psi), omega};
}

SolutionFile make_solution_file(const RFDEProblem& problem, const PeriodicSolution& solved, int quadrature_nodes) {
    SolutionFile file;
    file.problem = problem.name;
    file.params = problem.params;
    file.dim = problem.dim;
    file.tau = problem.tau;
    file.intervals = solved.discretization.intervals;
    file.degree = solved.discretization.degree();
    file.quadrature_nodes = quadrature_nodes;
    file.family = solved.discretization.abscissae.family();
    const auto c = solved.discretization.abscissae.values();
    file.abscissae.assign(c.begin(), c.end());
    file.omega = solved.omega;
    const auto& x = solved.report.solution;
    file.u.assign(x.u.data().begin(), x.u.data().end());
    file.psi.assign(x.psi.data().begin(), x.psi.data().end());
    file.residual_norm = solved.report.residual_norm;
    file.newton_iterations = solved.report.newton_iterations;
    file.converged = solved.report.converged;
    if (solved.report.jacobian_condition_estimate && std::isfinite(*solved.report.jacobian_condition_estimate)) {
        file.condition_estimate = solved.report.jacobian_condition_estimate;
    }
    return file;
}

std::string solution_to_json(const SolutionFile& file) {
    Json json;
    json["schema_version"] = file.schema_version;
    json["problem"] = file.problem;
    Json params = Json::object();
    for (const auto& [key, value] : file.params) params[key] = value;
    json["params"] = params;
    json["d"] = file.dim;
    json["tau"] = file.tau;
    json["L"] = file.intervals;
    json["m"] = file.degree;
    json["M"] = file.quadrature_nodes;
    json["abscissae"] = {{"family", to_string(file.family)}, {"values", file.abscissae}};
    json["omega"] = file.omega;
    json["u"] = file.u;
    json["psi"] = file.psi;
    Json diagnostics;
    diagnostics["residual_norm"] = file.residual_norm;
    diagnostics["newton_iterations"] = file.newton_iterations;
    diagnostics["converged"] = file.converged;
    diagnostics["condition_estimate"] = file.condition_estimate ? Json(*file.condition_estimate) : Json(nullptr);
    json["diagnostics"] = diagnostics;
    return json.dump(2) + "\n";
}

SolutionFile solution_from_json(const std::string& text) {
    Json json;
    try {
        json = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("solution file is not valid JSON: ") + e.what());
    }
    if (!json.is_object()) throw SchemaError("solution file must hold a JSON object");
    SolutionFile file;
    file.schema_version = field<int>(json, "schema_version");
    if (file.schema_version != kSchemaVersion) {
        throw SchemaError("solution file has schema_version " + std::to_string(file.schema_version) +
                          ", this reader understands schema_version " + std::to_string(kSchemaVersion));
    }
    file.problem = field<std::string>(json, "problem");
    file.params = field<std::map<std::string, double>>(json, "params");
    file.dim = field<int>(json, "d");
    file.tau = field<double>(json, "tau");
    file.intervals = field<int>(json, "L");
    file.degree = field<int>(json, "m");
    file.quadrature_nodes = field<int>(json, "M");
    const auto abscissae = field<Json>(json, "abscissae");
    try {
        file.family = abscissae_family_from_string(field<std::string>(abscissae, "family"));
    } catch (const InvalidMesh& e) {
        throw SchemaError(e.what());
    }
    file.abscissae = field<std::vector<double>>(abscissae, "values");
    file.omega = field<double>(json, "omega");
    file.u = field<std::vector<double>>(json, "u");
    file.psi = field<std::vector<double>>(json, "psi");
    const auto diagnostics = field<Json>(json, "diagnostics");
    file.residual_norm = field<double>(diagnostics, "residual_norm");
    file.newton_iterations = field<int>(diagnostics, "newton_iterations");
    file.converged = field<bool>(diagnostics, "converged");
    if (diagnostics.contains("condition_estimate") && !diagnostics["condition_estimate"].is_null()) {
        file.condition_estimate = field<double>(diagnostics, "condition_estimate");
    }

    if (file.dim < 1 || file.intervals < 1 || file.degree < 1) {
        throw SchemaError("solution file needs d, L and m >= 1");
    }
    if (file.abscissae.size() != static_cast<std::size_t>(file.degree)) {
        throw SchemaError("abscissae count " + std::to_string(file.abscissae.size()) + " differs from m = " +
                          std::to_string(file.degree));
    }
    const std::size_t expected = (1 + static_cast<std::size_t>(file.intervals) * file.degree) * file.dim;
    if (file.u.size() != expected || file.psi.size() != expected) {
        throw SchemaError("u/psi lengths " + std::to_string(file.u.size()) + "/" + std::to_string(file.psi.size()) +
                          " differ from (1 + L m) d = " + std::to_string(expected));
    }
    try {
        (void)InnerAbscissae(file.abscissae, file.family);
    } catch (const InvalidMesh& e) {
        throw SchemaError(e.what());
    }
    return file;
}

void save_solution(const std::filesystem::path& path, const SolutionFile& file) {
    auto out = open_output(path);
    out << solution_to_json(file);
    finish(out, path);
}

SolutionFile load_solution(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream text;
    text << in.rdbuf();
    if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
    return solution_from_json(text.str());
}

void write_convergence_csv(const std::filesystem::path& path, const ConvergenceReport& report) {
    auto out = open_output(path);
    out << "L,h,err_v,err_vprime,err_omega,order_est,seconds\n";
    for (const auto& level : report.levels) {
        out << level.intervals << ',' << level.h << ',' << level.errors.err_v << ',' << level.errors.err_vprime << ','
            << level.errors.err_omega << ',';
        if (!std::isnan(level.order)) out << level.order;
        out << ',' << level.seconds << '\n';
    }
    finish(out, path);
}

void write_floquet_csv(const std::filesystem::path& path, const FloquetReport& report) {
    auto out = open_output(path);
    out << "re,im,modulus\n";
    for (const auto& mu : report.multipliers) out << mu.real() << ',' << mu.imag() << ',' << std::abs(mu) << '\n';
    finish(out, path);
}

void write_continuation_csv(const std::filesystem::path& path, const std::vector<ContinuationStep>& steps) {
    auto out = open_output(path);
    out << "param,omega,converged,newton_iterations,residual_norm,amplitude,flag\n";
    for (const auto& step : steps) {
        const bool converged = step.status == StepStatus::Converged || step.status == StepStatus::ZeroAmplitude;
        out << step.param << ',' << step.omega << ',' << (converged ? 1 : 0) << ',' << step.newton_iterations << ','
            << step.residual_norm << ',' << step.amplitude << ',' << to_string(step.status) << '\n';
    }
    finish(out, path);
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& trajectory) {
    auto out = open_output(path);
    out << 't';
    for (int k = 1; k <= trajectory.problem().dim; ++k) out << ",y" << k;
    out << '\n';
    for (double t : trajectory.times()) {
        out << t;
        const Vector y = trajectory.value(t);
        for (int k = 0; k < y.size(); ++k) out << ',' << y[k];
        out << '\n';
    }
    finish(out, path);
}

}  // namespace rfde
