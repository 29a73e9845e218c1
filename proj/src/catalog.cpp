#include "rfde/catalog.hpp"

#include <cmath>
#include <numbers>

#include "rfde/errors.hpp"

namespace rfde {

namespace {

using std::numbers::pi;

std::map<std::string, double> merge_params(const std::string& name, std::map<std::string, double> defaults,
                                           const std::map<std::string, double>& overrides) {
    for (const auto& [key, value] : overrides) {
        auto it = defaults.find(key);
        if (it == defaults.end()) {
            std::string known;
            for (const auto& entry : defaults) known += (known.empty() ? "" : ", ") + entry.first;
            throw UsageError("problem '" + name + "' has no parameter '" + key + "' (known: " + known + ")");
        }
        it->second = value;
    }
    return defaults;
}

Vector scalar(double x) { return Vector::Constant(1, x); }

// r y(0) (1 - T), where T is the second term.
RFDEProblem logistic_like(std::string name, double r, DelayTerm second) {
    RFDEProblem p;
    p.name = std::move(name);
    p.dim = 1;
    p.tau = 1.0;
    p.terms = {DiscreteDelay{0.0}, std::move(second)};
    p.combine = [r](std::span<const Vector> t) { return scalar(r * t[0][0] * (1.0 - t[1][0])); };
    p.combine_jacobian = [r](std::span<const Vector> t) {
        return std::vector<Matrix>{Matrix::Constant(1, 1, r * (1.0 - t[1][0])), Matrix::Constant(1, 1, -r * t[0][0])};
    };
    return p;
}

CatalogProblem logistic(const std::map<std::string, double>& overrides) {
    const auto params = merge_params("logistic", {{"r", 2.0}}, overrides);
    CatalogProblem c;
    c.problem = logistic_like("logistic", params.at("r"), DiscreteDelay{-1.0});
    c.problem.params = params;
    c.guess = [](double t) {
        const double a = 2.0 * pi * t;
        return scalar(std::exp(-0.68 + 0.85 * std::cos(a) + 1.58 * std::sin(a) - 0.21 * std::cos(2.0 * a) -
                               0.27 * std::sin(2.0 * a)));
    };
    c.omega_guess = 4.4;
    c.section = {0, 1.0};
    c.history = [g = c.guess, w = c.omega_guess](double s) { return g(s / w); };
    return c;
}

CatalogProblem dist_logistic(const std::map<std::string, double>& overrides) {
    const auto params = merge_params("dist-logistic", {{"r", 3.0}}, overrides);
    CatalogProblem c;
    c.problem = logistic_like("dist-logistic", params.at("r"), DistributedDelay{[](double theta) { return -2.0 * theta; }});
    c.problem.params = params;
    c.guess = [](double t) { return scalar(1.0 + 0.5 * std::sin(2.0 * pi * t)); };
    c.omega_guess = 3.0;
    c.section = {0, 1.0};
    c.history = [g = c.guess, w = c.omega_guess](double s) { return g(s / w); };
    return c;
}

CatalogProblem mms(const std::map<std::string, double>& overrides) {
    const auto params = merge_params("mms", {{"kappa", 1.0}, {"mu", 0.1}}, overrides);
    const double kappa = params.at("kappa");
    const double mu = params.at("mu");
    Matrix rot(2, 2);
    rot << 0.0, 1.0, -1.0, 0.0;

    CatalogProblem c;
    auto& p = c.problem;
    p.name = "mms";
    p.dim = 2;
    p.tau = 1.0;
    p.params = params;
    p.terms = {DiscreteDelay{0.0}, DiscreteDelay{-1.0}};
    p.combine = [=](std::span<const Vector> t) -> Vector {
        const Vector& now = t[0];
        return pi * (rot * now) + kappa * (1.0 - now.squaredNorm()) * now + mu * (t[1] + now);
    };
    p.combine_jacobian = [=](std::span<const Vector> t) {
        const Vector& now = t[0];
        const Matrix id = Matrix::Identity(2, 2);
        Matrix d_now = pi * rot + kappa * ((1.0 - now.squaredNorm()) * id - 2.0 * now * now.transpose()) + mu * id;
        return std::vector<Matrix>{d_now, mu * id};
    };
    c.guess = [](double t) {
        Vector y(2);
        y << 1.1 * std::sin(2.0 * pi * t), 1.1 * std::cos(2.0 * pi * t);
        return y;
    };
    c.omega_guess = 2.2;
    c.section = {1, 0.0};
    c.history = [g = c.guess, w = c.omega_guess](double s) { return g(s / w); };
    ExactOrbit exact;
    exact.period = 2.0;
    exact.value = [](double t) {
        Vector y(2);
        y << std::sin(pi * t), std::cos(pi * t);
        return y;
    };
    exact.derivative = [](double t) {
        Vector y(2);
        y << pi * std::cos(pi * t), -pi * std::sin(pi * t);
        return y;
    };
    c.exact = exact;
    return c;
}

}  // namespace

std::vector<std::string> catalog_names() { return {"logistic", "mms", "dist-logistic"}; }

CatalogProblem catalog_problem(const std::string& name, const std::map<std::string, double>& overrides) {
    if (name == "logistic") return logistic(overrides);
    if (name == "mms") return mms(overrides);
    if (name == "dist-logistic") return dist_logistic(overrides);
    throw UsageError("unknown problem '" + name + "' (known: logistic, mms, dist-logistic)");
}

}  // namespace rfde
