#include "rfde/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "rfde/errors.hpp"

namespace rfde {

namespace {

constexpr double kBisectionTol = 1e-10;
constexpr double kGapTolerance = 1e-6;

}  // namespace

Trajectory::Trajectory(RFDEProblem problem, VectorFunction history, double dt)
    : problem_(std::move(problem)), history_(std::move(history)), dt_(dt) {
    problem_.validate();
    if (!history_) throw DomainError("method of steps needs a history on [-tau, 0]");
    if (!(dt_ > 0.0) || dt_ > problem_.tau / 4.0 + 1e-15) {
        throw DomainError("method of steps needs 0 < dt <= tau / 4");
    }
    const Vector y0 = history_(0.0);
    if (y0.size() != problem_.dim) throw DomainError("history has the wrong dimension");
    const StateView initial(problem_.tau, [this](double s) { return history_(s); });
    times_.push_back(0.0);
    values_.push_back(y0);
    slopes_.push_back(eval_rhs(problem_, initial));
}

std::size_t Trajectory::locate(double t) const {
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const auto index = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - times_.begin()) - 1));
    return std::min(index, times_.size() - 2);
}

Vector Trajectory::value(double t) const {
    if (t < 0.0) {
        if (t < -problem_.tau - 1e-12) throw DomainError("trajectory evaluated before the history segment");
        return history_(std::max(t, -problem_.tau));
    }
    if (t > end() + 1e-12) throw DomainError("trajectory evaluated beyond its end");
    if (times_.size() == 1) return values_[0];
    const std::size_t i = locate(t);
    const double h = times_[i + 1] - times_[i];
    const double s = std::clamp((t - times_[i]) / h, 0.0, 1.0);
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * values_[i] + (s3 - 2 * s2 + s) * h * slopes_[i] + (-2 * s3 + 3 * s2) * values_[i + 1] +
           (s3 - s2) * h * slopes_[i + 1];
}

Vector Trajectory::derivative(double t) const {
    if (t < 0.0) {
        constexpr double eps = 1e-7;
        return (history_(std::min(t + eps, 0.0)) - history_(std::max(t - eps, -problem_.tau))) /
               (std::min(t + eps, 0.0) - std::max(t - eps, -problem_.tau));
    }
    if (t > end() + 1e-12) throw DomainError("trajectory evaluated beyond its end");
    if (times_.size() == 1) return slopes_[0];
    const std::size_t i = locate(t);
    const double h = times_[i + 1] - times_[i];
    const double s = std::clamp((t - times_[i]) / h, 0.0, 1.0);
    const double s2 = s * s;
    return ((6 * s2 - 6 * s) / h) * values_[i] + (3 * s2 - 4 * s + 1) * slopes_[i] +
           ((-6 * s2 + 6 * s) / h) * values_[i + 1] + (3 * s2 - 2 * s) * slopes_[i + 1];
}

// G at time step_start + stage. Inside the current step the solution is the
// quadratic through (y_start, f_start) at step_start and y_stage at the stage.
Vector Trajectory::rhs_at(double t, double step_start, const Vector& y_start, const Vector& f_start, double stage,
                          const Vector& y_stage) const {
    const Vector curvature = (y_stage - y_start - stage * f_start) / (stage * stage);
    const StateView state(problem_.tau, [&](double sigma) -> Vector {
        const double s = t + sigma - step_start;
        if (s <= 0.0) return value(t + sigma);
        if (s >= stage) return y_stage;
        return y_start + s * f_start + (s * s) * curvature;
    });
    return eval_rhs(problem_, state);
}

void Trajectory::advance_to(double t_end) {
    const double tau = problem_.tau;
    while (end() < t_end - 1e-12) {
        const double t = end();
        const double next_break = (std::floor(t / tau + 1e-9) + 1.0) * tau;
        double step = std::min(dt_, next_break - t);
        bool lands_on_break = next_break - t - step < 1e-9 * dt_;
        if (lands_on_break) step = next_break - t;
        if (t_end - t < step) {
            step = t_end - t;
            lands_on_break = false;
        }
        const Vector y = values_.back();
        const Vector k1 = slopes_.back();
        const double half = 0.5 * step;
        const Vector k2 = rhs_at(t + half, t, y, k1, half, y + half * k1);
        const Vector k3 = rhs_at(t + half, t, y, k1, half, y + half * k2);
        const Vector k4 = rhs_at(t + step, t, y, k1, step, y + step * k3);
        const Vector y_new = y + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const Vector f_new = rhs_at(t + step, t, y, k1, step, y_new);
        if (!y_new.allFinite()) throw NumericalError("method of steps produced a non-finite value");
        times_.push_back(lands_on_break ? next_break : t + step);
        values_.push_back(y_new);
        slopes_.push_back(f_new);
    }
}

Trajectory integrate_method_of_steps(const RFDEProblem& problem, const VectorFunction& history, double t_end,
                                     double dt) {
    Trajectory out(problem, history, dt);
    out.advance_to(t_end);
    return out;
}

std::vector<double> upward_crossings(const Trajectory& trajectory, const Section& section, double from) {
    const auto& times = trajectory.times();
    const int k = section.component;
    std::vector<double> out;
    auto first = std::lower_bound(times.begin(), times.end(), from);
    if (first == times.end()) return out;
    auto index = static_cast<std::size_t>(first - times.begin());
    double previous = trajectory.value(times[index])[k] - section.level;
    for (std::size_t i = index + 1; i < times.size(); ++i) {
        const double current = trajectory.value(times[i])[k] - section.level;
        if (previous < 0.0 && current >= 0.0) {
            double lo = times[i - 1];
            double hi = times[i];
            while (hi - lo > kBisectionTol) {
                const double mid = 0.5 * (lo + hi);
                if (trajectory.value(mid)[k] - section.level < 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push_back(0.5 * (lo + hi));
        }
        previous = current;
    }
    return out;
}

Vector ReferenceOrbit::value(double s) const {
    const double wrapped = s - period * std::floor(s / period);
    return trajectory->value(start + wrapped);
}

Vector ReferenceOrbit::derivative(double s) const {
    const double wrapped = s - period * std::floor(s / period);
    return trajectory->derivative(start + wrapped);
}

double ReferenceOrbit::periodicity_defect(int samples) const {
    double out = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double s = start + period * i / samples;
        out = std::max(out, (trajectory->value(s + period) - trajectory->value(s)).lpNorm<Eigen::Infinity>());
    }
    return out;
}

ReferenceOrbit extract_reference_orbit(const RFDEProblem& problem, const VectorFunction& history, double t_transient,
                                       const Section& section, double dt) {
    if (section.component < 0 || section.component >= problem.dim) {
        throw UsageError("section component outside the state dimension");
    }
    auto trajectory = std::make_shared<Trajectory>(problem, history, dt);
    trajectory->advance_to(t_transient);

    // Extend until five crossings follow the transient, within a bounded horizon.
    const double chunk = 10.0 * problem.tau;
    const double horizon = t_transient + 100.0 * problem.tau;
    std::vector<double> crossings;
    while (true) {
        crossings = upward_crossings(*trajectory, section, t_transient);
        if (crossings.size() >= 5 || trajectory->end() >= horizon) break;
        trajectory->advance_to(std::min(trajectory->end() + chunk, horizon));
    }
    if (crossings.size() < 4) {
        throw NoCycleDetected("found " + std::to_string(crossings.size()) +
                              " upward section crossings after the transient; need 4");
    }
    const std::size_t n = crossings.size();
    const double g1 = crossings[n - 3] - crossings[n - 4];
    const double g2 = crossings[n - 2] - crossings[n - 3];
    const double g3 = crossings[n - 1] - crossings[n - 2];
    const double mean = (g1 + g2 + g3) / 3.0;
    const double spread = std::max({g1, g2, g3}) - std::min({g1, g2, g3});
    if (spread > kGapTolerance * mean) {
        throw NoCycleDetected("crossing gaps disagree by " + std::to_string(spread / mean) + " relative");
    }
    ReferenceOrbit orbit;
    orbit.period = mean;
    orbit.start = crossings[n - 4];
    orbit.section = section;
    orbit.crossings = std::move(crossings);
    orbit.trajectory = std::move(trajectory);
    return orbit;
}

}  // namespace rfde
