#pragma once

#include <memory>
#include <vector>

#include "rfde/catalog.hpp"
#include "rfde/problem.hpp"

namespace rfde {

/// Method-of-steps RK4 solution with cubic Hermite dense output.
class Trajectory {
public:
    /// dt must not exceed tau / 4.
    Trajectory(RFDEProblem problem, VectorFunction history, double dt);

    const RFDEProblem& problem() const { return problem_; }
    double dt() const { return dt_; }
    double end() const { return times_.back(); }
    std::size_t steps() const { return times_.size() - 1; }
    const std::vector<double>& times() const { return times_; }

    /// Integrates up to t_end. Steps are shortened to land on multiples of tau.
    void advance_to(double t_end);

    /// y(t) for t in [-tau, end()]; history on [-tau, 0].
    Vector value(double t) const;
    Vector derivative(double t) const;

private:
    Vector rhs_at(double t, double step_start, const Vector& y_start, const Vector& f_start, double stage,
                  const Vector& y_stage) const;
    std::size_t locate(double t) const;

    RFDEProblem problem_;
    VectorFunction history_;
    double dt_;
    std::vector<double> times_;
    std::vector<Vector> values_;
    std::vector<Vector> slopes_;
};

Trajectory integrate_method_of_steps(const RFDEProblem& problem, const VectorFunction& history, double t_end, double dt);

/// Upward crossing times of y_component = level in [from, trajectory.end()],
/// refined by bisection on the dense output to 1e-10.
std::vector<double> upward_crossings(const Trajectory& trajectory, const Section& section, double from);

struct ReferenceOrbit {
    double period;
    double start;  // a section crossing; profile time 0
    Section section;
    std::vector<double> crossings;
    std::shared_ptr<const Trajectory> trajectory;

    /// y(start + s), with s wrapped into [0, period).
    Vector value(double s) const;
    Vector derivative(double s) const;
    /// max |y(s + period) - y(s)| on a uniform grid over one period.
    double periodicity_defect(int samples = 200) const;
};

/// Integrates past t_transient and measures the period from the last four
/// upward section crossings. Throws NoCycleDetected on fewer than four
/// crossings or gaps disagreeing by more than 1e-6 relative.
ReferenceOrbit extract_reference_orbit(const RFDEProblem& problem, const VectorFunction& history, double t_transient,
                                       const Section& section, double dt = 1e-3);

}  // namespace rfde
