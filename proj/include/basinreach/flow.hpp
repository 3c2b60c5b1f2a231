#pragma once

#include "basinreach/landscape.hpp"
#include "basinreach/trajectory.hpp"

namespace basinreach {

enum class Direction { forward, reverse };

std::string to_string(Direction d);

/// Integration controls. Requires h <= 0.1 / L and event_refine_tol < h.
struct FlowSettings {
    double h = 1e-3;
    double t_max = 100.0;
    double gtol = 1e-10;
    double event_refine_tol = 1e-10;
    bool record = true;

    void validate(double lipschitz) const;
};

/// psi(s) = coeff * s^exponent, concave and increasing with psi(0) = 0.
struct DesingularizationModel {
    double coeff;
    double exponent;

    DesingularizationModel(double coeff, double exponent);
    double operator()(double s) const;
};

/// The reverse flow never reached the sphere within t_max.
class NoCrossingError : public Error {
public:
    using Error::Error;
};

/// Fixed-step classical RK4 on x' = -grad f (forward) or x' = +grad f (reverse).
/// Forward runs stop once |grad f| < gtol.
Trajectory integrate(const ObjectiveFunction& f, const Vec& x0, Direction direction, const FlowSettings& settings);

/// Explicit Euler on x' = -m(x), m the minimum-norm Clarke generator of g.
/// Stops (stalls) when |m| < gtol.
Trajectory integrate_minnorm(const MaxFunction& g, const Vec& x0, const FlowSettings& settings);

struct SphereExit {
    double t_exit;
    Vec b;
    Trajectory path;  ///< states up to and including b
};

/// First time the flow from x0 reaches |x - center| = delta, refined by
/// bisecting the last RK4 step. Throws NoCrossingError when t_max passes first.
SphereExit sphere_exit(const ObjectiveFunction& f, const Vec& x0, Direction direction, const Vec& center,
                       double delta, const FlowSettings& settings);

/// Polygonal length through the recorded states.
double path_length(const Trajectory& traj);

struct LengthBound {
    double lhs;
    double rhs;
    bool ok;
};

/// lhs = path_length, rhs = psi(f(first) - f(last)); ok iff lhs <= rhs (1 + 1e-6) + 1e-9.
LengthBound check_length_bound(const Trajectory& traj, const DesingularizationModel& model, const ObjectiveFunction& f);

}  // namespace basinreach
