#include "basinreach/flow.hpp"

#include <cmath>
#include <cstdio>

namespace basinreach {

std::string to_string(Direction d) { return d == Direction::forward ? "forward" : "reverse"; }

void FlowSettings::validate(double lipschitz) const
{
    if (!(h > 0.0)) throw PreconditionError("flow: h must be positive");
    if (lipschitz > 0.0 && h > 0.1 / lipschitz) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "flow: h = %g exceeds 0.1/L = %g", h, 0.1 / lipschitz);
        throw PreconditionError(buf);
    }
    if (!(t_max > 0.0)) throw PreconditionError("flow: t_max must be positive");
    if (!(gtol > 0.0)) throw PreconditionError("flow: gtol must be positive");
    if (!(event_refine_tol > 0.0) || !(event_refine_tol < h))
        throw PreconditionError("flow: event_refine_tol must lie in (0, h)");
}

DesingularizationModel::DesingularizationModel(double coeff_, double exponent_) : coeff(coeff_), exponent(exponent_)
{
    if (!(coeff > 0.0)) throw PreconditionError("psi: coeff must be positive");
    if (!(exponent > 0.0 && exponent <= 1.0)) throw PreconditionError("psi: exponent must lie in (0, 1]");
}

double DesingularizationModel::operator()(double s) const { return s <= 0.0 ? 0.0 : coeff * std::pow(s, exponent); }

namespace {

Vec rk4_step(const ObjectiveFunction& f, const Vec& x, double h, double sign)
{
    const Vec k1 = sign * f.gradient(x);
    const Vec k2 = sign * f.gradient(x + 0.5 * h * k1);
    const Vec k3 = sign * f.gradient(x + 0.5 * h * k2);
    const Vec k4 = sign * f.gradient(x + h * k3);
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double sign_of(Direction d) { return d == Direction::forward ? -1.0 : 1.0; }

class Recorder {
public:
    Recorder(Trajectory& traj, bool record) : traj_(traj), record_(record) {}

    void push(State st)
    {
        if (record_ || traj_.states.size() < 2)
            traj_.states.push_back(std::move(st));
        else
            traj_.states.back() = std::move(st);
    }

private:
    Trajectory& traj_;
    bool record_;
};

// Time of step k with the last step possibly shortened to land on t_max.
struct Clock {
    double h;
    double t_max;

    double at(std::int64_t k) const { return std::min(static_cast<double>(k) * h, t_max); }
    bool done(std::int64_t k) const { return at(k) >= t_max * (1.0 - 1e-15); }
};

}  // namespace

Trajectory integrate(const ObjectiveFunction& f, const Vec& x0, Direction direction, const FlowSettings& settings)
{
    settings.validate(f.lipschitz());
    if (!f.box().contains(x0)) throw LeftBoxError("integrate: x0 outside box", x0);

    const double sign = sign_of(direction);
    const Clock clock{settings.h, settings.t_max};
    Trajectory traj;
    Recorder rec(traj, settings.record);

    Vec x = x0;
    for (std::int64_t k = 0;; ++k) {
        const double t = clock.at(k);
        const double gnorm = f.gradient(x).norm();
        rec.push({k, t, x, f.value(x), gnorm});
        if (direction == Direction::forward && gnorm < settings.gtol) {
            traj.status = TerminalStatus::converged;
            traj.limit = x;
            break;
        }
        if (clock.done(k)) {
            traj.status = TerminalStatus::budget_exhausted;
            break;
        }
        Vec next = rk4_step(f, x, clock.at(k + 1) - t, sign);
        if (!f.box().contains(next)) {
            traj.status = TerminalStatus::left_box;
            traj.exit_point = std::move(next);
            break;
        }
        x = std::move(next);
    }
    return traj;
}

Trajectory integrate_minnorm(const MaxFunction& g, const Vec& x0, const FlowSettings& settings)
{
    settings.validate(g.lipschitz());
    if (!g.box().contains(x0)) throw LeftBoxError("integrate_minnorm: x0 outside box", x0);

    const Clock clock{settings.h, settings.t_max};
    Trajectory traj;
    Recorder rec(traj, settings.record);

    Vec x = x0;
    for (std::int64_t k = 0;; ++k) {
        const double t = clock.at(k);
        const Vec m = min_norm_element(clarke_generators(g, x));
        const double mnorm = m.norm();
        rec.push({k, t, x, g.value(x), mnorm});
        if (mnorm < settings.gtol) {
            traj.status = TerminalStatus::converged;
            traj.limit = x;
            break;
        }
        if (clock.done(k)) {
            traj.status = TerminalStatus::budget_exhausted;
            break;
        }
        Vec next = x - (clock.at(k + 1) - t) * m;
        if (!g.box().contains(next)) {
            traj.status = TerminalStatus::left_box;
            traj.exit_point = std::move(next);
            break;
        }
        x = std::move(next);
    }
    return traj;
}

SphereExit sphere_exit(const ObjectiveFunction& f, const Vec& x0, Direction direction, const Vec& center,
                       double delta, const FlowSettings& settings)
{
    settings.validate(f.lipschitz());
    if (!(delta > 0.0)) throw PreconditionError("sphere_exit: delta must be positive");
    if (!f.box().contains(x0)) throw LeftBoxError("sphere_exit: x0 outside box", x0);

    const double sign = sign_of(direction);
    const double ftol = 1e-8 * delta;
    auto gap = [&](const Vec& y) { return (y - center).norm() - delta; };

    SphereExit out{0.0, x0, {}};
    const double g0 = gap(x0);
    if (std::abs(g0) <= ftol) {
        out.path.states.push_back({0, 0.0, x0, f.value(x0), f.gradient(x0).norm()});
        out.path.status = TerminalStatus::converged;
        return out;
    }
    if (g0 > 0.0) throw PreconditionError("sphere_exit: x0 must lie inside the sphere");

    const Clock clock{settings.h, settings.t_max};
    Recorder rec(out.path, settings.record);
    Vec x = x0;
    for (std::int64_t k = 0;; ++k) {
        const double t = clock.at(k);
        const double gnorm = f.gradient(x).norm();
        rec.push({k, t, x, f.value(x), gnorm});
        if (gnorm == 0.0 || (direction == Direction::forward && gnorm < settings.gtol))
            throw NoCrossingError("sphere_exit: flow settled at " + format_point(x) + " inside the sphere");
        if (clock.done(k))
            throw NoCrossingError("sphere_exit: no crossing of the sphere before t_max");

        const double hs = clock.at(k + 1) - t;
        Vec next = rk4_step(f, x, hs, sign);
        if (gap(next) < 0.0) {
            if (!f.box().contains(next))
                throw LeftBoxError("sphere_exit: flow left the box before crossing", next);
            x = std::move(next);
            continue;
        }

        // Bisect the sub-step length on the sign of gap(rk4(x, tau)).
        double lo = 0.0, hi = hs;
        double best_tau = hs, best_gap = gap(next);
        Vec best = next;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            Vec y = rk4_step(f, x, mid, sign);
            const double gy = gap(y);
            if (std::abs(gy) < std::abs(best_gap)) {
                best_gap = gy;
                best_tau = mid;
                best = y;
            }
            if (gy < 0.0)
                lo = mid;
            else
                hi = mid;
            if (hi - lo <= settings.event_refine_tol && std::abs(best_gap) <= 0.5 * ftol) break;
            if (hi <= lo) break;
        }
        if (!f.box().contains(best)) throw LeftBoxError("sphere_exit: crossing point outside box", best);
        out.t_exit = t + best_tau;
        out.b = best;
        rec.push({k + 1, out.t_exit, best, f.value(best), f.gradient(best).norm()});
        out.path.status = TerminalStatus::converged;
        out.path.limit = best;
        return out;
    }
}

double path_length(const Trajectory& traj)
{
    if (traj.states.empty()) throw PreconditionError("path_length: empty trajectory");
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < traj.states.size(); ++i) len += (traj.states[i + 1].x - traj.states[i].x).norm();
    return len;
}

LengthBound check_length_bound(const Trajectory& traj, const DesingularizationModel& model, const ObjectiveFunction& f)
{
    const double lhs = path_length(traj);
    const double drop = f.value(traj.front().x) - f.value(traj.back().x);
    const double rhs = model(drop);
    return {lhs, rhs, lhs <= rhs * (1.0 + 1e-6) + 1e-9};
}

}  // namespace basinreach
