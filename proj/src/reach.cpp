#include "basinreach/reach.hpp"
#include "basinreach/sampling.hpp"

#include <cmath>
#include <limits>

namespace basinreach {

std::string to_string(ProbeMode mode) { return mode == ProbeMode::discrete ? "discrete" : "continuous"; }

std::string to_string(ReachStatus status)
{
    switch (status) {
    case ReachStatus::success: return "success";
    case ReachStatus::no_escape: return "no_escape";
    case ReachStatus::no_converge: return "no_converge";
    }
    return "unknown";
}

std::string to_string(EosVerdict v)
{
    switch (v) {
    case EosVerdict::converges: return "converges";
    case EosVerdict::diverges: return "diverges";
    case EosVerdict::neutral: return "neutral";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------

std::vector<Vec> probe_starts(const Vec& target, double delta, int n_samples, std::uint64_t seed)
{
    const int n = static_cast<int>(target.size());
    std::vector<Vec> starts;
    starts.reserve(static_cast<std::size_t>(2 * n + n_samples));
    for (int i = 0; i < n; ++i) {
        starts.push_back(target + delta * Vec::Unit(n, i));
        starts.push_back(target - delta * Vec::Unit(n, i));
    }
    DirectionSampler sampler(seed);
    for (int i = 0; i < n_samples; ++i) starts.push_back(target + delta * sampler.direction(n));
    return starts;
}

bool probe_run(const ObjectiveFunction& f, const Vec& target, double epsilon, const StepSchedule& s,
               const Vec& x0, ProbeMode mode, const ProbeOptions& options)
{
    if (!f.box().contains(x0)) return false;
    Trajectory traj;
    if (mode == ProbeMode::discrete) {
        traj = run_gd(f, x0, s, GdOptions{options.gtol, options.max_iter, false, true});
    } else {
        FlowSettings fs = options.flow;
        fs.gtol = options.gtol;
        fs.record = true;
        traj = integrate(f, x0, Direction::forward, fs);
    }
    if (traj.status != TerminalStatus::converged) return false;
    for (const auto& st : traj.states) {
        if ((st.x - target).norm() > epsilon) return false;
    }
    return classify_limit(f, *traj.limit, options.classify_tol).kind == LimitKind::local_min;
}

StabilityEstimate stability_probe(const ObjectiveFunction& f, const Vec& target, double epsilon,
                                  const StepSchedule& s, ProbeMode mode, const ProbeOptions& options)
{
    if (!(epsilon > 0.0)) throw PreconditionError("stability_probe: epsilon must be positive");
    if (!f.box().contains_ball(target, epsilon))
        throw PreconditionError("stability_probe: the epsilon-ball around the target must lie inside the box");
    if (mode == ProbeMode::discrete && !admissible(s, f, Regime::stability))
        throw PreconditionError("stability_probe: schedule violates sup alpha < 2/L");
    if (!f.find_critical(target, 1e-8 * (1.0 + target.norm())) &&
        classify_limit(f, target, options.classify_tol).kind != LimitKind::local_min)
        throw PreconditionError("stability_probe: target is not a local minimum");
    if (auto cp = f.find_critical(target, 1e-8 * (1.0 + target.norm())); cp && cp->kind != CriticalKind::local_min)
        throw PreconditionError("stability_probe: target is cataloged as " + to_string(cp->kind));

    StabilityEstimate est;
    est.epsilon = epsilon;
    est.samples = 2 * f.dim() + options.n_samples;

    auto test = [&](double delta) {
        est.radii.push_back(delta);
        bool ok = true;
        for (const Vec& x0 : probe_starts(target, delta, options.n_samples, options.seed)) {
            if (!probe_run(f, target, epsilon, s, x0, mode, options)) {
                est.failures.push_back(x0);
                ok = false;
            }
        }
        return ok;
    };

    if (test(epsilon)) {
        est.delta_hat = epsilon;
        return est;
    }
    double lo = 0.0, hi = epsilon;
    for (int i = 0; i < options.bisection_steps; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (test(mid))
            lo = mid;
        else
            hi = mid;
    }
    est.delta_hat = lo;
    return est;
}

// ---------------------------------------------------------------------------

namespace {

// Visits the n_grid^n lattice of the cube of half-width `radius` around center,
// restricted to the closed ball.
template <class Visit>
void for_each_ball_point(const Vec& center, double radius, int n_grid, Visit&& visit)
{
    if (n_grid < 2) throw PreconditionError("lattice needs n_grid >= 2");
    const int n = static_cast<int>(center.size());
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    Vec x(n);
    for (;;) {
        for (int i = 0; i < n; ++i)
            x[i] = center[i] - radius + 2.0 * radius * static_cast<double>(idx[static_cast<std::size_t>(i)]) / (n_grid - 1);
        if ((x - center).norm() <= radius) visit(x);
        int i = 0;
        while (i < n && ++idx[static_cast<std::size_t>(i)] == n_grid) idx[static_cast<std::size_t>(i++)] = 0;
        if (i == n) break;
    }
}

}  // namespace

GradLowerBound grad_lower_bound(const ObjectiveFunction& f, const Vec& target, double delta, double level,
                                int n_grid)
{
    if (!(level > f.value(target))) throw PreconditionError("grad_lower_bound: level must exceed f(target)");
    double zeta = std::numeric_limits<double>::infinity();
    for_each_ball_point(target, delta, n_grid, [&](const Vec& x) {
        if (f.value(x) >= level) zeta = std::min(zeta, f.gradient(x).norm());
    });
    if (!std::isfinite(zeta)) throw PreconditionError("grad_lower_bound: no lattice point of the ball reaches the level");
    return {level, delta, zeta};
}

BallExtremes ball_extremes(const ObjectiveFunction& f, const Vec& center, double radius, int n_grid)
{
    BallExtremes out{-std::numeric_limits<double>::infinity(), 0.0};
    for_each_ball_point(center, radius, n_grid, [&](const Vec& x) {
        out.f_max = std::max(out.f_max, f.value(x));
        out.grad_max = std::max(out.grad_max, f.gradient(x).norm());
    });
    return out;
}

// ---------------------------------------------------------------------------

namespace {

LimitKind target_kind(const ObjectiveFunction& f, const Vec& target)
{
    if (target.size() != f.dim()) throw PreconditionError("target dimension does not match the function");
    if (!f.box().contains(target)) throw PreconditionError("target lies outside the operating box");
    if (auto cp = f.find_critical(target, 1e-8 * (1.0 + target.norm()))) {
        switch (cp->kind) {
        case CriticalKind::local_min: return LimitKind::local_min;
        case CriticalKind::local_max: return LimitKind::local_max;
        case CriticalKind::saddle: return LimitKind::saddle;
        }
    }
    return classify_limit(f, target, 1e-6).kind;
}

std::vector<Vec> seed_directions(int n, bool axes_first, int n_random, std::uint64_t seed)
{
    std::vector<Vec> axes, random;
    for (int i = 0; i < n; ++i) {
        axes.push_back(Vec::Unit(n, i));
        axes.push_back(-Vec::Unit(n, i));
    }
    DirectionSampler sampler(seed);
    for (int i = 0; i < n_random; ++i) random.push_back(sampler.direction(n));
    std::vector<Vec> out = axes_first ? axes : random;
    const auto& rest = axes_first ? random : axes;
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

// Every a = target + r d with f(a) strictly above f(target), in order.
std::vector<Vec> ascent_seeds(const ObjectiveFunction& f, const Vec& target, double radius,
                              const std::vector<Vec>& directions)
{
    const double ft = f.value(target);
    const double floor = ft + 1e-12 * (1.0 + std::abs(ft));
    std::vector<Vec> out;
    for (const Vec& d : directions) {
        Vec a = target + radius * d;
        if (f.box().contains(a) && f.value(a) > floor) out.push_back(std::move(a));
    }
    return out;
}

struct Escape {
    bool ok = false;
    ReverseOrbit orbit;
    std::string message;
};

bool outside(const Vec& x, const Vec& target, double rho) { return (x - target).norm() >= rho; }

// Reverse orbit ending at `anchor` whose first point x_0 is the first to
// leave the rho-ball. Constant schedules are extended one step at a time; other
// schedules are rebuilt with doubling kbar and then bisected to the smallest
// kbar whose x_0 lies outside, which keeps alpha_k indexed from x_0.
Escape escape_ball(const ObjectiveFunction& f, const Vec& target, const Vec& anchor, const StepSchedule& s,
                   double rho, std::int64_t kbar_max)
{
    Escape out;
    if (s.kind() == StepSchedule::Kind::constant) {
        std::vector<Vec> backward{anchor};
        const double a = s.alpha(0);
        try {
            while (!outside(backward.back(), target, rho)) {
                if (static_cast<std::int64_t>(backward.size()) > kbar_max) {
                    out.message = "reverse orbit stayed inside the escape ball for kbar_max steps";
                    return out;
                }
                backward.push_back(ascent_prox(f, backward.back(), a));
            }
        } catch (const LeftBoxError& e) {
            out.message = std::string("reverse orbit left the box: ") + e.what();
            return out;
        }
        out.orbit.anchor = anchor;
        out.orbit.kbar = static_cast<std::int64_t>(backward.size()) - 1;
        out.orbit.points.assign(backward.rbegin(), backward.rend());
        certify(out.orbit, f, s);
        out.ok = true;
        return out;
    }

    auto escaped = [&](const ReverseOrbit& o) { return o.complete() && outside(o.points.front(), target, rho); };

    std::int64_t hi = 1;
    ReverseOrbit best;
    for (;;) {
        if (hi > kbar_max) {
            out.message = "doubling horizon exceeded kbar_max without escaping";
            return out;
        }
        best = reverse_orbit(f, anchor, s, hi);
        if (!best.complete()) {
            out.message = "reverse orbit left the box before escaping the ball";
            return out;
        }
        if (escaped(best)) break;
        hi *= 2;
    }
    std::int64_t lo = hi / 2;  // lo fails (or is 0), hi succeeds
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        ReverseOrbit o = reverse_orbit(f, anchor, s, mid);
        if (escaped(o)) {
            hi = mid;
            best = std::move(o);
        } else {
            lo = mid;
        }
    }
    out.orbit = std::move(best);
    out.ok = true;
    return out;
}

struct EscapeChoice {
    bool ok = false;
    ReverseOrbit orbit;
    StepSchedule schedule;
    int shrinks = 0;
    std::string message;
};

// Escapes the rho-ball and insists the constructed x_0 lands within `limit`
// of the target, halving the schedule on overshoot.
EscapeChoice escape_within(const ObjectiveFunction& f, const Vec& target, const Vec& anchor, const StepSchedule& s,
                           double rho, double limit, const ReachBudgets& budgets)
{
    EscapeChoice out{false, {}, s, 0, {}};
    for (int shrink = 0; shrink <= budgets.max_alpha_shrinks; ++shrink) {
        const StepSchedule sched = s.scaled(std::ldexp(1.0, -shrink));
        Escape esc = escape_ball(f, target, anchor, sched, rho, budgets.kbar_max);
        if (!esc.ok) {
            out.message = esc.message;
            return out;
        }
        if ((esc.orbit.points.front() - target).norm() <= limit) {
            out.ok = true;
            out.orbit = std::move(esc.orbit);
            out.schedule = sched;
            out.shrinks = shrink;
            return out;
        }
    }
    out.message = "constructed x0 overshoots the stability ball even after shrinking the step size";
    return out;
}

// Tries each seed in turn; a seed whose reverse orbit cannot escape (for
// instance because its preimages leave the box) falls through to the next.
EscapeChoice escape_from_seeds(const ObjectiveFunction& f, const Vec& target, const std::vector<Vec>& seeds,
                               const StepSchedule& s, double rho, double limit, const ReachBudgets& budgets,
                               Vec& used_seed)
{
    EscapeChoice last{false, {}, s, 0, {}};
    for (const Vec& seed : seeds) {
        EscapeChoice esc = escape_within(f, target, seed, s, rho, limit, budgets);
        used_seed = seed;
        if (esc.ok) return esc;
        last = std::move(esc);
    }
    return last;
}

// Reverse sphere exit from the first seed that crosses; records the seed
// used, or the last failure message when none does.
std::optional<SphereExit> exit_from_seeds(const ObjectiveFunction& f, const Vec& target, double delta,
                                          const std::vector<Vec>& seeds, const FlowSettings& settings,
                                          ReachReport& rep)
{
    for (const Vec& seed : seeds) {
        rep.ascent_seed = seed;
        try {
            return sphere_exit(f, seed, Direction::reverse, target, delta, settings);
        } catch (const NoCrossingError& e) {
            rep.message = std::string("no_crossing: ") + e.what();
        } catch (const LeftBoxError& e) {
            rep.message = e.what();
        }
    }
    return std::nullopt;
}

double replay_deviation(const Trajectory& forward, const ReverseOrbit& orbit)
{
    double dev = 0.0;
    const std::size_t n = std::min(forward.states.size(), orbit.points.size());
    for (std::size_t k = 0; k < n; ++k) dev = std::max(dev, (forward.states[k].x - orbit.points[k]).norm());
    if (forward.states.size() < orbit.points.size()) dev = std::numeric_limits<double>::infinity();
    return dev;
}

Vec last_point(const Trajectory& t) { return t.limit ? *t.limit : t.back().x; }

void check_common(double epsilon, double seed_radius, double tol)
{
    if (!(epsilon > 0.0)) throw PreconditionError("epsilon must be positive");
    if (!(seed_radius > 0.0)) throw PreconditionError("seed_radius must be positive");
    if (!(tol > 0.0)) throw PreconditionError("tol must be positive");
}

}  // namespace

ReachReport reach_discrete(const ObjectiveFunction& f, const Vec& target, double epsilon, const StepSchedule& s,
                           double seed_radius, double tol, const ReachBudgets& budgets)
{
    check_common(epsilon, seed_radius, tol);
    const LimitKind kind = target_kind(f, target);
    if (kind != LimitKind::local_min)
        throw PreconditionError("reach_discrete: target is " + to_string(kind) + ", not a local minimum");
    if (!admissible(s, f, Regime::prox))
        throw PreconditionError("reach_discrete: schedule " + s.to_string() + " violates sup alpha < 1/L");

    ReachReport rep;
    rep.mode = "discrete";
    rep.target = target;
    rep.seed_radius = seed_radius;
    rep.x0 = target;

    double delta = 0.0;
    if (budgets.delta) {
        delta = *budgets.delta;
        if (!(delta > 0.0 && delta <= epsilon)) throw PreconditionError("reach_discrete: delta must lie in (0, epsilon]");
    } else {
        rep.probe = stability_probe(f, target, epsilon, s, ProbeMode::discrete, budgets.probe);
        delta = rep.probe->delta_hat;
    }
    rep.delta_used = delta;
    if (delta <= 0.0) {
        rep.message = "stability probe found no admissible radius";
        return rep;
    }
    const double rho = budgets.escape_fraction * delta;
    rep.escape_radius = rho;
    if (!(seed_radius < rho)) throw PreconditionError("reach_discrete: seed_radius must be smaller than the escape radius");

    const auto seeds =
        ascent_seeds(f, target, seed_radius, seed_directions(f.dim(), true, budgets.seed_directions, budgets.seed));
    if (seeds.empty()) {
        rep.message = "no ascent direction found around the target";
        return rep;
    }
    EscapeChoice esc = escape_from_seeds(f, target, seeds, s, rho, delta, budgets, rep.ascent_seed);
    if (!esc.ok) {
        rep.message = esc.message;
        return rep;
    }
    rep.alpha_shrinks = esc.shrinks;
    rep.schedule_used = esc.schedule;
    rep.kbar = esc.orbit.kbar;
    rep.x0 = esc.orbit.points.front();

    rep.forward = run_gd(f, rep.x0, esc.schedule, GdOptions{budgets.gtol, budgets.max_iter, false, true});
    rep.replay_deviation = replay_deviation(rep.forward, esc.orbit);
    rep.reverse_orbit = std::move(esc.orbit);
    rep.limit = last_point(rep.forward);
    rep.final_distance = (*rep.limit - target).norm();
    const bool ok = rep.forward.status == TerminalStatus::converged && rep.final_distance <= tol && rep.x0 != target;
    rep.status = ok ? ReachStatus::success : ReachStatus::no_converge;
    rep.message = ok ? "forward replay converged to the target"
                     : "forward replay ended " + to_string(rep.forward.status) + " at " + format_point(*rep.limit);
    return rep;
}

ReachReport reach_continuous(const ObjectiveFunction& f, const Vec& target, double epsilon,
                             const FlowSettings& settings, double seed_radius, double tol, const ReachBudgets& budgets)
{
    check_common(epsilon, seed_radius, tol);
    settings.validate(f.lipschitz());
    const LimitKind kind = target_kind(f, target);
    if (kind != LimitKind::local_min)
        throw PreconditionError("reach_continuous: target is " + to_string(kind) + ", not a local minimum");

    ReachReport rep;
    rep.mode = "continuous";
    rep.target = target;
    rep.seed_radius = seed_radius;
    rep.x0 = target;

    double delta = 0.0;
    if (budgets.delta) {
        delta = *budgets.delta;
        if (!(delta > 0.0 && delta <= epsilon))
            throw PreconditionError("reach_continuous: delta must lie in (0, epsilon]");
    } else {
        ProbeOptions po = budgets.probe;
        po.flow = settings;
        // The probe only needs placement, not precision.
        po.gtol = std::max(settings.gtol, po.gtol);
        rep.probe = stability_probe(f, target, epsilon, StepSchedule::constant(1.0), ProbeMode::continuous, po);
        delta = rep.probe->delta_hat;
    }
    rep.delta_used = delta;
    rep.escape_radius = delta;
    if (delta <= 0.0) {
        rep.message = "stability probe found no admissible radius";
        return rep;
    }
    if (!(seed_radius < delta)) throw PreconditionError("reach_continuous: seed_radius must be smaller than delta");

    const auto seeds =
        ascent_seeds(f, target, seed_radius, seed_directions(f.dim(), true, budgets.seed_directions, budgets.seed));
    if (seeds.empty()) {
        rep.message = "no ascent direction found around the target";
        return rep;
    }
    std::optional<SphereExit> ex = exit_from_seeds(f, target, delta, seeds, settings, rep);
    if (!ex) return rep;
    rep.t_exit = ex->t_exit;
    rep.x0 = ex->b;
    rep.reverse_flow = std::move(ex->path);

    rep.forward = integrate(f, rep.x0, Direction::forward, settings);
    rep.limit = last_point(rep.forward);
    rep.final_distance = (*rep.limit - target).norm();
    const bool ok = rep.forward.status == TerminalStatus::converged && rep.final_distance <= tol && rep.x0 != target;
    rep.status = ok ? ReachStatus::success : ReachStatus::no_converge;
    rep.message = ok ? "forward flow converged to the target"
                     : "forward flow ended " + to_string(rep.forward.status) + " at " + format_point(*rep.limit);
    return rep;
}

ReachReport reach_general(const ObjectiveFunction& f, const Vec& target, double epsilon, ProbeMode mode,
                          const GeneralParams& params)
{
    check_common(epsilon, params.seed_radius, params.tol);
    const LimitKind kind = target_kind(f, target);
    if (kind == LimitKind::local_max || kind == LimitKind::non_stationary)
        throw PreconditionError("reach_general: target is " + to_string(kind) + "; need a non-maximum critical point");

    const double level = f.value(target);
    const double delta = params.delta.value_or(epsilon);
    if (!(delta > 0.0 && delta <= epsilon)) throw PreconditionError("reach_general: delta must lie in (0, epsilon]");

    ReachReport rep;
    rep.mode = mode == ProbeMode::discrete ? "general-discrete" : "general-continuous";
    rep.target = target;
    rep.seed_radius = params.seed_radius;
    rep.delta_used = delta;
    rep.x0 = target;

    std::vector<Vec> dirs;
    if (params.seed_direction) {
        if (params.seed_direction->size() != f.dim() || !(params.seed_direction->norm() > 0.0))
            throw PreconditionError("reach_general: seed_direction must be a nonzero vector of the function's dimension");
        dirs.push_back(params.seed_direction->normalized());
    } else {
        // Coordinate axes are often invariant lines of a saddle, on which the
        // capped flow never reaches the level set; try generic directions first.
        dirs = seed_directions(f.dim(), false, params.budgets.seed_directions, params.budgets.seed);
    }
    const auto seeds = ascent_seeds(f, target, params.seed_radius, dirs);
    if (seeds.empty()) {
        rep.message = "no ascent direction found around the target";
        return rep;
    }

    if (mode == ProbeMode::continuous) {
        params.flow.validate(f.lipschitz());
        if (!(params.seed_radius < delta)) throw PreconditionError("reach_general: seed_radius must be smaller than delta");
        rep.escape_radius = delta;
        // The reverse flow raises f, so it stays where cap(f, level) = f.
        std::optional<SphereExit> ex = exit_from_seeds(f, target, delta, seeds, params.flow, rep);
        if (!ex) return rep;
        rep.t_exit = ex->t_exit;
        rep.x0 = ex->b;
        rep.reverse_flow = std::move(ex->path);
        rep.forward = integrate_minnorm(cap(f, level), rep.x0, params.flow);
        rep.limit = last_point(rep.forward);
        rep.final_distance = (*rep.limit - target).norm();
        const bool ok = rep.forward.status == TerminalStatus::converged && rep.final_distance <= params.tol;
        rep.status = ok ? ReachStatus::success : ReachStatus::no_converge;
        rep.message = "capped flow ended " + to_string(rep.forward.status) + " at " + format_point(*rep.limit);
        return rep;
    }

    if (!params.schedule) throw PreconditionError("reach_general: discrete mode needs a step schedule");
    const StepSchedule& s = *params.schedule;
    if (!admissible(s, f, Regime::prox))
        throw PreconditionError("reach_general: schedule " + s.to_string() + " violates sup alpha < 1/L");
    const double rho = params.budgets.escape_fraction * delta;
    rep.escape_radius = rho;
    if (!(params.seed_radius < rho))
        throw PreconditionError("reach_general: seed_radius must be smaller than the escape radius");

    EscapeChoice esc = escape_from_seeds(f, target, seeds, s, rho, delta, params.budgets, rep.ascent_seed);
    if (!esc.ok) {
        rep.message = esc.message;
        return rep;
    }
    rep.alpha_shrinks = esc.shrinks;
    rep.schedule_used = esc.schedule;
    rep.kbar = esc.orbit.kbar;
    rep.x0 = esc.orbit.points.front();

    rep.forward = run_gd(f, rep.x0, esc.schedule, GdOptions{params.budgets.gtol, params.budgets.max_iter, false, true});
    rep.replay_deviation = replay_deviation(rep.forward, esc.orbit);
    rep.reverse_orbit = std::move(esc.orbit);
    rep.limit = last_point(rep.forward);

    const auto& st = rep.forward.states;
    for (std::size_t k = 1; k < st.size(); ++k) {
        if (st[k].f > level) continue;
        // f(prev) > level >= f(cur): bisect the segment for the level crossing.
        const Vec& p = st[k - 1].x;
        const Vec dir = st[k].x - p;
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (f.value(p + mid * dir) > level)
                lo = mid;
            else
                hi = mid;
        }
        rep.crossing = p + hi * dir;
        break;
    }
    if (rep.crossing) {
        rep.final_distance = (*rep.crossing - target).norm();
        rep.message = "forward replay crossed the target level";
    } else {
        rep.final_distance = (*rep.limit - target).norm();
        rep.message = "forward replay ended " + to_string(rep.forward.status) + " without crossing the target level";
    }
    const bool landed = rep.crossing || rep.forward.status == TerminalStatus::converged;
    rep.status = landed && rep.final_distance <= params.tol ? ReachStatus::success : ReachStatus::no_converge;
    return rep;
}

// ---------------------------------------------------------------------------

EosResult edge_of_stability(const ObjectiveFunction& f, double alpha, const Vec& x0)
{
    if (f.name() != "quad") throw PreconditionError("edge_of_stability: the exact criterion needs the quad builtin");
    if (!(alpha > 0.0)) throw PreconditionError("edge_of_stability: alpha must be positive");
    if (x0.size() != f.dim()) throw PreconditionError("edge_of_stability: x0 has the wrong dimension");

    const auto& lam = f.params();
    double r = 0.0, r_eff = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < lam.size(); ++i) {
        const double ri = std::abs(1.0 - alpha * lam[i]);
        r = std::max(r, ri);
        if (x0[static_cast<Eigen::Index>(i)] != 0.0) {
            r_eff = std::max(r_eff, ri);
            any = true;
        }
    }
    auto verdict_of = [](double rad) {
        if (rad < 1.0) return EosVerdict::converges;
        if (rad > 1.0) return EosVerdict::diverges;
        return EosVerdict::neutral;
    };
    EosResult out{any ? verdict_of(r_eff) : EosVerdict::converges, r, r_eff, EosVerdict::neutral, false, {}};

    out.run = run_gd(f, x0, StepSchedule::constant(alpha), GdOptions{0.0, 1000, true, true});
    const double n0 = x0.norm();
    const double nK = out.run.back().x.norm();
    if (out.run.status == TerminalStatus::diverged || nK > 10.0 * n0)
        out.empirical = EosVerdict::diverges;
    else if (nK <= 1e-3 * n0)
        out.empirical = EosVerdict::converges;
    else
        out.empirical = EosVerdict::neutral;
    if (!any) out.empirical = EosVerdict::converges;
    out.agrees = out.empirical == out.verdict;
    return out;
}

}  // namespace basinreach
