#include "basinreach/descent.hpp"
#include "basinreach/sampling.hpp"

#include <atomic>
#include <cmath>

namespace basinreach {

std::string to_string(TerminalStatus status)
{
    switch (status) {
    case TerminalStatus::converged: return "converged";
    case TerminalStatus::budget_exhausted: return "budget_exhausted";
    case TerminalStatus::left_box: return "left_box";
    case TerminalStatus::diverged: return "diverged";
    }
    return "unknown";
}

std::string to_string(LimitKind kind)
{
    switch (kind) {
    case LimitKind::local_min: return "local_min";
    case LimitKind::saddle: return "saddle";
    case LimitKind::local_max: return "local_max";
    case LimitKind::non_stationary: return "non_stationary";
    }
    return "unknown";
}

namespace {

std::atomic<std::int64_t> g_audit_runs{0};
std::atomic<std::int64_t> g_audit_steps{0};
std::atomic<std::int64_t> g_audit_violations{0};

bool descent_ok(double f_next, double f_now, double a, double L, double gnorm)
{
    const double bound = f_now - a * (1.0 - 0.5 * L * a) * gnorm * gnorm + 1e-12 * (1.0 + std::abs(f_now));
    return f_next <= bound;
}

}  // namespace

Vec gd_step(const ObjectiveFunction& f, const Vec& x, double a)
{
    if (!f.box().contains(x)) throw LeftBoxError("gd_step: starting point outside box", x);
    if (!(a > 0.0) || !(a * f.lipschitz() < 2.0))
        throw PreconditionError("gd_step: step size must lie in (0, 2/L)");
    Vec next = x - a * f.gradient(x);
    if (!f.box().contains(next))
        throw LeftBoxError("gd_step: iterate left the box at " + format_point(next), next);
    return next;
}

Trajectory run_gd(const ObjectiveFunction& f, const Vec& x0, const StepSchedule& s, const GdOptions& options)
{
    if (!options.unsafe && !admissible(s, f, Regime::stability))
        throw PreconditionError("run_gd: schedule " + s.to_string() + " violates sup alpha < 2/L");
    if (!f.box().contains(x0)) throw LeftBoxError("run_gd: x0 outside box", x0);

    const double L = f.lipschitz();
    const double blowup = 1e3 * (1.0 + f.box().diameter());

    Trajectory traj;
    Vec x = x0;
    double fx = f.value(x);
    Vec g = f.gradient(x);
    double t = 0.0;
    std::int64_t steps = 0, violations = 0;

    auto push = [&](std::int64_t k) {
        State st{k, t, x, fx, g.norm()};
        if (options.record || traj.states.size() < 2)
            traj.states.push_back(std::move(st));
        else
            traj.states.back() = std::move(st);
    };

    for (std::int64_t k = 0;; ++k) {
        push(k);
        const double gnorm = traj.states.back().gnorm;
        if (gnorm < options.gtol) {
            traj.status = TerminalStatus::converged;
            traj.limit = x;
            break;
        }
        if (k >= options.max_iter) {
            traj.status = TerminalStatus::budget_exhausted;
            break;
        }
        const double a = s.alpha(k);
        Vec next = x - a * g;
        if (options.unsafe) {
            if (!next.allFinite() || next.norm() > blowup) {
                traj.status = TerminalStatus::diverged;
                traj.exit_point = std::move(next);
                break;
            }
        } else if (!f.box().contains(next)) {
            traj.status = TerminalStatus::left_box;
            traj.exit_point = std::move(next);
            break;
        }
        const double fnext = f.value(next);
        if (!options.unsafe) {
            ++steps;
            if (!descent_ok(fnext, fx, a, L, gnorm)) ++violations;
        }
        x = std::move(next);
        fx = fnext;
        g = f.gradient(x);
        t += a;
    }

    if (!options.unsafe) {
        g_audit_runs.fetch_add(1, std::memory_order_relaxed);
        g_audit_steps.fetch_add(steps, std::memory_order_relaxed);
        g_audit_violations.fetch_add(violations, std::memory_order_relaxed);
    }
    return traj;
}

std::int64_t descent_violations(const ObjectiveFunction& f, const Trajectory& traj, const StepSchedule& s)
{
    std::int64_t bad = 0;
    for (std::size_t i = 0; i + 1 < traj.states.size(); ++i) {
        const State& cur = traj.states[i];
        const State& nxt = traj.states[i + 1];
        if (!descent_ok(nxt.f, cur.f, s.alpha(cur.k), f.lipschitz(), cur.gnorm)) ++bad;
    }
    return bad;
}

double recurrence_residual(const ObjectiveFunction& f, const Trajectory& traj, const StepSchedule& s)
{
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < traj.states.size(); ++i) {
        const State& cur = traj.states[i];
        const Vec expect = cur.x - s.alpha(cur.k) * f.gradient(cur.x);
        worst = std::max(worst, (traj.states[i + 1].x - expect).norm() / (1.0 + cur.x.norm()));
    }
    return worst;
}

CertificateAudit certificate_audit()
{
    return {g_audit_runs.load(), g_audit_steps.load(), g_audit_violations.load()};
}

void reset_certificate_audit()
{
    g_audit_runs = 0;
    g_audit_steps = 0;
    g_audit_violations = 0;
}

namespace {

LimitKind classify_by_sampling(const ObjectiveFunction& f, const Vec& x, double radius)
{
    const int n = f.dim();
    const double f0 = f.value(x);
    bool up = false, down = false;
    auto probe = [&](const Vec& d) {
        const double df = f.value(x + radius * d) - f0;
        if (df > 0.0) up = true;
        if (df < 0.0) down = true;
    };
    for (int i = 0; i < n; ++i) {
        probe(Vec::Unit(n, i));
        probe(-Vec::Unit(n, i));
    }
    DirectionSampler sampler(0x5eedULL);
    for (int i = 0; i < 64; ++i) probe(sampler.direction(n));
    if (!down) return LimitKind::local_min;
    if (!up) return LimitKind::local_max;
    return LimitKind::saddle;
}

}  // namespace

LimitClass classify_limit(const ObjectiveFunction& f, const Vec& x, double tol)
{
    if (f.gradient(x).norm() >= tol) return {LimitKind::non_stationary, false};
    if (!f.has_hessian()) return {classify_by_sampling(f, x, std::sqrt(tol)), true};

    const Vec ev = Eigen::SelfAdjointEigenSolver<Mat>(f.hessian(x), Eigen::EigenvaluesOnly).eigenvalues();
    const bool pos = (ev.array() > tol).any();
    const bool neg = (ev.array() < -tol).any();
    const bool flat = (ev.array().abs() <= tol).any();
    if (pos && neg) return {LimitKind::saddle, false};
    if (!flat) return {pos ? LimitKind::local_min : LimitKind::local_max, false};
    return {classify_by_sampling(f, x, std::sqrt(tol)), false};
}

}  // namespace basinreach
