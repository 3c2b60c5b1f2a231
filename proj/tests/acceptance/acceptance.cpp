#include "basinreach/descent.hpp"
#include "basinreach/flow.hpp"
#include "basinreach/reach.hpp"
#include "basinreach/reverse.hpp"
#include "basinreach/sampling.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>

using namespace basinreach;

namespace {

Vec v1(double a) { return make_vec({a}); }
Vec v2(double a, double b) { return make_vec({a, b}); }

FlowSettings flow(double h, double t_max = 100.0, double gtol = 1e-10)
{
    FlowSettings s;
    s.h = h;
    s.t_max = t_max;
    s.gtol = gtol;
    return s;
}

Vec random_in_box(const Box& box, DirectionSampler& rng)
{
    Vec x(box.dim());
    for (int i = 0; i < box.dim(); ++i) x[i] = box.lower[i] + rng.uniform() * (box.upper[i] - box.lower[i]);
    return x;
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

Outcome a1()
{
    Outcome o;
    DirectionSampler rng(2024);
    double worst = 0.0;
    int skipped = 0;
    for (const auto& f : {make_builtin("quad", {1.0, 4.0}), make_builtin("double_well"), make_builtin("himmelblau"),
                          make_builtin("saddle")}) {
        int done = 0;
        while (done < 500) {
            const Vec x = random_in_box(f.box(), rng);
            double lambda = 0.0;
            while (lambda == 0.0) lambda = 0.9 * rng.uniform() / f.lipschitz();
            Vec y;
            try {
                y = prox(f, x, lambda);
            } catch (const LeftBoxError&) {
                ++skipped;
                continue;
            }
            const double res = (y - (x - lambda * f.gradient(y))).norm() / (1 + x.norm());
            worst = std::max(worst, res);
            const auto c = prox_certificates(f, x, lambda, y);
            o.require(c.dec_ok && c.step_ok, f.name() + " certificate at " + format_point(x));
            ++done;
        }
    }
    o.require(worst <= 1e-10, "residual " + num(worst));
    if (o.pass) o.detail = "max residual " + num(worst) + ", " + std::to_string(skipped) + " draws left the box";
    return o;
}

Outcome a2()
{
    Outcome o;
    const auto half = make_builtin("quad", {1.0});
    const auto s = StepSchedule::constant(0.5);
    const auto orbit = reverse_orbit(half, v1(0.1), s, 3);
    o.require(orbit.complete() && orbit.points.size() == 4, "orbit incomplete");
    if (!o.pass) return o;
    const double expect[] = {0.8, 0.4, 0.2, 0.1};
    double err = 0.0, replay = 0.0;
    Vec x = orbit.points[0];
    for (int i = 0; i < 4; ++i) {
        err = std::max(err, std::abs(orbit.points[i][0] - expect[i]));
        replay = std::max(replay, std::abs(x[0] - orbit.points[i][0]));
        if (i < 3) x = gd_step(half, x, s.alpha(i));
    }
    o.require(err <= 1e-12, "orbit error " + num(err));
    o.require(replay <= 1e-12, "replay error " + num(replay));
    if (o.pass) o.detail = "orbit error " + num(err) + ", replay error " + num(replay);
    return o;
}

Outcome a3()
{
    Outcome o;
    struct Target {
        ObjectiveFunction f;
        Vec point;
    };
    const auto dw = make_builtin("double_well");
    const auto hb = make_builtin("himmelblau");
    std::vector<Target> targets{{dw, v1(1.0)}};
    for (const auto& cp : hb.critical_points())
        if (cp.kind == CriticalKind::local_min) targets.push_back({hb, cp.point});
    o.require(targets.size() == 5, "expected 4 himmelblau minima");
    double worst_d = 0.0, worst_t = 0.0;
    for (const auto& t : targets) {
        const double c = 0.5 / t.f.lipschitz();
        for (const auto& s : {StepSchedule::constant(c), StepSchedule::power(c, 0.5)}) {
            const auto start = std::chrono::steady_clock::now();
            const auto rep = reach_discrete(t.f, t.point, 0.5, s, 1e-3, 1e-4);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            const std::string tag = t.f.name() + " " + format_point(t.point) + " " + s.to_string();
            o.require(rep.status == ReachStatus::success, tag + ": " + to_string(rep.status));
            o.require(rep.final_distance <= 1e-4, tag + ": distance " + num(rep.final_distance));
            o.require(rep.x0 != t.point, tag + ": x0 equals the target");
            o.require(secs < 10.0, tag + ": " + num(secs) + " s");
            worst_d = std::max(worst_d, rep.final_distance);
            worst_t = std::max(worst_t, secs);
        }
    }
    if (o.pass) o.detail = "10 runs, max distance " + num(worst_d) + ", slowest " + num(worst_t) + " s";
    return o;
}

Outcome a4()
{
    Outcome o;
    const auto half = make_builtin("quad", {1.0});
    ReachBudgets b;
    b.delta = 1.0;
    const auto exact = reach_continuous(half, v1(0.0), 1.0, flow(1e-3), 1e-3, 1e-6, b);
    o.require(exact.status == ReachStatus::success, "half square: " + to_string(exact.status));
    o.require(std::abs(std::abs(exact.x0[0]) - 1.0) <= 1e-8, "half square: b = " + format_point(exact.x0));
    o.require(exact.limit && std::abs((*exact.limit)[0]) <= 1e-6, "half square: limit not within 1e-6");

    const auto dw = make_builtin("double_well");
    const auto rep = reach_continuous(dw, v1(-1.0), 0.5, flow(1e-3), 1e-3, 1e-3);
    o.require(rep.status == ReachStatus::success, "double_well: " + to_string(rep.status));
    o.require(rep.final_distance <= 1e-3, "double_well: distance " + num(rep.final_distance));
    if (o.pass)
        o.detail = "b = " + format_point(exact.x0) + ", double_well distance " + num(rep.final_distance);
    return o;
}

Outcome a5()
{
    Outcome o;
    const auto dw = make_builtin("double_well");
    const auto s = StepSchedule::constant(0.05);
    const ProbeOptions po;
    const auto est = stability_probe(dw, v1(1.0), 0.5, s, ProbeMode::discrete, po);
    o.require(est.delta_hat >= 0.4, "delta_hat " + num(est.delta_hat));
    int violations = 0;
    for (const Vec& x0 : probe_starts(v1(1.0), est.delta_hat, po.n_samples, po.seed))
        if (!probe_run(dw, v1(1.0), 0.5, s, x0, ProbeMode::discrete, po)) ++violations;
    o.require(violations == 0, std::to_string(violations) + " containment violations on re-run");

    const auto half = make_builtin("quad", {1.0});
    const double eps = 0.5;
    const auto h = stability_probe(half, v1(0.0), eps, StepSchedule::constant(0.5), ProbeMode::discrete, po);
    const double resolution = eps / std::ldexp(1.0, po.bisection_steps);
    o.require(std::abs(h.delta_hat - eps) <= resolution, "half square delta_hat " + num(h.delta_hat));
    if (o.pass) o.detail = "double_well delta_hat " + num(est.delta_hat) + ", half square " + num(h.delta_hat);
    return o;
}

Outcome a6()
{
    Outcome o;
    const auto half = make_builtin("quad", {1.0});
    const DesingularizationModel psi(std::sqrt(2.0), 0.5);
    const auto fl = integrate(half, v1(2.0), Direction::forward, flow(1e-3, 100.0, 1e-12));
    const double len = path_length(fl);
    const auto bound = check_length_bound(fl, psi, half);
    o.require(std::abs(len - 2.0) <= 5e-3, "flow length " + num(len));
    o.require(bound.ok, "length bound fails: " + num(bound.lhs) + " > " + num(bound.rhs));
    const auto gd = run_gd(half, v1(2.0), StepSchedule::constant(0.5), GdOptions{1e-14});
    const double glen = path_length(gd);
    o.require(std::abs(glen - 2.0) <= 1e-9, "gd length " + num(glen));
    if (o.pass)
        o.detail = "flow length error " + num(std::abs(len - 2.0)) + ", gd length error " + num(std::abs(glen - 2.0));
    return o;
}

Outcome a7()
{
    Outcome o;
    const auto q = make_builtin("quad", {1.0});
    for (double alpha : {1.9, 2.1, 2.0}) {
        // spectral oracle for a single eigenvalue 1
        const double r = std::abs(1.0 - alpha);
        const EosVerdict oracle = r < 1.0 ? EosVerdict::converges : r > 1.0 ? EosVerdict::diverges : EosVerdict::neutral;
        const auto res = edge_of_stability(q, alpha, v1(1.0));
        o.require(res.verdict == oracle,
                  "alpha " + num(alpha) + ": " + to_string(res.verdict) + " vs " + to_string(oracle));
        o.require(res.agrees, "alpha " + num(alpha) + ": empirical run disagrees");
        if (!o.detail.empty() && o.pass) o.detail += ", ";
        if (o.pass) o.detail += num(alpha) + " " + to_string(res.verdict);
    }
    return o;
}

Outcome a8()
{
    Outcome o;
    const auto sd = make_builtin("saddle");
    double prev_c = std::numeric_limits<double>::infinity(), prev_d = prev_c;
    std::string trail;
    for (double r : {1e-1, 1e-2, 1e-3}) {
        GeneralParams gp;
        gp.seed_radius = r;
        gp.flow = flow(1e-3);
        const auto c = reach_general(sd, v2(0, 0), 1.0, ProbeMode::continuous, gp);
        gp.schedule = StepSchedule::constant(0.1);
        const auto d = reach_general(sd, v2(0, 0), 1.0, ProbeMode::discrete, gp);
        o.require(c.final_distance < prev_c, "continuous distance not decreasing at " + num(r));
        o.require(d.final_distance < prev_d, "discrete distance not decreasing at " + num(r));
        prev_c = c.final_distance;
        prev_d = d.final_distance;
        trail += (trail.empty() ? "" : " ") + num(c.final_distance) + "/" + num(d.final_distance);
    }
    o.require(prev_c <= 1e-2, "continuous final " + num(prev_c));
    o.require(prev_d <= 1e-2, "discrete final " + num(prev_d));
    if (o.pass) o.detail = "continuous/discrete distances " + trail;
    return o;
}

// Exhaustive minimum of |sum w_i g_i|^2 over the simplex lattice with spacing
// 1/n. All weights but the last two are enumerated; the second to last is the
// lattice neighbour of the one-dimensional minimizer, the last is the remainder.
double lattice_min(const std::vector<Vec>& g, int n)
{
    const int m = static_cast<int>(g.size());
    if (m == 1) return g[0].squaredNorm();
    const Vec& last = g[m - 1];
    const Vec d = g[m - 2] - last;
    const double dd = d.squaredNorm();
    double best = std::numeric_limits<double>::infinity();
    std::function<void(int, int, const Vec&)> rec = [&](int i, int left, const Vec& partial) {
        if (i == m - 2) {
            // partial + (left/n) last + t d, t in {0, 1/n, ..., left/n}
            const Vec a = partial + (static_cast<double>(left) / n) * last;
            auto eval = [&](int j) { return (a + (static_cast<double>(j) / n) * d).squaredNorm(); };
            int j0 = 0;
            if (dd > 0) j0 = static_cast<int>(std::floor(-a.dot(d) / dd * n));
            for (int j : {j0, j0 + 1}) best = std::min(best, eval(std::clamp(j, 0, left)));
            return;
        }
        for (int w = 0; w <= left; ++w) rec(i + 1, left - w, partial + (static_cast<double>(w) / n) * g[i]);
    };
    rec(0, n, Vec::Zero(last.size()));
    return best;
}

Outcome a9()
{
    Outcome o;
    DirectionSampler rng(99);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const int size = 1 + static_cast<int>(rng.uniform() * 4) % 4;
        const int dim = 1 + static_cast<int>(rng.uniform() * 3) % 3;
        std::vector<Vec> g;
        for (int i = 0; i < size; ++i) {
            Vec v(dim);
            for (int k = 0; k < dim; ++k) v[k] = rng.uniform() - 0.5;
            g.push_back(v);
        }
        const double wolfe = min_norm_element(g).squaredNorm();
        const double grid = lattice_min(g, 1000);
        o.require(wolfe <= grid + 1e-12, "set " + std::to_string(t) + ": wolfe above the lattice");
        o.require(grid - wolfe <= 1e-6, "set " + std::to_string(t) + ": gap " + num(grid - wolfe));
        worst = std::max(worst, grid - wolfe);
    }
    if (o.pass) o.detail = "100 sets, max squared-norm gap " + num(worst);
    return o;
}

Outcome a10()
{
    Outcome o;
    const auto audit = certificate_audit();
    o.require(audit.runs > 0, "no audited runs");
    o.require(audit.violations == 0, std::to_string(audit.violations) + " violations");
    if (o.pass)
        o.detail = std::to_string(audit.runs) + " runs, " + std::to_string(audit.steps) + " steps, 0 violations";
    return o;
}

}  // namespace

int main()
{
    struct Criterion {
        const char* id;
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"A1", "proximal identity", a1},
        {"A2", "exact reverse orbit", a2},
        {"A3", "discrete reachability", a3},
        {"A4", "continuous reachability", a4},
        {"A5", "stability radius", a5},
        {"A6", "length bound witness", a6},
        {"A7", "edge of stability", a7},
        {"A8", "saddle reachability", a8},
        {"A9", "min-norm oracle", a9},
        {"A10", "descent certificates", a10},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.pass) ++failed;
        std::printf("%s %-4s %-24s %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
