#include "basinreach/reverse.hpp"

#include <cmath>

namespace basinreach {

namespace {

// Picard iteration for y = base + sign * step * grad f(y). The map is a
// contraction with factor step * L < 1 on the box.
FixedPointResult solve_implicit(const ObjectiveFunction& f, const Vec& base, double step, double sign,
                                const char* who)
{
    if (!f.box().contains(base)) throw LeftBoxError(std::string(who) + ": point outside box", base);
    const double rate = step * f.lipschitz();
    if (!(step > 0.0) || !(rate < 1.0))
        throw PreconditionError(std::string(who) + ": step must lie in (0, 1/L)");

    Vec y = base;
    Vec next = base + sign * step * f.gradient(y);
    double move = (next - y).norm();
    const double tol = kFixedPointTol * std::max(base.norm(), next.norm());

    int cap = 100;
    if (rate > 0.0 && move > tol) cap += static_cast<int>(std::ceil(std::log(tol / move) / std::log(rate)));
    cap = std::min(cap, 1'000'000);

    int it = 1;
    while (move > tol) {
        if (!f.box().contains(next))
            throw LeftBoxError(std::string(who) + ": fixed-point iterate left the box at " + format_point(next), next);
        if (it >= cap) throw Error(std::string(who) + ": fixed-point iteration did not settle");
        y = std::move(next);
        next = base + sign * step * f.gradient(y);
        move = (next - y).norm();
        ++it;
    }
    if (!f.box().contains(next))
        throw LeftBoxError(std::string(who) + ": solution outside box at " + format_point(next), next);
    return {std::move(next), it};
}

}  // namespace

FixedPointResult prox_solve(const ObjectiveFunction& f, const Vec& x, double lambda)
{
    return solve_implicit(f, x, lambda, -1.0, "prox");
}

Vec prox(const ObjectiveFunction& f, const Vec& x, double lambda) { return prox_solve(f, x, lambda).point; }

ProxCertificates prox_certificates(const ObjectiveFunction& f, const Vec& x, double lambda, const Vec& xplus)
{
    const double fx = f.value(x);
    const double slack = 1e-9 * (1.0 + std::abs(fx));
    const double gplus = f.gradient(xplus).norm();
    const double gx = f.gradient(x).norm();
    const bool dec = fx - f.value(xplus) >= 0.5 * lambda * gplus * gplus - slack;
    const bool step = (xplus - x).norm() <= 2.0 * lambda / (1.0 - f.lipschitz() * lambda) * gx + slack;
    return {dec, step};
}

FixedPointResult ascent_prox_solve(const ObjectiveFunction& f, const Vec& xnext, double a)
{
    return solve_implicit(f, xnext, a, 1.0, "ascent_prox");
}

Vec ascent_prox(const ObjectiveFunction& f, const Vec& xnext, double a)
{
    return ascent_prox_solve(f, xnext, a).point;
}

void certify(ReverseOrbit& orbit, const ObjectiveFunction& f, const StepSchedule& s)
{
    orbit.forward_residuals.clear();
    for (std::size_t i = 0; i + 1 < orbit.points.size(); ++i) {
        const std::int64_t k = orbit.first_index + static_cast<std::int64_t>(i);
        const Vec& xk = orbit.points[i];
        orbit.forward_residuals.push_back((orbit.points[i + 1] - (xk - s.alpha(k) * f.gradient(xk))).norm());
    }
}

ReverseOrbit reverse_orbit(const ObjectiveFunction& f, const Vec& anchor, const StepSchedule& s, std::int64_t kbar)
{
    if (!admissible(s, f, Regime::prox))
        throw PreconditionError("reverse_orbit: schedule " + s.to_string() + " violates sup alpha < 1/L");
    if (kbar < 0) throw PreconditionError("reverse_orbit: kbar must be nonnegative");
    if (!f.box().contains(anchor)) throw LeftBoxError("reverse_orbit: anchor outside box", anchor);

    ReverseOrbit orbit;
    orbit.anchor = anchor;
    orbit.kbar = kbar;

    // Built backward, reversed at the end.
    std::vector<Vec> backward{anchor};
    std::int64_t k = kbar - 1;
    for (; k >= 0; --k) {
        try {
            backward.push_back(ascent_prox(f, backward.back(), s.alpha(k)));
        } catch (const LeftBoxError& e) {
            orbit.status = ReverseOrbit::Status::left_box;
            orbit.exit_point = e.point();
            break;
        }
    }
    orbit.first_index = k + 1;
    orbit.points.assign(backward.rbegin(), backward.rend());
    certify(orbit, f, s);
    return orbit;
}

}  // namespace basinreach
