#pragma once

#include "basinreach/landscape.hpp"
#include "basinreach/schedule.hpp"

#include <cstdint>
#include <vector>

namespace basinreach {

/// Inner tolerance of the contraction solves: successive iterates within
/// 1e-13 max(|x|, |first iterate|), relative so that orbits started close to
/// a critical point keep their relative accuracy.
inline constexpr double kFixedPointTol = 1e-13;

struct FixedPointResult {
    Vec point;
    int iterations;
};

/// Proximal point argmin_y f(y) + |y - x|^2 / (2 lambda), i.e. the solution of
/// y = x - lambda grad f(y). Requires lambda < 1/L.
Vec prox(const ObjectiveFunction& f, const Vec& x, double lambda);
FixedPointResult prox_solve(const ObjectiveFunction& f, const Vec& x, double lambda);

struct ProxCertificates {
    bool dec_ok;   ///< f(x) - f(x+) >= lambda/2 |grad f(x+)|^2
    bool step_ok;  ///< |x+ - x| <= 2 lambda / (1 - L lambda) |grad f(x)|
};

ProxCertificates prox_certificates(const ObjectiveFunction& f, const Vec& x, double lambda, const Vec& xplus);

/// Implicit ascent step: argmax_y f(y) - |y - xnext|^2 / (2a), the unique y
/// with y - a grad f(y) = xnext. Requires a < 1/L.
Vec ascent_prox(const ObjectiveFunction& f, const Vec& xnext, double a);
FixedPointResult ascent_prox_solve(const ObjectiveFunction& f, const Vec& xnext, double a);

/// Backward-built orbit x_0 .. x_kbar with x_kbar = anchor and
/// x_{k+1} = x_k - alpha_k grad f(x_k).
struct ReverseOrbit {
    enum class Status { complete, left_box };

    /// Points in forward order; points[i] is x_{first_index + i}. A complete
    /// orbit has first_index == 0.
    std::vector<Vec> points;
    std::int64_t first_index = 0;
    std::int64_t kbar = 0;
    Vec anchor;
    /// residual[i] = |x_{j+1} - (x_j - alpha_j grad f(x_j))| for j = first_index + i.
    std::vector<double> forward_residuals;
    Status status = Status::complete;
    std::optional<Vec> exit_point;

    bool complete() const { return status == Status::complete; }
};

ReverseOrbit reverse_orbit(const ObjectiveFunction& f, const Vec& anchor, const StepSchedule& s, std::int64_t kbar);

/// Fills forward_residuals from the points and the schedule.
void certify(ReverseOrbit& orbit, const ObjectiveFunction& f, const StepSchedule& s);

}  // namespace basinreach
