#pragma once

#include "basinreach/landscape.hpp"
#include "basinreach/schedule.hpp"
#include "basinreach/trajectory.hpp"

#include <cstdint>

namespace basinreach {

/// x - a grad f(x). Requires x in the box and a < 2/L; throws LeftBoxError
/// when the image leaves the box.
Vec gd_step(const ObjectiveFunction& f, const Vec& x, double a);

struct GdOptions {
    double gtol = 1e-10;
    std::int64_t max_iter = 1'000'000;
    /// Allows sup alpha >= 2/L and replaces the box check by divergence
    /// detection |x| > 1e3 (1 + box diameter). No certificates are claimed.
    bool unsafe = false;
    /// Keep every state; otherwise only the first and last are kept.
    bool record = true;
};

/// Explicit gradient descent x_{k+1} = x_k - alpha_k grad f(x_k).
///
/// Every step of a safe run is checked against the descent inequality
///
///     f(x_{k+1}) <= f(x_k) - alpha_k (1 - L alpha_k / 2) |grad f(x_k)|^2 + 1e-12 (1 + |f(x_k)|)
///
/// and the outcome is added to the process-wide certificate audit.
Trajectory run_gd(const ObjectiveFunction& f, const Vec& x0, const StepSchedule& s,
                  const GdOptions& options = {});

/// Number of recorded steps violating the descent inequality, recomputed from
/// the states. Only meaningful for a fully recorded run of `run_gd`.
std::int64_t descent_violations(const ObjectiveFunction& f, const Trajectory& traj,
                                const StepSchedule& s);

/// Largest |x_{k+1} - (x_k - alpha_k grad f(x_k))| / (1 + |x_k|) over the recorded states.
double recurrence_residual(const ObjectiveFunction& f, const Trajectory& traj, const StepSchedule& s);

struct CertificateAudit {
    std::int64_t runs = 0;
    std::int64_t steps = 0;
    std::int64_t violations = 0;
};

/// Totals over every safe run_gd call made by this process.
CertificateAudit certificate_audit();
void reset_certificate_audit();

enum class LimitKind { local_min, saddle, local_max, non_stationary };

std::string to_string(LimitKind kind);

struct LimitClass {
    LimitKind kind;
    bool low_confidence = false;  ///< no Hessian, decided by sampling only
};

/// Classifies x: non_stationary when |grad f(x)| >= tol, otherwise by Hessian
/// eigenvalue signs. Eigenvalues within tol of zero are resolved by sampling f
/// on the sphere of radius sqrt(tol) around x.
LimitClass classify_limit(const ObjectiveFunction& f, const Vec& x, double tol);

}  // namespace basinreach
