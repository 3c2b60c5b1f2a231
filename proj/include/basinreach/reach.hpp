#pragma once

#include "basinreach/descent.hpp"
#include "basinreach/flow.hpp"
#include "basinreach/reverse.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace basinreach {

enum class ProbeMode { discrete, continuous };
enum class ReachStatus { success, no_escape, no_converge };

std::string to_string(ProbeMode mode);
std::string to_string(ReachStatus status);

// ---------------------------------------------------------------------------
// Stability radius

struct ProbeOptions {
    int n_samples = 32;
    std::uint64_t seed = 42;
    int bisection_steps = 10;
    double gtol = 1e-8;
    std::int64_t max_iter = 400'000;
    FlowSettings flow{};  ///< continuous mode only
    double classify_tol = 1e-6;
};

struct StabilityEstimate {
    double epsilon = 0.0;
    double delta_hat = 0.0;
    int samples = 0;                 ///< starts per tested radius
    std::vector<double> radii;       ///< every tested radius, in test order
    std::vector<Vec> failures;       ///< failing starts over all tested radii
};

/// Start points used for radius delta: target +- delta e_i, then n_samples
/// quasi-random points of the delta-sphere.
std::vector<Vec> probe_starts(const Vec& target, double delta, int n_samples, std::uint64_t seed);

/// True when the run from x0 stays in the closed epsilon-ball around target
/// and converges to a local minimum.
bool probe_run(const ObjectiveFunction& f, const Vec& target, double epsilon, const StepSchedule& s,
               const Vec& x0, ProbeMode mode, const ProbeOptions& options);

/// Largest tested radius delta in (0, epsilon] whose starts all pass
/// `probe_run`; epsilon is tried first, then bisection.
StabilityEstimate stability_probe(const ObjectiveFunction& f, const Vec& target, double epsilon,
                                  const StepSchedule& s, ProbeMode mode, const ProbeOptions& options = {});

// ---------------------------------------------------------------------------
// Gradient floor on a superlevel slab of a ball

struct GradLowerBound {
    double level;
    double region_radius;
    double zeta;
};

/// min |grad f| over the n_grid^n lattice of the cube around target,
/// restricted to the closed delta-ball and to f >= level.
GradLowerBound grad_lower_bound(const ObjectiveFunction& f, const Vec& target, double delta, double level,
                                int n_grid);

struct BallExtremes {
    double f_max;
    double grad_max;
};

/// Lattice maxima of f and |grad f| over the closed ball.
BallExtremes ball_extremes(const ObjectiveFunction& f, const Vec& center, double radius, int n_grid);

// ---------------------------------------------------------------------------
// Reachability

struct ReachBudgets {
    double gtol = 1e-10;
    std::int64_t max_iter = 1'000'000;
    std::int64_t kbar_max = 1 << 22;
    /// Use this stability radius instead of running the probe.
    std::optional<double> delta;
    ProbeOptions probe{};
    /// The reverse orbit escapes the ball of radius escape_fraction * delta.
    double escape_fraction = 0.5;
    int max_alpha_shrinks = 6;
    int seed_directions = 64;
    std::uint64_t seed = 42;
};

struct ReachReport {
    std::string mode;  ///< "discrete", "continuous", "general-discrete", "general-continuous"
    Vec target;
    Vec x0;
    Vec ascent_seed;
    double seed_radius = 0.0;
    double delta_used = 0.0;
    double escape_radius = 0.0;
    double final_distance = 0.0;
    ReachStatus status = ReachStatus::no_escape;
    std::string message;

    std::optional<ReverseOrbit> reverse_orbit;  ///< discrete modes
    std::optional<Trajectory> reverse_flow;     ///< continuous modes
    Trajectory forward;
    std::optional<Vec> limit;
    std::optional<StepSchedule> schedule_used;
    int alpha_shrinks = 0;
    std::int64_t kbar = 0;
    double t_exit = 0.0;
    /// max_k |forward x_k - orbit x_k| over the replayed orbit (discrete modes).
    double replay_deviation = 0.0;
    /// Level crossing on the piecewise-linear forward interpolation (general discrete mode).
    std::optional<Vec> crossing;
    std::optional<StabilityEstimate> probe;
};

/// Gradient-descent reachability of a local minimum: ascent seed, reverse
/// orbit escaping the stability ball, forward replay.
ReachReport reach_discrete(const ObjectiveFunction& f, const Vec& target, double epsilon, const StepSchedule& s,
                           double seed_radius, double tol, const ReachBudgets& budgets = {});

/// Gradient-flow reachability of a local minimum: reverse flow to the sphere,
/// forward flow capture.
ReachReport reach_continuous(const ObjectiveFunction& f, const Vec& target, double epsilon,
                             const FlowSettings& settings, double seed_radius, double tol,
                             const ReachBudgets& budgets = {});

struct GeneralParams {
    double seed_radius = 1e-3;
    double tol = 1e-2;
    /// Escape radius for the reverse phase; defaults to epsilon.
    std::optional<double> delta;
    std::optional<StepSchedule> schedule;  ///< discrete mode
    FlowSettings flow{};                   ///< continuous mode
    /// Ascent direction; by default quasi-random directions are scanned first.
    std::optional<Vec> seed_direction;
    ReachBudgets budgets{};
};

/// Reachability of a critical point that is not a local maximum. Continuous
/// mode runs the minimum pipeline on cap(f, f(target)) and reports the
/// distance of the stall point; discrete mode reports the distance of the
/// first level crossing of the forward replay.
ReachReport reach_general(const ObjectiveFunction& f, const Vec& target, double epsilon, ProbeMode mode,
                          const GeneralParams& params);

// ---------------------------------------------------------------------------
// Edge of stability

enum class EosVerdict { converges, diverges, neutral };

std::string to_string(EosVerdict v);

struct EosResult {
    EosVerdict verdict;
    double spectral_radius;   ///< max_i |1 - alpha l_i|
    double effective_radius;  ///< same, over eigendirections where x0 is nonzero
    EosVerdict empirical;     ///< from 1000 unsafe iterations
    bool agrees;
    Trajectory run;
};

/// Exact linear-stability verdict for the quad builtin at step alpha.
EosResult edge_of_stability(const ObjectiveFunction& f, double alpha, const Vec& x0);

}  // namespace basinreach
