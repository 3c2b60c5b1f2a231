#pragma once

#include "basinreach/reach.hpp"

#include "json.hpp"

#include <ostream>
#include <string>

namespace basinreach::io {

using nlohmann::json;

/// Shortest text that reads back to the same double ("%.17g").
std::string format_double(double v);

/// Header `k,t,x_1..x_n,f,gnorm`, one row per state. A non-empty
/// `direction` adds a trailing direction column with that value.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, int dim, const std::string& direction = {});

/// Same columns plus a trailing `direction` column set to "reverse"; t is the
/// step-size sum up to each index.
void write_reverse_csv(std::ostream& os, const ReverseOrbit& orbit, const ObjectiveFunction& f, const StepSchedule& s);

json to_json(const Vec& v);
Vec vec_from_json(const json& j);

json catalog_json(const ObjectiveFunction& f);
json to_json(const StabilityEstimate& est);
json to_json(const EosResult& eos);

/// {target, x0, delta_used, seed_radius, final_distance, status,
///  forward_csv_path, reverse_csv_path} plus diagnostics.
json to_json(const ReachReport& rep, const std::string& forward_csv_path, const std::string& reverse_csv_path);

}  // namespace basinreach::io
