#pragma once

#include "basinreach/io.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace basinreach::cli {

/// Raised for malformed or inconsistent configuration; carries the field name.
class ConfigError : public Error {
public:
    ConfigError(const std::string& field, const std::string& what)
        : Error(field + ": " + what), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Fully resolved run configuration. Every field has a default; the JSON form
/// is documented in the README and echoed to `config.json` in the output dir.
struct RunConfig {
    std::string function = "double_well";
    std::vector<double> params;
    std::string schedule = "constant:0.01";
    std::string procedure = "gd";  ///< gd, flow, reach, reach-general, probe, eos, prox-check
    std::string mode = "discrete";  ///< reach / probe: discrete or continuous
    std::string direction = "forward";  ///< flow
    std::optional<std::vector<double>> target;
    std::optional<int> target_index;
    std::optional<std::vector<double>> x0;
    std::optional<std::vector<double>> seed_direction;
    double alpha = 1.0;  ///< eos
    double epsilon = 0.5;
    double seed_radius = 1e-3;
    std::optional<double> delta;
    double gtol = 1e-10;
    double tol = 1e-4;
    double event_refine_tol = 1e-10;
    std::int64_t max_iter = 1'000'000;
    double t_max = 100.0;
    std::int64_t kbar_max = 1 << 22;
    double h = 1e-3;
    int probe_samples = 32;
    int bisection_steps = 10;
    int trials = 500;  ///< prox-check
    std::uint64_t seed = 42;
    std::string output_dir = "basinreach_out";
};

/// Merges a JSON config document into `cfg`; unknown keys are rejected.
void apply_json(RunConfig& cfg, const io::json& doc);
io::json to_json(const RunConfig& cfg);

/// "name" or "name:p1,p2,..." -> (name, params).
std::pair<std::string, std::vector<double>> parse_function_spec(const std::string& text);

/// Runs the command line. Exit code 0 on success, 1 when the procedure
/// reports a failure status, 2 on configuration errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace basinreach::cli
