#pragma once

#include "basinreach/core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace basinreach {

enum class TerminalStatus { converged, budget_exhausted, left_box, diverged };

std::string to_string(TerminalStatus status);

struct State {
    std::int64_t k;  ///< iteration or step index
    double t;        ///< flow time; for discrete runs the elapsed step-size sum
    Vec x;
    double f;
    double gnorm;
};

/// Recorded states of a discrete orbit or a flow integration.
struct Trajectory {
    std::vector<State> states;
    TerminalStatus status = TerminalStatus::budget_exhausted;
    std::optional<Vec> limit;       ///< last state when converged
    std::optional<Vec> exit_point;  ///< offending point on left_box / diverged

    const State& front() const { return states.front(); }
    const State& back() const { return states.back(); }
    std::size_t size() const { return states.size(); }
};

}  // namespace basinreach
