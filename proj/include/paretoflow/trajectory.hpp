#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "paretoflow/environments.hpp"

namespace paretoflow {

/// One rollout. `actions[t]` is taken in `states[t]`; the last action is the
/// stop action, so `states.back()` is the terminal object. `log_pb[t]` is the
/// backward log-probability of the transition made by `actions[t]` (0 for the
/// stop transition, which has a single parent).
struct Trajectory {
    std::vector<State> states;
    std::vector<std::size_t> actions;
    std::vector<std::vector<std::uint8_t>> masks;
    std::vector<double> log_pf;
    std::vector<double> log_pb;

    const State& terminal() const { return states.back(); }
    std::size_t length() const noexcept { return actions.size(); }
    double sum_log_pf() const;
    double sum_log_pb() const;

    /// Lengths agree, every action is valid in its state, last is stop.
    bool well_formed(const Environment& env) const;
};

nlohmann::json to_json(const Trajectory& t);
Trajectory trajectory_from_json(const nlohmann::json& j);

}  // namespace paretoflow
