#include "paretoflow/trajectory.hpp"

#include <numeric>

namespace paretoflow {

double Trajectory::sum_log_pf() const { return std::accumulate(log_pf.begin(), log_pf.end(), 0.0); }
double Trajectory::sum_log_pb() const { return std::accumulate(log_pb.begin(), log_pb.end(), 0.0); }

bool Trajectory::well_formed(const Environment& env) const {
    const std::size_t n = actions.size();
    if (n == 0 || states.size() != n || masks.size() != n || log_pf.size() != n || log_pb.size() != n) return false;
    if (states.front() != env.initial_state()) return false;
    for (std::size_t t = 0; t < n; ++t) {
        const auto m = env.mask(states[t]);
        if (m != masks[t] || actions[t] >= m.size() || !m[actions[t]]) return false;
        const bool last = t + 1 == n;
        if (last != (actions[t] == env.stop_action())) return false;
        if (!last && env.step(states[t], actions[t]) != states[t + 1]) return false;
    }
    return true;
}

nlohmann::json to_json(const Trajectory& t) {
    return {{"states", t.states}, {"actions", t.actions}, {"masks", t.masks}, {"log_pf", t.log_pf}, {"log_pb", t.log_pb}};
}

Trajectory trajectory_from_json(const nlohmann::json& j) {
    Trajectory t;
    t.states = j.at("states").get<std::vector<State>>();
    t.actions = j.at("actions").get<std::vector<std::size_t>>();
    t.masks = j.at("masks").get<std::vector<std::vector<std::uint8_t>>>();
    t.log_pf = j.at("log_pf").get<std::vector<double>>();
    t.log_pb = j.at("log_pb").get<std::vector<double>>();
    return t;
}

}  // namespace paretoflow
