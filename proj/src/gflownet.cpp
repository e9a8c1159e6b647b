#include "paretoflow/gflownet.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace paretoflow {

GFNModel make_model(const Environment& env, const PolicyShape& shape, std::mt19937_64& rng) {
    std::vector<std::size_t> sizes{env.encoding_dim()};
    for (std::size_t i = 0; i < shape.hidden_layers; ++i) sizes.push_back(shape.hidden_units);
    sizes.push_back(env.num_actions());
    return GFNModel{nn::DenseNet::make(sizes, rng), 0.0};
}

namespace {

nn::Matrix encode_states(const Environment& env, const std::vector<const State*>& states) {
    const std::size_t width = env.encoding_dim();
    nn::Matrix x(static_cast<Eigen::Index>(states.size()), static_cast<Eigen::Index>(width));
    std::vector<double> buf(width);
    for (std::size_t r = 0; r < states.size(); ++r) {
        env.encode(*states[r], buf);
        for (std::size_t c = 0; c < width; ++c) x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = buf[c];
    }
    return x;
}

std::vector<double> row_log_softmax(const nn::Matrix& logits, Eigen::Index r, const std::vector<std::uint8_t>& mask) {
    std::vector<double> row(static_cast<std::size_t>(logits.cols()));
    for (Eigen::Index c = 0; c < logits.cols(); ++c) row[static_cast<std::size_t>(c)] = logits(r, c);
    return nn::log_softmax(row, mask);
}

std::size_t draw(const std::vector<double>& logp, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double target = u(rng);
    double acc = 0;
    std::size_t last_valid = 0;
    for (std::size_t a = 0; a < logp.size(); ++a) {
        if (logp[a] == -std::numeric_limits<double>::infinity()) continue;
        acc += std::exp(logp[a]);
        last_valid = a;
        if (target < acc) return a;
    }
    return last_valid;
}

std::size_t draw_uniform_valid(const std::vector<std::uint8_t>& mask, std::mt19937_64& rng) {
    std::vector<std::size_t> valid;
    for (std::size_t a = 0; a < mask.size(); ++a) {
        if (mask[a]) valid.push_back(a);
    }
    std::uniform_int_distribution<std::size_t> pick(0, valid.size() - 1);
    return valid[pick(rng)];
}

// Forward pass over every visited state of a batch of trajectories.
struct BatchEval {
    nn::ForwardCache cache;
    std::vector<std::vector<double>> logp;  // one row per visited state
    std::vector<std::size_t> offsets;       // first row of each trajectory
    std::vector<double> sum_log_pf;
};

BatchEval evaluate(const GFNModel& model, const Environment& env, const std::vector<Trajectory>& batch) {
    BatchEval ev;
    std::vector<const State*> states;
    for (const auto& t : batch) {
        if (t.length() == 0 || t.states.size() != t.length() || t.masks.size() != t.length()) {
            throw invalid_input("malformed trajectory");
        }
        ev.offsets.push_back(states.size());
        for (const auto& s : t.states) states.push_back(&s);
    }
    const nn::Matrix logits = model.policy.forward(encode_states(env, states), &ev.cache);
    ev.logp.reserve(states.size());
    ev.sum_log_pf.assign(batch.size(), 0.0);
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const auto& t = batch[i];
        for (std::size_t k = 0; k < t.length(); ++k) {
            const auto r = static_cast<Eigen::Index>(ev.offsets[i] + k);
            ev.logp.push_back(row_log_softmax(logits, r, t.masks[k]));
            const double lp = ev.logp.back()[t.actions[k]];
            if (!std::isfinite(lp)) throw invalid_input("trajectory takes a masked action");
            ev.sum_log_pf[i] += lp;
        }
    }
    return ev;
}

// Gradient of sum_i coef[i] * sum_log_pf[i] with respect to the policy.
nn::GradTape policy_gradient(const GFNModel& model, const BatchEval& ev, const std::vector<Trajectory>& batch,
                             const std::vector<double>& coef) {
    const auto rows = static_cast<Eigen::Index>(ev.logp.size());
    const auto cols = static_cast<Eigen::Index>(model.policy.output_dim());
    nn::Matrix g = nn::Matrix::Zero(rows, cols);
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const auto& t = batch[i];
        for (std::size_t k = 0; k < t.length(); ++k) {
            const auto r = static_cast<Eigen::Index>(ev.offsets[i] + k);
            const auto& lp = ev.logp[static_cast<std::size_t>(r)];
            for (Eigen::Index c = 0; c < cols; ++c) {
                const double p = std::isfinite(lp[static_cast<std::size_t>(c)]) ? std::exp(lp[static_cast<std::size_t>(c)]) : 0.0;
                g(r, c) = -coef[i] * p;
            }
            g(r, static_cast<Eigen::Index>(t.actions[k])) += coef[i];
        }
    }
    return model.policy.backward(ev.cache, g);
}

}  // namespace

std::vector<Trajectory> sample_trajectories(const GFNModel& model, const Environment& env, std::size_t n,
                                            std::mt19937_64& rng, double explore_eps) {
    if (explore_eps < 0.0 || explore_eps > 1.0) throw invalid_input("exploration rate must lie in [0, 1]");
    std::vector<Trajectory> out(n);
    std::vector<State> current(n, env.initial_state());
    std::vector<std::size_t> active(n);
    for (std::size_t i = 0; i < n; ++i) active[i] = i;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const std::size_t stop = env.stop_action();

    while (!active.empty()) {
        std::vector<const State*> states;
        for (std::size_t i : active) states.push_back(&current[i]);
        const nn::Matrix logits = model.policy.forward(encode_states(env, states));
        std::vector<std::size_t> still;
        for (std::size_t r = 0; r < active.size(); ++r) {
            const std::size_t i = active[r];
            auto mask = env.mask(current[i]);
            if (std::find(mask.begin(), mask.end(), 1) == mask.end()) {
                throw std::logic_error("environment offers no valid action in state " + env.describe(current[i]));
            }
            const auto logp = row_log_softmax(logits, static_cast<Eigen::Index>(r), mask);
            std::size_t a = 0;
            if (explore_eps > 0.0 && coin(rng) < explore_eps) {
                a = draw_uniform_valid(mask, rng);
            } else {
                a = draw(logp, rng);
            }
            auto& t = out[i];
            t.states.push_back(current[i]);
            t.actions.push_back(a);
            t.log_pf.push_back(logp[a]);
            t.masks.push_back(std::move(mask));
            if (a == stop) {
                t.log_pb.push_back(0.0);
                continue;
            }
            current[i] = env.step(current[i], a);
            t.log_pb.push_back(-std::log(static_cast<double>(env.num_parents(current[i]))));
            still.push_back(i);
        }
        active = std::move(still);
    }
    return out;
}

Trajectory sample_trajectory(const GFNModel& model, const Environment& env, std::mt19937_64& rng,
                             double explore_eps) {
    return sample_trajectories(model, env, 1, rng, explore_eps).front();
}

std::vector<double> implied_log_rewards(const GFNModel& model, const Environment& env,
                                        const std::vector<Trajectory>& batch) {
    const auto ev = evaluate(model, env, batch);
    std::vector<double> out(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) out[i] = model.log_z + ev.sum_log_pf[i] - batch[i].sum_log_pb();
    return out;
}

LossResult tb_loss(const GFNModel& model, const Environment& env, const std::vector<Trajectory>& batch,
                   const std::vector<double>& log_rewards) {
    if (batch.empty()) throw invalid_input("trajectory balance on an empty batch");
    if (log_rewards.size() != batch.size()) throw invalid_input("one log reward per trajectory is required");
    for (double lr : log_rewards) {
        if (!std::isfinite(lr)) throw invalid_input("log reward must be finite");
    }
    const auto ev = evaluate(model, env, batch);
    const double scale = 1.0 / static_cast<double>(batch.size());
    LossResult res;
    std::vector<double> coef(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const double delta = model.log_z + ev.sum_log_pf[i] - log_rewards[i] - batch[i].sum_log_pb();
        res.loss += scale * delta * delta;
        coef[i] = 2.0 * delta * scale;
        res.grad_log_z += coef[i];
    }
    res.tape = policy_gradient(model, ev, batch, coef);
    return res;
}

LossResult tb_loss(const GFNModel& model, const Environment& env, const Trajectory& traj, double log_reward) {
    return tb_loss(model, env, std::vector<Trajectory>{traj}, std::vector<double>{log_reward});
}

LossResult op_subset_loss(const GFNModel& model, const Environment& env, const std::vector<Trajectory>& batch,
                          const std::vector<ObjectiveVector>& objectives) {
    if (batch.size() < 2) throw invalid_input("the subset loss needs at least two trajectories");
    if (objectives.size() != batch.size()) throw invalid_input("one objective vector per trajectory is required");
    const auto ev = evaluate(model, env, batch);
    const std::size_t n = batch.size();

    std::vector<double> log_r(n);
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        log_r[i] = model.log_z + ev.sum_log_pf[i] - batch[i].sum_log_pb();
        top = std::max(top, log_r[i]);
    }
    double total = 0;
    for (double v : log_r) total += std::exp(v - top);
    const double lse = top + std::log(total);

    const auto front = nondominated_mask(objectives);
    const auto front_count = static_cast<double>(std::count(front.begin(), front.end(), true));

    LossResult res;
    std::vector<double> coef(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double log_q = log_r[i] - lse;
        const double target = front[i] ? 1.0 / front_count : 0.0;
        if (target > 0) res.loss += target * (std::log(target) - log_q);
        coef[i] = std::exp(log_q) - target;
    }
    res.tape = policy_gradient(model, ev, batch, coef);
    return res;
}

std::map<State, double> exact_terminal_distribution(const GFNModel& model, const Environment& env,
                                                    std::size_t max_states) {
    const std::size_t size = env.state_space_size();
    if (size > max_states) {
        throw invalid_input("state space has " + (size == std::numeric_limits<std::size_t>::max() ? std::string("too many")
                                                                                                    : std::to_string(size)) +
                            " states, more than the exact limit of " + std::to_string(max_states));
    }
    std::map<State, double> terminal;
    std::map<State, double> frontier{{env.initial_state(), 1.0}};
    const std::size_t stop = env.stop_action();
    while (!frontier.empty()) {
        std::vector<const State*> states;
        for (const auto& [s, f] : frontier) states.push_back(&s);
        const nn::Matrix logits = model.policy.forward(encode_states(env, states));
        std::map<State, double> next;
        std::size_t r = 0;
        for (const auto& [s, flow] : frontier) {
            const auto mask = env.mask(s);
            const auto logp = row_log_softmax(logits, static_cast<Eigen::Index>(r++), mask);
            for (std::size_t a = 0; a < mask.size(); ++a) {
                if (!mask[a]) continue;
                const double mass = flow * std::exp(logp[a]);
                if (a == stop) {
                    terminal[s] += mass;
                } else {
                    next[env.step(s, a)] += mass;
                }
            }
        }
        frontier = std::move(next);
    }
    return terminal;
}

std::string to_string(TrainMethod m) {
    switch (m) {
        case TrainMethod::GlobalRank: return "gr";
        case TrainMethod::GlobalRankTrimmed: return "gr-k";
        case TrainMethod::CheapGR: return "cheap-gr";
        case TrainMethod::NNOrder: return "nn";
        case TrainMethod::NNInterpOrder: return "nn-int";
        case TrainMethod::OPBaseline: return "op-baseline";
    }
    return "unknown";
}

TrainMethod train_method_from_string(const std::string& name) {
    if (name == "gr") return TrainMethod::GlobalRank;
    if (name == "gr-k") return TrainMethod::GlobalRankTrimmed;
    if (name == "cheap-gr" || name == "cheap") return TrainMethod::CheapGR;
    if (name == "nn") return TrainMethod::NNOrder;
    if (name == "nn-int") return TrainMethod::NNInterpOrder;
    if (name == "op-baseline" || name == "op") return TrainMethod::OPBaseline;
    throw invalid_input("unknown training method: " + name);
}

nlohmann::json to_json(const StepRecord& r) {
    nlohmann::json j = {{"step", r.step}, {"loss", r.loss}, {"front_size", r.front_size}, {"log_z", r.log_z},
                        {"used_replay", r.used_replay}};
    if (r.snapshot) j["snapshot"] = *r.snapshot;
    return j;
}

RankAssignment score_batch(const std::vector<ObjectiveVector>& batch, const TrainConfig& cfg,
                           const PointSet* buffer_front) {
    PointSet xs(batch);
    switch (cfg.method) {
        case TrainMethod::GlobalRank: return global_rank(xs);
        case TrainMethod::GlobalRankTrimmed:
            if (!cfg.max_rank) throw invalid_input("gr-k needs max_rank");
            return global_rank(xs, cfg.max_rank);
        case TrainMethod::NNOrder: return nn_order(xs, cfg.metric, cfg.normalize);
        case TrainMethod::NNInterpOrder: return nn_interp_order(xs, cfg.metric, cfg.normalize);
        case TrainMethod::CheapGR: {
            if (!buffer_front || buffer_front->empty()) return cheap_global_rank(xs);
            PointSet pool;
            for (const auto& p : batch) pool.add(p);
            for (const auto& p : buffer_front->points()) pool.add(p);
            auto pooled = cheap_global_rank(pool);
            pooled.ids.resize(batch.size());
            pooled.scores.resize(batch.size());
            pooled.aux.resize(batch.size());
            return pooled;
        }
        case TrainMethod::OPBaseline: break;
    }
    throw invalid_input("the OP baseline does not score batches");
}

std::vector<double> log_rewards_for(const RankAssignment& ranks, const TrainConfig& cfg) {
    std::vector<double> rewards;
    if (cfg.transform.kind == RewardTransform::Kind::Raw) {
        const double lo = *std::min_element(ranks.scores.begin(), ranks.scores.end());
        rewards = transform_rewards(lo > 0 ? ranks : shift_positive(ranks), cfg.transform);
    } else {
        rewards = transform_rewards(ranks, cfg.transform);
    }
    for (double& r : rewards) r = std::log(std::max(r, cfg.reward_floor));
    return rewards;
}

TrainResult train(GFNModel model, const Environment& env, const TrainConfig& cfg, std::mt19937_64& rng,
                  const SnapshotFn& snapshot) {
    if (cfg.batch_size == 0) throw invalid_input("batch size must be positive");
    if (cfg.method == TrainMethod::OPBaseline && cfg.batch_size < 2) throw invalid_input("OP baseline needs batches of at least 2");

    TrainResult result;
    nn::OptimizerState opt(model.policy, nn::AdamConfig{cfg.learning_rate});
    nn::ScalarAdam z_opt{nn::AdamConfig{cfg.log_z_learning_rate}};
    std::optional<ReplayBuffer> buffer;
    if (cfg.replay) buffer.emplace(*cfg.replay);

    for (std::size_t step = 0; step < cfg.steps; ++step) {
        std::vector<Trajectory> batch = sample_trajectories(model, env, cfg.batch_size, rng, cfg.explore_eps);
        std::vector<ObjectiveVector> objectives;
        objectives.reserve(batch.size() * 2);
        for (const auto& t : batch) objectives.push_back(env.objectives(t.terminal()));

        StepRecord rec;
        rec.step = step;
        const std::size_t fresh = batch.size();
        if (buffer) {
            if (auto replayed = buffer->sample_batch(cfg.batch_size, rng)) {
                for (const auto* e : *replayed) {
                    batch.push_back(e->trajectory);
                    objectives.push_back(e->objectives);
                }
                rec.used_replay = true;
            }
        }

        const auto front = nondominated_mask(objectives);
        rec.front_size = static_cast<std::size_t>(std::count(front.begin(), front.end(), true));

        LossResult loss;
        if (cfg.method == TrainMethod::OPBaseline) {
            loss = op_subset_loss(model, env, batch, objectives);
        } else {
            std::optional<PointSet> buffer_front;
            if (buffer && cfg.method == TrainMethod::CheapGR) buffer_front = buffer->front_snapshot();
            const auto ranks = score_batch(objectives, cfg, buffer_front ? &*buffer_front : nullptr);
            loss = tb_loss(model, env, batch, log_rewards_for(ranks, cfg));
        }
        nn::adam_step(model.policy, loss.tape, opt);
        if (cfg.method != TrainMethod::OPBaseline) z_opt.apply(model.log_z, loss.grad_log_z);
        if (buffer) {
            for (std::size_t i = 0; i < fresh; ++i) buffer->insert(batch[i], objectives[i]);
        }

        rec.loss = loss.loss;
        rec.log_z = model.log_z;
        if (snapshot && cfg.snapshot_every > 0 && (step + 1) % cfg.snapshot_every == 0) rec.snapshot = snapshot(model, step + 1);
        result.log.push_back(std::move(rec));
    }
    result.model = std::move(model);
    return result;
}

std::vector<State> sample_candidates(const GFNModel& model, const Environment& env, std::size_t n,
                                     std::mt19937_64& rng) {
    std::vector<State> out;
    out.reserve(n);
    for (auto& t : sample_trajectories(model, env, n, rng, 0.0)) out.push_back(t.terminal());
    return out;
}

void write_training_log(const std::string& path, const std::vector<StepRecord>& log) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write training log " + path);
    for (const auto& r : log) out << to_json(r).dump() << '\n';
}

}  // namespace paretoflow
