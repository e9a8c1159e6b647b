#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "paretoflow/environments.hpp"
#include "paretoflow/global_orders.hpp"
#include "paretoflow/nn.hpp"
#include "paretoflow/replay.hpp"
#include "paretoflow/trajectory.hpp"

namespace paretoflow {

/// Forward policy over env actions plus the learned log partition function.
/// The backward policy is uniform over parents.
struct GFNModel {
    nn::DenseNet policy;
    double log_z = 0.0;
};

struct PolicyShape {
    std::size_t hidden_units = 64;
    std::size_t hidden_layers = 3;
};

GFNModel make_model(const Environment& env, const PolicyShape& shape, std::mt19937_64& rng);

/// Rolls out n trajectories in lockstep. With probability explore_eps a step
/// takes a uniform valid action; log_pf always records the policy's own
/// probability of the action taken.
std::vector<Trajectory> sample_trajectories(const GFNModel& model, const Environment& env, std::size_t n,
                                            std::mt19937_64& rng, double explore_eps = 0.0);

Trajectory sample_trajectory(const GFNModel& model, const Environment& env, std::mt19937_64& rng,
                             double explore_eps = 0.0);

/// Loss value with gradients for the policy parameters and log Z.
struct LossResult {
    double loss = 0.0;
    nn::GradTape tape;
    double grad_log_z = 0.0;
};

/// Mean over the batch of (log Z + sum log_pf - log R - sum log_pb)^2, with
/// log_pf recomputed under the current policy.
LossResult tb_loss(const GFNModel& model, const Environment& env, const std::vector<Trajectory>& batch,
                   const std::vector<double>& log_rewards);
LossResult tb_loss(const GFNModel& model, const Environment& env, const Trajectory& traj, double log_reward);

/// KL from the uniform-on-batch-front target to the softmax over the batch of
/// the model's implied log rewards log Z + sum log_pf - sum log_pb.
LossResult op_subset_loss(const GFNModel& model, const Environment& env, const std::vector<Trajectory>& batch,
                          const std::vector<ObjectiveVector>& objectives);

/// Implied log reward of every trajectory under the current policy.
std::vector<double> implied_log_rewards(const GFNModel& model, const Environment& env,
                                        const std::vector<Trajectory>& batch);

inline constexpr std::size_t kMaxExactStates = 100000;

/// Exact P(x; theta) by pushing flow level by level through the state DAG.
std::map<State, double> exact_terminal_distribution(const GFNModel& model, const Environment& env,
                                                    std::size_t max_states = kMaxExactStates);

enum class TrainMethod { GlobalRank, GlobalRankTrimmed, CheapGR, NNOrder, NNInterpOrder, OPBaseline };

std::string to_string(TrainMethod m);
TrainMethod train_method_from_string(const std::string& name);

struct TrainConfig {
    TrainMethod method = TrainMethod::GlobalRank;
    std::optional<std::size_t> max_rank;
    RewardTransform transform = RewardTransform::softmax(1.0);
    Distance metric = Distance::Euclidean;
    bool normalize = true;

    std::size_t steps = 1000;
    std::size_t batch_size = 128;
    double learning_rate = 0.01;
    double log_z_learning_rate = 0.1;
    double explore_eps = 0.05;
    double reward_floor = 1e-10;
    PolicyShape policy;

    std::optional<ReplayConfig> replay;
    std::size_t snapshot_every = 0;
};

struct StepRecord {
    std::size_t step = 0;
    double loss = 0.0;
    std::size_t front_size = 0;
    double log_z = 0.0;
    bool used_replay = false;
    std::optional<nlohmann::json> snapshot;
};

nlohmann::json to_json(const StepRecord& r);

struct TrainResult {
    GFNModel model;
    std::vector<StepRecord> log;
};

using SnapshotFn = std::function<nlohmann::json(const GFNModel&, std::size_t step)>;

/// Trains from the given initial model. Each step samples a fresh batch,
/// adds replayed trajectories once the buffer is warm, scores terminals with
/// the configured order, and takes one Adam step on policy and log Z.
TrainResult train(GFNModel model, const Environment& env, const TrainConfig& cfg, std::mt19937_64& rng,
                  const SnapshotFn& snapshot = {});

/// Scores for a training batch. For Cheap-GR the buffer front joins the
/// scoring set; its own scores are discarded.
RankAssignment score_batch(const std::vector<ObjectiveVector>& batch, const TrainConfig& cfg,
                           const PointSet* buffer_front);

/// Log rewards for TB: transform, positive shift for Raw, floor, log.
std::vector<double> log_rewards_for(const RankAssignment& ranks, const TrainConfig& cfg);

/// n terminal objects sampled without exploration.
std::vector<State> sample_candidates(const GFNModel& model, const Environment& env, std::size_t n,
                                     std::mt19937_64& rng);

void write_training_log(const std::string& path, const std::vector<StepRecord>& log);

}  // namespace paretoflow
