#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "paretoflow/environments.hpp"
#include "paretoflow/gflownet.hpp"
#include "paretoflow/metrics.hpp"

namespace paretoflow {

struct EnvSpec {
    std::string kind = "hypergrid";  // "hypergrid" or "ngrams"
    std::size_t dim = 2;
    std::size_t side = 32;
    std::vector<std::string> objectives{"branin", "currin"};
    std::size_t max_length = 18;
    std::vector<std::string> patterns{"A", "C", "V"};
    std::size_t vocab_size = 26;

    std::string label() const;
};

std::unique_ptr<Environment> make_environment(const EnvSpec& spec);

struct MethodSpec {
    TrainMethod method = TrainMethod::GlobalRank;
    std::optional<std::size_t> max_rank;

    /// "gr", "gr-k(3)", "cheap-gr", ...
    std::string label() const;
    static MethodSpec parse(const std::string& text);
};

struct ExperimentConfig {
    std::string name = "experiment";
    EnvSpec env;
    std::vector<MethodSpec> methods{MethodSpec{}};
    TrainConfig training;
    std::vector<std::uint64_t> seeds{0, 1, 2};
    std::size_t num_candidates = 1280;
    std::size_t reference_per_axis = 64;
    std::string output_dir = "results";
    bool save_checkpoints = true;

    /// Training settings for one method of the sweep.
    TrainConfig training_for(const MethodSpec& m) const;
};

nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_from_json(const nlohmann::json& j);
ExperimentConfig load_experiment(const std::string& path);
std::string to_toml(const ExperimentConfig& cfg);

/// Objectives used for evaluation: HyperGrid objectives are min-max
/// normalized over the full grid image, N-gram objectives are already in
/// [0, 1].
struct EvaluationSetup {
    PointSet reference;
    MetricConfig metric;
    std::function<ObjectiveVector(const ObjectiveVector&)> normalize;
};

EvaluationSetup evaluation_setup(const Environment& env, std::size_t reference_per_axis = 64);

struct ResultRow {
    std::string env;
    std::string method;
    std::uint64_t seed = 0;
    std::optional<MetricReport> report;
    std::string error;
    std::map<std::string, std::string> artifacts;
    double seconds = 0.0;

    bool ok() const noexcept { return report.has_value(); }
};

struct ResultTable {
    std::vector<ResultRow> rows;

    std::size_t failures() const;
    /// Seed-mean of every metric per (env, method).
    std::map<std::pair<std::string, std::string>, std::map<std::string, double>> means() const;
    nlohmann::json to_json() const;
    void write_csv(const std::string& path) const;
};

/// Everything one (method, seed) job produces.
struct JobOutput {
    GFNModel model;
    std::vector<StepRecord> log;
    std::vector<State> candidates;
    PointSet candidate_objectives;  // evaluation scale
    MetricReport report;
};

JobOutput run_job(const ExperimentConfig& cfg, const MethodSpec& method, std::uint64_t seed);

/// Runs every (method, seed) job, writing artifacts below cfg.output_dir.
/// Failing jobs become error rows; the others still run.
ResultTable run_experiment(const ExperimentConfig& cfg, std::size_t threads = 0);

/// Job parallelism from PARETOFLOW_THREADS, otherwise the hardware count.
std::size_t thread_limit();

/// R-hat values for a square grid of objective vectors, row-major with the
/// first coordinate varying fastest.
struct Heatmap {
    std::size_t side = 0;
    RankMethod method = RankMethod::GlobalRank;
    std::vector<ObjectiveVector> points;
    std::vector<double> values;
};

/// Unit-square reward examples: "identity", "ratio" (x, y/(1+x^2)),
/// "gaussian" (x, (exp(-(x-1/2)^2)+y)/2) and "spiral" (pi x cos pi x, pi y sin pi y).
std::function<ObjectiveVector(double, double)> unit_square_reward(const std::string& name);

Heatmap rank_heatmap(const std::function<ObjectiveVector(double, double)>& reward, std::size_t side, RankMethod method);

/// Heatmap over the objectives of a two-dimensional HyperGrid.
Heatmap emit_rank_heatmap(const HyperGridEnv& env, RankMethod method);

void write_heatmap_csv(const std::string& path, const Heatmap& h);

/// Pools every method's front and counts, per method, the points that
/// survive on the joint front. Duplicates all survive.
std::map<std::string, std::size_t> compare_fronts(const std::map<std::string, PointSet>& fronts);

}  // namespace paretoflow
