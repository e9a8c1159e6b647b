#include "paretoflow/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "paretoflow/config.hpp"

namespace paretoflow {

namespace fs = std::filesystem;

std::string EnvSpec::label() const {
    std::string out;
    if (kind == "hypergrid") {
        out = "hypergrid-d" + std::to_string(dim) + "-H" + std::to_string(side);
        for (const auto& o : objectives) out += "-" + o;
    } else {
        out = "ngrams-L" + std::to_string(max_length);
        for (const auto& p : patterns) out += "-" + p;
    }
    return out;
}

std::unique_ptr<Environment> make_environment(const EnvSpec& spec) {
    if (spec.kind == "hypergrid") {
        std::vector<Objective> objectives;
        for (const auto& name : spec.objectives) objectives.push_back(named_objective(name));
        return std::make_unique<HyperGridEnv>(spec.dim, spec.side, std::move(objectives));
    }
    if (spec.kind == "ngrams") return std::make_unique<NGramEnv>(spec.max_length, spec.patterns, spec.vocab_size);
    throw invalid_input("unknown environment kind: " + spec.kind);
}

std::string MethodSpec::label() const {
    if (method == TrainMethod::GlobalRankTrimmed && max_rank) return "gr-k(" + std::to_string(*max_rank) + ")";
    return to_string(method);
}

MethodSpec MethodSpec::parse(const std::string& text) {
    MethodSpec m;
    const auto open = text.find('(');
    if (open == std::string::npos) {
        m.method = train_method_from_string(text);
        return m;
    }
    if (text.back() != ')') throw invalid_input("malformed method: " + text);
    m.method = train_method_from_string(text.substr(0, open));
    if (m.method != TrainMethod::GlobalRankTrimmed) throw invalid_input("only gr-k takes a parameter: " + text);
    const std::string k = text.substr(open + 1, text.size() - open - 2);
    if (k.empty() || k.find_first_not_of("0123456789") != std::string::npos) throw invalid_input("malformed rank limit in " + text);
    m.max_rank = std::stoul(k);
    if (*m.max_rank == 0) throw invalid_input("gr-k needs a positive rank limit");
    return m;
}

TrainConfig ExperimentConfig::training_for(const MethodSpec& m) const {
    TrainConfig t = training;
    t.method = m.method;
    t.max_rank = m.max_rank;
    return t;
}

namespace {

std::string transform_name(RewardTransform::Kind k) {
    switch (k) {
        case RewardTransform::Kind::Raw: return "raw";
        case RewardTransform::Kind::Softmax: return "softmax";
        case RewardTransform::Kind::IndicatorOfMax: return "indicator";
    }
    return "softmax";
}

std::string distance_name(Distance d) {
    switch (d) {
        case Distance::Euclidean: return "euclidean";
        case Distance::Manhattan: return "manhattan";
        case Distance::Chebyshev: return "chebyshev";
    }
    return "euclidean";
}

Distance distance_from_name(const std::string& s) {
    if (s == "euclidean") return Distance::Euclidean;
    if (s == "manhattan") return Distance::Manhattan;
    if (s == "chebyshev") return Distance::Chebyshev;
    throw invalid_input("unknown distance: " + s);
}

void check_keys(const nlohmann::json& table, const std::string& where, const std::set<std::string>& allowed) {
    if (!table.is_object()) throw invalid_input("'" + where + "' must be a table");
    for (const auto& [key, v] : table.items()) {
        if (!allowed.count(key)) throw invalid_input("unknown key '" + key + "' in " + where);
    }
}

template <typename T>
void read(const nlohmann::json& table, const char* key, T& out) {
    if (!table.contains(key)) return;
    try {
        out = table.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw invalid_input(std::string("config key '") + key + "' has the wrong type");
    }
}

}  // namespace

nlohmann::json to_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["name"] = cfg.name;
    j["seeds"] = cfg.seeds;
    j["candidates"] = cfg.num_candidates;
    j["reference_per_axis"] = cfg.reference_per_axis;
    j["output_dir"] = cfg.output_dir;
    j["save_checkpoints"] = cfg.save_checkpoints;

    nlohmann::json env = {{"kind", cfg.env.kind}};
    if (cfg.env.kind == "hypergrid") {
        env["d"] = cfg.env.dim;
        env["H"] = cfg.env.side;
        env["objectives"] = cfg.env.objectives;
    } else {
        env["L"] = cfg.env.max_length;
        env["patterns"] = cfg.env.patterns;
        env["vocab"] = cfg.env.vocab_size;
    }
    j["env"] = env;

    std::vector<std::string> names;
    for (const auto& m : cfg.methods) names.push_back(m.label());
    const auto& t = cfg.training;
    j["method"] = {{"names", names}, {"distance", distance_name(t.metric)}, {"normalize", t.normalize}};
    j["transform"] = {{"kind", transform_name(t.transform.kind)}, {"temperature", t.transform.temperature}};
    j["training"] = {{"steps", t.steps},
                     {"batch_size", t.batch_size},
                     {"learning_rate", t.learning_rate},
                     {"log_z_learning_rate", t.log_z_learning_rate},
                     {"explore_eps", t.explore_eps},
                     {"reward_floor", t.reward_floor},
                     {"hidden_units", t.policy.hidden_units},
                     {"hidden_layers", t.policy.hidden_layers},
                     {"snapshot_every", t.snapshot_every}};
    if (t.replay) {
        j["replay"] = {{"enabled", true},
                       {"capacity", t.replay->capacity},
                       {"warmup", t.replay->warmup},
                       {"pareto_ratio", t.replay->pareto_ratio},
                       {"min_pareto_k", t.replay->min_pareto_k}};
    } else {
        j["replay"] = {{"enabled", false}};
    }
    return j;
}

ExperimentConfig experiment_from_json(const nlohmann::json& j) {
    check_keys(j, "config", {"name", "seeds", "candidates", "reference_per_axis", "output_dir", "save_checkpoints", "env",
                             "method", "transform", "training", "replay"});
    ExperimentConfig cfg;
    read(j, "name", cfg.name);
    read(j, "seeds", cfg.seeds);
    read(j, "candidates", cfg.num_candidates);
    read(j, "reference_per_axis", cfg.reference_per_axis);
    read(j, "output_dir", cfg.output_dir);
    read(j, "save_checkpoints", cfg.save_checkpoints);
    if (cfg.seeds.empty()) throw invalid_input("at least one seed is required");
    if (cfg.num_candidates == 0) throw invalid_input("candidate count must be positive");

    if (j.contains("env")) {
        const auto& e = j["env"];
        check_keys(e, "env", {"kind", "d", "H", "objectives", "L", "patterns", "vocab"});
        read(e, "kind", cfg.env.kind);
        read(e, "d", cfg.env.dim);
        read(e, "H", cfg.env.side);
        read(e, "objectives", cfg.env.objectives);
        read(e, "L", cfg.env.max_length);
        read(e, "patterns", cfg.env.patterns);
        read(e, "vocab", cfg.env.vocab_size);
        if (cfg.env.kind != "hypergrid" && cfg.env.kind != "ngrams") throw invalid_input("unknown environment kind: " + cfg.env.kind);
    }

    auto& t = cfg.training;
    if (j.contains("method")) {
        const auto& m = j["method"];
        check_keys(m, "method", {"names", "distance", "normalize"});
        if (m.contains("names")) {
            std::vector<std::string> names;
            read(m, "names", names);
            if (names.empty()) throw invalid_input("at least one method is required");
            cfg.methods.clear();
            for (const auto& n : names) cfg.methods.push_back(MethodSpec::parse(n));
        }
        std::string dist = distance_name(t.metric);
        read(m, "distance", dist);
        t.metric = distance_from_name(dist);
        read(m, "normalize", t.normalize);
    }
    for (const auto& m : cfg.methods) {
        if (m.method == TrainMethod::GlobalRankTrimmed && !m.max_rank) throw invalid_input("gr-k needs a rank limit, e.g. gr-k(3)");
    }

    if (j.contains("transform")) {
        const auto& tr = j["transform"];
        check_keys(tr, "transform", {"kind", "temperature"});
        std::string kind = transform_name(t.transform.kind);
        double temperature = t.transform.temperature;
        read(tr, "kind", kind);
        read(tr, "temperature", temperature);
        if (kind == "raw") t.transform = RewardTransform::raw();
        else if (kind == "softmax") t.transform = RewardTransform::softmax(temperature);
        else if (kind == "indicator") t.transform = RewardTransform::indicator();
        else throw invalid_input("unknown reward transform: " + kind);
    }

    if (j.contains("training")) {
        const auto& tr = j["training"];
        check_keys(tr, "training", {"steps", "batch_size", "learning_rate", "log_z_learning_rate", "explore_eps", "reward_floor",
                                    "hidden_units", "hidden_layers", "snapshot_every"});
        read(tr, "steps", t.steps);
        read(tr, "batch_size", t.batch_size);
        read(tr, "learning_rate", t.learning_rate);
        t.log_z_learning_rate = 10.0 * t.learning_rate;
        read(tr, "log_z_learning_rate", t.log_z_learning_rate);
        read(tr, "explore_eps", t.explore_eps);
        read(tr, "reward_floor", t.reward_floor);
        read(tr, "hidden_units", t.policy.hidden_units);
        read(tr, "hidden_layers", t.policy.hidden_layers);
        read(tr, "snapshot_every", t.snapshot_every);
        if (t.batch_size == 0) throw invalid_input("batch size must be positive");
        if (!(t.learning_rate > 0)) throw invalid_input("learning rate must be positive");
        if (!(t.reward_floor > 0)) throw invalid_input("reward floor must be positive");
    }

    if (j.contains("replay")) {
        const auto& r = j["replay"];
        check_keys(r, "replay", {"enabled", "capacity", "warmup", "pareto_ratio", "min_pareto_k"});
        bool enabled = true;
        read(r, "enabled", enabled);
        if (enabled) {
            ReplayConfig rc;
            read(r, "capacity", rc.capacity);
            read(r, "warmup", rc.warmup);
            read(r, "pareto_ratio", rc.pareto_ratio);
            read(r, "min_pareto_k", rc.min_pareto_k);
            ReplayBuffer check(rc);
            t.replay = rc;
        }
    }
    return cfg;
}

ExperimentConfig load_experiment(const std::string& path) { return experiment_from_json(load_document(path)); }

std::string to_toml(const ExperimentConfig& cfg) { return to_toml(to_json(cfg)); }

EvaluationSetup evaluation_setup(const Environment& env, std::size_t reference_per_axis) {
    EvaluationSetup setup;
    const std::size_t d = env.num_objectives();
    setup.metric = default_metric_config(d);
    if (const auto* grid = dynamic_cast<const HyperGridEnv*>(&env)) {
        const PointSet image = hypergrid_image(*grid);
        ObjectiveVector lo(d, std::numeric_limits<double>::infinity());
        ObjectiveVector hi(d, -std::numeric_limits<double>::infinity());
        for (const auto& p : image.points()) {
            for (std::size_t i = 0; i < d; ++i) {
                lo[i] = std::min(lo[i], p[i]);
                hi[i] = std::max(hi[i], p[i]);
            }
        }
        setup.normalize = [lo, hi](const ObjectiveVector& p) {
            ObjectiveVector out(p.size());
            for (std::size_t i = 0; i < p.size(); ++i) out[i] = hi[i] > lo[i] ? (p[i] - lo[i]) / (hi[i] - lo[i]) : 0.0;
            return out;
        };
        const PointSet front = hypergrid_true_front(*grid);
        for (const auto& p : front.points()) setup.reference.add(setup.normalize(p));
        setup.metric.has_true_front = true;
    } else {
        setup.normalize = [](const ObjectiveVector& p) { return p; };
        setup.reference = hypercube_face_reference(d, reference_per_axis);
        setup.metric.has_true_front = false;
    }
    return setup;
}

namespace {

PointSet evaluate_candidates(const Environment& env, const EvaluationSetup& setup, const std::vector<State>& candidates) {
    PointSet out;
    for (const auto& s : candidates) out.add(setup.normalize(env.objectives(s)));
    return out;
}

MetricReport full_report(const Environment& env, const EvaluationSetup& setup, const std::vector<State>& candidates,
                         const PointSet& objectives) {
    MetricReport report = compute_metrics(objectives, setup.reference, setup.metric);
    const auto ranks = global_rank(objectives);
    report.topk_diversity = topk_diversity<State>(candidates, ranks.scores, setup.metric.topk,
                                                  [&env](const State& a, const State& b) { return env.object_distance(a, b); });
    return report;
}

}  // namespace

JobOutput run_job(const ExperimentConfig& cfg, const MethodSpec& method, std::uint64_t seed) {
    const auto env = make_environment(cfg.env);
    const auto setup = evaluation_setup(*env, cfg.reference_per_axis);
    const TrainConfig tc = cfg.training_for(method);

    std::mt19937_64 rng(seed);
    GFNModel model = make_model(*env, tc.policy, rng);

    SnapshotFn snapshot = [&](const GFNModel& m, std::size_t step) {
        std::mt19937_64 snap_rng(seed ^ (0x9e3779b97f4a7c15ULL * (step + 1)));
        const auto sample = sample_candidates(m, *env, tc.batch_size, snap_rng);
        const auto objs = evaluate_candidates(*env, setup, sample);
        return to_json(full_report(*env, setup, sample, objs));
    };

    JobOutput out;
    auto trained = train(std::move(model), *env, tc, rng, snapshot);
    out.model = std::move(trained.model);
    out.log = std::move(trained.log);
    out.candidates = sample_candidates(out.model, *env, cfg.num_candidates, rng);
    out.candidate_objectives = evaluate_candidates(*env, setup, out.candidates);
    out.report = full_report(*env, setup, out.candidates, out.candidate_objectives);
    return out;
}

std::size_t thread_limit() {
    if (const char* v = std::getenv("PARETOFLOW_THREADS")) {
        try {
            const long n = std::stol(v);
            if (n > 0) return static_cast<std::size_t>(n);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

void write_points(const fs::path& path, const PointSet& pts, const std::vector<bool>* flags, const char* flag_name) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << std::setprecision(17);
    for (std::size_t i = 0; i < pts.dim(); ++i) out << (i ? "," : "") << "f" << i + 1;
    if (flags) out << "," << flag_name;
    out << '\n';
    for (std::size_t r = 0; r < pts.size(); ++r) {
        const auto& p = pts.point(r);
        for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << p[i];
        if (flags) out << "," << ((*flags)[r] ? 1 : 0);
        out << '\n';
    }
}

std::map<std::string, std::string> write_artifacts(const ExperimentConfig& cfg, const ResultRow& row, const JobOutput& job) {
    const fs::path dir = fs::path(cfg.output_dir) / row.env / row.method / ("seed" + std::to_string(row.seed));
    fs::create_directories(dir);
    const auto env = make_environment(cfg.env);
    const auto setup = evaluation_setup(*env, cfg.reference_per_axis);
    std::map<std::string, std::string> files;

    {
        std::ofstream out(dir / "report.json");
        out << to_json(job.report).dump(2) << '\n';
        files["report"] = (dir / "report.json").string();
    }
    {
        std::ofstream out(dir / "candidates.csv");
        out << std::setprecision(17) << "index,object";
        for (std::size_t i = 0; i < job.candidate_objectives.dim(); ++i) out << ",f" << i + 1;
        out << '\n';
        for (std::size_t i = 0; i < job.candidates.size(); ++i) {
            out << i << ",\"" << env->describe(job.candidates[i]) << "\"";
            for (double v : job.candidate_objectives.point(i)) out << "," << v;
            out << '\n';
        }
        files["candidates"] = (dir / "candidates.csv").string();
    }
    const auto on_front = nondominated_mask(job.candidate_objectives.points());
    write_points(dir / "plot_candidates.csv", job.candidate_objectives, &on_front, "on_front");
    files["plot_candidates"] = (dir / "plot_candidates.csv").string();
    write_points_csv((dir / "front.csv").string(), front_points(job.candidate_objectives));
    files["front"] = (dir / "front.csv").string();
    write_points(dir / "plot_reference.csv", setup.reference, nullptr, nullptr);
    files["plot_reference"] = (dir / "plot_reference.csv").string();
    write_training_log((dir / "train_log.jsonl").string(), job.log);
    files["train_log"] = (dir / "train_log.jsonl").string();
    if (cfg.save_checkpoints) {
        nlohmann::json ckpt = {{"policy", job.model.policy.to_json()}, {"log_z", job.model.log_z}};
        std::ofstream out(dir / "model.json");
        out << ckpt.dump() << '\n';
        files["checkpoint"] = (dir / "model.json").string();
    }
    return files;
}

const std::vector<std::string>& table_columns() {
    static const std::vector<std::string> cols = {"hv",   "r2",       "pc_ent",   "igd_plus", "igd",
                                                  "gd_plus", "gd",    "d_h",      "d_h_plus", "coverage",
                                                  "samples_in_front", "topk_diversity", "num_candidates", "num_front"};
    return cols;
}

}  // namespace

ResultTable run_experiment(const ExperimentConfig& cfg, std::size_t threads) {
    struct Job {
        MethodSpec method;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (const auto& m : cfg.methods) {
        for (auto seed : cfg.seeds) jobs.push_back({m, seed});
    }

    ResultTable table;
    table.rows.resize(jobs.size());
    const std::string env_label = cfg.env.label();
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            auto& row = table.rows[i];
            row.env = env_label;
            row.method = jobs[i].method.label();
            row.seed = jobs[i].seed;
            const auto start = std::chrono::steady_clock::now();
            try {
                const auto job = run_job(cfg, jobs[i].method, jobs[i].seed);
                row.artifacts = write_artifacts(cfg, row, job);
                row.report = job.report;
            } catch (const std::exception& e) {
                row.error = row.method + " seed " + std::to_string(row.seed) + ": " + e.what();
            }
            row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
    };

    if (threads == 0) threads = thread_limit();
    threads = std::min(threads, jobs.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    fs::create_directories(cfg.output_dir);
    table.write_csv((fs::path(cfg.output_dir) / "results.csv").string());
    std::ofstream out(fs::path(cfg.output_dir) / "results.json");
    out << table.to_json().dump(2) << '\n';
    return table;
}

std::size_t ResultTable::failures() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const ResultRow& r) { return !r.ok(); }));
}

std::map<std::pair<std::string, std::string>, std::map<std::string, double>> ResultTable::means() const {
    std::map<std::pair<std::string, std::string>, std::map<std::string, std::pair<double, std::size_t>>> acc;
    for (const auto& row : rows) {
        if (!row.ok()) continue;
        const auto j = paretoflow::to_json(*row.report);
        for (const auto& col : table_columns()) {
            if (!j.contains(col) || j[col].is_null()) continue;
            auto& slot = acc[{row.env, row.method}][col];
            slot.first += j[col].get<double>();
            ++slot.second;
        }
    }
    std::map<std::pair<std::string, std::string>, std::map<std::string, double>> out;
    for (const auto& [key, cols] : acc) {
        for (const auto& [col, s] : cols) out[key][col] = s.first / static_cast<double>(s.second);
    }
    return out;
}

nlohmann::json ResultTable::to_json() const {
    nlohmann::json j;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json r = {{"env", row.env}, {"method", row.method}, {"seed", row.seed}, {"seconds", row.seconds}};
        if (row.ok()) {
            r["metrics"] = paretoflow::to_json(*row.report);
            r["artifacts"] = row.artifacts;
        } else {
            r["error"] = row.error;
        }
        j["rows"].push_back(r);
    }
    j["means"] = nlohmann::json::array();
    for (const auto& [key, cols] : means()) {
        j["means"].push_back({{"env", key.first}, {"method", key.second}, {"metrics", cols}});
    }
    return j;
}

void ResultTable::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << std::setprecision(17) << "env,method,seed";
    for (const auto& c : table_columns()) out << "," << c;
    out << ",error\n";
    auto write_row = [&](const std::string& env, const std::string& method, const std::string& seed, const nlohmann::json& values,
                         const std::string& error) {
        out << env << "," << method << "," << seed;
        for (const auto& c : table_columns()) {
            out << ",";
            if (values.contains(c) && !values[c].is_null()) out << values[c].get<double>();
        }
        std::string quoted = error;
        std::replace(quoted.begin(), quoted.end(), '"', '\'');
        out << "," << (error.empty() ? "" : "\"" + quoted + "\"") << '\n';
    };
    for (const auto& row : rows) {
        write_row(row.env, row.method, std::to_string(row.seed), row.ok() ? paretoflow::to_json(*row.report) : nlohmann::json::object(),
                  row.error);
    }
    for (const auto& [key, cols] : means()) write_row(key.first, key.second, "mean", nlohmann::json(cols), "");
}

namespace {

// sin(pi t) and cos(pi t) that are exact at multiples of 1/2.
double sin_pi(double t) {
    const double r = std::remainder(t, 2.0);
    if (r == 0.0 || std::abs(r) == 1.0) return 0.0;
    if (std::abs(r) == 0.5) return r > 0 ? 1.0 : -1.0;
    return std::sin(std::numbers::pi * r);
}

double cos_pi(double t) {
    const double r = std::remainder(t, 2.0);
    if (std::abs(r) == 0.5) return 0.0;
    if (r == 0.0) return 1.0;
    if (std::abs(r) == 1.0) return -1.0;
    return std::cos(std::numbers::pi * r);
}

}  // namespace

std::function<ObjectiveVector(double, double)> unit_square_reward(const std::string& name) {
    using std::numbers::pi;
    if (name == "identity") return [](double x, double y) { return ObjectiveVector{x, y}; };
    if (name == "ratio") return [](double x, double y) { return ObjectiveVector{x, y / (1.0 + x * x)}; };
    if (name == "gaussian") {
        return [](double x, double y) { return ObjectiveVector{x, (std::exp(-(x - 0.5) * (x - 0.5)) + y) / 2.0}; };
    }
    if (name == "spiral") {
        return [](double x, double y) { return ObjectiveVector{pi * x * cos_pi(x), pi * y * sin_pi(y)}; };
    }
    throw invalid_input("unknown unit-square reward: " + name);
}

Heatmap rank_heatmap(const std::function<ObjectiveVector(double, double)>& reward, std::size_t side, RankMethod method) {
    if (side < 2) throw invalid_input("heatmap side must be at least 2");
    Heatmap h;
    h.side = side;
    h.method = method;
    const double step = 1.0 / static_cast<double>(side - 1);
    for (std::size_t row = 0; row < side; ++row) {
        for (std::size_t col = 0; col < side; ++col) {
            h.points.push_back(reward(static_cast<double>(col) * step, static_cast<double>(row) * step));
        }
    }
    h.values = rank_points(PointSet(h.points), method).scores;
    return h;
}

Heatmap emit_rank_heatmap(const HyperGridEnv& env, RankMethod method) {
    if (env.dim() != 2) throw invalid_input("heatmaps need a two-dimensional grid");
    Heatmap h;
    h.side = env.side();
    h.method = method;
    for (std::size_t row = 1; row <= env.side(); ++row) {
        for (std::size_t col = 1; col <= env.side(); ++col) {
            h.points.push_back(env.objectives(State{static_cast<int>(col), static_cast<int>(row)}));
        }
    }
    h.values = rank_points(PointSet(h.points), method).scores;
    return h;
}

void write_heatmap_csv(const std::string& path, const Heatmap& h) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write heatmap " + path);
    out << std::setprecision(17);
    for (std::size_t row = 0; row < h.side; ++row) {
        for (std::size_t col = 0; col < h.side; ++col) out << (col ? "," : "") << h.values[row * h.side + col];
        out << '\n';
    }
}

std::map<std::string, std::size_t> compare_fronts(const std::map<std::string, PointSet>& fronts) {
    std::vector<ObjectiveVector> pool;
    std::vector<const std::string*> owner;
    std::map<std::string, std::size_t> counts;
    for (const auto& [name, pts] : fronts) {
        counts[name] = 0;
        for (const auto& p : pts.points()) {
            pool.push_back(p);
            owner.push_back(&name);
        }
    }
    if (pool.empty()) return counts;
    const auto mask = nondominated_mask(pool);
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (mask[i]) ++counts[*owner[i]];
    }
    return counts;
}

}  // namespace paretoflow
