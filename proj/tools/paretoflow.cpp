// Command-line front end: ranking, metrics, consistency checks, training
// sweeps, heatmaps and front comparison.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "paretoflow/consistency.hpp"
#include "paretoflow/experiment.hpp"
#include "paretoflow/global_orders.hpp"
#include "paretoflow/metrics.hpp"

namespace pf = paretoflow;
namespace fs = std::filesystem;

namespace {

pf::RankMethod parse_rank_method(const std::string& s) {
    if (s == "gr") return pf::RankMethod::GlobalRank;
    if (s == "gr-k") return pf::RankMethod::GlobalRankTrimmed;
    if (s == "cheap") return pf::RankMethod::CheapGR;
    if (s == "nn") return pf::RankMethod::NNOrder;
    if (s == "nn-int") return pf::RankMethod::NNInterpOrder;
    throw pf::invalid_input("unknown rank method: " + s);
}

pf::Distance parse_distance(const std::string& s) {
    if (s == "euclidean") return pf::Distance::Euclidean;
    if (s == "manhattan") return pf::Distance::Manhattan;
    if (s == "chebyshev") return pf::Distance::Chebyshev;
    throw pf::invalid_input("unknown distance: " + s);
}

std::ofstream open_out(const std::string& path) {
    if (const auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << std::setprecision(17);
    return out;
}

std::vector<double> parse_vector(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
    return out;
}

struct RankArgs {
    std::string method = "gr";
    std::optional<std::size_t> max_rank;
    std::string points, out, distance = "euclidean";
    bool raw_axes = false;
};

int run_rank(const RankArgs& a) {
    const auto xs = pf::read_points_csv(a.points);
    const auto method = parse_rank_method(a.method);
    const auto ranks = pf::rank_points(xs, method, a.max_rank, parse_distance(a.distance), !a.raw_axes);
    auto out = open_out(a.out);
    out << "id,score,layer_or_distance\n";
    for (std::size_t i = 0; i < ranks.size(); ++i) out << ranks.ids[i] << "," << ranks.scores[i] << "," << ranks.aux[i] << '\n';
    std::cout << "ranked " << ranks.size() << " points with " << pf::to_string(method) << " -> " << a.out << '\n';
    return 0;
}

struct MetricArgs {
    std::string candidates, reference, report, csv, ref_point, utopian;
    std::size_t topk = 10;
    bool no_true_front = false;
};

int run_metrics(const MetricArgs& a) {
    const auto cand = pf::read_points_csv(a.candidates);
    const auto ref = pf::read_points_csv(a.reference);
    auto cfg = pf::default_metric_config(cand.dim());
    // Widen the defaults so they bound data outside the unit cube.
    for (const auto* set : {&cand, &ref}) {
        for (const auto& p : set->points()) {
            for (std::size_t k = 0; k < p.size() && k < cfg.utopian.size(); ++k) {
                cfg.utopian[k] = std::max(cfg.utopian[k], p[k]);
                cfg.reference_point[k] = std::min(cfg.reference_point[k], p[k]);
            }
        }
    }
    if (!a.ref_point.empty()) cfg.reference_point = parse_vector(a.ref_point);
    if (!a.utopian.empty()) cfg.utopian = parse_vector(a.utopian);
    cfg.topk = a.topk;
    cfg.has_true_front = !a.no_true_front;
    const auto report = pf::compute_metrics(cand, ref, cfg);
    if (!a.report.empty()) open_out(a.report) << pf::to_json(report).dump(2) << '\n';
    if (!a.csv.empty()) {
        const bool fresh = !fs::exists(a.csv) || fs::file_size(a.csv) == 0;
        std::ofstream out(a.csv, std::ios::app);
        if (!out) throw std::runtime_error("cannot write " + a.csv);
        if (fresh) out << pf::csv_header(report) << '\n';
        out << pf::csv_row(report) << '\n';
    }
    if (a.report.empty() && a.csv.empty()) std::cout << pf::to_json(report).dump(2) << '\n';
    return 0;
}

int run_check(const std::string& points, const std::string& subsets, bool full_set, const std::string& report) {
    pf::DilemmaInstance inst{pf::read_points_csv(points), pf::read_subsets_json(subsets)};
    const auto verdict = pf::check_consistency(inst, full_set);
    if (verdict.feasible) {
        std::cout << "feasible\nwitness:\n";
        for (const auto& [id, p] : verdict.witness) std::cout << "  P(" << id << ") = " << p << '\n';
    } else {
        std::cout << "infeasible\ncontradiction:\n";
        for (const auto& link : verdict.contradiction) std::cout << "  " << pf::describe(link) << '\n';
    }
    if (!report.empty()) open_out(report) << pf::to_json(verdict).dump(2) << '\n';
    return 0;
}

int run_enumerate(const std::string& points, std::size_t subset_size, std::size_t limit, const std::string& report) {
    const auto xs = pf::read_points_csv(points);
    const auto found = pf::enumerate_dilemmas(xs, subset_size, limit);
    nlohmann::json j = nlohmann::json::array();
    for (const auto& inst : found) {
        j.push_back(inst.subsets);
        std::cout << nlohmann::json(inst.subsets).dump() << '\n';
    }
    std::cout << found.size() << " minimal infeasible families\n";
    if (!report.empty()) open_out(report) << j.dump(2) << '\n';
    return 0;
}

int run_train(const std::string& config, std::optional<std::uint64_t> seed, const std::string& out_dir) {
    auto cfg = pf::load_experiment(config);
    if (seed) cfg.seeds = {*seed};
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    const auto table = pf::run_experiment(cfg);
    for (const auto& row : table.rows) {
        if (row.ok()) {
            std::cout << row.method << " seed " << row.seed << ": hv=" << row.report->hv.value_or(0.0)
                      << " d_h=" << row.report->d_h.value_or(0.0);
            if (row.report->coverage) std::cout << " coverage=" << *row.report->coverage;
            std::cout << " (" << std::fixed << std::setprecision(1) << row.seconds << "s)" << std::defaultfloat
                      << std::setprecision(6) << '\n';
        } else {
            std::cerr << "error: " << row.error << '\n';
        }
    }
    std::cout << "results written to " << cfg.output_dir << '\n';
    if (table.failures() == 0) return 0;
    return table.failures() == table.rows.size() ? 1 : 2;
}

int run_heatmap(const std::string& config, const std::string& reward, std::size_t side, const std::string& out_dir) {
    const fs::path dir = out_dir.empty() ? fs::path("heatmaps") : fs::path(out_dir);
    fs::create_directories(dir);
    for (auto method : {pf::RankMethod::GlobalRank, pf::RankMethod::NNOrder}) {
        pf::Heatmap h;
        std::string stem;
        if (!config.empty()) {
            const auto cfg = pf::load_experiment(config);
            const auto env = pf::make_environment(cfg.env);
            const auto* grid = dynamic_cast<const pf::HyperGridEnv*>(env.get());
            if (!grid) throw pf::invalid_input("heatmaps need a hypergrid environment");
            h = pf::emit_rank_heatmap(*grid, method);
            stem = cfg.env.label();
        } else {
            h = pf::rank_heatmap(pf::unit_square_reward(reward), side, method);
            stem = reward;
        }
        const auto path = dir / (stem + "_" + pf::to_string(method) + ".csv");
        pf::write_heatmap_csv(path.string(), h);
        std::cout << path.string() << '\n';
    }
    return 0;
}

int run_compare(const std::vector<std::string>& fronts, const std::string& report) {
    std::map<std::string, pf::PointSet> sets;
    for (const auto& spec : fronts) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos) throw pf::invalid_input("expected NAME=FILE, got " + spec);
        sets[spec.substr(0, eq)] = pf::front_points(pf::read_points_csv(spec.substr(eq + 1)));
    }
    const auto counts = pf::compare_fronts(sets);
    for (const auto& [name, n] : counts) std::cout << name << "," << n << '\n';
    if (!report.empty()) open_out(report) << nlohmann::json(counts).dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Global-order GFlowNet toolkit for multi-objective optimization"};
    app.require_subcommand(1);

    RankArgs rank;
    auto* rank_cmd = app.add_subcommand("rank", "Score points with a global order");
    rank_cmd->add_option("--method", rank.method, "gr | gr-k | cheap | nn | nn-int")->capture_default_str();
    rank_cmd->add_option("--max-rank", rank.max_rank, "Layer limit for gr-k");
    rank_cmd->add_option("--points", rank.points, "Points CSV")->required()->check(CLI::ExistingFile);
    rank_cmd->add_option("--out", rank.out, "Output CSV")->required();
    rank_cmd->add_option("--distance", rank.distance, "euclidean | manhattan | chebyshev")->capture_default_str();
    rank_cmd->add_flag("--raw-axes", rank.raw_axes, "Skip min-max normalization for nn orders");

    MetricArgs met;
    auto* met_cmd = app.add_subcommand("metrics", "Evaluate a candidate set against a reference front");
    met_cmd->add_option("--candidates", met.candidates, "Candidate points CSV")->required()->check(CLI::ExistingFile);
    met_cmd->add_option("--reference", met.reference, "Reference front CSV")->required()->check(CLI::ExistingFile);
    met_cmd->add_option("--report", met.report, "JSON report path");
    met_cmd->add_option("--csv", met.csv, "Append one CSV row to this file");
    met_cmd->add_option("--ref-point", met.ref_point, "Hypervolume reference point, comma separated");
    met_cmd->add_option("--utopian", met.utopian, "R2 utopian point, comma separated");
    met_cmd->add_option("--topk", met.topk, "k for top-k diversity")->capture_default_str();
    met_cmd->add_flag("--no-true-front", met.no_true_front, "Reference is an approximation; skip coverage metrics");

    std::string points, subsets, report;
    bool full_set = false;
    auto* check_cmd = app.add_subcommand("check-consistency", "Decide whether subset conditionals admit a joint distribution");
    check_cmd->add_option("--points", points, "Points CSV")->required()->check(CLI::ExistingFile);
    check_cmd->add_option("--subsets", subsets, "JSON list of id lists")->required()->check(CLI::ExistingFile);
    check_cmd->add_flag("--include-full-set", full_set, "Also constrain the full point set");
    check_cmd->add_option("--report", report, "JSON verdict path");

    std::size_t subset_size = 2, limit = 3;
    auto* enum_cmd = app.add_subcommand("enumerate", "List minimal infeasible subset families");
    enum_cmd->add_option("--points", points, "Points CSV")->required()->check(CLI::ExistingFile);
    enum_cmd->add_option("--subset-size", subset_size, "Points per subset")->capture_default_str();
    enum_cmd->add_option("--limit", limit, "Largest family size")->capture_default_str();
    enum_cmd->add_option("--report", report, "JSON output path");

    std::string config, out_dir;
    std::optional<std::uint64_t> seed;
    auto* train_cmd = app.add_subcommand("train", "Train, sample candidates and evaluate for every method and seed");
    train_cmd->add_option("--config", config, "TOML or JSON experiment config")->required()->check(CLI::ExistingFile);
    train_cmd->add_option("--seed", seed, "Run only this seed");
    train_cmd->add_option("--out", out_dir, "Output directory");

    std::string reward = "spiral";
    std::size_t side = 32;
    auto* heat_cmd = app.add_subcommand("heatmap", "Write global rank and nearest-neighbor heatmaps");
    heat_cmd->add_option("--config", config, "Experiment config with a 2-D hypergrid")->check(CLI::ExistingFile);
    heat_cmd->add_option("--reward", reward, "identity | ratio | gaussian | spiral")->capture_default_str();
    heat_cmd->add_option("--side", side, "Grid side")->capture_default_str();
    heat_cmd->add_option("--out", out_dir, "Output directory");

    std::vector<std::string> fronts;
    auto* cmp_cmd = app.add_subcommand("compare", "Count each method's points on the pooled front");
    cmp_cmd->add_option("--front", fronts, "NAME=points.csv, repeatable")->required();
    cmp_cmd->add_option("--report", report, "JSON output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*rank_cmd) return run_rank(rank);
        if (*met_cmd) return run_metrics(met);
        if (*check_cmd) return run_check(points, subsets, full_set, report);
        if (*enum_cmd) return run_enumerate(points, subset_size, limit, report);
        if (*train_cmd) return run_train(config, seed, out_dir);
        if (*heat_cmd) return run_heatmap(config, reward, side, out_dir);
        if (*cmp_cmd) return run_compare(fronts, report);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
