// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. Criterion numbers given as arguments
// restrict the run to those criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "paretoflow/consistency.hpp"
#include "paretoflow/experiment.hpp"
#include "paretoflow/gflownet.hpp"
#include "paretoflow/global_orders.hpp"
#include "paretoflow/metrics.hpp"
#include "fd_check.hpp"
#include "support.hpp"

using namespace paretoflow;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome fig1_dilemma() {
    const DilemmaInstance inst{PointSet({{1, 1}, {2, 1.2}, {3, 1.4}, {1.5, 2}}), {{1, 3}, {1, 2}, {2, 3}}};
    const auto start = Clock::now();
    const auto v = check_consistency(inst);
    const double ms = seconds_since(start) * 1e3;

    using K = ChainLink::Kind;
    bool ok = !v.feasible && verify_chain(inst, v.contradiction) && v.contradiction.size() == 5;
    if (ok) {
        const auto& c = v.contradiction;
        ok = c[0].kind == K::ZeroForced && c[0].a == 1 && c[0].subset == 1u &&
             c[1].kind == K::Equal && c[1].a == 1 && c[1].b == 3 && c[1].subset == 0u &&
             c[2].kind == K::Equal && c[2].a == 3 && c[2].b == 2 && c[2].subset == 2u &&
             c[3].kind == K::RequiredPositive && c[4].kind == K::RequiredPositive &&
             ((c[3].a == 3 && c[4].a == 2) || (c[3].a == 2 && c[4].a == 3));
    }
    std::string chain;
    for (const auto& l : v.contradiction) chain += (chain.empty() ? "" : "; ") + describe(l);
    return {ok && ms < 1.0, fmt("infeasible=%d chain=[%s] time=%.3fms", !v.feasible, chain.c_str(), ms)};
}

Outcome dominance_property() {
    std::mt19937_64 rng(20240601);
    const auto start = Clock::now();
    std::size_t violations = 0, pairs = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng() % 200;
        const std::size_t d = 1 + rng() % 4;
        const auto pts = oracle::random_points(rng, n, d, trial % 4 == 0 ? 6 : 0);
        const auto gr = global_rank(PointSet(pts));
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                if (!oracle::dom(pts[a], pts[b])) continue;
                ++pairs;
                violations += gr.scores[a] > gr.scores[b] ? 0 : 1;
            }
        }
    }
    const double s = seconds_since(start);
    return {violations == 0 && s < 10.0, fmt("pairs=%zu violations=%zu time=%.2fs", pairs, violations, s)};
}

ExperimentConfig hypergrid_config() {
    ExperimentConfig cfg;
    cfg.env.kind = "hypergrid";
    cfg.env.dim = 2;
    cfg.env.side = 32;
    cfg.env.objectives = {"branin", "currin"};
    cfg.training.steps = 1000;
    cfg.training.batch_size = 128;
    cfg.training.learning_rate = 0.01;
    cfg.training.log_z_learning_rate = 0.1;
    cfg.training.policy = PolicyShape{64, 3};
    cfg.training.transform = RewardTransform::softmax(2.0);
    cfg.num_candidates = 1280;
    return cfg;
}

struct SeedRun {
    MetricReport report;
    double seconds = 0;
};

std::vector<SeedRun> run_seeds(const ExperimentConfig& cfg, const std::string& method) {
    std::vector<SeedRun> out;
    for (std::uint64_t seed : {0, 1, 2}) {
        const auto start = Clock::now();
        const auto job = run_job(cfg, MethodSpec::parse(method), seed);
        out.push_back({job.report, seconds_since(start)});
        std::printf("  %s seed %llu: %.1fs\n", method.c_str(), static_cast<unsigned long long>(seed), out.back().seconds);
        std::fflush(stdout);
    }
    return out;
}

double mean_of(const std::vector<SeedRun>& runs, const std::function<double(const MetricReport&)>& f) {
    double s = 0;
    for (const auto& r : runs) s += f(r.report);
    return s / static_cast<double>(runs.size());
}

double slowest(const std::vector<SeedRun>& runs) {
    double m = 0;
    for (const auto& r : runs) m = std::max(m, r.seconds);
    return m;
}

Outcome hypergrid_coverage(const std::vector<SeedRun>& gr) {
    int good = 0;
    std::string per;
    for (const auto& r : gr) {
        const double cov = *r.report.coverage, sif = *r.report.samples_in_front;
        good += cov >= 0.85 && sif >= 0.60 ? 1 : 0;
        per += fmt(" (cov=%.3f sif=%.3f %.0fs)", cov, sif, r.seconds);
    }
    return {good >= 2 && slowest(gr) < 600.0, fmt("seeds passing=%d/3%s", good, per.c_str())};
}

Outcome hypergrid_hausdorff(const std::vector<SeedRun>& gr, const std::vector<SeedRun>& op) {
    const double g = mean_of(gr, [](const MetricReport& r) { return *r.d_h; });
    const double o = mean_of(op, [](const MetricReport& r) { return *r.d_h; });
    return {g <= o + 0.01, fmt("GR mean d_H=%.3e OP mean d_H=%.3e", g, o)};
}

Outcome ngrams_cheap_gr() {
    ExperimentConfig cfg;
    cfg.env.kind = "ngrams";
    cfg.env.max_length = 18;
    cfg.env.patterns = {"A", "C", "V"};
    cfg.env.vocab_size = 26;
    cfg.training.steps = 1000;
    cfg.training.batch_size = 128;
    cfg.training.learning_rate = 0.01;
    cfg.training.log_z_learning_rate = 0.1;
    cfg.training.policy = PolicyShape{64, 3};
    cfg.training.transform = RewardTransform::softmax(1.0);
    cfg.num_candidates = 1280;

    auto op_cfg = cfg;
    cfg.training.replay = ReplayConfig{10000, 1000, 0.1, 1};
    const auto cheap = run_seeds(cfg, "cheap-gr");
    const auto op = run_seeds(op_cfg, "op-baseline");
    const double hv_c = mean_of(cheap, [](const MetricReport& r) { return *r.hv; });
    const double hv_o = mean_of(op, [](const MetricReport& r) { return *r.hv; });
    const double pc_c = mean_of(cheap, [](const MetricReport& r) { return *r.pc_ent; });
    const double pc_o = mean_of(op, [](const MetricReport& r) { return *r.pc_ent; });
    const double t = std::max(slowest(cheap), slowest(op));
    return {hv_c >= hv_o - 0.02 && pc_c >= pc_o - 0.02 && t < 1800.0,
            fmt("Cheap-GR HV=%.4f PC-ent=%.4f, OP HV=%.4f PC-ent=%.4f, slowest seed %.0fs", hv_c, pc_c, hv_o, pc_o, t)};
}

Outcome metric_oracles() {
    std::mt19937_64 rng(777);
    const auto start = Clock::now();
    std::size_t hv_bad = 0, dist_bad = 0;
    double worst_sigma = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = 2 + trial % 2;
        const auto pts = oracle::random_points(rng, 1 + rng() % 25, d);
        const ObjectiveVector r(d, 0.0);
        const double exact = hypervolume(PointSet(pts), r);
        const auto mc = oracle::hypervolume_mc(pts, r, 200000, rng);
        const double z = mc.std_error > 0 ? std::abs(exact - mc.estimate) / mc.std_error : 0.0;
        worst_sigma = std::max(worst_sigma, z);
        hv_bad += std::abs(exact - mc.estimate) <= 3 * mc.std_error + 1e-12 ? 0 : 1;
    }
    double worst_err = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t d = 1 + trial % 4;
        const auto S = oracle::random_points(rng, 1 + rng() % 50, d);
        const auto P = oracle::random_points(rng, 1 + rng() % 50, d);
        const PointSet s(S), p(P);
        const double errs[] = {
            std::abs(igd_plus(s, p, true) - oracle::igd(S, P, true)),
            std::abs(gd_plus(s, p, true) - oracle::gd(S, P, true)),
            std::abs(hausdorff(s, p) - std::max(oracle::gd(S, P, false), oracle::igd(S, P, false))),
        };
        for (double e : errs) {
            worst_err = std::max(worst_err, e);
            dist_bad += e <= 1e-12 ? 0 : 1;
        }
    }
    const double s = seconds_since(start);
    return {hv_bad == 0 && dist_bad == 0 && s < 60.0,
            fmt("HV outside 3 sigma=%zu (worst %.2f sigma), distance mismatches=%zu (worst %.1e), time=%.1fs", hv_bad, worst_sigma,
                dist_bad, worst_err, s)};
}

Outcome tb_gradients() {
    std::mt19937_64 rng(4242);
    std::normal_distribution<double> g(0, 1);
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const HyperGridEnv env(2, 4 + trial % 5, {named_objective("branin"), named_objective("currin")});
        auto model = make_model(env, PolicyShape{static_cast<std::size_t>(8 + trial % 9), 1 + static_cast<std::size_t>(trial % 3)}, rng);
        model.log_z = g(rng);
        const std::vector<Trajectory> batch{sample_trajectory(model, env, rng, 0.3)};
        const double logr = implied_log_rewards(model, env, batch)[0] + g(rng);
        const auto res = tb_loss(model, env, batch.front(), logr);
        worst = std::max(worst, fdcheck::max_error(model, env, batch, res,
                                                   [&](const GFNModel& m) { return tb_loss(m, env, batch.front(), logr).loss; }, 1e-6));
    }
    return {worst <= 1e-4, fmt("max relative error=%.2e over 100 trajectories", worst)};
}

Outcome exact_distribution() {
    std::mt19937_64 rng(8080);
    const HyperGridEnv big(2, 32, {named_objective("branin"), named_objective("currin")});
    double worst_sum = 0;
    for (int i = 0; i < 20; ++i) {
        const auto model = make_model(big, PolicyShape{64, 3}, rng);
        double total = 0;
        for (const auto& [s, p] : exact_terminal_distribution(model, big)) total += p;
        worst_sum = std::max(worst_sum, std::abs(total - 1.0));
    }
    const HyperGridEnv small(2, 8, {named_objective("branin"), named_objective("currin")});
    const auto model = make_model(small, PolicyShape{64, 3}, rng);
    const auto dist = exact_terminal_distribution(model, small);
    const std::size_t n = 100000;
    std::map<State, double> counts;
    for (const auto& t : sample_trajectories(model, small, n, rng)) counts[t.terminal()] += 1;
    std::size_t outside = 0;
    double worst_z = 0;
    for (const auto& [s, p] : dist) {
        const double freq = counts[s] / static_cast<double>(n);
        const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(n));
        const double gap = std::abs(freq - p);
        if (sigma > 0) worst_z = std::max(worst_z, gap / sigma);
        outside += gap <= 4 * sigma + 1e-15 ? 0 : 1;
    }
    return {worst_sum <= 1e-9 && outside == 0,
            fmt("max |sum-1|=%.1e over 20 policies; terminals outside 4 sigma=%zu of %zu (worst %.2f sigma)", worst_sum, outside,
                dist.size(), worst_z)};
}

Outcome scalar_collapse() {
    const HyperGridEnv env(1, 32, {Objective{"peak", [](std::span<const double> u) { return -(u[0] - 0.7) * (u[0] - 0.7); }}});
    State best;
    double top = -1e300;
    for (const auto& s : env.all_states()) {
        const double v = env.objectives(s)[0];
        if (v > top) {
            top = v;
            best = s;
        }
    }
    TrainConfig cfg;
    cfg.method = TrainMethod::GlobalRank;
    cfg.transform = RewardTransform::indicator();
    cfg.steps = 1000;
    cfg.batch_size = 128;
    cfg.learning_rate = 0.01;
    cfg.log_z_learning_rate = 0.1;
    cfg.policy = PolicyShape{64, 3};
    std::mt19937_64 rng(99);
    const auto start = Clock::now();
    const auto res = train(make_model(env, cfg.policy, rng), env, cfg, rng);
    const double mass = exact_terminal_distribution(res.model, env).at(best);
    return {mass >= 0.95, fmt("argmax %s holds mass %.4f after 1000 steps (%.1fs)", env.describe(best).c_str(), mass, seconds_since(start))};
}

Outcome heatmap_divergence() {
    const auto reward = unit_square_reward("spiral");
    const auto gr = rank_heatmap(reward, 32, RankMethod::GlobalRank);
    const auto nn = rank_heatmap(reward, 32, RankMethod::NNOrder);
    const double rho = oracle::spearman(gr.values, nn.values);
    std::size_t gr_bad = 0, nn_bad = 0;
    for (std::size_t a = 0; a < gr.points.size(); ++a) {
        for (std::size_t b = 0; b < gr.points.size(); ++b) {
            if (!oracle::dom(gr.points[a], gr.points[b])) continue;
            gr_bad += gr.values[a] > gr.values[b] ? 0 : 1;
            nn_bad += nn.values[a] > nn.values[b] ? 0 : 1;
        }
    }
    return {gr.values.size() == 1024 && rho < 0.95 && gr_bad == 0 && nn_bad == 0,
            fmt("spearman=%.4f, dominance violations GR=%zu NN=%zu", rho, gr_bad, nn_bad)};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
    auto want = [&](int id) { return wanted.empty() || wanted.count(id) > 0; };

    std::vector<std::pair<int, Outcome>> results;
    auto report = [&](int id, const Outcome& o) {
        std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str());
        std::fflush(stdout);
        results.emplace_back(id, o);
    };

    if (want(1)) report(1, fig1_dilemma());
    if (want(2)) report(2, dominance_property());
    if (want(3) || want(4)) {
        const auto cfg = hypergrid_config();
        const auto gr = run_seeds(cfg, "gr");
        if (want(3)) report(3, hypergrid_coverage(gr));
        if (want(4)) report(4, hypergrid_hausdorff(gr, run_seeds(cfg, "op-baseline")));
    }
    if (want(5)) report(5, ngrams_cheap_gr());
    if (want(6)) report(6, metric_oracles());
    if (want(7)) report(7, tb_gradients());
    if (want(8)) report(8, exact_distribution());
    if (want(9)) report(9, scalar_collapse());
    if (want(10)) report(10, heatmap_divergence());

    std::size_t failed = 0;
    for (const auto& [id, o] : results) failed += o.pass ? 0 : 1;
    std::printf("%zu of %zu criteria passed\n", results.size() - failed, results.size());
    return failed == 0 ? 0 : 1;
}
