#include <doctest.h>

#include <cmath>
#include <string>

#include "paretoflow/metrics.hpp"
#include "support.hpp"

using namespace paretoflow;

TEST_CASE("igd, gd and hausdorff on small sets") {
    const PointSet p1({{1, 1}});
    const PointSet s0({{0, 0}});
    CHECK(igd_plus(p1, p1) == 0.0);
    CHECK(igd_plus(s0, p1, false) == 2.0);
    CHECK(igd_plus(PointSet({{2, 2}}), p1, true) == 0.0);

    CHECK(gd_plus(p1, p1) == 0.0);
    CHECK(gd_plus(s0, p1, false) == 2.0);
    CHECK(gd_plus(PointSet({{0, 0}, {1, 1}}), p1, false) == 1.0);

    CHECK(hausdorff(p1, p1) == 0.0);
    CHECK(hausdorff(s0, p1) == 2.0);
    CHECK(hausdorff(PointSet({{1, 1}, {0, 0}}), p1) == 1.0);

    CHECK_THROWS_AS(igd_plus(PointSet({{1, 1, 1}}), p1), invalid_input);
    CHECK_THROWS_AS(igd_plus(PointSet{}, p1), invalid_input);
}

TEST_CASE("hypervolume examples") {
    CHECK(hypervolume(PointSet({{1, 1}}), {0, 0}) == 1.0);
    CHECK(hypervolume(PointSet({{1, 0.5}, {0.5, 1}}), {0, 0}) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(hypervolume(PointSet({{1, 0.5}, {0.5, 1}, {0.4, 0.4}}), {0, 0}) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(hypervolume(PointSet({{1, 1, 1}}), {0, 0, 0}) == 1.0);
    CHECK(hypervolume(PointSet({{1, 1, 0.5}, {0.5, 0.5, 1}}), {0, 0, 0}) == doctest::Approx(0.5 + 0.25 - 0.125));
    CHECK(hypervolume(PointSet(std::vector<ObjectiveVector>{{2}, {3}}), {1}) == 2.0);
    CHECK_THROWS_AS(hypervolume(PointSet({{1, 1, 1, 1}}), {0, 0, 0, 0}), invalid_input);
}

TEST_CASE("hypervolume matches a Monte-Carlo oracle and is monotone") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t d = 2 + trial % 2;
        const auto pts = oracle::random_points(rng, 1 + rng() % 20, d);
        const ObjectiveVector r(d, 0.0);
        const double exact = hypervolume(PointSet(pts), r);
        const auto mc = oracle::hypervolume_mc(pts, r, 200000, rng);
        CHECK(std::abs(exact - mc.estimate) <= 3 * mc.std_error + 1e-12);

        auto more = pts;
        more.push_back(oracle::random_points(rng, 1, d).front());
        CHECK(hypervolume(PointSet(more), r) >= exact - 1e-15);
    }
}

TEST_CASE("distance metrics match the brute-force oracle exactly") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t d = 1 + trial % 4;
        const auto S = oracle::random_points(rng, 1 + rng() % 40, d);
        const auto P = oracle::random_points(rng, 1 + rng() % 40, d);
        const PointSet s(S), p(P);
        CHECK(std::abs(igd_plus(s, p, true) - oracle::igd(S, P, true)) <= 1e-12);
        CHECK(std::abs(igd_plus(s, p, false) - oracle::igd(S, P, false)) <= 1e-12);
        CHECK(std::abs(gd_plus(s, p, true) - oracle::gd(S, P, true)) <= 1e-12);
        CHECK(std::abs(gd_plus(s, p, false) - oracle::gd(S, P, false)) <= 1e-12);
        CHECK(std::abs(hausdorff(s, p) - std::max(oracle::gd(S, P, false), oracle::igd(S, P, false))) <= 1e-12);
        CHECK(std::abs(hausdorff(s, p, true) - std::max(oracle::gd(S, P, true), oracle::igd(S, P, true))) <= 1e-12);
        CHECK(igd_plus(s, p, true) <= igd_plus(s, p, false));
        CHECK(igd_plus(p, p) == 0.0);
    }
}

TEST_CASE("pc entropy") {
    const PointSet ref({{0, 1}, {0.5, 0.5}, {1, 0}});
    CHECK(pc_entropy(ref, ref) == doctest::Approx(std::log(3.0)));
    CHECK(pc_entropy(ref, PointSet({{0.9, 0.05}, {0.95, 0.0}})) == doctest::Approx(-(2.0 / 3.0) * std::log(2.0 / 3.0)));
    CHECK(pc_entropy(ref, PointSet{}) == 0.0);
    const PointSet crowd({{0, 1}, {0.1, 0.9}, {0.5, 0.5}, {0.6, 0.4}, {1, 0}, {0.9, 0.1}});
    CHECK(pc_entropy(ref, crowd) == doctest::Approx(std::log(3.0)));

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const auto r = oracle::random_points(rng, 1 + rng() % 30, 2);
        const auto g = oracle::random_points(rng, 1 + rng() % 30, 2);
        const double h = pc_entropy(PointSet(r), PointSet(g));
        CHECK(h >= 0.0);
        CHECK(h <= std::log(static_cast<double>(r.size())) + 1e-12);
    }
}

TEST_CASE("r2 indicator") {
    const ObjectiveVector z{1, 1};
    CHECK(r2_indicator(PointSet({z}), uniform_reference_vectors(2), z) == 0.0);
    CHECK(r2_indicator(PointSet({{0, 0}}), {{1, 0}, {0, 1}}, z) == 1.0);
    CHECK_THROWS_AS(r2_indicator(PointSet({{0, 0}}), {}, z), invalid_input);
    CHECK_THROWS_AS(r2_indicator(PointSet({{2, 0}}), {{1, 0}}, z), invalid_input);
    CHECK_THROWS_AS(r2_indicator(PointSet({{0, 0}}), {{-1, 2}}, z), invalid_input);

    CHECK(uniform_reference_vectors(2).size() == 101);
    CHECK(uniform_reference_vectors(3).size() == 105);
    for (const auto& w : uniform_reference_vectors(3)) CHECK(w[0] + w[1] + w[2] == doctest::Approx(1.0));

    std::mt19937_64 rng(4);
    const auto weights = uniform_reference_vectors(2);
    for (int trial = 0; trial < 30; ++trial) {
        auto pts = oracle::random_points(rng, 1 + rng() % 10, 2);
        const double before = r2_indicator(PointSet(pts), weights, z);
        pts.push_back(oracle::random_points(rng, 1, 2).front());
        CHECK(r2_indicator(PointSet(pts), weights, z) <= before);
        pts.push_back(z);
        CHECK(r2_indicator(PointSet(pts), weights, z) == 0.0);
    }
}

TEST_CASE("coverage and samples in front") {
    const PointSet ref({{0, 1}, {1, 0}});
    CHECK(coverage(ref, ref) == 1.0);
    CHECK(samples_in_front(ref, ref) == 1.0);
    const PointSet far({{5, 5}});
    CHECK(coverage(ref, far) == 0.0);
    CHECK(samples_in_front(ref, far) == 0.0);
    const PointSet s({{0, 1}, {0, 1}, {7, 7}});
    CHECK(coverage(ref, s) == 0.5);
    CHECK(samples_in_front(ref, s) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("top-k diversity") {
    const std::function<double(const std::vector<int>&, const std::vector<int>&)> edit = [](const auto& a, const auto& b) {
        return static_cast<double>(edit_distance(a, b));
    };
    const std::vector<std::vector<int>> same(4, std::vector<int>{1, 2});
    CHECK(topk_diversity(same, {1, 1, 1, 1}, 4, edit) == 0.0);
    const std::vector<std::vector<int>> seqs{{'A', 'C'}, {'A', 'G'}};
    CHECK(topk_diversity(seqs, {1, 1}, 2, edit) == 1.0);
    CHECK(topk_diversity(seqs, {1, 1}, 1, edit) == 0.0);

    const std::vector<std::vector<int>> three{{0}, {5}, {1}};
    const std::function<double(const std::vector<int>&, const std::vector<int>&)> l1 = [](const auto& a, const auto& b) {
        return l1_distance(a, b);
    };
    CHECK(topk_diversity(three, {2, 2, 1}, 2, l1) == 5.0);
    CHECK(topk_diversity(three, {1, 2, 2}, 2, l1) == 4.0);

    CHECK(edit_distance({1, 2, 3}, {1, 3}) == 1);
    CHECK(edit_distance({}, {4, 4}) == 2);
}

TEST_CASE("hypercube face reference") {
    const auto ref = hypercube_face_reference(2, 64);
    CHECK(ref.size() == 127);
    for (const auto& p : ref.points()) CHECK(std::max(p[0], p[1]) == 1.0);
    CHECK(hypercube_face_reference(3, 4).size() == 37);
}

TEST_CASE("metric report") {
    const PointSet ref({{0, 1}, {0.5, 0.5}, {1, 0}});
    const auto cfg = default_metric_config(2);
    const auto r = compute_metrics(ref, ref, cfg);
    CHECK(*r.igd_plus == 0.0);
    CHECK(*r.gd_plus == 0.0);
    CHECK(*r.d_h == 0.0);
    CHECK(*r.coverage == 1.0);
    CHECK(*r.samples_in_front == 1.0);
    CHECK(*r.hv == doctest::Approx(0.25));
    CHECK(*r.pc_ent == doctest::Approx(std::log(3.0)));
    CHECK(r.num_front == 3);

    const auto j = to_json(r);
    for (const char* key : {"hv", "r2", "pc_ent", "igd_plus", "gd_plus", "d_h", "d_h_plus", "coverage", "samples_in_front"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["config"]["reference_point"] == nlohmann::json::array({0.0, 0.0}));

    const auto header = csv_header(r);
    const auto row = csv_row(r);
    CHECK(std::count(header.begin(), header.end(), ',') == std::count(row.begin(), row.end(), ','));

    auto no_truth = cfg;
    no_truth.has_true_front = false;
    CHECK_FALSE(compute_metrics(ref, ref, no_truth).coverage.has_value());
}
