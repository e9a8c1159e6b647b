#include <doctest.h>

#include <filesystem>
#include <set>

#include "paretoflow/replay.hpp"
#include "support.hpp"

using namespace paretoflow;

namespace {

Trajectory dummy(int tag) {
    Trajectory t;
    t.states = {{tag}};
    t.actions = {0};
    t.masks = {{1}};
    t.log_pf = {0.0};
    t.log_pb = {0.0};
    return t;
}

std::set<std::uint64_t> front_ids(const ReplayBuffer& buf) {
    std::set<std::uint64_t> out;
    for (const auto& e : buf.entries()) {
        if (e.on_front) out.insert(e.id);
    }
    return out;
}

std::set<std::uint64_t> oracle_front_ids(const ReplayBuffer& buf) {
    std::vector<oracle::Vec> pts;
    std::vector<std::uint64_t> ids;
    for (const auto& e : buf.entries()) {
        pts.push_back(e.objectives);
        ids.push_back(e.id);
    }
    const auto mask = oracle::front_mask(pts);
    std::set<std::uint64_t> out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (mask[i]) out.insert(ids[i]);
    }
    return out;
}

}  // namespace

TEST_CASE("batch composition") {
    ReplayConfig cfg;
    auto c = ReplayBuffer::composition(cfg, 128);
    CHECK(c.front_draws == 13);
    CHECK(c.general_draws == 115);
    const std::vector<std::pair<double, std::size_t>> grid{{0.1, 13}, {0.2, 26}, {0.4, 52}};
    for (const auto& [ratio, expected] : grid) {
        cfg.pareto_ratio = ratio;
        c = ReplayBuffer::composition(cfg, 128);
        CHECK(c.front_draws == expected);
        CHECK(c.front_draws + c.general_draws == 128);
    }
    cfg.pareto_ratio = 0.1;
    CHECK(ReplayBuffer::composition(cfg, 10).front_draws == 1);
    cfg.min_pareto_k = 5;
    CHECK(ReplayBuffer::composition(cfg, 10).front_draws == 5);
    CHECK(ReplayBuffer::composition(cfg, 3).front_draws == 3);

    CHECK_THROWS_AS(ReplayBuffer(ReplayConfig{0, 0, 0.1, 1}), invalid_input);
    CHECK_THROWS_AS(ReplayBuffer(ReplayConfig{10, 0, 1.0, 1}), invalid_input);
}

TEST_CASE("front tracking on inserts") {
    ReplayBuffer buf(ReplayConfig{100, 0, 0.1, 1});
    CHECK(buf.front_snapshot().empty());
    buf.insert(dummy(0), {1, 1});
    buf.insert(dummy(1), {0, 2});
    CHECK(buf.front_size() == 2);
    buf.insert(dummy(2), {2, 2});
    CHECK(buf.front_size() == 1);
    CHECK(buf.front_snapshot().point(0) == ObjectiveVector{2, 2});
    buf.insert(dummy(3), {2, 2});
    CHECK(buf.front_size() == 2);
    const auto before = buf.front_snapshot();
    buf.insert(dummy(4), {0.5, 0.5});
    CHECK(buf.front_snapshot().points() == before.points());
    CHECK_THROWS_AS(buf.insert(dummy(5), {1, 1, 1}), invalid_input);
}

TEST_CASE("eviction rules") {
    ReplayBuffer one(ReplayConfig{1, 0, 0.1, 1});
    CHECK(one.insert(dummy(0), {1, 1}) == ReplayBuffer::InsertOutcome::Stored);
    CHECK(one.insert(dummy(1), {0, 0}) == ReplayBuffer::InsertOutcome::Dropped);
    CHECK(one.entries().front().objectives == ObjectiveVector{1, 1});
    CHECK(one.insert(dummy(2), {0, 5}) == ReplayBuffer::InsertOutcome::Stored);
    CHECK(one.size() == 1);
    CHECK(one.entries().front().objectives == ObjectiveVector{0, 5});

    ReplayBuffer buf(ReplayConfig{3, 0, 0.1, 1});
    buf.insert(dummy(0), {5, 5});
    buf.insert(dummy(1), {1, 1});
    buf.insert(dummy(2), {2, 1});
    buf.insert(dummy(3), {0, 9});
    CHECK(buf.size() == 3);
    std::vector<int> tags;
    for (const auto& e : buf.entries()) tags.push_back(e.trajectory.states[0][0]);
    CHECK(tags == std::vector<int>{0, 2, 3});
}

TEST_CASE("front invariant over long random streams") {
    std::mt19937_64 rng(12);
    for (int run = 0; run < 3; ++run) {
        ReplayBuffer buf(ReplayConfig{static_cast<std::size_t>(50 + 200 * run), 0, 0.2, 1});
        bool ok = true;
        std::size_t evicted_front_with_non_front = 0;
        for (int i = 0; i < 10000; ++i) {
            const auto p = oracle::random_points(rng, 1, 2 + run % 2, run == 1 ? 8 : 0).front();
            const auto had_non_front = buf.size() > buf.front_size();
            std::vector<std::uint64_t> kept_front;
            for (const auto& e : buf.entries()) {
                if (e.on_front && !oracle::dom(p, e.objectives)) kept_front.push_back(e.id);
            }
            buf.insert(dummy(i), p);
            if (had_non_front) {
                std::set<std::uint64_t> stored;
                for (const auto& e : buf.entries()) stored.insert(e.id);
                for (auto id : kept_front) {
                    if (!stored.count(id)) ++evicted_front_with_non_front;
                }
            }
            CHECK(buf.size() <= buf.config().capacity);
            if (i % 97 == 0 || i > 9900) ok = ok && front_ids(buf) == oracle_front_ids(buf);
        }
        CHECK(ok);
        CHECK(evicted_front_with_non_front == 0);
    }
}

TEST_CASE("warm-up gating and sampling") {
    std::mt19937_64 rng(3);
    ReplayBuffer buf(ReplayConfig{100, 10, 0.1, 1});
    for (int i = 0; i < 9; ++i) buf.insert(dummy(i), {static_cast<double>(i), 0});
    CHECK_FALSE(buf.sample_batch(8, rng).has_value());
    buf.insert(dummy(9), {0, 1});
    const auto batch = buf.sample_batch(20, rng);
    REQUIRE(batch.has_value());
    CHECK(batch->size() == 20);
    for (std::size_t i = 0; i < 2; ++i) CHECK((*batch)[i]->on_front);

    ReplayBuffer all(ReplayConfig{100, 1, 0.1, 1});
    for (int i = 0; i < 5; ++i) all.insert(dummy(i), {static_cast<double>(i), static_cast<double>(-i)});
    const auto all_batch = all.sample_batch(30, rng);
    REQUIRE(all_batch.has_value());
    for (const auto* e : *all_batch) CHECK(e->on_front);
}

TEST_CASE("dump and restore") {
    std::mt19937_64 rng(4);
    ReplayBuffer buf(ReplayConfig{40, 0, 0.1, 1});
    for (int i = 0; i < 60; ++i) buf.insert(dummy(i), oracle::random_points(rng, 1, 2).front());
    const auto path = (std::filesystem::temp_directory_path() / "paretoflow_replay.jsonl").string();
    buf.dump(path);
    const auto back = ReplayBuffer::restore(path, buf.config());
    CHECK(back.size() == buf.size());
    CHECK(front_ids(back) == front_ids(buf));
    auto a = buf.entries().begin();
    for (const auto& e : back.entries()) {
        CHECK(e.objectives == a->objectives);
        CHECK(e.trajectory.states == a->trajectory.states);
        ++a;
    }
}
