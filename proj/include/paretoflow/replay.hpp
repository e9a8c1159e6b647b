#pragma once

#include <cstdint>
#include <list>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "paretoflow/pareto.hpp"
#include "paretoflow/trajectory.hpp"

namespace paretoflow {

struct ReplayConfig {
    std::size_t capacity = 10000;
    std::size_t warmup = 1000;
    double pareto_ratio = 0.1;
    std::size_t min_pareto_k = 1;
};

struct ReplayEntry {
    std::uint64_t id = 0;
    Trajectory trajectory;
    ObjectiveVector objectives;
    bool on_front = false;
};

/// Bounded trajectory store that keeps its Pareto front up to date on every
/// insert. Front members are only evicted when nothing else is left.
class ReplayBuffer {
public:
    enum class InsertOutcome { Stored, Dropped };

    struct Composition {
        std::size_t front_draws = 0;
        std::size_t general_draws = 0;
    };

    explicit ReplayBuffer(ReplayConfig cfg = {});

    InsertOutcome insert(Trajectory trajectory, ObjectiveVector objectives);

    /// nullopt while warming up. Front draws and general draws are both
    /// uniform with replacement.
    std::optional<std::vector<const ReplayEntry*>> sample_batch(std::size_t batch_size, std::mt19937_64& rng) const;

    /// Front quota max(ceil(ratio * batch), min_k), capped at the batch.
    static Composition composition(const ReplayConfig& cfg, std::size_t batch_size);

    PointSet front_snapshot() const;

    std::size_t size() const noexcept { return entries_.size(); }
    std::size_t front_size() const noexcept { return front_count_; }
    bool warmed_up() const noexcept { return entries_.size() >= cfg_.warmup; }
    const ReplayConfig& config() const noexcept { return cfg_; }

    /// Entries oldest first.
    const std::list<ReplayEntry>& entries() const noexcept { return entries_; }

    void dump(const std::string& path) const;
    static ReplayBuffer restore(const std::string& path, ReplayConfig cfg);

private:
    void rebuild_index() const;

    ReplayConfig cfg_;
    std::list<ReplayEntry> entries_;
    std::size_t front_count_ = 0;
    std::uint64_t next_id_ = 0;

    mutable bool index_dirty_ = true;
    mutable std::vector<const ReplayEntry*> all_index_;
    mutable std::vector<const ReplayEntry*> front_index_;
};

}  // namespace paretoflow
