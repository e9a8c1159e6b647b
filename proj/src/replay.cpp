#include "paretoflow/replay.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace paretoflow {

ReplayBuffer::ReplayBuffer(ReplayConfig cfg) : cfg_(cfg) {
    if (cfg_.capacity == 0) throw invalid_input("replay capacity must be positive");
    if (!(cfg_.pareto_ratio > 0.0 && cfg_.pareto_ratio < 1.0)) throw invalid_input("pareto ratio must lie in (0, 1)");
}

ReplayBuffer::InsertOutcome ReplayBuffer::insert(Trajectory trajectory, ObjectiveVector objectives) {
    validate_objective(objectives);
    if (!entries_.empty() && entries_.front().objectives.size() != objectives.size()) {
        throw invalid_input("replay entry dimension mismatch");
    }

    bool dominated = false;
    for (const auto& e : entries_) {
        if (e.on_front && dominates(e.objectives, objectives)) {
            dominated = true;
            break;
        }
    }

    if (entries_.size() >= cfg_.capacity) {
        const bool all_front = front_count_ == entries_.size();
        if (all_front && dominated) return InsertOutcome::Dropped;
    }

    if (!dominated) {
        for (auto& e : entries_) {
            if (e.on_front && dominates(objectives, e.objectives)) {
                e.on_front = false;
                --front_count_;
            }
        }
    }

    if (entries_.size() >= cfg_.capacity) {
        auto victim = std::find_if(entries_.begin(), entries_.end(), [](const ReplayEntry& e) { return !e.on_front; });
        if (victim == entries_.end()) victim = entries_.begin();
        if (victim->on_front) --front_count_;
        entries_.erase(victim);
    }

    ReplayEntry entry;
    entry.id = next_id_++;
    entry.trajectory = std::move(trajectory);
    entry.objectives = std::move(objectives);
    entry.on_front = !dominated;
    if (entry.on_front) ++front_count_;
    entries_.push_back(std::move(entry));
    index_dirty_ = true;
    return InsertOutcome::Stored;
}

void ReplayBuffer::rebuild_index() const {
    if (!index_dirty_) return;
    all_index_.clear();
    front_index_.clear();
    for (const auto& e : entries_) {
        all_index_.push_back(&e);
        if (e.on_front) front_index_.push_back(&e);
    }
    index_dirty_ = false;
}

ReplayBuffer::Composition ReplayBuffer::composition(const ReplayConfig& cfg, std::size_t batch_size) {
    // The small slack keeps products like 0.1 * 10 from rounding up.
    auto quota = static_cast<std::size_t>(std::ceil(cfg.pareto_ratio * static_cast<double>(batch_size) - 1e-9));
    quota = std::min(std::max(quota, cfg.min_pareto_k), batch_size);
    return {quota, batch_size - quota};
}

std::optional<std::vector<const ReplayEntry*>> ReplayBuffer::sample_batch(std::size_t batch_size,
                                                                         std::mt19937_64& rng) const {
    if (!warmed_up() || entries_.empty()) return std::nullopt;
    rebuild_index();
    const auto comp = composition(cfg_, batch_size);
    std::vector<const ReplayEntry*> out;
    out.reserve(batch_size);
    std::uniform_int_distribution<std::size_t> pick_front(0, front_index_.size() - 1);
    for (std::size_t i = 0; i < comp.front_draws; ++i) out.push_back(front_index_[pick_front(rng)]);
    std::uniform_int_distribution<std::size_t> pick_any(0, all_index_.size() - 1);
    for (std::size_t i = 0; i < comp.general_draws; ++i) out.push_back(all_index_[pick_any(rng)]);
    return out;
}

PointSet ReplayBuffer::front_snapshot() const {
    PointSet out;
    for (const auto& e : entries_) {
        if (e.on_front) out.add(e.objectives, static_cast<PointId>(e.id));
    }
    return out;
}

void ReplayBuffer::dump(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write replay dump " + path);
    for (const auto& e : entries_) {
        nlohmann::json j = {{"id", e.id}, {"objectives", e.objectives}, {"trajectory", to_json(e.trajectory)}};
        out << j.dump() << '\n';
    }
}

ReplayBuffer ReplayBuffer::restore(const std::string& path, ReplayConfig cfg) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read replay dump " + path);
    ReplayBuffer buf(cfg);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        const auto id = j.at("id").get<std::uint64_t>();
        if (buf.insert(trajectory_from_json(j.at("trajectory")), j.at("objectives").get<ObjectiveVector>()) ==
            InsertOutcome::Stored) {
            buf.entries_.back().id = id;
            buf.next_id_ = std::max(buf.next_id_, id + 1);
        }
    }
    return buf;
}

}  // namespace paretoflow
