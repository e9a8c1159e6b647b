#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace paretoflow {

/// A point in objective space. Every objective is maximized.
using ObjectiveVector = std::vector<double>;
using PointId = std::int64_t;

struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Validates finiteness and a non-zero dimension.
void validate_objective(std::span<const double> v);

/// Ordered collection of equal-dimension objective vectors with stable ids.
class PointSet {
public:
    PointSet() = default;

    /// Ids are assigned by position: 0, 1, 2, ...
    explicit PointSet(std::vector<ObjectiveVector> points);
    PointSet(std::vector<ObjectiveVector> points, std::vector<PointId> ids);

    void add(ObjectiveVector point, PointId id);
    void add(ObjectiveVector point);

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    std::size_t dim() const noexcept { return dim_; }

    const ObjectiveVector& point(std::size_t i) const { return points_.at(i); }
    PointId id(std::size_t i) const { return ids_.at(i); }
    const std::vector<ObjectiveVector>& points() const noexcept { return points_; }
    const std::vector<PointId>& ids() const noexcept { return ids_; }

    /// Position of an id, or npos.
    std::size_t index_of(PointId id) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    /// Subset in the given positional order.
    PointSet select(std::span<const std::size_t> positions) const;

private:
    std::vector<ObjectiveVector> points_;
    std::vector<PointId> ids_;
    std::unordered_map<PointId, std::size_t> index_;
    PointId next_id_ = 0;
    std::size_t dim_ = 0;
};

struct FrontResult {
    std::vector<PointId> front;
    std::vector<PointId> dominated;
};

struct FrontLayer {
    std::vector<PointId> ids;
    bool trimmed = false;
};

/// a dominates b: a >= b everywhere and a > b somewhere.
bool dominates(std::span<const double> a, std::span<const double> b);

/// Per-position flag: true when no other point dominates it. Duplicates of a
/// non-dominated vector are all kept.
std::vector<bool> nondominated_mask(const std::vector<ObjectiveVector>& points);

/// Layer index of every point when peeling fronts. If max_layers is given,
/// peeling stops after that many layers and the remaining points get layer
/// `max_layers`.
std::vector<std::size_t> layer_indices(const std::vector<ObjectiveVector>& points,
                                       std::optional<std::size_t> max_layers = std::nullopt);

FrontResult pareto_front(const PointSet& xs);

std::vector<FrontLayer> nondominated_sort(const PointSet& xs,
                                          std::optional<std::size_t> max_fronts = std::nullopt);

/// The non-dominated points themselves, in input order.
PointSet front_points(const PointSet& xs);

/// Reads a points CSV: one row per point, optional header, ids by row order.
PointSet read_points_csv(const std::string& path);
void write_points_csv(const std::string& path, const PointSet& xs);

}  // namespace paretoflow
