#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "paretoflow/pareto.hpp"

namespace paretoflow {

/// A point set together with a family of subsets, each given by point ids.
struct DilemmaInstance {
    PointSet points;
    std::vector<std::vector<PointId>> subsets;
};

/// One forced constraint in a contradiction chain.
///   ZeroForced:       P(a) = 0, a is dominated inside `subset`.
///   Equal:            P(a) = P(b), both are non-dominated inside `subset`.
///   RequiredPositive: P(a) > 0, a is on the Pareto front of the full set.
/// When the full set takes part as a subset its index is subsets.size().
struct ChainLink {
    enum class Kind { ZeroForced, Equal, RequiredPositive };
    Kind kind = Kind::ZeroForced;
    PointId a = 0;
    PointId b = 0;
    std::optional<std::size_t> subset;
};

struct ConsistencyVerdict {
    bool feasible = false;
    std::map<PointId, double> witness;
    std::vector<ChainLink> contradiction;
};

/// Decides whether some distribution over the points matches the
/// uniform-on-front conditional of every active subset while keeping the
/// global Pareto set positive. A subset is active when it contains a global
/// Pareto point. With include_full_set the whole point set joins the family.
ConsistencyVerdict check_consistency(const DilemmaInstance& inst, bool include_full_set = false);

/// True when every link is justified by its source subset and the chain
/// connects a zero-forced point through equalities to a required-positive one.
bool verify_chain(const DilemmaInstance& inst, const std::vector<ChainLink>& chain, bool include_full_set = false);

/// Infeasible families of at most `limit` subsets of `subset_size` points
/// such that dropping any one subset makes the family feasible.
std::vector<DilemmaInstance> enumerate_dilemmas(const PointSet& points, std::size_t subset_size, std::size_t limit);

std::string describe(const ChainLink& link);
nlohmann::json to_json(const ConsistencyVerdict& v);

/// Subsets given as a JSON array of id arrays.
std::vector<std::vector<PointId>> read_subsets_json(const std::string& path);

}  // namespace paretoflow
