#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paretoflow/pareto.hpp"

namespace paretoflow {

enum class RankMethod { GlobalRank, GlobalRankTrimmed, CheapGR, NNOrder, NNInterpOrder };

std::string to_string(RankMethod m);

/// Global scores aligned with the positions of the ranked PointSet.
///
/// For the rank methods `aux` holds the peeled layer index (0 = Pareto
/// front); for the nearest-neighbour methods it holds the distance to the
/// front.
struct RankAssignment {
    RankMethod method = RankMethod::GlobalRank;
    std::optional<std::size_t> max_rank;
    std::vector<PointId> ids;
    std::vector<double> scores;
    std::vector<double> aux;

    std::size_t size() const noexcept { return scores.size(); }
    double score_of(PointId id) const;
};

enum class Distance { Euclidean, Manhattan, Chebyshev };

double distance(std::span<const double> a, std::span<const double> b, Distance metric);

struct RewardTransform {
    enum class Kind { Raw, Softmax, IndicatorOfMax };
    Kind kind = Kind::Raw;
    double temperature = 1.0;

    static RewardTransform raw() { return {Kind::Raw, 1.0}; }
    static RewardTransform softmax(double gamma);
    static RewardTransform indicator() { return {Kind::IndicatorOfMax, 1.0}; }
};

inline constexpr double kIndicatorTieTolerance = 1e-9;
inline constexpr double kRawShiftEpsilon = 1e-6;

/// Peels fronts, then invert so the first front scores highest. With
/// max_rank, peeling stops after that many layers and leftovers score 0.
RankAssignment global_rank(const PointSet& xs, std::optional<std::size_t> max_rank = std::nullopt);

/// Front -> 1, everything else -> 0.
RankAssignment cheap_global_rank(const PointSet& xs);

/// Front -> 0, others -> minus the distance to the closest front point.
/// With normalize, each axis is rescaled to [0,1] over xs first; constant
/// axes contribute nothing.
RankAssignment nn_order(const PointSet& xs, Distance metric = Distance::Euclidean, bool normalize = true);

/// Like nn_order but measures distance to the piecewise-linear curve through
/// the front sorted by the first objective. Only defined for d = 2.
RankAssignment nn_interp_order(const PointSet& xs, Distance metric = Distance::Euclidean,
                               bool normalize = true);

/// Dispatches on method; max_rank is only read for GlobalRankTrimmed.
RankAssignment rank_points(const PointSet& xs, RankMethod method, std::optional<std::size_t> max_rank = std::nullopt,
                           Distance metric = Distance::Euclidean, bool normalize = true);

/// Applies a transform. Raw requires strictly positive scores.
std::vector<double> transform_rewards(const RankAssignment& ranks, const RewardTransform& t);

/// Order-preserving shift making every score positive: s - min + eps.
RankAssignment shift_positive(RankAssignment ranks, double eps = kRawShiftEpsilon);

/// Distance from p to segment [a, b] under the metric.
double point_segment_distance(std::span<const double> p, std::span<const double> a, std::span<const double> b,
                              Distance metric);

}  // namespace paretoflow
