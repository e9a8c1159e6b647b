#include "paretoflow/global_orders.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace paretoflow {

std::string to_string(RankMethod m) {
    switch (m) {
        case RankMethod::GlobalRank: return "gr";
        case RankMethod::GlobalRankTrimmed: return "gr-k";
        case RankMethod::CheapGR: return "cheap";
        case RankMethod::NNOrder: return "nn";
        case RankMethod::NNInterpOrder: return "nn-int";
    }
    return "unknown";
}

double RankAssignment::score_of(PointId id) const {
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] == id) return scores[i];
    }
    throw invalid_input("id " + std::to_string(id) + " has no score");
}

RewardTransform RewardTransform::softmax(double gamma) {
    if (!std::isfinite(gamma) || gamma <= 0) throw invalid_input("softmax temperature must be finite and positive");
    return {Kind::Softmax, gamma};
}

double distance(std::span<const double> a, std::span<const double> b, Distance metric) {
    if (a.size() != b.size()) throw invalid_input("distance between vectors of different dimension");
    double acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = std::abs(a[i] - b[i]);
        switch (metric) {
            case Distance::Euclidean: acc += diff * diff; break;
            case Distance::Manhattan: acc += diff; break;
            case Distance::Chebyshev: acc = std::max(acc, diff); break;
        }
    }
    return metric == Distance::Euclidean ? std::sqrt(acc) : acc;
}

double point_segment_distance(std::span<const double> p, std::span<const double> a, std::span<const double> b,
                              Distance metric) {
    const std::size_t d = p.size();
    std::vector<double> q(d);
    auto at = [&](double t) {
        for (std::size_t i = 0; i < d; ++i) q[i] = a[i] + t * (b[i] - a[i]);
        return distance(p, q, metric);
    };
    if (metric == Distance::Euclidean) {
        double num = 0, den = 0;
        for (std::size_t i = 0; i < d; ++i) {
            num += (p[i] - a[i]) * (b[i] - a[i]);
            den += (b[i] - a[i]) * (b[i] - a[i]);
        }
        const double t = den > 0 ? std::clamp(num / den, 0.0, 1.0) : 0.0;
        return at(t);
    }
    // Any norm of an affine function of t is convex, so golden-section search
    // converges to the global minimum.
    const double phi = (std::sqrt(5.0) - 1) / 2;
    double lo = 0, hi = 1;
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = at(x1), f2 = at(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = at(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = at(x2);
        }
    }
    return std::min({at(0.0), at(1.0), at((lo + hi) / 2)});
}

namespace {

void require_nonempty(const PointSet& xs) {
    if (xs.empty()) throw invalid_input("cannot rank an empty point set");
}

std::vector<ObjectiveVector> normalized_points(const PointSet& xs) {
    const std::size_t d = xs.dim();
    std::vector<double> lo(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    for (const auto& p : xs.points()) {
        for (std::size_t j = 0; j < d; ++j) {
            lo[j] = std::min(lo[j], p[j]);
            hi[j] = std::max(hi[j], p[j]);
        }
    }
    std::vector<ObjectiveVector> out = xs.points();
    for (auto& p : out) {
        for (std::size_t j = 0; j < d; ++j) p[j] = hi[j] > lo[j] ? (p[j] - lo[j]) / (hi[j] - lo[j]) : 0.0;
    }
    return out;
}

RankAssignment make_assignment(const PointSet& xs, RankMethod method) {
    RankAssignment r;
    r.method = method;
    r.ids = xs.ids();
    r.scores.assign(xs.size(), 0.0);
    r.aux.assign(xs.size(), 0.0);
    return r;
}

}  // namespace

RankAssignment global_rank(const PointSet& xs, std::optional<std::size_t> max_rank) {
    require_nonempty(xs);
    const auto layer = layer_indices(xs.points(), max_rank);
    auto r = make_assignment(xs, max_rank ? RankMethod::GlobalRankTrimmed : RankMethod::GlobalRank);
    r.max_rank = max_rank;

    std::size_t peeled = 0;
    for (std::size_t l : layer) peeled = std::max(peeled, l + 1);
    bool trimmed = false;
    if (max_rank && peeled > *max_rank) {
        peeled = *max_rank;
        trimmed = true;
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        r.aux[i] = static_cast<double>(layer[i]);
        r.scores[i] = (trimmed && layer[i] >= peeled) ? 0.0 : static_cast<double>(peeled - layer[i]);
    }
    return r;
}

RankAssignment cheap_global_rank(const PointSet& xs) {
    auto r = global_rank(xs, 1);
    r.method = RankMethod::CheapGR;
    return r;
}

RankAssignment nn_order(const PointSet& xs, Distance metric, bool normalize) {
    require_nonempty(xs);
    const auto pts = normalize ? normalized_points(xs) : xs.points();
    const auto front = nondominated_mask(xs.points());
    auto r = make_assignment(xs, RankMethod::NNOrder);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (front[i]) continue;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (front[j]) best = std::min(best, distance(pts[i], pts[j], metric));
        }
        r.scores[i] = -best;
        r.aux[i] = best;
    }
    return r;
}

RankAssignment nn_interp_order(const PointSet& xs, Distance metric, bool normalize) {
    require_nonempty(xs);
    if (xs.dim() != 2) throw invalid_input("front interpolation is only defined for two objectives");
    const auto pts = normalize ? normalized_points(xs) : xs.points();
    const auto front = nondominated_mask(xs.points());

    std::vector<ObjectiveVector> curve;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (front[i]) curve.push_back(pts[i]);
    }
    std::sort(curve.begin(), curve.end());
    curve.erase(std::unique(curve.begin(), curve.end()), curve.end());

    auto r = make_assignment(xs, RankMethod::NNInterpOrder);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (front[i]) continue;
        double best = curve.size() == 1 ? distance(pts[i], curve[0], metric) : std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k + 1 < curve.size(); ++k) {
            best = std::min(best, point_segment_distance(pts[i], curve[k], curve[k + 1], metric));
        }
        r.scores[i] = -best;
        r.aux[i] = best;
    }
    return r;
}

RankAssignment rank_points(const PointSet& xs, RankMethod method, std::optional<std::size_t> max_rank,
                           Distance metric, bool normalize) {
    switch (method) {
        case RankMethod::GlobalRank: return global_rank(xs);
        case RankMethod::GlobalRankTrimmed:
            if (!max_rank) throw invalid_input("trimmed global rank needs a max rank");
            return global_rank(xs, max_rank);
        case RankMethod::CheapGR: return cheap_global_rank(xs);
        case RankMethod::NNOrder: return nn_order(xs, metric, normalize);
        case RankMethod::NNInterpOrder: return nn_interp_order(xs, metric, normalize);
    }
    throw invalid_input("unknown rank method");
}

std::vector<double> transform_rewards(const RankAssignment& ranks, const RewardTransform& t) {
    const auto& s = ranks.scores;
    std::vector<double> out(s.size(), 0.0);
    if (s.empty()) return out;
    switch (t.kind) {
        case RewardTransform::Kind::Raw:
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (!(s[i] > 0)) throw invalid_input("raw reward must be positive; shift the scores first");
                out[i] = s[i];
            }
            break;
        case RewardTransform::Kind::Softmax: {
            if (!std::isfinite(t.temperature) || t.temperature <= 0) {
                throw invalid_input("softmax temperature must be finite and positive");
            }
            const double top = *std::max_element(s.begin(), s.end());
            double total = 0;
            for (std::size_t i = 0; i < s.size(); ++i) {
                out[i] = std::exp(t.temperature * (s[i] - top));
                total += out[i];
            }
            for (double& v : out) v /= total;
            break;
        }
        case RewardTransform::Kind::IndicatorOfMax: {
            const double top = *std::max_element(s.begin(), s.end());
            for (std::size_t i = 0; i < s.size(); ++i) out[i] = std::abs(s[i] - top) <= kIndicatorTieTolerance ? 1.0 : 0.0;
            break;
        }
    }
    return out;
}

RankAssignment shift_positive(RankAssignment ranks, double eps) {
    if (ranks.scores.empty()) return ranks;
    const double lo = *std::min_element(ranks.scores.begin(), ranks.scores.end());
    for (double& v : ranks.scores) v = v - lo + eps;
    return ranks;
}

}  // namespace paretoflow
