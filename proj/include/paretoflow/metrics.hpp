#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "paretoflow/pareto.hpp"

namespace paretoflow {

/// Mean over P of the squared distance to the closest point of S. With plus,
/// only the shortfall max(p_i - s_i, 0) counts.
double igd_plus(const PointSet& S, const PointSet& P, bool plus = true);

/// Mean over S of the squared distance to the closest point of P.
double gd_plus(const PointSet& S, const PointSet& P, bool plus = true);

/// Averaged Hausdorff distance: max of the GD and IGD variants.
double hausdorff(const PointSet& S, const PointSet& P, bool plus = false);

/// Volume dominated by S and bounded below by r. Exact for d in {1, 2, 3}.
double hypervolume(const PointSet& S, const ObjectiveVector& r);

/// Entropy of the assignment of generated front points to their closest
/// reference point. Cluster sizes are divided by max(|Pref|, |Pgen|).
double pc_entropy(const PointSet& Pref, const PointSet& Pgen);

double r2_indicator(const PointSet& S, const std::vector<ObjectiveVector>& weights, const ObjectiveVector& utopian);

/// Uniform weight vectors: 101 for d = 2, a 1/13 simplex lattice for d = 3,
/// a 1/divisions lattice otherwise.
std::vector<ObjectiveVector> uniform_reference_vectors(std::size_t d, std::optional<std::size_t> divisions = std::nullopt);

inline constexpr double kMatchTolerance = 1e-9;

double coverage(const PointSet& Pref, const PointSet& S, double tol = kMatchTolerance);
double samples_in_front(const PointSet& Pref, const PointSet& S, double tol = kMatchTolerance);

/// Mean pairwise distance among the k highest-scored samples. Ties keep
/// insertion order.
template <typename T>
double topk_diversity(const std::vector<T>& samples, const std::vector<double>& scores, std::size_t k,
                      const std::function<double(const T&, const T&)>& dist);

std::size_t edit_distance(const std::vector<int>& a, const std::vector<int>& b);
double l1_distance(const std::vector<int>& a, const std::vector<int>& b);

/// Reference set for an unknown front: the upper faces x_i = 1 of the unit
/// hypercube sampled on a grid of `per_axis` points along every free axis.
PointSet hypercube_face_reference(std::size_t d, std::size_t per_axis = 64);

struct MetricConfig {
    ObjectiveVector reference_point;
    ObjectiveVector utopian;
    std::vector<ObjectiveVector> weights;
    double tolerance = kMatchTolerance;
    std::size_t topk = 10;
    bool has_true_front = true;
};

/// Defaults for objectives normalized to [0,1]: r = 0, z* = 1.
MetricConfig default_metric_config(std::size_t d);

struct MetricReport {
    std::optional<double> hv, r2, pc_ent, igd_plus, igd, gd_plus, gd, d_h, d_h_plus, coverage, samples_in_front,
        topk_diversity;
    std::size_t num_candidates = 0;
    std::size_t num_front = 0;
    MetricConfig config;
};

/// Every set metric for a candidate set against a reference front. d_h and
/// d_h_plus are computed between the candidates' own front and the reference.
MetricReport compute_metrics(const PointSet& candidates, const PointSet& reference, const MetricConfig& cfg);

nlohmann::json to_json(const MetricReport& r);
std::string csv_header(const MetricReport& r);
std::string csv_row(const MetricReport& r);

template <typename T>
double topk_diversity(const std::vector<T>& samples, const std::vector<double>& scores, std::size_t k,
                      const std::function<double(const T&, const T&)>& dist) {
    if (samples.size() != scores.size()) throw invalid_input("samples and scores differ in length");
    std::vector<std::size_t> order(samples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    order.resize(std::min(k, order.size()));
    if (order.size() < 2) return 0.0;
    double total = 0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            total += dist(samples[order[i]], samples[order[j]]);
            ++pairs;
        }
    }
    return total / static_cast<double>(pairs);
}

}  // namespace paretoflow
