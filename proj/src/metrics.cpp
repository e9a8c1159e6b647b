#include "paretoflow/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace paretoflow {

namespace {

void require_compatible(const PointSet& a, const PointSet& b) {
    if (a.empty() || b.empty()) throw invalid_input("metric needs two non-empty point sets");
    if (a.dim() != b.dim()) throw invalid_input("metric on point sets of different dimension");
}

// Squared distance from reference point p to candidate s. The plus variant
// only counts how far s falls short of p.
double sq_dist(const ObjectiveVector& p, const ObjectiveVector& s, bool plus) {
    double acc = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double diff = plus ? std::max(p[i] - s[i], 0.0) : p[i] - s[i];
        acc += diff * diff;
    }
    return acc;
}

double hv2d(std::vector<std::pair<double, double>> pts, double r0, double r1) {
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second > b.second;
    });
    double area = 0;
    double ymax = r1;
    for (const auto& [x, y] : pts) {
        if (y > ymax) {
            area += (x - r0) * (y - ymax);
            ymax = y;
        }
    }
    return area;
}

}  // namespace

double igd_plus(const PointSet& S, const PointSet& P, bool plus) {
    require_compatible(S, P);
    double total = 0;
    for (const auto& p : P.points()) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : S.points()) best = std::min(best, sq_dist(p, s, plus));
        total += best;
    }
    return total / static_cast<double>(P.size());
}

double gd_plus(const PointSet& S, const PointSet& P, bool plus) {
    require_compatible(S, P);
    double total = 0;
    for (const auto& s : S.points()) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : P.points()) best = std::min(best, sq_dist(p, s, plus));
        total += best;
    }
    return total / static_cast<double>(S.size());
}

double hausdorff(const PointSet& S, const PointSet& P, bool plus) {
    return std::max(gd_plus(S, P, plus), igd_plus(S, P, plus));
}

double hypervolume(const PointSet& S, const ObjectiveVector& r) {
    if (S.empty()) return 0.0;
    const std::size_t d = S.dim();
    if (r.size() != d) throw invalid_input("reference point dimension mismatch");
    if (d > 3) throw invalid_input("exact hypervolume is only supported for d <= 3");

    std::vector<ObjectiveVector> pts;
    for (const auto& s : S.points()) {
        bool positive = true;
        for (std::size_t i = 0; i < d; ++i) positive = positive && s[i] > r[i];
        if (positive) pts.push_back(s);
    }
    if (pts.empty()) return 0.0;

    if (d == 1) {
        double top = r[0];
        for (const auto& p : pts) top = std::max(top, p[0]);
        return top - r[0];
    }
    if (d == 2) {
        std::vector<std::pair<double, double>> xy;
        for (const auto& p : pts) xy.emplace_back(p[0], p[1]);
        return hv2d(std::move(xy), r[0], r[1]);
    }

    // Slice along the third objective: between consecutive distinct levels the
    // cross-section is the 2-D volume of every point reaching that level.
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a[2] > b[2]; });
    double volume = 0;
    std::vector<std::pair<double, double>> active;
    std::size_t i = 0;
    while (i < pts.size()) {
        const double level = pts[i][2];
        while (i < pts.size() && pts[i][2] == level) {
            active.emplace_back(pts[i][0], pts[i][1]);
            ++i;
        }
        const double below = i < pts.size() ? pts[i][2] : r[2];
        volume += hv2d(active, r[0], r[1]) * (level - below);
    }
    return volume;
}

double pc_entropy(const PointSet& Pref, const PointSet& Pgen) {
    if (Pref.empty()) throw invalid_input("pc_entropy needs a non-empty reference front");
    if (Pgen.empty()) return 0.0;
    if (Pref.dim() != Pgen.dim()) throw invalid_input("pc_entropy on point sets of different dimension");
    const std::size_t d = Pref.dim();

    std::vector<double> lo(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    for (const auto* set : {&Pref, &Pgen}) {
        for (const auto& p : set->points()) {
            for (std::size_t j = 0; j < d; ++j) {
                lo[j] = std::min(lo[j], p[j]);
                hi[j] = std::max(hi[j], p[j]);
            }
        }
    }
    auto scaled = [&](const ObjectiveVector& p) {
        ObjectiveVector q(d);
        for (std::size_t j = 0; j < d; ++j) q[j] = hi[j] > lo[j] ? (p[j] - lo[j]) / (hi[j] - lo[j]) : 0.0;
        return q;
    };
    std::vector<ObjectiveVector> ref;
    for (const auto& p : Pref.points()) ref.push_back(scaled(p));

    std::map<std::size_t, std::size_t> clusters;
    for (const auto& g : Pgen.points()) {
        const auto q = scaled(g);
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < ref.size(); ++k) {
            const double dd = sq_dist(ref[k], q, false);
            if (dd < best_d) {
                best_d = dd;
                best = k;
            }
        }
        ++clusters[best];
    }
    const double n = static_cast<double>(std::max(Pref.size(), Pgen.size()));
    double h = 0;
    for (const auto& [k, count] : clusters) {
        const double frac = static_cast<double>(count) / n;
        h -= frac * std::log(frac);
    }
    return h;
}

double r2_indicator(const PointSet& S, const std::vector<ObjectiveVector>& weights, const ObjectiveVector& utopian) {
    if (weights.empty()) throw invalid_input("r2 indicator needs at least one weight vector");
    if (S.empty()) throw invalid_input("r2 indicator of an empty set");
    const std::size_t d = S.dim();
    if (utopian.size() != d) throw invalid_input("utopian point dimension mismatch");
    for (const auto& s : S.points()) {
        for (std::size_t i = 0; i < d; ++i) {
            if (s[i] > utopian[i]) throw invalid_input("utopian point must be at least every candidate");
        }
    }
    double total = 0;
    for (const auto& w : weights) {
        if (w.size() != d) throw invalid_input("weight vector dimension mismatch");
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : S.points()) {
            double worst = 0;
            for (std::size_t i = 0; i < d; ++i) {
                if (w[i] < 0) throw invalid_input("weight vectors must be nonnegative");
                worst = std::max(worst, w[i] * std::abs(utopian[i] - s[i]));
            }
            best = std::min(best, worst);
        }
        total += best;
    }
    return total / static_cast<double>(weights.size());
}

std::vector<ObjectiveVector> uniform_reference_vectors(std::size_t d, std::optional<std::size_t> divisions) {
    if (d == 0) throw invalid_input("reference vectors need d >= 1");
    const std::size_t h = divisions.value_or(d == 2 ? 100 : 13);
    std::vector<ObjectiveVector> out;
    std::vector<std::size_t> parts(d, 0);
    // Enumerate all compositions of h into d nonnegative parts.
    auto rec = [&](auto&& self, std::size_t idx, std::size_t left) -> void {
        if (idx + 1 == d) {
            parts[idx] = left;
            ObjectiveVector w(d);
            for (std::size_t j = 0; j < d; ++j) w[j] = static_cast<double>(parts[j]) / static_cast<double>(h);
            out.push_back(std::move(w));
            return;
        }
        for (std::size_t v = 0; v <= left; ++v) {
            parts[idx] = v;
            self(self, idx + 1, left - v);
        }
    };
    rec(rec, 0, h);
    return out;
}

namespace {

bool within(const ObjectiveVector& a, const ObjectiveVector& b, double tol) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > tol) return false;
    }
    return true;
}

}  // namespace

double coverage(const PointSet& Pref, const PointSet& S, double tol) {
    if (Pref.empty()) throw invalid_input("coverage needs a non-empty reference front");
    if (S.empty()) return 0.0;
    require_compatible(Pref, S);
    std::size_t hit = 0;
    for (const auto& p : Pref.points()) {
        for (const auto& s : S.points()) {
            if (within(p, s, tol)) {
                ++hit;
                break;
            }
        }
    }
    return static_cast<double>(hit) / static_cast<double>(Pref.size());
}

double samples_in_front(const PointSet& Pref, const PointSet& S, double tol) {
    if (S.empty()) throw invalid_input("samples_in_front of an empty candidate set");
    require_compatible(Pref, S);
    std::size_t hit = 0;
    for (const auto& s : S.points()) {
        for (const auto& p : Pref.points()) {
            if (within(p, s, tol)) {
                ++hit;
                break;
            }
        }
    }
    return static_cast<double>(hit) / static_cast<double>(S.size());
}

std::size_t edit_distance(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0u : 1u)});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

double l1_distance(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw invalid_input("l1 distance between states of different dimension");
    double acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
    return acc;
}

PointSet hypercube_face_reference(std::size_t d, std::size_t per_axis) {
    if (d == 0 || per_axis < 2) throw invalid_input("hypercube reference needs d >= 1 and at least 2 points per axis");
    std::set<ObjectiveVector> unique;
    std::vector<std::size_t> idx(d - 1, 0);
    const double step = 1.0 / static_cast<double>(per_axis - 1);
    for (std::size_t face = 0; face < d; ++face) {
        std::fill(idx.begin(), idx.end(), 0);
        while (true) {
            ObjectiveVector p(d);
            for (std::size_t j = 0, k = 0; j < d; ++j) {
                p[j] = j == face ? 1.0 : static_cast<double>(idx[k++]) * step;
            }
            unique.insert(std::move(p));
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == per_axis) idx[k++] = 0;
            if (k == idx.size()) break;
        }
    }
    return PointSet(std::vector<ObjectiveVector>(unique.begin(), unique.end()));
}

MetricConfig default_metric_config(std::size_t d) {
    MetricConfig cfg;
    cfg.reference_point.assign(d, 0.0);
    cfg.utopian.assign(d, 1.0);
    cfg.weights = uniform_reference_vectors(d);
    return cfg;
}

MetricReport compute_metrics(const PointSet& candidates, const PointSet& reference, const MetricConfig& cfg) {
    require_compatible(candidates, reference);
    MetricReport r;
    r.config = cfg;
    r.num_candidates = candidates.size();
    const PointSet own_front = front_points(candidates);
    r.num_front = own_front.size();

    if (candidates.dim() <= 3) r.hv = hypervolume(own_front, cfg.reference_point);
    r.r2 = r2_indicator(candidates, cfg.weights, cfg.utopian);

    std::set<ObjectiveVector> distinct(own_front.points().begin(), own_front.points().end());
    r.pc_ent = pc_entropy(reference, PointSet(std::vector<ObjectiveVector>(distinct.begin(), distinct.end())));

    r.igd_plus = igd_plus(candidates, reference, true);
    r.igd = igd_plus(candidates, reference, false);
    r.gd_plus = gd_plus(candidates, reference, true);
    r.gd = gd_plus(candidates, reference, false);
    r.d_h = hausdorff(own_front, reference, false);
    r.d_h_plus = hausdorff(own_front, reference, true);
    if (cfg.has_true_front) {
        r.coverage = coverage(reference, candidates, cfg.tolerance);
        r.samples_in_front = samples_in_front(reference, candidates, cfg.tolerance);
    }
    return r;
}

namespace {

const std::vector<std::pair<const char*, std::optional<double> MetricReport::*>>& metric_fields() {
    static const std::vector<std::pair<const char*, std::optional<double> MetricReport::*>> fields = {
        {"hv", &MetricReport::hv},
        {"r2", &MetricReport::r2},
        {"pc_ent", &MetricReport::pc_ent},
        {"igd_plus", &MetricReport::igd_plus},
        {"igd", &MetricReport::igd},
        {"gd_plus", &MetricReport::gd_plus},
        {"gd", &MetricReport::gd},
        {"d_h", &MetricReport::d_h},
        {"d_h_plus", &MetricReport::d_h_plus},
        {"coverage", &MetricReport::coverage},
        {"samples_in_front", &MetricReport::samples_in_front},
        {"topk_diversity", &MetricReport::topk_diversity},
    };
    return fields;
}

}  // namespace

nlohmann::json to_json(const MetricReport& r) {
    nlohmann::json j;
    for (const auto& [name, field] : metric_fields()) {
        const auto& v = r.*field;
        j[name] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    }
    j["num_candidates"] = r.num_candidates;
    j["num_front"] = r.num_front;
    j["config"] = {
        {"reference_point", r.config.reference_point},
        {"utopian", r.config.utopian},
        {"num_weights", r.config.weights.size()},
        {"weights", r.config.weights},
        {"tolerance", r.config.tolerance},
        {"topk", r.config.topk},
        {"has_true_front", r.config.has_true_front},
    };
    return j;
}

std::string csv_header(const MetricReport&) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [name, field] : metric_fields()) {
        out << (first ? "" : ",") << name;
        first = false;
    }
    return out.str();
}

std::string csv_row(const MetricReport& r) {
    std::ostringstream out;
    out.precision(10);
    bool first = true;
    for (const auto& [name, field] : metric_fields()) {
        out << (first ? "" : ",");
        if (const auto& v = r.*field) out << *v;
        first = false;
    }
    return out.str();
}

}  // namespace paretoflow
