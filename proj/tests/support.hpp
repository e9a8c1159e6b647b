#pragma once

// Independent reference implementations used as test oracles, plus random
// input generators. Nothing here calls the library code it checks.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "paretoflow/pareto.hpp"

namespace oracle {

using Vec = std::vector<double>;

inline std::vector<Vec> random_points(std::mt19937_64& rng, std::size_t n, std::size_t d, int levels = 0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> k(0, std::max(levels - 1, 0));
    std::vector<Vec> pts(n, Vec(d));
    for (auto& p : pts) {
        for (auto& v : p) v = levels > 0 ? static_cast<double>(k(rng)) : u(rng);
    }
    return pts;
}

inline bool weakly_better_everywhere(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return false;
    }
    return true;
}

inline bool dom(const Vec& a, const Vec& b) { return weakly_better_everywhere(a, b) && a != b; }

inline std::vector<bool> front_mask(const std::vector<Vec>& pts) {
    std::vector<bool> out(pts.size(), true);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (dom(pts[j], pts[i])) {
                out[i] = false;
                break;
            }
        }
    }
    return out;
}

// Layer index by the longest chain of dominators above each point.
inline std::vector<std::size_t> layers_by_chain(const std::vector<Vec>& pts) {
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    auto sum = [&](std::size_t i) { return std::accumulate(pts[i].begin(), pts[i].end(), 0.0); };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sum(a) > sum(b); });
    std::vector<std::size_t> layer(pts.size(), 0);
    for (std::size_t a = 0; a < order.size(); ++a) {
        for (std::size_t b = 0; b < a; ++b) {
            if (dom(pts[order[b]], pts[order[a]])) layer[order[a]] = std::max(layer[order[a]], layer[order[b]] + 1);
        }
    }
    return layer;
}

inline double sq(double x) { return x * x; }

inline double sq_dist(const Vec& p, const Vec& s, bool plus) {
    double acc = 0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += sq(plus ? std::max(p[i] - s[i], 0.0) : p[i] - s[i]);
    return acc;
}

inline double igd(const std::vector<Vec>& S, const std::vector<Vec>& P, bool plus) {
    double total = 0;
    for (const auto& p : P) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : S) best = std::min(best, sq_dist(p, s, plus));
        total += best;
    }
    return total / static_cast<double>(P.size());
}

inline double gd(const std::vector<Vec>& S, const std::vector<Vec>& P, bool plus) {
    double total = 0;
    for (const auto& s : S) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : P) best = std::min(best, sq_dist(p, s, plus));
        total += best;
    }
    return total / static_cast<double>(S.size());
}

struct MonteCarlo {
    double estimate;
    double std_error;
};

// Uniform samples in the box [r, max S].
inline MonteCarlo hypervolume_mc(const std::vector<Vec>& S, const Vec& r, std::size_t samples, std::mt19937_64& rng) {
    const std::size_t d = r.size();
    Vec hi = r;
    for (const auto& s : S) {
        for (std::size_t i = 0; i < d; ++i) hi[i] = std::max(hi[i], s[i]);
    }
    double box = 1;
    for (std::size_t i = 0; i < d; ++i) box *= hi[i] - r[i];
    if (box == 0) return {0, 0};
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::size_t hits = 0;
    Vec x(d);
    for (std::size_t k = 0; k < samples; ++k) {
        for (std::size_t i = 0; i < d; ++i) x[i] = r[i] + u(rng) * (hi[i] - r[i]);
        for (const auto& s : S) {
            if (weakly_better_everywhere(s, x)) {
                ++hits;
                break;
            }
        }
    }
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    return {p * box, box * std::sqrt(p * (1 - p) / static_cast<double>(samples))};
}

// Exhaustive search for a distribution on the 1/60 simplex grid that keeps
// the global front positive and makes every active subset's conditional
// uniform on its own front and zero elsewhere. Exact integer arithmetic.
inline bool consistency_by_grid(const std::vector<Vec>& pts, const std::vector<std::vector<std::size_t>>& subsets) {
    const std::size_t n = pts.size();
    const int total = 60;
    const auto global = front_mask(pts);
    struct Sub {
        std::vector<std::size_t> members;
        std::vector<bool> local;
    };
    std::vector<Sub> active;
    for (const auto& s : subsets) {
        bool act = false;
        std::vector<Vec> sub_pts;
        for (std::size_t i : s) {
            act = act || global[i];
            sub_pts.push_back(pts[i]);
        }
        if (act) active.push_back({s, front_mask(sub_pts)});
    }
    std::vector<int> mass(n, 0);
    auto check = [&] {
        for (std::size_t i = 0; i < n; ++i) {
            if (global[i] && mass[i] == 0) return false;
        }
        for (const auto& s : active) {
            int front_count = 0, sub_mass = 0;
            for (std::size_t j = 0; j < s.members.size(); ++j) {
                sub_mass += mass[s.members[j]];
                front_count += s.local[j] ? 1 : 0;
            }
            if (sub_mass == 0) return false;
            for (std::size_t j = 0; j < s.members.size(); ++j) {
                // P(x | X_k) * |front| * P(X_k) == P(X_k) for front members.
                const int want = s.local[j] ? sub_mass : 0;
                if (mass[s.members[j]] * (s.local[j] ? front_count : 1) != want) return false;
            }
        }
        return true;
    };
    std::function<bool(std::size_t, int)> rec = [&](std::size_t i, int left) -> bool {
        if (i + 1 == n) {
            mass[i] = left;
            return check();
        }
        for (int m = 0; m <= left; ++m) {
            mass[i] = m;
            if (rec(i + 1, left - m)) return true;
        }
        return false;
    };
    return rec(0, total);
}

inline std::vector<double> ranks_with_ties(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
    const auto ra = ranks_with_ties(a);
    const auto rb = ranks_with_ties(b);
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
    const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
    double num = 0, da = 0, db = 0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        num += (ra[i] - ma) * (rb[i] - mb);
        da += sq(ra[i] - ma);
        db += sq(rb[i] - mb);
    }
    return num / std::sqrt(da * db);
}

}  // namespace oracle
