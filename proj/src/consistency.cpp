#include "paretoflow/consistency.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>

namespace paretoflow {

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[b] = a;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

// A subset resolved to positions, with its own front.
struct ResolvedSubset {
    std::vector<std::size_t> positions;
    std::vector<bool> local_front;
    bool active = false;
};

std::vector<ResolvedSubset> resolve(const DilemmaInstance& inst, const std::vector<bool>& global_front,
                                    bool include_full_set) {
    std::vector<std::vector<std::size_t>> family;
    for (const auto& subset : inst.subsets) {
        if (subset.empty()) throw invalid_input("subsets must be non-empty");
        std::vector<std::size_t> pos;
        for (PointId id : subset) {
            const std::size_t i = inst.points.index_of(id);
            if (i == PointSet::npos) throw invalid_input("subset refers to unknown point id " + std::to_string(id));
            if (std::find(pos.begin(), pos.end(), i) == pos.end()) pos.push_back(i);
        }
        family.push_back(std::move(pos));
    }
    if (include_full_set) {
        std::vector<std::size_t> all(inst.points.size());
        std::iota(all.begin(), all.end(), 0);
        family.push_back(std::move(all));
    }

    std::vector<ResolvedSubset> out;
    for (auto& pos : family) {
        ResolvedSubset r;
        std::vector<ObjectiveVector> pts;
        for (std::size_t i : pos) {
            pts.push_back(inst.points.point(i));
            r.active = r.active || global_front[i];
        }
        r.local_front = nondominated_mask(pts);
        r.positions = std::move(pos);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

ConsistencyVerdict check_consistency(const DilemmaInstance& inst, bool include_full_set) {
    if (inst.points.empty()) throw invalid_input("consistency check needs at least one point");
    const std::size_t n = inst.points.size();
    const auto global_front = nondominated_mask(inst.points.points());
    const auto family = resolve(inst, global_front, include_full_set);

    struct Edge {
        std::size_t to;
        std::size_t subset;
    };
    UnionFind uf(n);
    std::vector<std::vector<Edge>> tree(n);
    std::vector<std::optional<std::size_t>> zero_source(n);

    for (std::size_t k = 0; k < family.size(); ++k) {
        const auto& sub = family[k];
        if (!sub.active) continue;
        std::optional<std::size_t> anchor;
        for (std::size_t j = 0; j < sub.positions.size(); ++j) {
            const std::size_t p = sub.positions[j];
            if (!sub.local_front[j]) {
                if (!zero_source[p]) zero_source[p] = k;
                continue;
            }
            if (!anchor) {
                anchor = p;
            } else if (uf.unite(*anchor, p)) {
                tree[*anchor].push_back({p, k});
                tree[p].push_back({*anchor, k});
            }
        }
    }

    // First zero-forced member of every class, in position order.
    std::vector<std::optional<std::size_t>> class_zero(n);
    for (std::size_t p = 0; p < n; ++p) {
        if (zero_source[p] && !class_zero[uf.find(p)]) class_zero[uf.find(p)] = p;
    }

    ConsistencyVerdict verdict;
    for (std::size_t g = 0; g < n; ++g) {
        if (!global_front[g] || !class_zero[uf.find(g)]) continue;

        const std::size_t z = *class_zero[uf.find(g)];
        std::vector<std::optional<std::pair<std::size_t, std::size_t>>> via(n);  // (parent, subset)
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> order;
        std::deque<std::size_t> queue{z};
        seen[z] = true;
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            order.push_back(u);
            for (const auto& e : tree[u]) {
                if (seen[e.to]) continue;
                seen[e.to] = true;
                via[e.to] = std::make_pair(u, e.subset);
                queue.push_back(e.to);
            }
        }

        std::vector<bool> needed(n, false);
        for (std::size_t v : order) {
            if (!global_front[v]) continue;
            for (std::size_t w = v; via[w] && !needed[w]; w = via[w]->first) needed[w] = true;
        }

        auto id = [&](std::size_t p) { return inst.points.id(p); };
        verdict.contradiction.push_back({ChainLink::Kind::ZeroForced, id(z), id(z), zero_source[z]});
        for (std::size_t v : order) {
            if (needed[v]) verdict.contradiction.push_back({ChainLink::Kind::Equal, id(via[v]->first), id(v), via[v]->second});
        }
        for (std::size_t v : order) {
            if (global_front[v]) verdict.contradiction.push_back({ChainLink::Kind::RequiredPositive, id(v), id(v), std::nullopt});
        }
        return verdict;
    }

    std::vector<bool> positive_class(n, false);
    for (std::size_t g = 0; g < n; ++g) {
        if (global_front[g]) positive_class[uf.find(g)] = true;
    }
    std::size_t count = 0;
    for (std::size_t p = 0; p < n; ++p) count += positive_class[uf.find(p)] ? 1 : 0;
    verdict.feasible = true;
    for (std::size_t p = 0; p < n; ++p) {
        verdict.witness[inst.points.id(p)] = positive_class[uf.find(p)] ? 1.0 / static_cast<double>(count) : 0.0;
    }
    return verdict;
}

bool verify_chain(const DilemmaInstance& inst, const std::vector<ChainLink>& chain, bool include_full_set) {
    if (chain.empty() || chain.front().kind != ChainLink::Kind::ZeroForced) return false;
    const auto global_front = nondominated_mask(inst.points.points());
    const auto family = resolve(inst, global_front, include_full_set);

    auto local_status = [&](const ChainLink& link, PointId id) -> std::optional<bool> {
        if (!link.subset || *link.subset >= family.size()) return std::nullopt;
        const auto& sub = family[*link.subset];
        if (!sub.active) return std::nullopt;
        const std::size_t p = inst.points.index_of(id);
        for (std::size_t j = 0; j < sub.positions.size(); ++j) {
            if (sub.positions[j] == p) return sub.local_front[j];
        }
        return std::nullopt;
    };

    std::map<PointId, std::vector<PointId>> graph;
    std::vector<PointId> positives;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const auto& link = chain[i];
        switch (link.kind) {
            case ChainLink::Kind::ZeroForced: {
                if (i != 0) return false;
                const auto s = local_status(link, link.a);
                if (!s || *s) return false;
                break;
            }
            case ChainLink::Kind::Equal: {
                const auto sa = local_status(link, link.a);
                const auto sb = local_status(link, link.b);
                if (!sa || !sb || !*sa || !*sb) return false;
                graph[link.a].push_back(link.b);
                graph[link.b].push_back(link.a);
                break;
            }
            case ChainLink::Kind::RequiredPositive: {
                const std::size_t p = inst.points.index_of(link.a);
                if (p == PointSet::npos || !global_front[p]) return false;
                positives.push_back(link.a);
                break;
            }
        }
    }
    if (positives.empty()) return false;

    std::set<PointId> reached{chain.front().a};
    std::deque<PointId> queue{chain.front().a};
    while (!queue.empty()) {
        const PointId u = queue.front();
        queue.pop_front();
        for (PointId v : graph[u]) {
            if (reached.insert(v).second) queue.push_back(v);
        }
    }
    return std::all_of(positives.begin(), positives.end(), [&](PointId id) { return reached.count(id) > 0; });
}

namespace {

void for_each_combination(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

std::vector<DilemmaInstance> enumerate_dilemmas(const PointSet& points, std::size_t subset_size, std::size_t limit) {
    if (subset_size == 0) throw invalid_input("subset size must be positive");
    std::vector<std::vector<PointId>> subsets;
    for_each_combination(points.size(), subset_size, [&](const std::vector<std::size_t>& c) {
        std::vector<PointId> ids;
        for (std::size_t p : c) ids.push_back(points.id(p));
        subsets.push_back(std::move(ids));
    });

    auto feasible = [&](const std::vector<std::size_t>& family) {
        DilemmaInstance inst{points, {}};
        for (std::size_t f : family) inst.subsets.push_back(subsets[f]);
        return check_consistency(inst).feasible;
    };

    std::vector<DilemmaInstance> out;
    for (std::size_t size = 1; size <= std::min(limit, subsets.size()); ++size) {
        for_each_combination(subsets.size(), size, [&](const std::vector<std::size_t>& family) {
            if (feasible(family)) return;
            for (std::size_t drop = 0; drop < family.size(); ++drop) {
                auto rest = family;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(drop));
                if (!feasible(rest)) return;
            }
            DilemmaInstance inst{points, {}};
            for (std::size_t f : family) inst.subsets.push_back(subsets[f]);
            out.push_back(std::move(inst));
        });
    }
    return out;
}

std::string describe(const ChainLink& link) {
    const std::string src = link.subset ? " [subset " + std::to_string(*link.subset) + "]" : " [global Pareto set]";
    switch (link.kind) {
        case ChainLink::Kind::ZeroForced: return "P(" + std::to_string(link.a) + ") = 0" + src;
        case ChainLink::Kind::Equal:
            return "P(" + std::to_string(link.a) + ") = P(" + std::to_string(link.b) + ")" + src;
        case ChainLink::Kind::RequiredPositive: return "P(" + std::to_string(link.a) + ") > 0" + src;
    }
    return {};
}

nlohmann::json to_json(const ConsistencyVerdict& v) {
    nlohmann::json j;
    j["feasible"] = v.feasible;
    if (v.feasible) {
        nlohmann::json w = nlohmann::json::object();
        for (const auto& [id, p] : v.witness) w[std::to_string(id)] = p;
        j["witness"] = w;
    } else {
        j["contradiction"] = nlohmann::json::array();
        for (const auto& link : v.contradiction) {
            static const char* kinds[] = {"zero", "equal", "positive"};
            nlohmann::json l = {{"kind", kinds[static_cast<int>(link.kind)]}, {"a", link.a}, {"b", link.b}};
            l["subset"] = link.subset ? nlohmann::json(*link.subset) : nlohmann::json(nullptr);
            l["text"] = describe(link);
            j["contradiction"].push_back(l);
        }
    }
    return j;
}

std::vector<std::vector<PointId>> read_subsets_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read subsets file " + path);
    return nlohmann::json::parse(in).get<std::vector<std::vector<PointId>>>();
}

}  // namespace paretoflow
