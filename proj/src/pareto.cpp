#include "paretoflow/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace paretoflow {

void validate_objective(std::span<const double> v) {
    if (v.empty()) throw invalid_input("objective vector must have at least one entry");
    for (double x : v) {
        if (!std::isfinite(x)) throw invalid_input("objective vector contains a non-finite entry");
    }
}

PointSet::PointSet(std::vector<ObjectiveVector> points) {
    for (auto& p : points) add(std::move(p));
}

PointSet::PointSet(std::vector<ObjectiveVector> points, std::vector<PointId> ids) {
    if (points.size() != ids.size()) throw invalid_input("points and ids differ in length");
    for (std::size_t i = 0; i < points.size(); ++i) add(std::move(points[i]), ids[i]);
}

void PointSet::add(ObjectiveVector point, PointId id) {
    validate_objective(point);
    if (!points_.empty() && point.size() != dim_) throw invalid_input("point dimension mismatch");
    if (index_of(id) != npos) throw invalid_input("duplicate point id " + std::to_string(id));
    dim_ = point.size();
    index_.emplace(id, points_.size());
    next_id_ = std::max(next_id_, id + 1);
    points_.push_back(std::move(point));
    ids_.push_back(id);
}

void PointSet::add(ObjectiveVector point) {
    add(std::move(point), next_id_);
}

std::size_t PointSet::index_of(PointId id) const {
    auto it = index_.find(id);
    return it == index_.end() ? npos : it->second;
}

PointSet PointSet::select(std::span<const std::size_t> positions) const {
    PointSet out;
    out.points_.reserve(positions.size());
    out.ids_.reserve(positions.size());
    for (std::size_t p : positions) {
        out.index_.emplace(ids_.at(p), out.points_.size());
        out.next_id_ = std::max(out.next_id_, ids_[p] + 1);
        out.points_.push_back(points_[p]);
        out.ids_.push_back(ids_[p]);
    }
    out.dim_ = dim_;
    return out;
}

bool dominates(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw invalid_input("dominance test on vectors of different dimension");
    bool strictly = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return false;
        if (a[i] > b[i]) strictly = true;
    }
    return strictly;
}

std::vector<bool> nondominated_mask(const std::vector<ObjectiveVector>& points) {
    const std::size_t n = points.size();
    std::vector<bool> keep(n, true);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && dominates(points[j], points[i])) {
                keep[i] = false;
                break;
            }
        }
    }
    return keep;
}

std::vector<std::size_t> layer_indices(const std::vector<ObjectiveVector>& points,
                                       std::optional<std::size_t> max_layers) {
    if (max_layers && *max_layers == 0) throw invalid_input("max_layers must be at least 1");
    const std::size_t n = points.size();
    std::vector<std::size_t> layer(n, 0);
    std::vector<std::size_t> remaining(n);
    for (std::size_t i = 0; i < n; ++i) remaining[i] = i;

    std::size_t current = 0;
    while (!remaining.empty()) {
        if (max_layers && current == *max_layers) {
            for (std::size_t i : remaining) layer[i] = current;
            break;
        }
        std::vector<std::size_t> next;
        std::vector<std::size_t> peeled;
        for (std::size_t i : remaining) {
            bool dominated = false;
            for (std::size_t j : remaining) {
                if (i != j && dominates(points[j], points[i])) {
                    dominated = true;
                    break;
                }
            }
            (dominated ? next : peeled).push_back(i);
        }
        for (std::size_t i : peeled) layer[i] = current;
        remaining = std::move(next);
        ++current;
    }
    return layer;
}

FrontResult pareto_front(const PointSet& xs) {
    if (xs.empty()) throw invalid_input("pareto_front of an empty set");
    const auto keep = nondominated_mask(xs.points());
    FrontResult out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        (keep[i] ? out.front : out.dominated).push_back(xs.id(i));
    }
    return out;
}

std::vector<FrontLayer> nondominated_sort(const PointSet& xs, std::optional<std::size_t> max_fronts) {
    if (xs.empty()) throw invalid_input("nondominated_sort of an empty set");
    if (max_fronts && *max_fronts == 0) throw invalid_input("max_fronts must be at least 1");
    const auto layer = layer_indices(xs.points(), max_fronts);
    std::size_t count = 0;
    for (std::size_t l : layer) count = std::max(count, l + 1);

    std::vector<FrontLayer> layers(count);
    for (std::size_t i = 0; i < xs.size(); ++i) layers[layer[i]].ids.push_back(xs.id(i));
    if (max_fronts && count > *max_fronts) layers.back().trimmed = true;
    return layers;
}

PointSet front_points(const PointSet& xs) {
    if (xs.empty()) return {};
    const auto keep = nondominated_mask(xs.points());
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (keep[i]) positions.push_back(i);
    }
    return xs.select(positions);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

bool parse_double(const std::string& text, double& out) {
    std::size_t used = 0;
    try {
        out = std::stod(text, &used);
    } catch (const std::exception&) {
        return false;
    }
    while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
    return used == text.size();
}

}  // namespace

PointSet read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open points file: " + path);
    PointSet xs;
    std::string line;
    std::size_t row = 0;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        auto cells = split_csv_line(line);
        ObjectiveVector v;
        bool numeric = true;
        for (const auto& c : cells) {
            double x = 0;
            if (!parse_double(c, x)) {
                numeric = false;
                break;
            }
            v.push_back(x);
        }
        if (!numeric) {
            if (first) {
                first = false;
                continue;  // header
            }
            throw invalid_input("non-numeric value in " + path + " row " + std::to_string(row + 1));
        }
        first = false;
        xs.add(std::move(v), static_cast<PointId>(row++));
    }
    return xs;
}

void write_points_csv(const std::string& path, const PointSet& xs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write points file: " + path);
    out.precision(17);
    for (const auto& p : xs.points()) {
        for (std::size_t j = 0; j < p.size(); ++j) out << (j ? "," : "") << p[j];
        out << '\n';
    }
}

}  // namespace paretoflow
