#include "paretoflow/environments.hpp"

#include "paretoflow/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace paretoflow {

namespace {

void check_unit(double u) {
    if (!(u >= 0.0 && u <= 1.0)) throw invalid_input("objective input outside [0, 1]");
}

std::size_t saturating_mul(std::size_t a, std::size_t b) {
    if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) return std::numeric_limits<std::size_t>::max();
    return a * b;
}

std::size_t saturating_add(std::size_t a, std::size_t b) {
    return b > std::numeric_limits<std::size_t>::max() - a ? std::numeric_limits<std::size_t>::max() : a + b;
}

}  // namespace

double branin(double u1, double u2) {
    check_unit(u1);
    check_unit(u2);
    constexpr double pi = std::numbers::pi;
    const double x1 = 15.0 * u1 - 5.0;
    const double x2 = 15.0 * u2;
    const double a = 1.0, b = 5.1 / (4.0 * pi * pi), c = 5.0 / pi, r = 6.0, s = 10.0, t = 1.0 / (8.0 * pi);
    const double inner = x2 - b * x1 * x1 + c * x1 - r;
    return a * inner * inner + s * (1.0 - t) * std::cos(x1) + s;
}

double currin(double u1, double u2) {
    check_unit(u1);
    check_unit(u2);
    const double x1 = u1, x2 = u2;
    const double num = 2300.0 * x1 * x1 * x1 + 1900.0 * x1 * x1 + 2092.0 * x1 + 60.0;
    const double den = 13.77 * (100.0 * x1 * x1 * x1 + 500.0 * x1 * x1 + 4.0 * x1 + 20.0);
    return (1.0 - std::exp(-0.5 * x2)) * num / den;
}

double shubert(double u1, double u2) {
    check_unit(u1);
    check_unit(u2);
    double s1 = 0, s2 = 0;
    for (int i = 1; i <= 5; ++i) {
        s1 += i * std::cos((i + 1) * u1 + i);
        s2 += i * std::cos((i + 1) * u2 + i);
    }
    return s1 * s2 / 397.0 + 186.8 / 397.0;
}

double beale(double u1, double u2) {
    check_unit(u1);
    check_unit(u2);
    const double x1 = u1, x2 = u2;
    const double t1 = 1.5 - x1 + x1 * x2;
    const double t2 = 2.25 - x1 + x1 * x2 * x2;
    const double t3 = 2.625 - x1 + x1 * x2 * x2 * x2;
    return (t1 * t1 + t2 * t2 + t3 * t3) / 38.8;
}

double beale_printed(double u1, double u2, double u3) {
    check_unit(u1);
    check_unit(u2);
    check_unit(u3);
    const double x1 = u1, x2 = u2, x3 = u3;
    const double t1 = 1.5 - x1 + x1 * x2;
    const double t2 = 2.25 - x1 + x1 * x2 * x2;
    const double t3 = 2.625 - x1 + x1 * x3 * x3;
    return (t1 * t1 + t2 * t2 + t3 * t3) / 38.8;
}

Objective named_objective(const std::string& name) {
    auto pair = [name](double (*f)(double, double)) {
        return Objective{name, [f, name](std::span<const double> u) {
                             if (u.size() < 2) throw invalid_input(name + " needs at least two grid dimensions");
                             return f(u[0], u[1]);
                         }};
    };
    if (name == "branin") return pair(&branin);
    if (name == "currin") return pair(&currin);
    if (name == "shubert") return pair(&shubert);
    if (name == "beale") return pair(&beale);
    if (name == "beale_printed") {
        return Objective{name, [](std::span<const double> u) {
                             if (u.size() < 3) throw invalid_input("beale_printed needs three grid dimensions");
                             return beale_printed(u[0], u[1], u[2]);
                         }};
    }
    throw invalid_input("unknown objective: " + name);
}

HyperGridEnv::HyperGridEnv(std::size_t dim, std::size_t side, std::vector<Objective> objectives)
    : dim_(dim), side_(side), objectives_(std::move(objectives)) {
    if (dim_ < 1) throw invalid_input("hypergrid dimension must be at least 1");
    if (side_ < 2) throw invalid_input("hypergrid side length must be at least 2");
    if (objectives_.empty()) throw invalid_input("hypergrid needs at least one objective");
}

void HyperGridEnv::check_state(const State& s) const {
    if (s.size() != dim_) throw invalid_input("grid state has the wrong dimension");
    for (int c : s) {
        if (c < 1 || c > static_cast<int>(side_)) throw invalid_input("grid coordinate out of range");
    }
}

std::vector<std::uint8_t> HyperGridEnv::mask(const State& s) const {
    check_state(s);
    std::vector<std::uint8_t> m(dim_ + 1, 1);
    for (std::size_t i = 0; i < dim_; ++i) m[i] = s[i] < static_cast<int>(side_) ? 1 : 0;
    return m;
}

State HyperGridEnv::step(const State& s, std::size_t action) const {
    check_state(s);
    if (action >= dim_) throw invalid_input("stop or out-of-range action has no successor state");
    if (s[action] >= static_cast<int>(side_)) throw invalid_input("increment would leave the grid");
    State next = s;
    ++next[action];
    return next;
}

std::size_t HyperGridEnv::num_parents(const State& s) const {
    std::size_t n = 0;
    for (int c : s) n += c > 1 ? 1 : 0;
    return n;
}

void HyperGridEnv::encode(const State& s, std::span<double> out) const {
    if (out.size() != encoding_dim()) throw invalid_input("encoding buffer has the wrong size");
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t i = 0; i < dim_; ++i) out[i * side_ + static_cast<std::size_t>(s[i] - 1)] = 1.0;
}

std::vector<double> HyperGridEnv::unit_coordinates(const State& s) const {
    check_state(s);
    std::vector<double> u(dim_);
    for (std::size_t i = 0; i < dim_; ++i) u[i] = static_cast<double>(s[i] - 1) / static_cast<double>(side_ - 1);
    return u;
}

ObjectiveVector HyperGridEnv::objectives(const State& s) const {
    const auto u = unit_coordinates(s);
    ObjectiveVector v;
    v.reserve(objectives_.size());
    for (const auto& o : objectives_) v.push_back(o.fn(u));
    return v;
}

std::size_t HyperGridEnv::state_space_size() const {
    std::size_t n = 1;
    for (std::size_t i = 0; i < dim_; ++i) n = saturating_mul(n, side_);
    return n;
}

double HyperGridEnv::object_distance(const State& a, const State& b) const {
    return l1_distance(a, b);
}

std::string HyperGridEnv::describe(const State& s) const {
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + ")";
}

std::vector<State> HyperGridEnv::all_states() const {
    const std::size_t n = state_space_size();
    if (n > 10'000'000) throw invalid_input("grid too large to enumerate");
    std::vector<State> out;
    out.reserve(n);
    State s(dim_, 1);
    for (std::size_t k = 0; k < n; ++k) {
        out.push_back(s);
        for (std::size_t i = dim_; i-- > 0;) {
            if (++s[i] <= static_cast<int>(side_)) break;
            s[i] = 1;
        }
    }
    return out;
}

std::size_t HyperGridEnv::state_index(const State& s) const {
    check_state(s);
    std::size_t idx = 0;
    for (int c : s) idx = idx * side_ + static_cast<std::size_t>(c - 1);
    return idx;
}

PointSet hypergrid_image(const HyperGridEnv& env) {
    PointSet xs;
    for (const auto& s : env.all_states()) xs.add(env.objectives(s), static_cast<PointId>(env.state_index(s)));
    return xs;
}

PointSet hypergrid_true_front(const HyperGridEnv& env) { return front_points(hypergrid_image(env)); }

ObjectiveVector ngram_reward(const std::string& seq, const std::vector<std::string>& patterns, std::size_t max_length) {
    ObjectiveVector v;
    v.reserve(patterns.size());
    for (const auto& p : patterns) {
        if (p.empty() || p.size() > max_length) throw invalid_input("pattern length must be in [1, L]");
        std::size_t count = 0;
        for (std::size_t i = 0; i + p.size() <= seq.size(); ++i) {
            if (seq.compare(i, p.size(), p) == 0) ++count;
        }
        v.push_back(static_cast<double>(count) / static_cast<double>(max_length - p.size() + 1));
    }
    return v;
}

NGramEnv::NGramEnv(std::size_t max_length, std::vector<std::string> patterns, std::size_t vocab_size)
    : max_length_(max_length), patterns_(std::move(patterns)), vocab_(vocab_size) {
    if (max_length_ < 1) throw invalid_input("maximum length must be at least 1");
    if (vocab_ < 1 || vocab_ > 26) throw invalid_input("vocabulary size must be in [1, 26]");
    if (patterns_.empty()) throw invalid_input("n-gram environment needs at least one pattern");
    for (const auto& p : patterns_) {
        if (p.empty() || p.size() > max_length_) throw invalid_input("pattern length must be in [1, L]");
        for (char c : p) {
            if (c < 'A' || c >= static_cast<char>('A' + vocab_)) throw invalid_input("pattern uses a letter outside the vocabulary");
        }
    }
}

std::vector<std::uint8_t> NGramEnv::mask(const State& s) const {
    if (s.size() > max_length_) throw invalid_input("sequence longer than the maximum length");
    std::vector<std::uint8_t> m(vocab_ + 1, s.size() < max_length_ ? 1 : 0);
    m[vocab_] = s.empty() ? 0 : 1;
    return m;
}

State NGramEnv::step(const State& s, std::size_t action) const {
    if (action >= vocab_) throw invalid_input("stop or out-of-range action has no successor state");
    if (s.size() >= max_length_) throw invalid_input("sequence already at maximum length");
    State next = s;
    next.push_back(static_cast<int>(action));
    return next;
}

void NGramEnv::encode(const State& s, std::span<double> out) const {
    if (out.size() != encoding_dim()) throw invalid_input("encoding buffer has the wrong size");
    std::fill(out.begin(), out.end(), 0.0);
    const std::size_t width = vocab_ + 1;
    for (std::size_t i = 0; i < max_length_; ++i) {
        const std::size_t token = i < s.size() ? static_cast<std::size_t>(s[i]) : vocab_;
        out[i * width + token] = 1.0;
    }
    out.back() = static_cast<double>(s.size()) / static_cast<double>(max_length_);
}

ObjectiveVector NGramEnv::objectives(const State& s) const { return ngram_reward(to_string(s), patterns_, max_length_); }

std::size_t NGramEnv::state_space_size() const {
    std::size_t total = 0, level = 1;
    for (std::size_t k = 0; k <= max_length_; ++k) {
        total = saturating_add(total, level);
        level = saturating_mul(level, vocab_);
    }
    return total;
}

double NGramEnv::object_distance(const State& a, const State& b) const {
    return static_cast<double>(edit_distance(a, b));
}

std::string NGramEnv::to_string(const State& s) const {
    std::string out;
    out.reserve(s.size());
    for (int c : s) out.push_back(static_cast<char>('A' + c));
    return out;
}

State NGramEnv::from_string(const std::string& text) const {
    State s;
    for (char c : text) {
        if (c < 'A' || c >= static_cast<char>('A' + vocab_)) throw invalid_input("character outside the vocabulary");
        s.push_back(c - 'A');
    }
    return s;
}

std::vector<std::string> ngram_patterns(std::size_t count, bool bigrams) {
    static const std::vector<std::string> uni = {"A", "C", "V", "W"};
    static const std::vector<std::string> bi = {"AC", "CV", "VA", "AW"};
    if (count < 2 || count > 4) throw invalid_input("n-gram tasks use 2 to 4 objectives");
    const auto& src = bigrams ? bi : uni;
    return {src.begin(), src.begin() + static_cast<std::ptrdiff_t>(count)};
}

}  // namespace paretoflow
