#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "paretoflow/pareto.hpp"

namespace paretoflow {

/// Grid coordinates (HyperGrid) or character indices (N-grams).
using State = std::vector<int>;

/// A sequential construction environment. Every non-stop action moves one
/// level deeper in the state DAG; the stop action terminates at the current
/// state.
class Environment {
public:
    virtual ~Environment() = default;

    virtual std::string name() const = 0;
    virtual std::size_t num_actions() const = 0;
    std::size_t stop_action() const { return num_actions() - 1; }
    virtual State initial_state() const = 0;
    virtual std::vector<std::uint8_t> mask(const State& s) const = 0;
    virtual State step(const State& s, std::size_t action) const = 0;

    /// Number of distinct parents of a non-terminal state.
    virtual std::size_t num_parents(const State& s) const = 0;

    virtual std::size_t encoding_dim() const = 0;
    virtual void encode(const State& s, std::span<double> out) const = 0;

    virtual std::size_t num_objectives() const = 0;
    virtual ObjectiveVector objectives(const State& s) const = 0;

    /// Number of states, saturating at SIZE_MAX.
    virtual std::size_t state_space_size() const = 0;

    /// Distance between two terminal objects, used by top-k diversity.
    virtual double object_distance(const State& a, const State& b) const = 0;

    virtual std::string describe(const State& s) const = 0;
};

/// A named scalar objective on the unit cube.
struct Objective {
    std::string name;
    std::function<double(std::span<const double>)> fn;
};

double branin(double u1, double u2);
double currin(double u1, double u2);
double shubert(double u1, double u2);
/// Classical third term (2.625 - x1 + x1 x2^3)^2.
double beale(double u1, double u2);
/// Third term as printed: (2.625 - x1 + x1 x3^2)^2.
double beale_printed(double u1, double u2, double u3);

/// branin, currin, shubert, beale, beale_printed. The two-input functions
/// read the first two unit coordinates.
Objective named_objective(const std::string& name);

class HyperGridEnv final : public Environment {
public:
    HyperGridEnv(std::size_t dim, std::size_t side, std::vector<Objective> objectives);

    std::string name() const override { return "hypergrid"; }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t side() const noexcept { return side_; }
    const std::vector<Objective>& objective_list() const noexcept { return objectives_; }

    std::size_t num_actions() const override { return dim_ + 1; }
    State initial_state() const override { return State(dim_, 1); }
    std::vector<std::uint8_t> mask(const State& s) const override;
    State step(const State& s, std::size_t action) const override;
    std::size_t num_parents(const State& s) const override;
    std::size_t encoding_dim() const override { return dim_ * side_; }
    void encode(const State& s, std::span<double> out) const override;
    std::size_t num_objectives() const override { return objectives_.size(); }
    ObjectiveVector objectives(const State& s) const override;
    std::size_t state_space_size() const override;
    double object_distance(const State& a, const State& b) const override;
    std::string describe(const State& s) const override;

    /// u_i = (s_i - 1) / (H - 1).
    std::vector<double> unit_coordinates(const State& s) const;

    /// Every grid state in lexicographic order.
    std::vector<State> all_states() const;
    std::size_t state_index(const State& s) const;

private:
    void check_state(const State& s) const;

    std::size_t dim_;
    std::size_t side_;
    std::vector<Objective> objectives_;
};

/// Objective vectors of the Pareto front of the full grid image; ids are the
/// lexicographic state indices.
PointSet hypergrid_true_front(const HyperGridEnv& env);

/// Objective image of every grid state, ids = state index.
PointSet hypergrid_image(const HyperGridEnv& env);

/// Overlapping occurrence counts of each pattern divided by the most
/// occurrences possible at max_length, L - |pattern| + 1.
ObjectiveVector ngram_reward(const std::string& seq, const std::vector<std::string>& patterns, std::size_t max_length);

class NGramEnv final : public Environment {
public:
    /// Uppercase vocabulary 'A'.. of the given size.
    NGramEnv(std::size_t max_length, std::vector<std::string> patterns, std::size_t vocab_size = 26);

    std::string name() const override { return "ngrams"; }
    std::size_t max_length() const noexcept { return max_length_; }
    std::size_t vocab_size() const noexcept { return vocab_; }
    const std::vector<std::string>& patterns() const noexcept { return patterns_; }

    std::size_t num_actions() const override { return vocab_ + 1; }
    State initial_state() const override { return {}; }
    std::vector<std::uint8_t> mask(const State& s) const override;
    State step(const State& s, std::size_t action) const override;
    std::size_t num_parents(const State& s) const override { return s.empty() ? 0 : 1; }
    std::size_t encoding_dim() const override { return max_length_ * (vocab_ + 1) + 1; }
    void encode(const State& s, std::span<double> out) const override;
    std::size_t num_objectives() const override { return patterns_.size(); }
    ObjectiveVector objectives(const State& s) const override;
    std::size_t state_space_size() const override;
    double object_distance(const State& a, const State& b) const override;
    std::string describe(const State& s) const override { return to_string(s); }

    std::string to_string(const State& s) const;
    State from_string(const std::string& text) const;

private:
    std::size_t max_length_;
    std::vector<std::string> patterns_;
    std::size_t vocab_;
};

/// Patterns for 2..4 unigram or bigram objectives.
std::vector<std::string> ngram_patterns(std::size_t count, bool bigrams);

}  // namespace paretoflow
