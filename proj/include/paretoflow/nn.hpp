#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace paretoflow::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Activation { LeakyReLU, Identity };

inline constexpr double kLeakySlope = 0.01;

struct DenseLayer {
    Matrix weight;  // out x in
    Vector bias;    // out
};

/// Activations kept by a forward pass for the backward pass. Row r of every
/// matrix belongs to batch row r.
struct ForwardCache {
    std::vector<Matrix> inputs;
    std::vector<Matrix> preactivations;
};

/// Gradient accumulators shaped like a DenseNet.
struct GradTape {
    std::vector<Matrix> weight;
    std::vector<Vector> bias;

    void zero();
    GradTape& operator+=(const GradTape& other);
    double squared_norm() const;
};

/// Fully connected network. Hidden layers use the activation; the final layer
/// produces raw logits.
class DenseNet {
public:
    DenseNet() = default;
    DenseNet(std::vector<DenseLayer> layers, Activation activation, double slope = kLeakySlope);

    /// Layer sizes {in, h1, ..., out}, weights and biases drawn uniformly
    /// from [-1/sqrt(fan_in), 1/sqrt(fan_in)].
    static DenseNet make(const std::vector<std::size_t>& sizes, std::mt19937_64& rng,
                         Activation activation = Activation::LeakyReLU, double slope = kLeakySlope);

    std::size_t input_dim() const;
    std::size_t output_dim() const;
    std::size_t num_parameters() const;
    const std::vector<DenseLayer>& layers() const noexcept { return layers_; }
    std::vector<DenseLayer>& layers() noexcept { return layers_; }
    Activation activation() const noexcept { return activation_; }
    double slope() const noexcept { return slope_; }

    /// Batched forward pass; x is batch x input_dim. The cache is filled when
    /// given.
    Matrix forward(const Matrix& x, ForwardCache* cache = nullptr) const;
    Vector forward(const Vector& x) const;

    /// Parameter gradients of a scalar loss given dLoss/dLogits (batch x out).
    GradTape backward(const ForwardCache& cache, const Matrix& grad_logits) const;

    GradTape zero_tape() const;

    nlohmann::json to_json() const;
    static DenseNet from_json(const nlohmann::json& j);
    void save(const std::string& path) const;
    static DenseNet load(const std::string& path);

    /// Flat parameter access, layer by layer, weights (row-major) then bias.
    std::vector<double> flat_parameters() const;
    void set_flat_parameters(std::span<const double> values);
    static std::vector<double> flatten(const GradTape& tape);

private:
    std::vector<DenseLayer> layers_;
    Activation activation_ = Activation::LeakyReLU;
    double slope_ = kLeakySlope;
};

struct AdamConfig {
    double learning_rate = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// Adam moments for a DenseNet.
struct OptimizerState {
    AdamConfig config;
    GradTape first;
    GradTape second;
    std::uint64_t step = 0;

    OptimizerState() = default;
    OptimizerState(const DenseNet& net, AdamConfig cfg);
};

void adam_step(DenseNet& net, const GradTape& tape, OptimizerState& opt);

/// Adam for one standalone scalar parameter.
struct ScalarAdam {
    AdamConfig config;
    double first = 0;
    double second = 0;
    std::uint64_t step = 0;

    void apply(double& param, double grad);
};

/// Log-probabilities over unmasked entries; masked entries are -inf.
std::vector<double> log_softmax(std::span<const double> logits, std::span<const std::uint8_t> mask);

}  // namespace paretoflow::nn
