#include "paretoflow/nn.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace paretoflow::nn {

void GradTape::zero() {
    for (auto& w : weight) w.setZero();
    for (auto& b : bias) b.setZero();
}

GradTape& GradTape::operator+=(const GradTape& other) {
    if (other.weight.size() != weight.size()) throw std::invalid_argument("gradient tape shape mismatch");
    for (std::size_t i = 0; i < weight.size(); ++i) {
        weight[i] += other.weight[i];
        bias[i] += other.bias[i];
    }
    return *this;
}

double GradTape::squared_norm() const {
    double acc = 0;
    for (const auto& w : weight) acc += w.squaredNorm();
    for (const auto& b : bias) acc += b.squaredNorm();
    return acc;
}

DenseNet::DenseNet(std::vector<DenseLayer> layers, Activation activation, double slope)
    : layers_(std::move(layers)), activation_(activation), slope_(slope) {
    if (layers_.empty()) throw std::invalid_argument("a network needs at least one layer");
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        const auto& l = layers_[i];
        if (l.bias.size() != l.weight.rows()) throw std::invalid_argument("bias does not match weight rows");
        if (i > 0 && l.weight.cols() != layers_[i - 1].weight.rows()) {
            throw std::invalid_argument("consecutive layer shapes do not compose");
        }
        if (!l.weight.allFinite() || !l.bias.allFinite()) throw std::invalid_argument("non-finite parameter");
    }
}

DenseNet DenseNet::make(const std::vector<std::size_t>& sizes, std::mt19937_64& rng, Activation activation,
                        double slope) {
    if (sizes.size() < 2) throw std::invalid_argument("need at least input and output sizes");
    std::vector<DenseLayer> layers;
    for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
        const auto fan_in = static_cast<Eigen::Index>(sizes[i]);
        const auto fan_out = static_cast<Eigen::Index>(sizes[i + 1]);
        const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        std::uniform_real_distribution<double> u(-bound, bound);
        DenseLayer l{Matrix(fan_out, fan_in), Vector(fan_out)};
        for (Eigen::Index r = 0; r < fan_out; ++r) {
            for (Eigen::Index c = 0; c < fan_in; ++c) l.weight(r, c) = u(rng);
        }
        for (Eigen::Index r = 0; r < fan_out; ++r) l.bias(r) = u(rng);
        layers.push_back(std::move(l));
    }
    return DenseNet(std::move(layers), activation, slope);
}

std::size_t DenseNet::input_dim() const { return static_cast<std::size_t>(layers_.front().weight.cols()); }
std::size_t DenseNet::output_dim() const { return static_cast<std::size_t>(layers_.back().weight.rows()); }

std::size_t DenseNet::num_parameters() const {
    std::size_t n = 0;
    for (const auto& l : layers_) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
    return n;
}

Matrix DenseNet::forward(const Matrix& x, ForwardCache* cache) const {
    if (static_cast<std::size_t>(x.cols()) != input_dim()) throw std::invalid_argument("input width mismatch");
    if (cache) {
        cache->inputs.clear();
        cache->preactivations.clear();
    }
    Matrix h = x;
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        const auto& l = layers_[i];
        Matrix z = h * l.weight.transpose();
        z.rowwise() += l.bias.transpose();
        if (cache) {
            cache->inputs.push_back(std::move(h));
            cache->preactivations.push_back(z);
        }
        const bool last = i + 1 == layers_.size();
        if (!last && activation_ == Activation::LeakyReLU) {
            const double s = slope_;
            z = z.unaryExpr([s](double v) { return v > 0 ? v : s * v; });
        }
        h = std::move(z);
    }
    return h;
}

Vector DenseNet::forward(const Vector& x) const {
    Matrix row = x.transpose();
    return forward(row).row(0).transpose();
}

GradTape DenseNet::zero_tape() const {
    GradTape t;
    for (const auto& l : layers_) {
        t.weight.push_back(Matrix::Zero(l.weight.rows(), l.weight.cols()));
        t.bias.push_back(Vector::Zero(l.bias.size()));
    }
    return t;
}

GradTape DenseNet::backward(const ForwardCache& cache, const Matrix& grad_logits) const {
    if (cache.inputs.size() != layers_.size()) throw std::invalid_argument("forward cache does not match network");
    GradTape tape = zero_tape();
    Matrix g = grad_logits;
    for (std::size_t k = layers_.size(); k-- > 0;) {
        const bool last = k + 1 == layers_.size();
        if (!last && activation_ == Activation::LeakyReLU) {
            const auto& z = cache.preactivations[k];
            g = g.cwiseProduct(z.unaryExpr([s = slope_](double v) { return v > 0 ? 1.0 : s; }));
        }
        tape.weight[k] = g.transpose() * cache.inputs[k];
        tape.bias[k] = g.colwise().sum().transpose();
        if (k > 0) g = g * layers_[k].weight;
    }
    return tape;
}

nlohmann::json DenseNet::to_json() const {
    nlohmann::json j;
    j["activation"] = activation_ == Activation::LeakyReLU ? "leaky_relu" : "identity";
    j["slope"] = slope_;
    j["layers"] = nlohmann::json::array();
    for (const auto& l : layers_) {
        std::vector<double> w;
        w.reserve(static_cast<std::size_t>(l.weight.size()));
        for (Eigen::Index r = 0; r < l.weight.rows(); ++r) {
            for (Eigen::Index c = 0; c < l.weight.cols(); ++c) w.push_back(l.weight(r, c));
        }
        std::vector<double> b(l.bias.data(), l.bias.data() + l.bias.size());
        j["layers"].push_back({{"rows", l.weight.rows()}, {"cols", l.weight.cols()}, {"weight", w}, {"bias", b}});
    }
    return j;
}

DenseNet DenseNet::from_json(const nlohmann::json& j) {
    const auto act = j.at("activation").get<std::string>();
    if (act != "leaky_relu" && act != "identity") throw std::invalid_argument("unknown activation " + act);
    std::vector<DenseLayer> layers;
    for (const auto& lj : j.at("layers")) {
        const auto rows = lj.at("rows").get<Eigen::Index>();
        const auto cols = lj.at("cols").get<Eigen::Index>();
        const auto w = lj.at("weight").get<std::vector<double>>();
        const auto b = lj.at("bias").get<std::vector<double>>();
        if (static_cast<Eigen::Index>(w.size()) != rows * cols || static_cast<Eigen::Index>(b.size()) != rows) {
            throw std::invalid_argument("checkpoint tensor has the wrong size");
        }
        DenseLayer l{Matrix(rows, cols), Vector(rows)};
        for (Eigen::Index r = 0; r < rows; ++r) {
            for (Eigen::Index c = 0; c < cols; ++c) l.weight(r, c) = w[static_cast<std::size_t>(r * cols + c)];
            l.bias(r) = b[static_cast<std::size_t>(r)];
        }
        layers.push_back(std::move(l));
    }
    return DenseNet(std::move(layers), act == "leaky_relu" ? Activation::LeakyReLU : Activation::Identity,
                    j.at("slope").get<double>());
}

void DenseNet::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write checkpoint " + path);
    out << to_json().dump();
}

DenseNet DenseNet::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read checkpoint " + path);
    return from_json(nlohmann::json::parse(in));
}

std::vector<double> DenseNet::flat_parameters() const {
    std::vector<double> out;
    out.reserve(num_parameters());
    for (const auto& l : layers_) {
        for (Eigen::Index r = 0; r < l.weight.rows(); ++r) {
            for (Eigen::Index c = 0; c < l.weight.cols(); ++c) out.push_back(l.weight(r, c));
        }
        for (Eigen::Index r = 0; r < l.bias.size(); ++r) out.push_back(l.bias(r));
    }
    return out;
}

void DenseNet::set_flat_parameters(std::span<const double> values) {
    if (values.size() != num_parameters()) throw std::invalid_argument("flat parameter count mismatch");
    std::size_t k = 0;
    for (auto& l : layers_) {
        for (Eigen::Index r = 0; r < l.weight.rows(); ++r) {
            for (Eigen::Index c = 0; c < l.weight.cols(); ++c) l.weight(r, c) = values[k++];
        }
        for (Eigen::Index r = 0; r < l.bias.size(); ++r) l.bias(r) = values[k++];
    }
}

std::vector<double> DenseNet::flatten(const GradTape& tape) {
    std::vector<double> out;
    for (std::size_t i = 0; i < tape.weight.size(); ++i) {
        const auto& w = tape.weight[i];
        for (Eigen::Index r = 0; r < w.rows(); ++r) {
            for (Eigen::Index c = 0; c < w.cols(); ++c) out.push_back(w(r, c));
        }
        for (Eigen::Index r = 0; r < tape.bias[i].size(); ++r) out.push_back(tape.bias[i](r));
    }
    return out;
}

OptimizerState::OptimizerState(const DenseNet& net, AdamConfig cfg)
    : config(cfg), first(net.zero_tape()), second(net.zero_tape()) {}

void adam_step(DenseNet& net, const GradTape& tape, OptimizerState& opt) {
    if (tape.weight.size() != net.layers().size()) throw std::invalid_argument("gradient tape shape mismatch");
    const auto& c = opt.config;
    ++opt.step;
    const double t = static_cast<double>(opt.step);
    const double correct1 = 1.0 - std::pow(c.beta1, t);
    const double correct2 = 1.0 - std::pow(c.beta2, t);
    auto update = [&](auto& param, const auto& grad, auto& m, auto& v) {
        m = c.beta1 * m + (1.0 - c.beta1) * grad;
        v = c.beta2 * v + (1.0 - c.beta2) * grad.cwiseProduct(grad);
        param.array() -= c.learning_rate * (m.array() / correct1) / ((v.array() / correct2).sqrt() + c.epsilon);
    };
    for (std::size_t i = 0; i < net.layers().size(); ++i) {
        auto& l = net.layers()[i];
        update(l.weight, tape.weight[i], opt.first.weight[i], opt.second.weight[i]);
        update(l.bias, tape.bias[i], opt.first.bias[i], opt.second.bias[i]);
    }
}

void ScalarAdam::apply(double& param, double grad) {
    ++step;
    const double t = static_cast<double>(step);
    first = config.beta1 * first + (1.0 - config.beta1) * grad;
    second = config.beta2 * second + (1.0 - config.beta2) * grad * grad;
    const double mhat = first / (1.0 - std::pow(config.beta1, t));
    const double vhat = second / (1.0 - std::pow(config.beta2, t));
    param -= config.learning_rate * mhat / (std::sqrt(vhat) + config.epsilon);
}

std::vector<double> log_softmax(std::span<const double> logits, std::span<const std::uint8_t> mask) {
    if (logits.size() != mask.size()) throw std::invalid_argument("mask length does not match logits");
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < logits.size(); ++i) {
        if (mask[i]) top = std::max(top, logits[i]);
    }
    if (top == -std::numeric_limits<double>::infinity()) throw std::invalid_argument("every action is masked");
    double total = 0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        if (mask[i]) total += std::exp(logits[i] - top);
    }
    const double lse = top + std::log(total);
    std::vector<double> out(logits.size(), -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < logits.size(); ++i) {
        if (mask[i]) out[i] = logits[i] - lse;
    }
    return out;
}

}  // namespace paretoflow::nn
