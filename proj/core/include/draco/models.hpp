#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "draco/rng.hpp"

namespace draco {

enum class ModelKind { LinearRegression, LogisticRegression, TinyMlp };
enum class Activation { Tanh, Relu };

// Toy differentiable models with hand-written gradients. Loss conventions:
// squared error / 2 for regression, binary cross-entropy for logistic and
// MLP (sigmoid output).
struct ModelSpec {
    ModelKind kind = ModelKind::LogisticRegression;
    std::size_t feature_dim = 1;
    std::vector<std::size_t> hidden;  // TinyMlp hidden layer widths
    Activation activation = Activation::Tanh;

    std::size_t param_dim() const;
    void validate() const;
};

// Zeros for the linear models; small seeded normals for the MLP (symmetry
// breaking).
std::vector<double> init_weights(const ModelSpec& spec, Rng& rng);

struct ExampleView {
    std::span<const double> features;
    double label = 0.0;
};

// Flat storage the models read examples from.
struct DataView {
    std::size_t dim = 0;
    std::span<const double> features;  // row-major
    std::span<const double> labels;

    ExampleView example(std::size_t i) const {
        return ExampleView{features.subspan(i * dim, dim), labels[i]};
    }
};

// Sum of per-example loss gradients over the shard, accumulated in shard
// order.
std::vector<double> gradient(const ModelSpec& spec, const std::vector<double>& weights,
                             const DataView& data, std::span<const std::size_t> shard);

// Mean loss over the given examples.
double mean_loss(const ModelSpec& spec, const std::vector<double>& weights, const DataView& data,
                 std::span<const std::size_t> examples);

// Classification accuracy; NaN for regression models.
double accuracy(const ModelSpec& spec, const std::vector<double>& weights, const DataView& data,
                std::span<const std::size_t> examples);

// w' = w - (gamma / batch) * summed_gradient.
std::vector<double> sgd_step(const std::vector<double>& weights,
                             const std::vector<double>& summed_gradient, double learning_rate,
                             std::size_t batch);

}  // namespace draco
