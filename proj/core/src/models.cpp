#include "draco/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "draco/errors.hpp"

namespace draco {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double dot(std::span<const double> a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double activate(Activation act, double z) {
    return act == Activation::Tanh ? std::tanh(z) : (z > 0.0 ? z : 0.0);
}

double activate_grad(Activation act, double a, double z) {
    return act == Activation::Tanh ? 1.0 - a * a : (z > 0.0 ? 1.0 : 0.0);
}

// Layer sizes including input and scalar output.
std::vector<std::size_t> mlp_layers(const ModelSpec& spec) {
    std::vector<std::size_t> sizes;
    sizes.push_back(spec.feature_dim);
    for (std::size_t h : spec.hidden) sizes.push_back(h);
    sizes.push_back(1);
    return sizes;
}

// Forward pass storing pre- and post-activation values; returns the output
// logit.
double mlp_forward(const ModelSpec& spec, const std::vector<double>& w,
                   std::span<const double> x, std::vector<std::vector<double>>& pre,
                   std::vector<std::vector<double>>& post) {
    const auto sizes = mlp_layers(spec);
    const std::size_t layers = sizes.size() - 1;
    pre.assign(layers, {});
    post.assign(layers, {});
    std::size_t offset = 0;
    std::vector<double> input(x.begin(), x.end());
    for (std::size_t l = 0; l < layers; ++l) {
        const std::size_t fan_in = sizes[l];
        const std::size_t fan_out = sizes[l + 1];
        pre[l].resize(fan_out);
        post[l].resize(fan_out);
        for (std::size_t o = 0; o < fan_out; ++o) {
            double z = w[offset + fan_in * fan_out + o];  // bias
            const double* row = &w[offset + o * fan_in];
            for (std::size_t i = 0; i < fan_in; ++i) z += row[i] * input[i];
            pre[l][o] = z;
            post[l][o] = l + 1 == layers ? z : activate(spec.activation, z);
        }
        offset += fan_in * fan_out + fan_out;
        input = post[l];
    }
    return post[layers - 1][0];
}

void mlp_backward(const ModelSpec& spec, const std::vector<double>& w,
                  std::span<const double> x, double output_delta,
                  const std::vector<std::vector<double>>& pre,
                  const std::vector<std::vector<double>>& post, std::vector<double>& grad) {
    const auto sizes = mlp_layers(spec);
    const std::size_t layers = sizes.size() - 1;

    std::vector<std::size_t> offsets(layers);
    std::size_t offset = 0;
    for (std::size_t l = 0; l < layers; ++l) {
        offsets[l] = offset;
        offset += sizes[l] * sizes[l + 1] + sizes[l + 1];
    }

    const std::vector<double> input_copy(x.begin(), x.end());
    std::vector<double> delta{output_delta};
    for (std::size_t li = layers; li-- > 0;) {
        const std::size_t fan_in = sizes[li];
        const std::size_t fan_out = sizes[li + 1];
        const std::vector<double>& input_post = li == 0 ? input_copy : post[li - 1];
        for (std::size_t o = 0; o < fan_out; ++o) {
            const double d = delta[o];
            double* grow = &grad[offsets[li] + o * fan_in];
            for (std::size_t i = 0; i < fan_in; ++i) grow[i] += d * input_post[i];
            grad[offsets[li] + fan_in * fan_out + o] += d;
        }
        if (li == 0) break;
        std::vector<double> prev(fan_in, 0.0);
        for (std::size_t i = 0; i < fan_in; ++i) {
            double acc = 0.0;
            for (std::size_t o = 0; o < fan_out; ++o) {
                acc += delta[o] * w[offsets[li] + o * fan_in + i];
            }
            prev[i] = acc * activate_grad(spec.activation, post[li - 1][i], pre[li - 1][i]);
        }
        delta = std::move(prev);
    }
}

}  // namespace

std::size_t ModelSpec::param_dim() const {
    switch (kind) {
        case ModelKind::LinearRegression:
        case ModelKind::LogisticRegression:
            return feature_dim;
        case ModelKind::TinyMlp: {
            const auto sizes = mlp_layers(*this);
            std::size_t total = 0;
            for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
                total += sizes[l] * sizes[l + 1] + sizes[l + 1];
            }
            return total;
        }
    }
    return 0;
}

void ModelSpec::validate() const {
    if (feature_dim == 0) throw InvalidParams("ModelSpec: feature_dim must be >= 1");
    if (kind == ModelKind::TinyMlp) {
        for (std::size_t h : hidden) {
            if (h == 0) throw InvalidParams("ModelSpec: MLP layer sizes must be >= 1");
        }
    }
}

std::vector<double> init_weights(const ModelSpec& spec, Rng& rng) {
    spec.validate();
    std::vector<double> w(spec.param_dim(), 0.0);
    if (spec.kind == ModelKind::TinyMlp) {
        std::normal_distribution<double> small(0.0, 0.2);
        for (auto& x : w) x = small(rng);
    }
    return w;
}

std::vector<double> gradient(const ModelSpec& spec, const std::vector<double>& weights,
                             const DataView& data, std::span<const std::size_t> shard) {
    if (shard.empty()) throw InvalidParams("gradient: empty shard");
    std::vector<double> grad(weights.size(), 0.0);
    switch (spec.kind) {
        case ModelKind::LinearRegression:
        case ModelKind::LogisticRegression: {
            for (std::size_t idx : shard) {
                const auto ex = data.example(idx);
                const double z = dot(ex.features, weights);
                const double residual = spec.kind == ModelKind::LinearRegression
                                            ? z - ex.label
                                            : sigmoid(z) - ex.label;
                for (std::size_t i = 0; i < grad.size(); ++i) {
                    grad[i] += residual * ex.features[i];
                }
            }
            break;
        }
        case ModelKind::TinyMlp: {
            std::vector<std::vector<double>> pre;
            std::vector<std::vector<double>> post;
            for (std::size_t idx : shard) {
                const auto ex = data.example(idx);
                const double logit = mlp_forward(spec, weights, ex.features, pre, post);
                mlp_backward(spec, weights, ex.features, sigmoid(logit) - ex.label, pre, post,
                             grad);
            }
            break;
        }
    }
    return grad;
}

double mean_loss(const ModelSpec& spec, const std::vector<double>& weights, const DataView& data,
                 std::span<const std::size_t> examples) {
    if (examples.empty()) return 0.0;
    double total = 0.0;
    std::vector<std::vector<double>> pre;
    std::vector<std::vector<double>> post;
    for (std::size_t idx : examples) {
        const auto ex = data.example(idx);
        switch (spec.kind) {
            case ModelKind::LinearRegression: {
                const double r = dot(ex.features, weights) - ex.label;
                total += 0.5 * r * r;
                break;
            }
            case ModelKind::LogisticRegression:
            case ModelKind::TinyMlp: {
                const double z = spec.kind == ModelKind::LogisticRegression
                                     ? dot(ex.features, weights)
                                     : mlp_forward(spec, weights, ex.features, pre, post);
                const double p = std::clamp(sigmoid(z), 1e-12, 1.0 - 1e-12);
                total += -(ex.label * std::log(p) + (1.0 - ex.label) * std::log(1.0 - p));
                break;
            }
        }
    }
    return total / static_cast<double>(examples.size());
}

double accuracy(const ModelSpec& spec, const std::vector<double>& weights, const DataView& data,
                std::span<const std::size_t> examples) {
    if (spec.kind == ModelKind::LinearRegression) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (examples.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::size_t correct = 0;
    std::vector<std::vector<double>> pre;
    std::vector<std::vector<double>> post;
    for (std::size_t idx : examples) {
        const auto ex = data.example(idx);
        const double z = spec.kind == ModelKind::LogisticRegression
                             ? dot(ex.features, weights)
                             : mlp_forward(spec, weights, ex.features, pre, post);
        if ((z >= 0.0) == (ex.label >= 0.5)) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(examples.size());
}

std::vector<double> sgd_step(const std::vector<double>& weights,
                             const std::vector<double>& summed_gradient, double learning_rate,
                             std::size_t batch) {
    if (weights.size() != summed_gradient.size()) {
        throw DimensionMismatch("sgd_step: gradient dimension mismatch");
    }
    const double scale = learning_rate / static_cast<double>(batch);
    std::vector<double> next(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        next[i] = weights[i] - scale * summed_gradient[i];
    }
    return next;
}

}  // namespace draco
