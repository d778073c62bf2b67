#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>

#include "draco/models.hpp"
#include "draco/rng.hpp"
#include "draco/synthetic.hpp"

using namespace draco;

namespace {

// Central finite differences of the mean loss, rescaled to the summed
// gradient over the shard.
std::vector<double> fd_gradient(const ModelSpec& spec, const std::vector<double>& w,
                                const DataView& data, std::span<const std::size_t> shard) {
    const double h = 1e-6;
    std::vector<double> grad(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto hi = w;
        auto lo = w;
        hi[i] += h;
        lo[i] -= h;
        const double up = mean_loss(spec, hi, data, shard);
        const double down = mean_loss(spec, lo, data, shard);
        grad[i] = (up - down) / (2.0 * h) * static_cast<double>(shard.size());
    }
    return grad;
}

double relative_gap(const std::vector<double>& got, const std::vector<double>& want) {
    double diff = 0.0;
    double mag = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) {
        diff += (got[i] - want[i]) * (got[i] - want[i]);
        mag += want[i] * want[i];
    }
    return std::sqrt(diff) / std::max(std::sqrt(mag), 1e-9);
}

}  // namespace

TEST_CASE("linear regression gradient vanishes at a perfect fit") {
    ModelSpec spec;
    spec.kind = ModelKind::LinearRegression;
    spec.feature_dim = 2;
    const std::vector<double> features{1.0, 0.0};
    const std::vector<double> labels{0.0};
    const DataView data{2, features, labels};
    const std::vector<std::size_t> shard{0};
    const auto grad = gradient(spec, {0.0, 0.0}, data, shard);
    CHECK(grad == std::vector<double>{0.0, 0.0});
}

TEST_CASE("logistic gradient at zero weights is (1/2 - y) x") {
    ModelSpec spec;
    spec.kind = ModelKind::LogisticRegression;
    spec.feature_dim = 2;
    const std::vector<double> features{2.0, -1.0, 0.5, 1.5};
    const std::vector<double> labels{1.0, 0.0};
    const DataView data{2, features, labels};
    const std::vector<std::size_t> shard{0, 1};
    const auto grad = gradient(spec, {0.0, 0.0}, data, shard);
    CHECK(grad[0] == doctest::Approx((0.5 - 1.0) * 2.0 + (0.5 - 0.0) * 0.5));
    CHECK(grad[1] == doctest::Approx((0.5 - 1.0) * -1.0 + (0.5 - 0.0) * 1.5));
}

TEST_CASE("analytic gradients match central finite differences") {
    Rng rng = substream(17, 1);
    std::normal_distribution<double> unit(0.0, 1.0);

    std::vector<ModelSpec> specs(4);
    specs[0].kind = ModelKind::LinearRegression;
    specs[0].feature_dim = 4;
    specs[1].kind = ModelKind::LogisticRegression;
    specs[1].feature_dim = 4;
    specs[2].kind = ModelKind::TinyMlp;
    specs[2].feature_dim = 4;
    specs[2].hidden = {5, 3};
    specs[3].kind = ModelKind::TinyMlp;
    specs[3].feature_dim = 4;
    specs[3].hidden = {4};
    specs[3].activation = Activation::Relu;

    for (const auto& spec : specs) {
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> features(4);
            for (auto& x : features) x = unit(rng);
            std::vector<double> labels{spec.kind == ModelKind::LinearRegression
                                           ? unit(rng)
                                           : static_cast<double>(trial % 2)};
            const DataView data{4, features, labels};
            std::vector<double> w(spec.param_dim());
            for (auto& x : w) x = unit(rng);
            const std::vector<std::size_t> shard{0};
            const auto analytic = gradient(spec, w, data, shard);
            const auto numeric = fd_gradient(spec, w, data, shard);
            CHECK(relative_gap(analytic, numeric) <= 1e-5);
        }
    }
}

TEST_CASE("sgd step arithmetic") {
    CHECK(sgd_step({5.0}, {0.0}, 1.0, 1) == std::vector<double>{5.0});
    CHECK(sgd_step({5.0}, {2.0}, 1.0, 1) == std::vector<double>{3.0});
    const auto w = sgd_step({1.0, 2.0}, {10.0, -10.0}, 0.5, 5);
    CHECK(w[0] == doctest::Approx(0.0));
    CHECK(w[1] == doctest::Approx(3.0));
}

TEST_CASE("noiseless regression drives the loss to zero monotonically") {
    ModelSpec spec;
    spec.kind = ModelKind::LinearRegression;
    spec.feature_dim = 5;
    const auto dataset = generate_synthetic(DataKind::Regression, 120, 5, 0.0, 71);
    const DataView data = dataset.view();
    std::vector<std::size_t> everyone(dataset.count);
    for (std::size_t i = 0; i < everyone.size(); ++i) everyone[i] = i;

    std::vector<double> w(5, 0.0);
    double previous = mean_loss(spec, w, data, everyone);
    for (int round = 0; round < 2000; ++round) {
        const auto grad = gradient(spec, w, data, everyone);
        w = sgd_step(w, grad, 0.01, dataset.count);
        const double current = mean_loss(spec, w, data, everyone);
        if (round < 50) CHECK(current <= previous + 1e-12);
        previous = current;
    }
    CHECK(previous < 1e-8);
}

TEST_CASE("well-separated blobs are learned to perfect accuracy") {
    ModelSpec spec;
    spec.kind = ModelKind::LogisticRegression;
    spec.feature_dim = 3;
    const auto dataset = generate_synthetic(DataKind::Blobs, 200, 3, 1.0, 3);
    const DataView data = dataset.view();
    std::vector<std::size_t> everyone(dataset.count);
    for (std::size_t i = 0; i < everyone.size(); ++i) everyone[i] = i;

    std::vector<double> w(3, 0.0);
    for (int round = 0; round < 400; ++round) {
        const auto grad = gradient(spec, w, data, everyone);
        w = sgd_step(w, grad, 0.1, dataset.count);
    }
    CHECK(accuracy(spec, w, data, everyone) == doctest::Approx(1.0));
}

TEST_CASE("dataset generation is deterministic per seed") {
    const auto a = generate_synthetic(DataKind::Blobs, 64, 4, 1.0, 99);
    const auto b = generate_synthetic(DataKind::Blobs, 64, 4, 1.0, 99);
    CHECK(std::memcmp(a.features.data(), b.features.data(),
                      a.features.size() * sizeof(double)) == 0);
    CHECK(a.labels == b.labels);
    const auto c = generate_synthetic(DataKind::Blobs, 64, 4, 1.0, 100);
    CHECK(std::memcmp(a.features.data(), c.features.data(),
                      a.features.size() * sizeof(double)) != 0);
}

TEST_CASE("dataset cache round-trips") {
    const auto dataset = generate_synthetic(DataKind::Regression, 32, 3, 0.5, 7);
    const std::string path = "dataset_roundtrip.drds";
    save_dataset(dataset, path);
    const auto loaded = load_dataset(path);
    CHECK(loaded.count == 32);
    CHECK(loaded.dim == 3);
    CHECK(loaded.features == dataset.features);
    CHECK(loaded.labels == dataset.labels);
    std::filesystem::remove(path);
}

TEST_CASE("mlp initialization breaks symmetry deterministically") {
    ModelSpec spec;
    spec.kind = ModelKind::TinyMlp;
    spec.feature_dim = 3;
    spec.hidden = {4};
    Rng a = substream(1, stream::kInit);
    Rng b = substream(1, stream::kInit);
    const auto wa = init_weights(spec, a);
    const auto wb = init_weights(spec, b);
    CHECK(wa == wb);
    CHECK(wa.size() == 3 * 4 + 4 + 4 + 1);
    bool nonzero = false;
    for (double x : wa) nonzero = nonzero || x != 0.0;
    CHECK(nonzero);
}
