#include "draco/synthetic.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "draco/errors.hpp"
#include "draco/rng.hpp"

namespace draco {

static_assert(std::endian::native == std::endian::little,
              "cache files are little-endian; byte swapping is not implemented");

SyntheticDataset generate_synthetic(DataKind kind, std::size_t count, std::size_t feature_dim,
                                    double noise_sd, std::uint64_t seed) {
    if (count == 0 || feature_dim == 0) {
        throw InvalidParams("generate_synthetic: need count >= 1 and dim >= 1");
    }
    if (noise_sd < 0.0) throw InvalidParams("generate_synthetic: negative noise");

    SyntheticDataset data;
    data.kind = kind;
    data.count = count;
    data.dim = feature_dim;
    data.seed = seed;
    data.features.resize(count * feature_dim);
    data.labels.resize(count);

    Rng rng = substream(seed, stream::kData);
    std::normal_distribution<double> unit(0.0, 1.0);

    if (kind == DataKind::Regression) {
        data.true_weights.resize(feature_dim);
        for (auto& w : data.true_weights) w = unit(rng);
        for (std::size_t i = 0; i < count; ++i) {
            double y = noise_sd * unit(rng);
            for (std::size_t f = 0; f < feature_dim; ++f) {
                const double x = unit(rng);
                data.features[i * feature_dim + f] = x;
                y += x * data.true_weights[f];
            }
            data.labels[i] = y;
        }
    } else {
        // Class centers sit at +/- 3 sigma along an alternating-sign axis
        // (separation 6 sigma). The alternating axis keeps the class
        // direction away from the all-ones direction that constant-style
        // corruptions act along.
        const double offset = 3.0 * noise_sd / std::sqrt(static_cast<double>(feature_dim));
        for (std::size_t i = 0; i < count; ++i) {
            const double label = static_cast<double>(i % 2);
            const double center = label > 0.5 ? offset : -offset;
            for (std::size_t f = 0; f < feature_dim; ++f) {
                const double axis = f % 2 == 0 ? 1.0 : -1.0;
                data.features[i * feature_dim + f] = axis * center + noise_sd * unit(rng);
            }
            data.labels[i] = label;
        }
    }
    return data;
}

namespace {

constexpr char kMagic[5] = {'D', 'R', 'D', 'S', '1'};

}  // namespace

void save_dataset(const SyntheticDataset& dataset, const std::string& path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("save_dataset: cannot open " + path);
    out.write(kMagic, sizeof(kMagic));
    const std::uint64_t n = dataset.count;
    const std::uint64_t dim = dataset.dim;
    out.write(reinterpret_cast<const char*>(&n), sizeof(n));
    out.write(reinterpret_cast<const char*>(&dim), sizeof(dim));
    out.write(reinterpret_cast<const char*>(dataset.features.data()),
              static_cast<std::streamsize>(dataset.features.size() * sizeof(double)));
    out.write(reinterpret_cast<const char*>(dataset.labels.data()),
              static_cast<std::streamsize>(dataset.labels.size() * sizeof(double)));
    if (!out) throw ConfigError("save_dataset: write failed for " + path);
}

SyntheticDataset load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("load_dataset: cannot open " + path);
    char magic[5];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw ConfigError("load_dataset: bad magic in " + path);
    }
    std::uint64_t n = 0;
    std::uint64_t dim = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    in.read(reinterpret_cast<char*>(&dim), sizeof(dim));
    if (!in || n == 0 || dim == 0 || n > (1ull << 32) || dim > (1ull << 24)) {
        throw ConfigError("load_dataset: implausible header in " + path);
    }
    SyntheticDataset data;
    data.count = static_cast<std::size_t>(n);
    data.dim = static_cast<std::size_t>(dim);
    data.features.resize(data.count * data.dim);
    data.labels.resize(data.count);
    in.read(reinterpret_cast<char*>(data.features.data()),
            static_cast<std::streamsize>(data.features.size() * sizeof(double)));
    in.read(reinterpret_cast<char*>(data.labels.data()),
            static_cast<std::streamsize>(data.labels.size() * sizeof(double)));
    if (!in) throw ConfigError("load_dataset: truncated file " + path);
    return data;
}

}  // namespace draco
