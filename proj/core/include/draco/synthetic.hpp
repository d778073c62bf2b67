#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "draco/models.hpp"

namespace draco {

enum class DataKind { Regression, Blobs };

struct SyntheticDataset {
    DataKind kind = DataKind::Blobs;
    std::size_t count = 0;
    std::size_t dim = 0;
    std::vector<double> features;  // row-major count x dim
    std::vector<double> labels;
    std::uint64_t seed = 0;
    std::vector<double> true_weights;  // regression ground truth

    DataView view() const { return DataView{dim, features, labels}; }
};

// Regression: y = x . w* + noise_sd * N(0,1) with seeded w*.
// Blobs: two balanced Gaussian classes at +/- 3*noise_sd along the unit
// diagonal (separation 6 sigma, linearly separable through the origin).
SyntheticDataset generate_synthetic(DataKind kind, std::size_t count, std::size_t feature_dim,
                                    double noise_sd, std::uint64_t seed);

// Cache format (little-endian): magic "DRDS1", u64 n, u64 dim, n*dim f64
// features row-major, n f64 labels.
void save_dataset(const SyntheticDataset& dataset, const std::string& path);
SyntheticDataset load_dataset(const std::string& path);

}  // namespace draco
