#include "draco/tables_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace draco {

static_assert(std::endian::native == std::endian::little,
              "cache files are little-endian; byte swapping is not implemented");

namespace {

constexpr char kMagic[5] = {'D', 'R', 'C', 'O', '1'};

void write_u64(std::ofstream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint64_t read_u64(std::ifstream& in) {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

}  // namespace

void save_cyclic_tables(const CyclicTables& tables, const std::string& path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("save_cyclic_tables: cannot open " + path);
    out.write(kMagic, sizeof(kMagic));
    write_u64(out, tables.params.node_count);
    write_u64(out, tables.params.max_adversaries);
    const std::size_t p = tables.params.node_count;
    for (std::size_t r = 0; r < p; ++r) {
        for (std::size_t c = 0; c < p; ++c) {
            const Complex z = tables.weights.at(r, c);
            const double re = z.real();
            const double im = z.imag();
            out.write(reinterpret_cast<const char*>(&re), sizeof(re));
            out.write(reinterpret_cast<const char*>(&im), sizeof(im));
        }
    }
    if (!out) throw ConfigError("save_cyclic_tables: write failed for " + path);
}

CyclicTables load_cyclic_tables(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("load_cyclic_tables: cannot open " + path);
    char magic[5];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw ConfigError("load_cyclic_tables: bad magic in " + path);
    }
    const std::uint64_t p = read_u64(in);
    const std::uint64_t s = read_u64(in);
    if (!in || p == 0 || p > (1u << 20) || 2 * s + 1 > p) {
        throw ConfigError("load_cyclic_tables: implausible header in " + path);
    }
    CodeParams params(static_cast<std::size_t>(p), static_cast<std::size_t>(s), Scheme::Cyclic);

    ComplexMatrix weights(params.node_count, params.node_count);
    for (std::size_t r = 0; r < params.node_count; ++r) {
        for (std::size_t c = 0; c < params.node_count; ++c) {
            double re = 0.0;
            double im = 0.0;
            in.read(reinterpret_cast<char*>(&re), sizeof(re));
            in.read(reinterpret_cast<char*>(&im), sizeof(im));
            weights.at(r, c) = Complex{re, im};
        }
    }
    if (!in) throw ConfigError("load_cyclic_tables: truncated file " + path);
    if (!weights.all_finite()) throw ConfigError("load_cyclic_tables: non-finite entries");

    const ComplexMatrix idft = dft_matrix(params.node_count);
    const std::size_t top = params.node_count - 2 * params.max_adversaries;
    CyclicTables tables{params,
                        idft.top_rows(top),
                        idft.bottom_rows_from(top),
                        std::move(weights),
                        cyclic_assignment(params),
                        {}};
    tables.node_coeffs.resize(params.node_count);
    for (std::size_t node = 0; node < params.node_count; ++node) {
        const auto& assigned = tables.assignment.per_node[node];
        auto& coeffs = tables.node_coeffs[node];
        coeffs.resize(assigned.size());
        for (std::size_t t = 0; t < assigned.size(); ++t) {
            coeffs[t] = tables.weights.at(assigned[t], node);
        }
    }
    return tables;
}

}  // namespace draco
