#include <benchmark/benchmark.h>

#include "draco/aggregation.hpp"
#include "draco/codes.hpp"
#include "draco/rng.hpp"

namespace {

using namespace draco;

constexpr std::size_t kDim = 10000;

RealColumns random_units(std::size_t dim, std::size_t count, std::uint64_t seed) {
    Rng rng = substream(seed, 0xbe9c);
    std::normal_distribution<double> unit(0.0, 1.0);
    RealColumns cols(count);
    for (auto& col : cols) {
        col.resize(dim);
        for (auto& x : col) x = unit(rng);
    }
    return cols;
}

RealColumns repetition_messages(const CodeParams& params, const RealColumns& units) {
    const Assignment assignment = repetition_assignment(params);
    RealColumns messages(params.node_count);
    for (std::size_t j = 0; j < params.node_count; ++j) {
        RealColumns grads;
        for (std::size_t k : assignment.per_node[j]) grads.push_back(units[k]);
        messages[j] = encode_repetition(grads);
    }
    return messages;
}

void BM_RepetitionEncode(benchmark::State& state) {
    const std::size_t p = static_cast<std::size_t>(state.range(0));
    const CodeParams params(p, 1, Scheme::Repetition);
    const Assignment assignment = repetition_assignment(params);
    const RealColumns units = random_units(kDim, p, 1);
    std::vector<RealColumns> node_grads(p);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k : assignment.per_node[j]) node_grads[j].push_back(units[k]);
    }
    for (auto _ : state) {
        for (std::size_t j = 0; j < p; ++j) {
            benchmark::DoNotOptimize(encode_repetition(node_grads[j]));
        }
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * p * kDim));
}
BENCHMARK(BM_RepetitionEncode)->Arg(6)->Arg(12)->Arg(24)->Arg(48);

void BM_RepetitionDecode(benchmark::State& state) {
    const std::size_t p = static_cast<std::size_t>(state.range(0));
    const CodeParams params(p, 1, Scheme::Repetition);
    const RealColumns messages = repetition_messages(params, random_units(kDim, p, 2));
    for (auto _ : state) {
        benchmark::DoNotOptimize(decode_repetition(messages, params));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * p * kDim));
}
BENCHMARK(BM_RepetitionDecode)->Arg(6)->Arg(12)->Arg(24)->Arg(48);

void BM_CyclicEncode(benchmark::State& state) {
    const std::size_t p = static_cast<std::size_t>(state.range(0));
    const CyclicTables tables = build_cyclic_tables(CodeParams(p, 1, Scheme::Cyclic));
    const RealColumns units = random_units(kDim, p, 3);
    for (auto _ : state) {
        for (std::size_t j = 0; j < p; ++j) {
            ComplexColumns grads;
            grads.reserve(tables.assignment.per_node[j].size());
            for (std::size_t k : tables.assignment.per_node[j]) {
                grads.push_back(pack_column(units[k]));
            }
            benchmark::DoNotOptimize(encode_cyclic(j, grads, tables));
        }
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * p * kDim));
}
BENCHMARK(BM_CyclicEncode)->Arg(7)->Arg(15)->Arg(31);

void BM_CyclicDetectDecode(benchmark::State& state) {
    const std::size_t p = static_cast<std::size_t>(state.range(0));
    const CyclicTables tables = build_cyclic_tables(CodeParams(p, 1, Scheme::Cyclic));
    const RealColumns units = random_units(kDim, p, 4);
    ComplexColumns messages(p);
    for (std::size_t j = 0; j < p; ++j) {
        ComplexColumns grads;
        for (std::size_t k : tables.assignment.per_node[j]) {
            grads.push_back(pack_column(units[k]));
        }
        messages[j] = encode_cyclic(j, grads, tables);
    }
    std::uint64_t round = 0;
    for (auto _ : state) {
        Rng rng = substream(5, stream::kDetect, round++);
        const auto detection = detect_adversaries(messages, tables, rng);
        const auto decoded = decode_cyclic(messages, tables, detection.adversaries);
        benchmark::DoNotOptimize(unpack_column(decoded, kDim));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * p * kDim));
}
BENCHMARK(BM_CyclicDetectDecode)->Arg(7)->Arg(15)->Arg(31);

void BM_GeometricMedian(benchmark::State& state) {
    const std::size_t p = static_cast<std::size_t>(state.range(0));
    const RealColumns messages = random_units(kDim, p, 6);
    GeometricMedianOptions opts;
    opts.max_iters = 100;
    opts.step_tol = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(geometric_median_detailed(messages, opts));
    }
}
BENCHMARK(BM_GeometricMedian)->Arg(7)->Arg(15)->Arg(31);

}  // namespace

BENCHMARK_MAIN();
