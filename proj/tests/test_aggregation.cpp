#include <doctest.h>

#include <cmath>

#include "draco/aggregation.hpp"
#include "draco/rng.hpp"
#include "draco/threat.hpp"

using namespace draco;

namespace {

double objective(const std::vector<double>& y, const RealColumns& messages) {
    double total = 0.0;
    for (const auto& m : messages) {
        double sq = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double d = y[i] - m[i];
            sq += d * d;
        }
        total += std::sqrt(sq);
    }
    return total;
}

}  // namespace

TEST_CASE("mean aggregation") {
    CHECK(aggregate_mean({{1.0, 1.0}, {3.0, 3.0}}) == std::vector<double>{2.0, 2.0});
    CHECK(aggregate_mean({{4.0, -1.0}}) == std::vector<double>{4.0, -1.0});
    CHECK(aggregate_mean({{2.0, -5.0}, {-2.0, 5.0}}) == std::vector<double>{0.0, 0.0});
}

TEST_CASE("geometric median of identical points is that point") {
    const RealColumns messages(4, std::vector<double>{1.5, -2.0});
    const auto gm = aggregate_geometric_median(messages);
    CHECK(gm[0] == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(gm[1] == doctest::Approx(-2.0).epsilon(1e-9));
}

TEST_CASE("one-dimensional geometric median is the median") {
    const RealColumns messages{{0.0}, {0.0}, {10.0}};
    const auto gm = aggregate_geometric_median(messages);
    CHECK(std::abs(gm[0]) <= 1e-6);
}

TEST_CASE("two-dimensional geometric median matches a grid oracle") {
    const RealColumns messages{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    const auto gm = aggregate_geometric_median(messages);
    double best = 1e300;
    for (int xi = 0; xi <= 1000; ++xi) {
        for (int yi = 0; yi <= 1000; ++yi) {
            const std::vector<double> y{xi / 1000.0, yi / 1000.0};
            best = std::min(best, objective(y, messages));
        }
    }
    CHECK(std::abs(objective(gm, messages) - best) <= 1e-3);
}

TEST_CASE("weiszfeld objective never increases") {
    Rng rng = substream(13, 1);
    std::normal_distribution<double> unit(0.0, 1.0);
    RealColumns messages(9);
    for (auto& m : messages) {
        m.resize(5);
        for (auto& x : m) x = unit(rng);
    }
    const auto result = geometric_median_detailed(messages);
    for (std::size_t t = 1; t < result.objective_trace.size(); ++t) {
        CHECK(result.objective_trace[t] <=
              result.objective_trace[t - 1] + 1e-9 * result.objective_trace[0]);
    }
}

TEST_CASE("draco aggregation is attack-invariant while gm is merely bounded") {
    // Constant attack on a repetition round: the decoded sum must equal the
    // honest decode bit for bit, while the geometric median moves.
    const CodeParams params(6, 1, Scheme::Repetition);
    Rng rng = substream(13, 2);
    std::normal_distribution<double> unit(0.0, 1.0);

    RealColumns units(6);
    for (auto& u : units) {
        u.resize(4);
        for (auto& x : u) x = unit(rng);
    }
    const Assignment assignment = repetition_assignment(params);
    RealColumns honest(6);
    for (std::size_t j = 0; j < 6; ++j) {
        RealColumns grads;
        for (std::size_t k : assignment.per_node[j]) grads.push_back(units[k]);
        honest[j] = encode_repetition(grads);
    }

    AttackSpec attack;
    attack.kind = AttackKind::Constant;
    attack.constant_value = -100.0;
    auto attacked = honest;
    attacked[2] = corrupt(2, attacked[2], attack);

    const auto decoded_honest = aggregate_draco_repetition(honest, params);
    const auto decoded_attacked = aggregate_draco_repetition(attacked, params);
    CHECK(decoded_honest == decoded_attacked);

    const auto gm_honest = aggregate_geometric_median(honest);
    const auto gm_attacked = aggregate_geometric_median(attacked);
    double moved = 0.0;
    for (std::size_t i = 0; i < gm_honest.size(); ++i) {
        moved = std::max(moved, std::abs(gm_honest[i] - gm_attacked[i]));
    }
    CHECK(moved > 0.0);
}

TEST_CASE("cyclic draco aggregation recovers the oracle under a constant attack") {
    const CyclicTables tables = build_cyclic_tables(CodeParams(7, 2, Scheme::Cyclic));
    Rng rng = substream(13, 3);
    std::normal_distribution<double> unit(0.0, 1.0);
    const std::size_t dim = 5;

    RealColumns units(7);
    for (auto& u : units) {
        u.resize(dim);
        for (auto& x : u) x = unit(rng);
    }
    ComplexColumns messages(7);
    for (std::size_t j = 0; j < 7; ++j) {
        ComplexColumns grads;
        for (std::size_t k : tables.assignment.per_node[j]) {
            grads.push_back(pack_column(units[k]));
        }
        messages[j] = encode_cyclic(j, grads, tables);
    }
    const auto oracle = blocked_sum(units, 1);

    AttackSpec attack;
    attack.kind = AttackKind::Constant;
    attack.constant_value = -100.0;
    messages[1] = corrupt(1, messages[1], attack);
    messages[5] = corrupt(5, messages[5], attack);

    Rng detect_rng = substream(13, 4);
    const auto update = aggregate_draco_cyclic(messages, tables, dim, true, detect_rng);
    double diff = 0.0;
    double mag = 1.0;
    for (std::size_t i = 0; i < dim; ++i) {
        diff = std::max(diff, std::abs(update[i] - oracle[i]));
        mag = std::max(mag, std::abs(oracle[i]));
    }
    CHECK(diff <= 1e-8 * mag);
}
