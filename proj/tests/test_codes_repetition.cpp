#include <doctest.h>

#include <cstring>

#include "draco/codes.hpp"
#include "draco/rng.hpp"

using namespace draco;

namespace {

bool bytes_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

RealColumns random_units(std::size_t dim, std::size_t count, Rng& rng) {
    std::normal_distribution<double> unit(0.0, 1.0);
    RealColumns cols(count);
    for (auto& col : cols) {
        col.resize(dim);
        for (auto& x : col) x = unit(rng);
    }
    return cols;
}

RealColumns honest_messages(const Assignment& assignment, const RealColumns& units) {
    RealColumns messages(assignment.per_node.size());
    for (std::size_t j = 0; j < messages.size(); ++j) {
        RealColumns grads;
        for (std::size_t k : assignment.per_node[j]) grads.push_back(units[k]);
        messages[j] = encode_repetition(grads);
    }
    return messages;
}

}  // namespace

TEST_CASE("repetition assignment forms identical groups") {
    const CodeParams params(6, 1, Scheme::Repetition);
    const Assignment a = repetition_assignment(params);
    const std::vector<std::size_t> first{0, 1, 2};
    const std::vector<std::size_t> second{3, 4, 5};
    for (std::size_t j = 0; j < 3; ++j) CHECK(a.per_node[j] == first);
    for (std::size_t j = 3; j < 6; ++j) CHECK(a.per_node[j] == second);

    const Assignment whole = repetition_assignment(CodeParams(3, 1, Scheme::Repetition));
    for (const auto& set : whole.per_node) CHECK(set == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("repetition replication count and ratio") {
    const CodeParams params(15, 2, Scheme::Repetition);
    const Assignment a = repetition_assignment(params);
    std::vector<std::size_t> replication(15, 0);
    for (const auto& set : a.per_node) {
        for (std::size_t k : set) ++replication[k];
    }
    for (std::size_t k = 0; k < 15; ++k) CHECK(replication[k] == 5);
    CHECK(redundancy_ratio(a) == 5.0);
}

TEST_CASE("constructor enforces divisibility and the adversary bound") {
    CHECK_THROWS_AS(CodeParams(8, 1, Scheme::Repetition), InvalidParams);
    CHECK_THROWS_AS(CodeParams(6, 3, Scheme::Repetition), InvalidParams);
    CHECK_NOTHROW(CodeParams(6, 1, Scheme::Repetition));
}

TEST_CASE("identity-style ratios") {
    Assignment identity;
    identity.per_node = {{0}, {1}, {2}, {3}, {4}};
    CHECK(redundancy_ratio(identity) == 1.0);
}

TEST_CASE("repetition encoder sums in canonical order") {
    const std::vector<double> g{1.5, -2.0, 0.25};
    CHECK(encode_repetition({g}) == g);

    std::vector<double> neg(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) neg[i] = -g[i];
    const std::vector<double> zero(g.size(), 0.0);
    CHECK(encode_repetition({g, neg, zero}) == zero);

    // Two honest replicas with the same data produce bit-identical bytes.
    Rng rng = substream(3, 1);
    const RealColumns units = random_units(8, 3, rng);
    const auto a = encode_repetition(units);
    const auto b = encode_repetition(units);
    CHECK(bytes_equal(a, b));
}

TEST_CASE("repetition decode is exact without adversaries") {
    const CodeParams params(6, 1, Scheme::Repetition);
    const Assignment a = repetition_assignment(params);
    Rng rng = substream(3, 2);
    const RealColumns units = random_units(5, 6, rng);
    const auto messages = honest_messages(a, units);
    const auto oracle = blocked_sum(units, params.redundancy());
    CHECK(bytes_equal(decode_repetition(messages, params), oracle));
}

TEST_CASE("repetition decode survives one corrupted column in any position") {
    const CodeParams params(6, 1, Scheme::Repetition);
    const Assignment a = repetition_assignment(params);
    Rng rng = substream(3, 3);
    std::normal_distribution<double> unit(0.0, 1.0);
    for (std::size_t position = 0; position < 6; ++position) {
        for (int trial = 0; trial < 25; ++trial) {
            const RealColumns units = random_units(5, 6, rng);
            auto messages = honest_messages(a, units);
            const auto oracle = blocked_sum(units, params.redundancy());
            for (auto& x : messages[position]) x += unit(rng);
            CHECK(bytes_equal(decode_repetition(messages, params), oracle));
        }
    }
}

TEST_CASE("two colluders in one group defeat s=1") {
    const CodeParams params(6, 1, Scheme::Repetition);
    const Assignment a = repetition_assignment(params);
    Rng rng = substream(3, 4);
    const RealColumns units = random_units(5, 6, rng);
    auto messages = honest_messages(a, units);
    const auto oracle = blocked_sum(units, params.redundancy());
    const std::vector<double> forged(5, 123.0);
    messages[0] = forged;
    messages[1] = forged;  // same group as node 0; outvotes the honest replica
    CHECK(!bytes_equal(decode_repetition(messages, params), oracle));
}

TEST_CASE("blocked sum validates its block size") {
    RealColumns cols{{1.0}, {2.0}, {3.0}};
    CHECK_THROWS_AS((void)blocked_sum(cols, 2), InvalidParams);
    CHECK(blocked_sum(cols, 1) == std::vector<double>{6.0});
    CHECK(blocked_sum(cols, 3) == std::vector<double>{6.0});
}
