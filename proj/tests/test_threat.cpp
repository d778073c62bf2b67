#include <doctest.h>

#include "draco/rng.hpp"
#include "draco/threat.hpp"

using namespace draco;

TEST_CASE("selection handles the trivial counts") {
    AttackSpec spec;
    spec.kind = AttackKind::Constant;
    Rng rng = substream(9, 1);

    spec.count = 0;
    CHECK(select_adversaries(spec, 5, rng).empty());

    spec.count = 5;
    const auto everyone = select_adversaries(spec, 5, rng);
    CHECK(everyone == std::vector<std::size_t>{0, 1, 2, 3, 4});
}

TEST_CASE("selection is deterministic under a fixed seed") {
    AttackSpec spec;
    spec.kind = AttackKind::ReverseGradient;
    spec.count = 5;
    Rng a = substream(42, 7);
    Rng b = substream(42, 7);
    CHECK(select_adversaries(spec, 45, a) == select_adversaries(spec, 45, b));
}

TEST_CASE("uniform selection hits every node at the expected rate") {
    AttackSpec spec;
    spec.kind = AttackKind::Constant;
    spec.count = 2;
    Rng rng = substream(9, 2);
    std::vector<std::size_t> hits(10, 0);
    const std::size_t rounds = 10000;
    for (std::size_t round = 0; round < rounds; ++round) {
        for (std::size_t v : select_adversaries(spec, 10, rng)) ++hits[v];
    }
    for (std::size_t v = 0; v < 10; ++v) {
        const double freq = static_cast<double>(hits[v]) / static_cast<double>(rounds);
        CHECK(freq == doctest::Approx(0.2).epsilon(0.1));  // 0.2 +/- 0.02
    }
}

TEST_CASE("fixed selection validates its set") {
    AttackSpec spec;
    spec.kind = AttackKind::Constant;
    spec.count = 2;
    spec.selection = AdversarySelection::FixedSet;
    spec.fixed_set = {4, 1};
    Rng rng = substream(9, 3);
    CHECK(select_adversaries(spec, 6, rng) == std::vector<std::size_t>{1, 4});

    spec.fixed_set = {7, 1};
    CHECK_THROWS_AS((void)select_adversaries(spec, 6, rng), InvalidSpec);
    spec.fixed_set = {1};
    CHECK_THROWS_AS((void)select_adversaries(spec, 6, rng), InvalidSpec);
}

TEST_CASE("reverse gradient corruption scales and flips") {
    AttackSpec spec;
    spec.kind = AttackKind::ReverseGradient;
    spec.reverse_scale = 100.0;
    const auto out = corrupt(0, std::vector<double>{1.0, -2.0}, spec);
    CHECK(out == std::vector<double>{-100.0, 200.0});

    const auto zero = corrupt(0, std::vector<double>{0.0, 0.0}, spec);
    CHECK(zero == std::vector<double>{0.0, 0.0});
}

TEST_CASE("constant corruption fills with kappa and keeps dimensions") {
    AttackSpec spec;
    spec.kind = AttackKind::Constant;
    spec.constant_value = -100.0;
    const auto out = corrupt(0, std::vector<double>{5.0, 6.0, 7.0}, spec);
    CHECK(out == std::vector<double>{-100.0, -100.0, -100.0});

    const auto complex_out = corrupt(0, ComplexVector{{1.0, 2.0}, {3.0, 4.0}}, spec);
    REQUIRE(complex_out.size() == 2);
    CHECK(complex_out[0] == Complex{-100.0, 0.0});
    CHECK(complex_out[1] == Complex{-100.0, 0.0});
}

TEST_CASE("custom corruption must preserve dimension") {
    AttackSpec spec;
    spec.kind = AttackKind::Custom;
    spec.custom_label = "truncate";
    spec.custom_real = [](std::size_t, const std::vector<double>& honest) {
        return std::vector<double>(honest.begin(), honest.end() - 1);
    };
    CHECK_THROWS_AS((void)corrupt(0, std::vector<double>{1.0, 2.0}, spec), InvalidSpec);
}
