#include <doctest.h>

#include "draco/verify.hpp"

using namespace draco;

TEST_CASE("doubling the dimension doubles repetition decode time") {
    const auto small = verify::bench_cell(Scheme::Repetition, 6, 1, 20000, 15, 0, 42);
    const auto large = verify::bench_cell(Scheme::Repetition, 6, 1, 40000, 15, 0, 42);
    const double ratio =
        static_cast<double>(large.decode_ns) / static_cast<double>(small.decode_ns);
    CHECK(ratio >= 1.5);
    CHECK(ratio <= 2.5);
}

TEST_CASE("log-log slope helper recovers a known power law") {
    const std::vector<double> x{1.0, 2.0, 4.0, 8.0};
    const std::vector<double> y{3.0, 6.0, 12.0, 24.0};
    CHECK(verify::loglog_slope(x, y) == doctest::Approx(1.0));
    const std::vector<double> y2{3.0, 12.0, 48.0, 192.0};
    CHECK(verify::loglog_slope(x, y2) == doctest::Approx(2.0));
}
