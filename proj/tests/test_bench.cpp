#include <catch2/catch_amalgamated.hpp>

#include <chrono>

#include "deltacon/bench.hpp"
#include "deltacon/generators.hpp"

using namespace deltacon;
namespace dcn = deltacon;

TEST_CASE("a single size gives a single row") {
    auto rows = bench_deltacon({std::size_t(1) << 12}, 16.0, 5, 3, 1);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].edges == std::size_t(1) << 12);
    CHECK(rows[0].runtime_ms > 0.0);
}

TEST_CASE("doubling the group count roughly doubles the runtime") {
    Graph a = random_graph(8192, 1 << 16, 3);
    Graph b = remove_edges_random(a, 0.01, 4);
    auto timed = [&](int groups) {
        auto t0 = std::chrono::steady_clock::now();
        auto res = dcn::deltacon(a, b, groups, 7);
        (void)res;
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };
    // paired within-repetition ratios, median of five; measured away from
    // the small-g fixed overheads and below the 64-column block boundary
    timed(20);
    timed(40);
    std::vector<double> ratios;
    for (int r = 0; r < 5; ++r) {
        double small = timed(20);
        double big = timed(40);
        ratios.push_back(big / small);
    }
    std::sort(ratios.begin(), ratios.end());
    double ratio = ratios[2];
    INFO("ratio " << ratio);
    CHECK(ratio >= 1.5);
    CHECK(ratio <= 2.5);
}
