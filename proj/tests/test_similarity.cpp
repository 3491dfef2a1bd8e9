#include <catch2/catch_amalgamated.hpp>

#include "deltacon/generators.hpp"
#include "deltacon/graph.hpp"
#include "deltacon/similarity.hpp"

using namespace deltacon;
namespace dcn = deltacon;

TEST_CASE("rooted distance basics") {
    DenseMatrix zero(2, 2);
    CHECK(rooted(zero, zero) == 0.0);
    CHECK(rooted(DenseMatrix::identity(2), zero) == Catch::Approx(std::sqrt(2.0)));

    DenseMatrix other(2, 3);
    CHECK_THROWS_AS(rooted(zero, other), ValidationError);

    // solver noise below zero is clamped, anything material throws
    DenseMatrix noisy(1, 1);
    noisy(0, 0) = -1e-12;
    CHECK(rooted(noisy, DenseMatrix(1, 1)) == 0.0);
    noisy(0, 0) = -1e-3;
    CHECK_THROWS_AS(rooted(noisy, DenseMatrix(1, 1)), ValidationError);
}

TEST_CASE("distance to similarity conversion") {
    CHECK(sim_from_distance(0.0) == 1.0);
    CHECK(sim_from_distance(1.0) == 0.5);
    CHECK(sim_from_distance(9.0) == Catch::Approx(0.1));
    CHECK_THROWS_AS(sim_from_distance(-0.5), ValidationError);
}

TEST_CASE("identity: sim(G,G) is exactly 1") {
    for (int t = 0; t < 8; ++t) {
        Graph g = random_graph(24, 50, 40 + t);
        CHECK(*deltacon0(g, g).similarity == 1.0);
        CHECK(*dcn::deltacon(g, g, 4, 9 + t).similarity == 1.0);
    }
}

TEST_CASE("symmetry: both orders give bitwise equal results") {
    for (int t = 0; t < 6; ++t) {
        Graph a = random_graph(20, 45, 70 + t);
        Graph b = random_graph(26, 30, 170 + t);
        auto r1 = deltacon0(a, b);
        auto r2 = deltacon0(b, a);
        CHECK(*r1.distance == *r2.distance);
        CHECK(*r1.similarity == *r2.similarity);

        auto f1 = dcn::deltacon(a, b, 5, 33);
        auto f2 = dcn::deltacon(b, a, 5, 33);
        CHECK(*f1.similarity == *f2.similarity);
    }
}

TEST_CASE("singleton grouping reduces to the exact measure") {
    Graph a = generate("K12", 0);
    Graph b = generate("mK12", 0);
    SolveOptions tight{1e-12, 50000};
    auto exact = deltacon0(a, b, tight);
    auto grouped = dcn::deltacon(a, b, 12, 99, tight);
    CHECK(*grouped.similarity == Catch::Approx(*exact.similarity).margin(1e-9));
}

TEST_CASE("grouped similarity upper bounds the exact one") {
    Rng rng(5);
    for (int t = 0; t < 25; ++t) {
        Graph a = random_graph(30, 70, 1000 + t);
        Graph b = random_graph(30, 70, 2000 + t);
        int g = 1 + rng.below_int(30);
        auto exact = deltacon0(a, b);
        auto grouped = dcn::deltacon(a, b, g, 3000 + t);
        CHECK(*grouped.similarity >= *exact.similarity - 1e-9);
    }
}

TEST_CASE("clique vs empty similarity shrinks with size") {
    double prev = 1.0;
    for (int n : {10, 30, 60}) {
        Graph k = generate(("K" + std::to_string(n)).c_str(), 0);
        Graph e(n, {});
        double s = *deltacon0(k, e).similarity;
        CHECK(s < prev);
        prev = s;
    }
}

TEST_CASE("more corruption, less similarity") {
    Graph g = random_graph(60, 180, 11);
    double prev = 1.1;
    for (double p : {2.0, 5.0, 10.0, 20.0, 40.0}) {
        double s = *deltacon0(g, corrupt_percent(g, p, 77)).similarity;
        CHECK(s <= prev);
        prev = s;
    }
}

TEST_CASE("mean-over-seeds reporting") {
    Graph a = generate("B10", 0);
    Graph b = generate("mB10", 0);
    auto r1 = deltacon_mean(a, b, 5, 100, 10);
    auto r2 = deltacon_mean(a, b, 5, 100, 10);
    CHECK(*r1.similarity == *r2.similarity);   // deterministic
    CHECK(*r1.sim_std >= 0.0);
    CHECK(*r1.params.seeds_used == 10);

    double lo = 1.0, hi = 0.0;
    for (int k = 0; k < 10; ++k) {
        double s = *dcn::deltacon(a, b, 5, 100 + k).similarity;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    CHECK(*r1.similarity >= lo);
    CHECK(*r1.similarity <= hi);
    CHECK_THROWS_AS(deltacon_mean(a, b, 5, 0, 0), ValidationError);
}

TEST_CASE("result record carries the documented fields") {
    Graph a = generate("C6", 0);
    Graph b = generate("P6", 0);
    auto j = to_json(dcn::deltacon(a, b, 3, 42));
    for (const char* key : {"method", "distance", "similarity", "epsilon", "g", "seed", "runtime_ms"})
        CHECK(j.contains(key));
    CHECK(j["method"] == "DC");
    CHECK(j["g"] == 3);

    auto j0 = to_json(deltacon0(a, b));
    CHECK(j0["method"] == "DC0");
    CHECK(j0["g"].is_null());
}

TEST_CASE("method flags round trip") {
    for (const char* flag : {"dc0", "dc", "veo", "ged", "lambda-adj", "lambda-lap", "lambda-nl"}) {
        auto m = method_from_flag(flag);
        REQUIRE(m.has_value());
    }
    CHECK(!method_from_flag("dc1").has_value());
    CHECK(method_name(Method::lambda_nl) == "LAMBDA_NL");
}
