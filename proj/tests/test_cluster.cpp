#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "deltacon/cluster.hpp"
#include "deltacon/generators.hpp"

using namespace deltacon;

namespace {

/// Two lightly corrupted families: near-cliques and near-cycles on 20 nodes.
std::vector<Graph> planted_families(int per_family) {
    std::vector<Graph> graphs;
    Graph k = generate("K20", 0);
    Graph c = generate("C20", 0);
    for (int i = 0; i < per_family; ++i) graphs.push_back(corrupt_percent(k, 2, 10 + i));
    for (int i = 0; i < per_family; ++i) graphs.push_back(corrupt_percent(c, 2, 50 + i));
    return graphs;
}

std::set<std::set<int>> as_partition(const std::vector<int>& labels) {
    std::map<int, std::set<int>> groups;
    for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].insert(static_cast<int>(i));
    std::set<std::set<int>> out;
    for (auto& [_, members] : groups) out.insert(members);
    return out;
}

}  // namespace

TEST_CASE("pairwise similarity matrix contract") {
    Graph g = generate("K10", 0);
    auto sim = pairwise_similarity({g, g}, {.groups = 5, .seed = 3});
    CHECK(sim(0, 0) == 1.0);
    CHECK(sim(1, 1) == 1.0);
    CHECK(sim(0, 1) == 1.0);
    CHECK(sim(1, 0) == 1.0);

    auto graphs = planted_families(3);
    auto m = pairwise_similarity(graphs, {.groups = 4, .seed = 9});
    for (int i = 0; i < m.rows; ++i) {
        CHECK(m(i, i) == 1.0);
        for (int j = 0; j < m.cols; ++j) CHECK(m(i, j) == m(j, i));   // bitwise
    }
    CHECK_THROWS_AS(pairwise_similarity({g}), ValidationError);
}

TEST_CASE("identical inputs merge at height zero") {
    Graph g = generate("C12", 0);
    auto sim = pairwise_similarity({g, g, g}, {.groups = 3, .seed = 1});
    auto dg = ward_cluster(sim);
    REQUIRE(dg.merges.size() == 2);
    for (const auto& m : dg.merges) CHECK(m.height == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("merge heights never decrease") {
    auto graphs = planted_families(4);
    auto dg = ward_cluster(pairwise_similarity(graphs, {.groups = 5, .seed = 2}));
    REQUIRE(dg.merges.size() == graphs.size() - 1);
    for (std::size_t t = 1; t < dg.merges.size(); ++t)
        CHECK(dg.merges[t].height >= dg.merges[t - 1].height - 1e-12);
    CHECK(dg.merges.back().size == static_cast<int>(graphs.size()));
}

TEST_CASE("planted families are recovered at k=2") {
    auto graphs = planted_families(6);
    auto dg = ward_cluster(pairwise_similarity(graphs, {.groups = 5, .seed = 4}));
    auto labels = cut(dg, 2);
    REQUIRE(labels.size() == 12);
    std::set<int> first(labels.begin(), labels.begin() + 6);
    std::set<int> second(labels.begin() + 6, labels.end());
    CHECK(first.size() == 1);
    CHECK(second.size() == 1);
    CHECK(*first.begin() != *second.begin());
}

TEST_CASE("cut edge cases") {
    auto graphs = planted_families(3);
    auto dg = ward_cluster(pairwise_similarity(graphs, {.groups = 5, .seed = 4}));

    auto singletons = cut(dg, 6);
    std::set<int> distinct(singletons.begin(), singletons.end());
    CHECK(distinct.size() == 6);

    auto all = cut(dg, 1);
    for (int l : all) CHECK(l == 0);

    CHECK_THROWS_AS(cut(dg, 0), ValidationError);
    CHECK_THROWS_AS(cut(dg, 7), ValidationError);
}

TEST_CASE("clustering is stable under input reordering") {
    auto graphs = planted_families(4);
    auto labels = cut(ward_cluster(pairwise_similarity(graphs, {.groups = 5, .seed = 8})), 2);

    std::vector<Graph> reordered;
    std::vector<int> order = {3, 7, 0, 5, 1, 6, 2, 4};
    for (int i : order) reordered.push_back(graphs[i]);
    auto relabels = cut(ward_cluster(pairwise_similarity(reordered, {.groups = 5, .seed = 8})), 2);

    // map the reordered labels back to original positions
    std::vector<int> mapped(labels.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) mapped[order[pos]] = relabels[pos];
    CHECK(as_partition(mapped) == as_partition(labels));
}

TEST_CASE("ward input validation") {
    DenseMatrix bad(2, 2);
    bad(0, 0) = bad(1, 1) = 1.0;   // off-diagonal zeros are invalid similarities
    CHECK_THROWS_AS(ward_cluster(bad), ValidationError);
    CHECK_THROWS_AS(ward_cluster(DenseMatrix(1, 1)), ValidationError);
}
