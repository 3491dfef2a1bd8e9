#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "deltacon/generators.hpp"
#include "deltacon/graph.hpp"
#include "oracles.hpp"

using namespace deltacon;

namespace {

std::set<std::pair<int, int>> edge_set(const Graph& g) {
    std::set<std::pair<int, int>> s;
    for (const auto& e : g.edges()) s.emplace(e.u, e.v);
    return s;
}

}  // namespace

TEST_CASE("family sizes and edge counts") {
    CHECK(generate("K5", 0).edge_count() == 10);
    CHECK(generate("P7", 0).edge_count() == 6);
    CHECK(generate("C8", 0).edge_count() == 8);
    CHECK(generate("S5", 0).edge_count() == 4);
    CHECK(generate("L10", 0).edge_count() == 15);
    CHECK(generate("B10", 0).edge_count() == 21);
    CHECK(generate("WhB10", 0).edge_count() == 17);
    for (const char* name : {"K5", "P7", "C8", "S5", "L10", "B10", "WhB10"}) {
        Graph g = generate(name, 0);
        CHECK(oracle::component_count(g) == 1);
    }
}

TEST_CASE("barbell has exactly one bridge and it is the connector") {
    Graph b10 = generate("B10", 0);
    auto brute = oracle::bridges_by_deletion(b10);
    REQUIRE(brute.size() == 1);
    CHECK(brute[0] == std::pair(4, 5));
    CHECK(bridge_edges(b10) == brute);
}

TEST_CASE("lowlink bridges agree with the deletion oracle") {
    for (const char* name : {"L10", "WhB10", "P9", "C9", "S7", "K6"}) {
        Graph g = generate(name, 0);
        INFO(name);
        CHECK(bridge_edges(g) == oracle::bridges_by_deletion(g));
    }
    for (int t = 0; t < 10; ++t) {
        Graph g = random_graph(14, 16, 300 + t);
        CHECK(bridge_edges(g) == oracle::bridges_by_deletion(g));
    }
}

TEST_CASE("mm removes the designated connector") {
    Graph mm = generate("mmB10", 0);
    CHECK(mm.edge_count() == 20);
    CHECK(!mm.has_edge(4, 5));
    CHECK(oracle::component_count(mm) == 2);

    Graph mml = generate("mmL10", 0);
    CHECK(!mml.has_edge(4, 5));
    CHECK(oracle::component_count(mml) == 2);

    Graph mmw = generate("mmWhB10", 0);
    CHECK(!mmw.has_edge(0, 5));
    CHECK(oracle::component_count(mmw) == 2);

    // two bridge removals stay well-defined on the wheel barbell
    Graph mm2 = generate("mm2WhB10", 0);
    CHECK(mm2.edge_count() == 15);
    CHECK(oracle::component_count(mm2) >= 2);
}

TEST_CASE("m avoids bridges where enough non-bridge edges exist") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        Graph m = generate("mB10", seed);
        CHECK(m.edge_count() == 20);
        CHECK(m.has_edge(4, 5));
        CHECK(oracle::component_count(m) == 1);

        Graph ml = generate("mL10", seed);
        CHECK(ml.has_edge(4, 5));
        CHECK(oracle::component_count(ml) == 1);
    }
    // every path edge is a bridge: the pool falls back to all edges
    Graph mp = generate("mP5", 0);
    CHECK(mp.edge_count() == 3);
    Graph ms = generate("mS5", 0);
    CHECK(ms.edge_count() == 3);
}

TEST_CASE("name grammar") {
    auto spec = parse_topology_name("mm2WhB10");
    CHECK(spec.family == Family::wheel_barbell);
    CHECK(spec.n == 10);
    REQUIRE(spec.mutations.size() == 1);
    CHECK(spec.mutations[0].op == Mutation::Op::remove_bridge_edges);
    CHECK(spec.mutations[0].count == 2);

    auto w = parse_topology_name("w5B10");
    REQUIRE(w.mutations.size() == 1);
    CHECK(w.mutations[0].op == Mutation::Op::set_bridge_weight);
    CHECK(w.mutations[0].weight == 5.0);

    auto both = parse_topology_name("m2w2.5B10");
    REQUIRE(both.mutations.size() == 2);
    CHECK(both.mutations[0].count == 2);
    CHECK(both.mutations[1].weight == 2.5);

    CHECK(parse_topology_name("m10S100").mutations[0].count == 10);
    CHECK(parse_topology_name("K1").n == 1);

    CHECK_THROWS_AS(parse_topology_name("X5"), ValidationError);
    CHECK_THROWS_AS(parse_topology_name("2WhB10"), ValidationError);
    CHECK_THROWS_AS(parse_topology_name("m0B10"), ValidationError);
    CHECK_THROWS_AS(parse_topology_name("B"), ValidationError);
    CHECK_THROWS_AS(parse_topology_name(""), ValidationError);
}

TEST_CASE("mutation and family validation") {
    CHECK_THROWS_AS(generate("mm2K5", 0), ValidationError);    // bridge op, no connector
    CHECK_THROWS_AS(generate("w5K5", 0), ValidationError);
    CHECK_THROWS_AS(generate("B7", 0), ValidationError);       // odd barbell
    CHECK_THROWS_AS(generate("WhB6", 0), ValidationError);     // wheels need 4 a side
    CHECK_THROWS_AS(generate("C2", 0), ValidationError);
    CHECK_THROWS_AS(generate("m30K5", 0), ValidationError);    // more removals than edges
}

TEST_CASE("generation is deterministic per seed") {
    CHECK(generate("m2K30", 7).edges() == generate("m2K30", 7).edges());
    CHECK(generate("m2K30", 7).edges() != generate("m2K30", 8).edges());
    Graph a = random_graph(50, 120, 5);
    Graph b = random_graph(50, 120, 5);
    CHECK(a.edges() == b.edges());
}

TEST_CASE("corruption flips nest across percentages") {
    Graph g = random_graph(50, 120, 21);
    Graph c1 = corrupt_percent(g, 2, 9);
    Graph c2 = corrupt_percent(g, 5, 9);
    Graph c3 = corrupt_percent(g, 10, 9);
    CHECK(corrupt_percent(g, 5, 9).edges() == c2.edges());   // deterministic

    auto base = edge_set(g);
    auto flips = [&](const Graph& c) {
        std::set<std::pair<int, int>> out;
        auto cs = edge_set(c);
        for (const auto& e : base)
            if (!cs.count(e)) out.insert(e);
        for (const auto& e : cs)
            if (!base.count(e)) out.insert(e);
        return out;
    };
    auto f1 = flips(c1), f2 = flips(c2), f3 = flips(c3);
    CHECK(f1.size() < f2.size());
    CHECK(f2.size() < f3.size());
    CHECK(std::includes(f2.begin(), f2.end(), f1.begin(), f1.end()));
    CHECK(std::includes(f3.begin(), f3.end(), f2.begin(), f2.end()));
}

TEST_CASE("corruption that rounds to zero pairs leaves the graph alone") {
    Graph tiny(3, {{0, 1, 1.0}});
    CHECK(corrupt_percent(tiny, 1.0, 4).edges() == tiny.edges());
    CHECK_THROWS_AS(corrupt_percent(tiny, 0.0, 4), ValidationError);
    CHECK_THROWS_AS(corrupt_percent(tiny, 101.0, 4), ValidationError);
}

TEST_CASE("random and targeted removal take exactly the same count") {
    Graph g = random_graph(40, 160, 31);
    for (double f : {0.1, 0.25, 0.5}) {
        Graph r = remove_edges_random(g, f, 3);
        Graph t = remove_edges_targeted(g, f, 3);
        CHECK(r.edge_count() == t.edge_count());
        CHECK(g.edge_count() - r.edge_count() == removal_count(g, f));
    }
    // a fraction that rounds to zero removals
    CHECK(remove_edges_random(g, 0.001, 3).edges() == g.edges());
    CHECK(remove_edges_targeted(g, 0.001, 3).edges() == g.edges());
    CHECK_THROWS_AS(remove_edges_random(g, 0.0, 3), ValidationError);
    CHECK_THROWS_AS(remove_edges_random(g, 1.0, 3), ValidationError);
}

TEST_CASE("targeted removal empties whole nodes in sequence") {
    Graph star = generate("S100", 0);
    // find a seed whose shuffled node order starts at the hub
    std::uint64_t hub_first = 0;
    for (std::uint64_t s = 0;; ++s) {
        Rng probe(split_seed(s, 0x746774ull));
        std::vector<int> order(100);
        for (int i = 0; i < 100; ++i) order[i] = i;
        probe.shuffle(order);
        if (order[0] == 0) {
            hub_first = s;
            break;
        }
    }
    Graph t = remove_edges_targeted(star, 0.9, hub_first);
    CHECK(t.edge_count() == star.edge_count() - removal_count(star, 0.9));
    CHECK(t.edge_count() == 10);
}

TEST_CASE("generated graphs always pass graph invariants") {
    for (const char* name :
         {"m3K20", "mm2B12", "w2L8", "m2w5B10", "mWhB12", "m10C100", "m10P100", "m10S100"}) {
        Graph g = generate(name, 3);
        double total = 0.0, wsum = 0.0;
        for (double d : g.degrees()) total += d;
        for (const auto& e : g.edges()) {
            CHECK(e.u < e.v);
            CHECK(e.w > 0.0);
            wsum += e.w;
        }
        CHECK(total == Catch::Approx(2.0 * wsum));
    }
}
