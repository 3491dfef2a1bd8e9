#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <regex>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "deltacon/errors.hpp"
#include "deltacon/graph.hpp"
#include "deltacon/rng.hpp"

namespace deltacon {

enum class Family { clique, path, cycle, star, lollipop, barbell, wheel_barbell };

inline std::string_view family_token(Family f) {
    switch (f) {
        case Family::clique: return "K";
        case Family::path: return "P";
        case Family::cycle: return "C";
        case Family::star: return "S";
        case Family::lollipop: return "L";
        case Family::barbell: return "B";
        case Family::wheel_barbell: return "WhB";
    }
    return "?";
}

struct Mutation {
    enum class Op { remove_random_edges, remove_bridge_edges, set_bridge_weight };
    Op op;
    int count = 0;       // removal ops
    double weight = 0.0; // set_bridge_weight
};

/// A named synthetic topology: family letter, node count, ordered mutations.
struct TopologySpec {
    Family family = Family::clique;
    int n = 0;
    std::vector<Mutation> mutations;
};

/// Name grammar: [m|mm][count] [w<weight>] <K|P|C|S|L|B|WhB> <size>,
/// e.g. "B10", "mB10", "mm2WhB10", "w5B10", "m10S100".
inline TopologySpec parse_topology_name(std::string_view name) {
    static const std::regex grammar(R"(^(mm|m)?(\d+)?(?:w(\d+(?:\.\d+)?))?(WhB|K|P|C|S|L|B)(\d+)$)");
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_match(name.begin(), name.end(), m, grammar))
        throw ValidationError("unrecognized graph name \"" + std::string(name) + "\"");
    if (!m[1].matched && m[2].matched)
        throw ValidationError("removal count without m/mm prefix in \"" + std::string(name) + "\"");

    TopologySpec spec;
    const std::string fam = m[4].str();
    if (fam == "K") spec.family = Family::clique;
    else if (fam == "P") spec.family = Family::path;
    else if (fam == "C") spec.family = Family::cycle;
    else if (fam == "S") spec.family = Family::star;
    else if (fam == "L") spec.family = Family::lollipop;
    else if (fam == "B") spec.family = Family::barbell;
    else spec.family = Family::wheel_barbell;
    spec.n = std::stoi(m[5].str());

    if (m[1].matched) {
        int count = m[2].matched ? std::stoi(m[2].str()) : 1;
        if (count < 1) throw ValidationError("removal count must be >= 1");
        Mutation mut;
        mut.op = m[1].str() == "mm" ? Mutation::Op::remove_bridge_edges
                                    : Mutation::Op::remove_random_edges;
        mut.count = count;
        spec.mutations.push_back(mut);
    }
    if (m[3].matched) {
        Mutation mut;
        mut.op = Mutation::Op::set_bridge_weight;
        mut.weight = std::stod(m[3].str());
        spec.mutations.push_back(mut);
    }
    return spec;
}

/// Edges whose removal disconnects the graph (iterative lowlink DFS).
inline std::vector<std::pair<int, int>> bridge_edges(const Graph& g) {
    const int n = g.node_count();
    std::vector<int> disc(n, -1), low(n, 0), parent(n, -1);
    std::vector<std::size_t> next_child(n, 0);
    std::vector<std::pair<int, int>> bridges;
    int timer = 0;

    std::vector<int> stack;
    for (int root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        stack.push_back(root);
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            int v = stack.back();
            auto nbs = g.neighbors(v);
            if (next_child[v] < nbs.size()) {
                int u = nbs[next_child[v]++];
                if (u == parent[v]) continue;
                if (disc[u] == -1) {
                    parent[u] = v;
                    disc[u] = low[u] = timer++;
                    stack.push_back(u);
                } else {
                    low[v] = std::min(low[v], disc[u]);
                }
            } else {
                stack.pop_back();
                if (parent[v] != -1) {
                    low[parent[v]] = std::min(low[parent[v]], low[v]);
                    if (low[v] > disc[parent[v]])
                        bridges.emplace_back(std::min(v, parent[v]), std::max(v, parent[v]));
                }
            }
        }
    }
    std::sort(bridges.begin(), bridges.end());
    return bridges;
}

namespace detail {

inline void add_clique(std::vector<Edge>& edges, int first, int count) {
    for (int i = first; i < first + count; ++i)
        for (int j = i + 1; j < first + count; ++j) edges.push_back({i, j, 1.0});
}

inline void add_wheel(std::vector<Edge>& edges, int hub, int count) {
    const int rim = count - 1;
    for (int i = 1; i < count; ++i) edges.push_back({hub, hub + i, 1.0});
    for (int i = 0; i < rim; ++i) {
        int a = hub + 1 + i, b = hub + 1 + (i + 1) % rim;
        if (a != b) edges.push_back({std::min(a, b), std::max(a, b), 1.0});
    }
}

inline Graph base_topology(Family family, int n) {
    auto require = [&](bool ok, const char* what) {
        if (!ok)
            throw ValidationError(std::string(family_token(family)) + std::to_string(n) + ": " + what);
    };
    std::vector<Edge> edges;
    switch (family) {
        case Family::clique:
            require(n >= 1, "clique needs n >= 1");
            add_clique(edges, 0, n);
            break;
        case Family::path:
            require(n >= 1, "path needs n >= 1");
            for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
            break;
        case Family::cycle:
            require(n >= 3, "cycle needs n >= 3");
            for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
            edges.push_back({0, n - 1, 1.0});
            break;
        case Family::star:
            require(n >= 2, "star needs n >= 2");
            for (int i = 1; i < n; ++i) edges.push_back({0, i, 1.0});
            break;
        case Family::lollipop: {
            require(n >= 4 && n % 2 == 0, "lollipop needs even n >= 4");
            const int h = n / 2;
            add_clique(edges, 0, h);
            for (int i = h - 1; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
            break;
        }
        case Family::barbell: {
            require(n >= 4 && n % 2 == 0, "barbell needs even n >= 4");
            const int h = n / 2;
            add_clique(edges, 0, h);
            add_clique(edges, h, n - h);
            edges.push_back({h - 1, h, 1.0});
            break;
        }
        case Family::wheel_barbell: {
            require(n >= 8 && n % 2 == 0, "wheel-barbell needs even n >= 8");
            const int h = n / 2;
            add_wheel(edges, 0, h);
            add_wheel(edges, h, n - h);
            edges.push_back({0, h, 1.0});
            break;
        }
    }
    return Graph(n, std::move(edges));
}

/// The connector(s) whose weight "w" refers to and that "mm" removes first.
inline std::vector<std::pair<int, int>> designated_bridges(Family family, int n) {
    const int h = n / 2;
    switch (family) {
        case Family::lollipop: return {{h - 1, h}};
        case Family::barbell: return {{h - 1, h}};
        case Family::wheel_barbell: return {{0, h}};
        default: return {};
    }
}

inline void erase_edge(std::vector<Edge>& edges, int u, int v) {
    auto it = std::find_if(edges.begin(), edges.end(),
                           [&](const Edge& e) { return e.u == u && e.v == v; });
    if (it == edges.end()) throw ValidationError("edge to remove is not present");
    edges.erase(it);
}

}  // namespace detail

/// Builds a named topology and applies its mutations in order, each drawing
/// from a sub-stream of rng_seed. m_x draws uniformly from the non-bridge
/// edges when enough exist (paths and stars are all bridges, so they fall
/// back to the full edge set); mm_x removes the designated connector(s),
/// then remaining graph bridges, then edges touching the last cut.
inline Graph generate(const TopologySpec& spec, std::uint64_t rng_seed) {
    Graph g = detail::base_topology(spec.family, spec.n);
    std::vector<Edge> edges = g.edges();
    auto designated = detail::designated_bridges(spec.family, spec.n);

    std::size_t mut_index = 0;
    for (const auto& mut : spec.mutations) {
        Rng rng(split_seed(rng_seed, 0x6d75740000ull + mut_index++));
        switch (mut.op) {
            case Mutation::Op::remove_random_edges: {
                Graph current(spec.n, edges);
                auto bridges = bridge_edges(current);
                std::vector<std::pair<int, int>> pool;
                for (const auto& e : edges) {
                    auto key = std::pair(e.u, e.v);
                    if (!std::binary_search(bridges.begin(), bridges.end(), key)) pool.push_back(key);
                }
                if (pool.size() < static_cast<std::size_t>(mut.count)) {
                    pool.clear();
                    for (const auto& e : edges) pool.emplace_back(e.u, e.v);
                }
                if (pool.size() < static_cast<std::size_t>(mut.count))
                    throw ValidationError("not enough edges to remove " + std::to_string(mut.count));
                for (std::size_t idx : rng.sample(pool.size(), static_cast<std::size_t>(mut.count)))
                    detail::erase_edge(edges, pool[idx].first, pool[idx].second);
                break;
            }
            case Mutation::Op::remove_bridge_edges: {
                if (designated.empty())
                    throw ValidationError("bridge removal only applies to L/B/WhB families");
                std::pair<int, int> last{-1, -1};
                for (int r = 0; r < mut.count; ++r) {
                    Graph current(spec.n, edges);
                    std::pair<int, int> victim{-1, -1};
                    for (const auto& d : designated)
                        if (current.has_edge(d.first, d.second)) {
                            victim = d;
                            break;
                        }
                    if (victim.first < 0) {
                        auto bridges = bridge_edges(current);
                        if (!bridges.empty()) {
                            victim = bridges.front();
                        } else if (last.first >= 0) {
                            // no bridges remain; cut the smallest edge at the
                            // endpoints of the previous cut
                            for (const auto& e : edges) {
                                if (e.u == last.first || e.v == last.first || e.u == last.second ||
                                    e.v == last.second) {
                                    victim = {e.u, e.v};
                                    break;
                                }
                            }
                        }
                    }
                    if (victim.first < 0)
                        throw ValidationError("no bridge edge available to remove");
                    detail::erase_edge(edges, victim.first, victim.second);
                    last = victim;
                }
                break;
            }
            case Mutation::Op::set_bridge_weight: {
                if (designated.empty())
                    throw ValidationError("bridge weight only applies to L/B/WhB families");
                if (!(std::isfinite(mut.weight) && mut.weight > 0.0))
                    throw ValidationError("bridge weight must be positive");
                auto [u, v] = designated.front();
                auto it = std::find_if(edges.begin(), edges.end(),
                                       [&](const Edge& e) { return e.u == u && e.v == v; });
                if (it == edges.end())
                    throw ValidationError("bridge edge was removed; cannot set its weight");
                it->w = mut.weight;
                break;
            }
        }
    }
    return Graph(spec.n, std::move(edges));
}

inline Graph generate(std::string_view name, std::uint64_t rng_seed) {
    return generate(parse_topology_name(name), rng_seed);
}

/// Uniform random graph with exactly m distinct edges (no self-loops).
inline Graph random_graph(int n, std::size_t m, std::uint64_t seed) {
    const std::size_t max_pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
    if (m > max_pairs) throw ValidationError("too many edges requested");
    Rng rng(split_seed(seed, 0x6572ull));
    std::unordered_set<std::uint64_t> chosen;
    std::vector<Edge> edges;
    edges.reserve(m);
    while (edges.size() < m) {
        int u = rng.below_int(n);
        int v = rng.below_int(n);
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        std::uint64_t key = static_cast<std::uint64_t>(u) << 32 | static_cast<std::uint32_t>(v);
        if (chosen.insert(key).second) edges.push_back({u, v, 1.0});
    }
    return Graph(n, std::move(edges));
}

/// Flips round(percent/100 * n(n-1)/2) node pairs, drawn as a prefix of one
/// seeded pair permutation — so flip sets nest across percentages under the
/// same seed (the corruption is incremental).
inline Graph corrupt_percent(const Graph& g, double percent, std::uint64_t seed) {
    if (!(percent > 0.0 && percent <= 100.0))
        throw ValidationError("corruption percent must lie in (0,100]");
    const int n = g.node_count();
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);

    Rng rng(split_seed(seed, 0x636f72ull));
    rng.shuffle(pairs);
    const auto flips = static_cast<std::size_t>(std::llround(percent / 100.0 * pairs.size()));

    std::unordered_set<std::uint64_t> flip_set;
    for (std::size_t i = 0; i < flips; ++i)
        flip_set.insert(static_cast<std::uint64_t>(pairs[i].first) << 32 |
                        static_cast<std::uint32_t>(pairs[i].second));

    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
        std::uint64_t key = static_cast<std::uint64_t>(e.u) << 32 | static_cast<std::uint32_t>(e.v);
        if (!flip_set.erase(key)) edges.push_back(e);
    }
    for (std::uint64_t key : flip_set)
        edges.push_back({static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffu), 1.0});
    return Graph(n, std::move(edges));
}

/// Number of edges a fraction corresponds to; shared by both removal modes so
/// their counts match exactly.
inline std::size_t removal_count(const Graph& g, double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw ValidationError("removal fraction must lie in (0,1)");
    return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(g.edge_count())));
}

inline Graph remove_edges_random(const Graph& g, double fraction, std::uint64_t seed) {
    const std::size_t count = removal_count(g, fraction);
    Rng rng(split_seed(seed, 0x726e64ull));
    auto victims = rng.sample(g.edge_count(), count);
    std::vector<bool> dead(g.edge_count(), false);
    for (std::size_t idx : victims) dead[idx] = true;
    std::vector<Edge> edges;
    edges.reserve(g.edge_count() - count);
    for (std::size_t i = 0; i < g.edge_count(); ++i)
        if (!dead[i]) edges.push_back(g.edges()[i]);
    return Graph(g.node_count(), std::move(edges));
}

/// Seeded node sequence; each node loses all its remaining edges, with the
/// final node trimmed so exactly the same count as the random mode goes.
inline Graph remove_edges_targeted(const Graph& g, double fraction, std::uint64_t seed) {
    const std::size_t count = removal_count(g, fraction);
    Rng rng(split_seed(seed, 0x746774ull));
    std::vector<int> order(static_cast<std::size_t>(g.node_count()));
    for (int i = 0; i < g.node_count(); ++i) order[i] = i;
    rng.shuffle(order);

    std::unordered_set<std::uint64_t> dead;
    std::size_t removed = 0;
    for (int v : order) {
        if (removed >= count) break;
        for (int u : g.neighbors(v)) {
            int a = std::min(u, v), b = std::max(u, v);
            std::uint64_t key = static_cast<std::uint64_t>(a) << 32 | static_cast<std::uint32_t>(b);
            if (dead.insert(key).second && ++removed >= count) break;
        }
    }
    std::vector<Edge> edges;
    edges.reserve(g.edge_count() - count);
    for (const auto& e : g.edges()) {
        std::uint64_t key = static_cast<std::uint64_t>(e.u) << 32 | static_cast<std::uint32_t>(e.v);
        if (!dead.count(key)) edges.push_back(e);
    }
    return Graph(g.node_count(), std::move(edges));
}

}  // namespace deltacon
