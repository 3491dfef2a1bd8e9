#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "deltacon/generators.hpp"
#include "deltacon/similarity.hpp"

namespace deltacon {

struct BenchRow {
    std::size_t edges = 0;
    double runtime_ms = 0.0;           // fastest repetition
    std::vector<double> samples;       // per repetition, in repetition order
};

/// Consecutive-size ratios of the per-size best times. Best-of-N is the
/// standard low-noise estimator of intrinsic cost on a shared host; spreading
/// the N repetitions over the whole run keeps one slow window from inflating
/// every sample of a size.
inline std::vector<double> doubling_ratios(const std::vector<BenchRow>& rows) {
    std::vector<double> out;
    for (std::size_t i = 1; i < rows.size(); ++i)
        out.push_back(rows[i].runtime_ms / rows[i - 1].runtime_ms);
    return out;
}

/// Times one grouped-similarity call per edge count on seeded random graphs
/// of fixed mean degree (so n grows with m). Sizes are visited in order
/// within each repetition, after one untimed warm-up pass; graph generation
/// is untimed.
inline std::vector<BenchRow> bench_deltacon(const std::vector<std::size_t>& edge_counts,
                                            double mean_degree, int groups, std::uint64_t seed,
                                            int repeats = 3) {
    std::vector<std::pair<Graph, Graph>> inputs;
    for (std::size_t m : edge_counts) {
        const int n = static_cast<int>(2.0 * static_cast<double>(m) / mean_degree);
        Graph a = random_graph(n, m, seed);
        Graph b = remove_edges_random(a, 0.01, seed + 1);
        inputs.emplace_back(std::move(a), std::move(b));
    }

    std::vector<BenchRow> rows;
    for (std::size_t m : edge_counts) rows.push_back({m, -1.0, {}});
    for (int r = -1; r < repeats; ++r) {
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            auto t0 = std::chrono::steady_clock::now();
            auto res = deltacon(inputs[i].first, inputs[i].second, groups, seed + 2);
            double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                            .count();
            (void)res;
            if (r < 0) continue;   // warm-up
            rows[i].samples.push_back(ms);
            if (rows[i].runtime_ms < 0.0 || ms < rows[i].runtime_ms) rows[i].runtime_ms = ms;
        }
    }
    return rows;
}

}  // namespace deltacon
