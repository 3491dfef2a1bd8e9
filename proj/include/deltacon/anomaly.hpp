#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "deltacon/errors.hpp"
#include "deltacon/graph.hpp"
#include "deltacon/similarity.hpp"

namespace deltacon {

/// Individuals-chart constant d2 for the moving-range sigma estimate.
inline constexpr double kMovingRangeD2 = 1.128;

struct AnomalyReport {
    std::vector<double> scores;       // sim(G_t, G_{t+1})
    double median = 0.0;
    double sigma_hat = 0.0;           // mean moving range / d2
    double lower_limit = 0.0;         // median - 3 sigma_hat
    double upper_limit = 0.0;         // median + 3 sigma_hat
    std::vector<int> flagged;         // steps strictly below the lower limit
    std::vector<int> above_upper;     // informational only, never anomalies
};

struct TimelineOptions {
    int groups = 5;
    std::uint64_t seed = 0;
    int nseeds = 1;
    SolveOptions solve;
};

/// Consecutive-snapshot similarities. All snapshots are re-hosted on the
/// union node space of the whole stream and solved under one stream-wide
/// epsilon, so scores are commensurable across time.
inline std::vector<double> similarity_timeline(const std::vector<Graph>& snapshots,
                                               const TimelineOptions& opts = {}) {
    if (snapshots.size() < 2)
        throw ValidationError("timeline needs at least 2 snapshots");

    int n = 0;
    double max_deg = 0.0;
    for (const auto& g : snapshots) {
        n = std::max(n, g.node_count());
        max_deg = std::max(max_deg, g.max_degree());
    }
    const double eps = max_deg > 0.0 ? 1.0 / (1.0 + max_deg) : 0.5;

    std::vector<Graph> hosted;
    hosted.reserve(snapshots.size());
    for (const auto& g : snapshots) hosted.push_back(g.with_node_count(n));

    std::vector<double> scores;
    scores.reserve(snapshots.size() - 1);
    for (std::size_t t = 0; t + 1 < hosted.size(); ++t) {
        SimilarityResult r =
            opts.nseeds > 1
                ? deltacon_mean(hosted[t], hosted[t + 1], opts.groups, opts.seed, opts.nseeds,
                                opts.solve, eps)
                : deltacon(hosted[t], hosted[t + 1], opts.groups, opts.seed, opts.solve, eps);
        scores.push_back(*r.similarity);
    }
    return scores;
}

inline double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Individual moving-range control limits. Only dips below the lower limit
/// count as anomalies; high similarities are reported separately and never
/// flagged.
inline AnomalyReport control_limits(const std::vector<double>& scores) {
    if (scores.size() < 3)
        throw ValidationError("control limits need at least 3 scores");

    double mr_sum = 0.0;
    for (std::size_t t = 1; t < scores.size(); ++t) mr_sum += std::abs(scores[t] - scores[t - 1]);
    const double mr_mean = mr_sum / static_cast<double>(scores.size() - 1);

    AnomalyReport rep;
    rep.scores = scores;
    rep.median = median_of(scores);
    rep.sigma_hat = mr_mean / kMovingRangeD2;
    rep.lower_limit = rep.median - 3.0 * rep.sigma_hat;
    rep.upper_limit = rep.median + 3.0 * rep.sigma_hat;
    for (std::size_t t = 0; t < scores.size(); ++t) {
        if (scores[t] < rep.lower_limit) rep.flagged.push_back(static_cast<int>(t));
        if (scores[t] > rep.upper_limit) rep.above_upper.push_back(static_cast<int>(t));
    }
    return rep;
}

}  // namespace deltacon
