#pragma once

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "deltacon/affinity.hpp"
#include "deltacon/errors.hpp"
#include "deltacon/graph.hpp"

namespace deltacon {

enum class Method { dc0, dc, veo, ged, lambda_adj, lambda_lap, lambda_nl };

inline std::string_view method_name(Method m) {
    switch (m) {
        case Method::dc0: return "DC0";
        case Method::dc: return "DC";
        case Method::veo: return "VEO";
        case Method::ged: return "GED";
        case Method::lambda_adj: return "LAMBDA_ADJ";
        case Method::lambda_lap: return "LAMBDA_LAP";
        case Method::lambda_nl: return "LAMBDA_NL";
    }
    return "?";
}

inline std::optional<Method> method_from_flag(std::string_view s) {
    if (s == "dc0") return Method::dc0;
    if (s == "dc") return Method::dc;
    if (s == "veo") return Method::veo;
    if (s == "ged") return Method::ged;
    if (s == "lambda-adj") return Method::lambda_adj;
    if (s == "lambda-lap") return Method::lambda_lap;
    if (s == "lambda-nl") return Method::lambda_nl;
    return std::nullopt;
}

struct ResultParams {
    std::optional<double> epsilon;
    std::optional<int> groups;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<int> seeds_used;   // mean-over-seeds reporting mode
};

/// One similarity/distance record. similarity = 1/(1+distance) whenever both
/// are present; VEO reports similarity only, GED and lambda-distances report
/// distance only.
struct SimilarityResult {
    Method method = Method::dc0;
    std::optional<double> distance;
    std::optional<double> similarity;
    std::optional<double> sim_std;   // only in mean-over-seeds mode
    ResultParams params;
    double runtime_ms = 0.0;
};

inline nlohmann::ordered_json to_json(const SimilarityResult& r) {
    nlohmann::ordered_json j;
    j["method"] = method_name(r.method);
    j["distance"] = r.distance ? nlohmann::ordered_json(*r.distance) : nlohmann::ordered_json(nullptr);
    j["similarity"] = r.similarity ? nlohmann::ordered_json(*r.similarity) : nlohmann::ordered_json(nullptr);
    j["epsilon"] = r.params.epsilon ? nlohmann::ordered_json(*r.params.epsilon) : nlohmann::ordered_json(nullptr);
    j["g"] = r.params.groups ? nlohmann::ordered_json(*r.params.groups) : nlohmann::ordered_json(nullptr);
    j["seed"] = r.params.seed ? nlohmann::ordered_json(*r.params.seed) : nlohmann::ordered_json(nullptr);
    j["runtime_ms"] = r.runtime_ms;
    if (r.sim_std) j["sim_std"] = *r.sim_std;
    if (r.params.seeds_used) j["seeds"] = *r.params.seeds_used;
    return j;
}

/// Distance-to-similarity conversion, 1/(1+d) in (0,1].
inline double sim_from_distance(double d) {
    if (d < 0.0 || !std::isfinite(d))
        throw ValidationError("distance must be finite and nonnegative");
    return 1.0 / (1.0 + d);
}

namespace detail {
// Tiny negatives are solver noise; anything materially negative is a bug.
constexpr double kNegativeAffinityGuard = -1e-6;

inline double sqrt_clamped(double x) {
    if (x < 0.0) {
        if (x < kNegativeAffinityGuard)
            throw ValidationError("affinity entry " + std::to_string(x) +
                                  " below the solver-noise guard");
        return 0.0;
    }
    return std::sqrt(x);
}
}  // namespace detail

/// Root euclidean distance between two equally shaped score matrices:
/// sqrt(sum_ij (sqrt(a_ij) - sqrt(b_ij))^2).
inline double rooted(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw ValidationError("rooted: shape mismatch (" + std::to_string(a.rows) + "x" +
                              std::to_string(a.cols) + " vs " + std::to_string(b.rows) + "x" +
                              std::to_string(b.cols) + ")");
    double sum = 0.0;
    const std::size_t total = a.data.size();
    for (std::size_t i = 0; i < total; ++i) {
        double d = detail::sqrt_clamped(a.data[i]) - detail::sqrt_clamped(b.data[i]);
        sum += d * d;
    }
    return std::sqrt(sum);
}

inline double rooted(const AffinityMatrix& a, const AffinityMatrix& b) {
    if (a.kind != b.kind) throw ValidationError("rooted: affinity kind mismatch");
    return rooted(a.values, b.values);
}

namespace detail {
class Stopwatch {
public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(clock::now() - start_).count();
    }

private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_ = clock::now();
};
}  // namespace detail

/// Exact connectivity similarity: full affinity matrices under one shared
/// epsilon, compared entrywise by rooted distance.
inline SimilarityResult deltacon0(const Graph& a, const Graph& b, const SolveOptions& opts = {},
                                  std::optional<double> eps_override = std::nullopt,
                                  int node_cap = 20000) {
    detail::Stopwatch timer;
    auto [g1, g2] = union_node_space(a, b);
    const double eps = eps_override.value_or(shared_epsilon(g1, g2));
    AffinityMatrix s1 = full_affinity(g1, eps, opts, node_cap);
    AffinityMatrix s2 = full_affinity(g2, eps, opts, node_cap);
    const double d = rooted(s1, s2);

    SimilarityResult r;
    r.method = Method::dc0;
    r.distance = d;
    r.similarity = sim_from_distance(d);
    r.params.epsilon = eps;
    r.params.tol = opts.tol;
    r.runtime_ms = timer.ms();
    return r;
}

/// Randomized linear-time variant: one partition (shared by both graphs, as
/// symmetry requires) seeds n x g reduced affinity matrices.
inline SimilarityResult deltacon(const Graph& a, const Graph& b, int groups, std::uint64_t seed,
                                 const SolveOptions& opts = {},
                                 std::optional<double> eps_override = std::nullopt) {
    detail::Stopwatch timer;
    auto [g1, g2] = union_node_space(a, b);
    const double eps = eps_override.value_or(shared_epsilon(g1, g2));
    Partition p = random_partition(g1.node_count(), groups, seed);
    AffinityMatrix s1 = reduced_affinity(g1, p, eps, opts);
    AffinityMatrix s2 = reduced_affinity(g2, p, eps, opts);
    const double d = rooted(s1, s2);

    SimilarityResult r;
    r.method = Method::dc;
    r.distance = d;
    r.similarity = sim_from_distance(d);
    r.params.epsilon = eps;
    r.params.groups = groups;
    r.params.seed = seed;
    r.params.tol = opts.tol;
    r.runtime_ms = timer.ms();
    return r;
}

/// Mean-over-seeds reporting mode for the randomized variant; partition seeds
/// are seed0, seed0+1, ... Reports mean similarity (and its std), with the
/// distance backed out of the mean similarity.
inline SimilarityResult deltacon_mean(const Graph& a, const Graph& b, int groups,
                                      std::uint64_t seed0, int nseeds,
                                      const SolveOptions& opts = {},
                                      std::optional<double> eps_override = std::nullopt) {
    if (nseeds < 1) throw ValidationError("nseeds must be >= 1");
    detail::Stopwatch timer;
    double sum = 0.0, sum2 = 0.0;
    for (int k = 0; k < nseeds; ++k) {
        auto r = deltacon(a, b, groups, seed0 + static_cast<std::uint64_t>(k), opts, eps_override);
        sum += *r.similarity;
        sum2 += *r.similarity * *r.similarity;
    }
    const double mean = sum / nseeds;
    const double var = std::max(0.0, sum2 / nseeds - mean * mean);

    SimilarityResult r;
    r.method = Method::dc;
    r.similarity = mean;
    r.distance = mean > 0.0 ? std::optional<double>(1.0 / mean - 1.0) : std::nullopt;
    r.sim_std = std::sqrt(var);
    r.params.groups = groups;
    r.params.seed = seed0;
    r.params.seeds_used = nseeds;
    r.params.tol = opts.tol;
    r.runtime_ms = timer.ms();
    return r;
}

}  // namespace deltacon
