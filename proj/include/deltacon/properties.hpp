#pragma once

#include <array>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "deltacon/baselines.hpp"
#include "deltacon/generators.hpp"
#include "deltacon/graph.hpp"
#include "deltacon/similarity.hpp"

namespace deltacon {

enum class PropertyTag { P1, P2, P3, P4, A1, A2, A3 };

/// One battery row: graphs named by the Table-3 grammar. P1 rows carry three
/// names (pairs (A,B) vs (A,C)); P2/P3 rows carry four (pairs (A,B) vs (C,D)).
/// A similarity method satisfies the row when sim(A,B) - sim(A|C, C|D) > 0; a
/// distance method when d(A,C|C,D) - d(A,B) > 0.
struct PropertyCase {
    PropertyTag property = PropertyTag::P1;
    std::array<std::string, 4> graphs;   // A, B, C, D (D empty on P1 rows)
};

struct CaseResult {
    PropertyCase body;
    double delta = 0.0;
    bool is_distance = false;   // delta is a distance difference
    bool pass = false;          // delta > 0
};

struct HarnessOptions {
    // Generation seed for the named graphs. The default instance removes
    // clique edges away from the connector endpoints on the 10-node rows,
    // matching the canonical small-graph drawings.
    std::uint64_t gen_seed = 1;
    int groups = 5;
    int nseeds = 10;
    std::uint64_t partition_seed = 1;
    SolveOptions solve;
};

inline std::vector<PropertyCase> table4_battery() {
    return {
        {PropertyTag::P1, {"B10", "mB10", "mmB10", ""}},
        {PropertyTag::P1, {"L10", "mL10", "mmL10", ""}},
        {PropertyTag::P1, {"WhB10", "mWhB10", "mmWhB10", ""}},
        {PropertyTag::P1, {"WhB10", "m2WhB10", "mm2WhB10", ""}},
    };
}

inline std::vector<PropertyCase> table5_battery() {
    return {
        {PropertyTag::P2, {"B10", "mB10", "B10", "w5B10"}},
        {PropertyTag::P2, {"mmB10", "B10", "mmB10", "w5B10"}},
        {PropertyTag::P2, {"B10", "mB10", "w5B10", "w2B10"}},
        {PropertyTag::P2, {"w5B10", "w2B10", "w5B10", "mmB10"}},
        {PropertyTag::P2, {"w5B10", "w2B10", "w5B10", "B10"}},
    };
}

inline std::vector<PropertyCase> table6_battery() {
    return {
        {PropertyTag::P3, {"K5", "mK5", "C5", "mC5"}},
        {PropertyTag::P3, {"C5", "mC5", "P5", "mP5"}},
        {PropertyTag::P3, {"P5", "mP5", "S5", "mS5"}},
        {PropertyTag::P3, {"K100", "mK100", "C100", "mC100"}},
        {PropertyTag::P3, {"C100", "mC100", "P100", "mP100"}},
        {PropertyTag::P3, {"P100", "mP100", "S100", "mS100"}},
        {PropertyTag::P3, {"K100", "m10K100", "C100", "m10C100"}},
        {PropertyTag::P3, {"C100", "m10C100", "P100", "m10P100"}},
        {PropertyTag::P3, {"P100", "m10P100", "S100", "m10S100"}},
    };
}

namespace detail {

inline SimilarityResult run_method(Method method, const Graph& a, const Graph& b,
                                   const HarnessOptions& opts) {
    switch (method) {
        case Method::dc0: return deltacon0(a, b, opts.solve);
        case Method::dc:
            return deltacon_mean(a, b, opts.groups, opts.partition_seed, opts.nseeds, opts.solve);
        case Method::veo: return veo(a, b);
        case Method::ged: return ged(a, b);
        case Method::lambda_adj: return lambda_distance(a, b, MatrixKind::adjacency);
        case Method::lambda_lap: return lambda_distance(a, b, MatrixKind::laplacian);
        case Method::lambda_nl: return lambda_distance(a, b, MatrixKind::normalized_laplacian);
    }
    throw ValidationError("unknown method");
}

}  // namespace detail

/// Evaluates one battery row for one method. For similarity methods the
/// reported delta is sim(first pair) - sim(second pair); for distance methods
/// it is d(second pair) - d(first pair). Positive means the property holds.
inline CaseResult run_case(const PropertyCase& c, Method method, const HarnessOptions& opts = {}) {
    const bool p1 = c.graphs[3].empty();
    Graph a = generate(c.graphs[0], opts.gen_seed);
    Graph b = generate(c.graphs[1], opts.gen_seed);
    Graph c2 = generate(c.graphs[2], opts.gen_seed);
    Graph d2 = p1 ? a : generate(c.graphs[3], opts.gen_seed);

    SimilarityResult ab = detail::run_method(method, a, b, opts);
    SimilarityResult cd = p1 ? detail::run_method(method, a, c2, opts)
                             : detail::run_method(method, c2, d2, opts);

    CaseResult res;
    res.body = c;
    if (ab.similarity && cd.similarity) {
        res.delta = *ab.similarity - *cd.similarity;
        res.is_distance = false;
    } else {
        res.delta = *cd.distance - *ab.distance;
        res.is_distance = true;
    }
    res.pass = res.delta > 0.0;
    return res;
}

struct P4Point {
    double fraction = 0.0;
    double sim_random = 0.0;
    double sim_targeted = 0.0;
};

/// Focus-awareness protocol: per fraction, the mean (over removal seeds) of
/// the similarity between the original graph and its randomly vs targeted
/// thinned versions. Random removal should never hurt more than targeted.
inline std::vector<P4Point> run_p4(const Graph& g, const std::vector<double>& fractions,
                                   const std::vector<std::uint64_t>& seeds,
                                   const HarnessOptions& opts = {}) {
    if (seeds.empty()) throw ValidationError("run_p4 needs at least one seed");
    std::vector<P4Point> out;
    for (double f : fractions) {
        P4Point p;
        p.fraction = f;
        for (std::uint64_t s : seeds) {
            Graph rnd = remove_edges_random(g, f, s);
            Graph tgt = remove_edges_targeted(g, f, s);
            p.sim_random +=
                *deltacon(g, rnd, opts.groups, opts.partition_seed + s, opts.solve).similarity;
            p.sim_targeted +=
                *deltacon(g, tgt, opts.groups, opts.partition_seed + s, opts.solve).similarity;
        }
        p.sim_random /= static_cast<double>(seeds.size());
        p.sim_targeted /= static_cast<double>(seeds.size());
        out.push_back(p);
    }
    return out;
}

/// Markdown rendering of a battery run, one row per case.
inline std::string markdown_table(const std::vector<CaseResult>& results, Method method) {
    std::ostringstream out;
    out << "| A | B | C | D | " << method_name(method) << " delta | verdict |\n";
    out << "|---|---|---|---|---:|---|\n";
    for (const auto& r : results) {
        out << "| " << r.body.graphs[0] << " | " << r.body.graphs[1] << " | " << r.body.graphs[2]
            << " | " << (r.body.graphs[3].empty() ? "-" : r.body.graphs[3]) << " | "
            << std::setprecision(4) << r.delta << (r.is_distance ? " (d)" : "") << " | "
            << (r.pass ? "pass" : "VIOLATION") << " |\n";
    }
    return out.str();
}

}  // namespace deltacon
