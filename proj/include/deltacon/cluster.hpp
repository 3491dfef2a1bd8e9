#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "deltacon/errors.hpp"
#include "deltacon/graph.hpp"
#include "deltacon/matrix.hpp"
#include "deltacon/parallel.hpp"
#include "deltacon/similarity.hpp"

namespace deltacon {

struct PairwiseOptions {
    bool use_dc0 = false;    // exact variant instead of the randomized one
    int groups = 5;
    std::uint64_t seed = 0;
    int nseeds = 1;
    SolveOptions solve;
};

/// Symmetric pairwise similarity matrix with unit diagonal. One fixed seed
/// per unordered pair keeps the matrix bitwise symmetric.
inline DenseMatrix pairwise_similarity(const std::vector<Graph>& graphs,
                                       const PairwiseOptions& opts = {}) {
    const int k = static_cast<int>(graphs.size());
    if (k < 2) throw ValidationError("pairwise similarity needs at least 2 graphs");

    int n = 0;
    for (const auto& g : graphs) n = std::max(n, g.node_count());
    std::vector<Graph> hosted;
    hosted.reserve(graphs.size());
    for (const auto& g : graphs) hosted.push_back(g.with_node_count(n));

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) pairs.emplace_back(i, j);

    DenseMatrix sim(k, k);
    for (int i = 0; i < k; ++i) sim(i, i) = 1.0;
    parallel_for(0, static_cast<int>(pairs.size()), [&](int t) {
        auto [i, j] = pairs[t];
        SimilarityResult r;
        if (opts.use_dc0)
            r = deltacon0(hosted[i], hosted[j], opts.solve);
        else if (opts.nseeds > 1)
            r = deltacon_mean(hosted[i], hosted[j], opts.groups, opts.seed, opts.nseeds, opts.solve);
        else
            r = deltacon(hosted[i], hosted[j], opts.groups, opts.seed, opts.solve);
        sim(i, j) = sim(j, i) = *r.similarity;
    });
    return sim;
}

/// Agglomerative merge tree; clusters are numbered scipy-style: leaves are
/// 0..k-1, the t-th merge creates cluster k+t.
struct Dendrogram {
    struct Merge {
        int a = 0;
        int b = 0;
        double height = 0.0;
        int size = 0;
    };
    int leaves = 0;
    std::vector<Merge> merges;
};

/// Ward linkage over d_ij = 1/s_ij - 1 (the inverse of the similarity
/// conversion), via the Lance-Williams recurrence on squared distances.
inline Dendrogram ward_cluster(const DenseMatrix& simmatrix) {
    const int k = simmatrix.rows;
    if (k < 2 || simmatrix.cols != k)
        throw ValidationError("ward_cluster expects a square similarity matrix of order >= 2");

    // squared distances, active-cluster bookkeeping
    std::vector<std::vector<double>> d2(static_cast<std::size_t>(2 * k - 1),
                                        std::vector<double>(static_cast<std::size_t>(2 * k - 1), 0.0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            double s = simmatrix(i, j);
            if (!(s > 0.0) || s > 1.0 + 1e-12)
                throw ValidationError("similarity entries must lie in (0,1]");
            double d = 1.0 / s - 1.0;
            d2[i][j] = d * d;
        }

    std::vector<int> size(static_cast<std::size_t>(2 * k - 1), 1);
    std::vector<int> ids;
    for (int i = 0; i < k; ++i) ids.push_back(i);

    Dendrogram dg;
    dg.leaves = k;
    for (int step = 0; step < k - 1; ++step) {
        double best = std::numeric_limits<double>::infinity();
        int bi = -1, bj = -1;
        for (std::size_t x = 0; x < ids.size(); ++x)
            for (std::size_t y = x + 1; y < ids.size(); ++y) {
                int i = ids[x], j = ids[y];
                if (d2[i][j] < best) {
                    best = d2[i][j];
                    bi = i;
                    bj = j;
                }
            }

        const int merged = k + step;
        const int ni = size[bi], nj = size[bj];
        size[merged] = ni + nj;
        for (int other : ids) {
            if (other == bi || other == bj) continue;
            const int no = size[other];
            // Lance-Williams update for Ward on squared distances
            d2[merged][other] = d2[other][merged] =
                ((ni + no) * d2[bi][other] + (nj + no) * d2[bj][other] - no * d2[bi][bj]) /
                double(ni + nj + no);
        }
        dg.merges.push_back({bi, bj, std::sqrt(best), ni + nj});
        std::erase_if(ids, [&](int v) { return v == bi || v == bj; });
        ids.push_back(merged);
    }
    return dg;
}

/// Labels from cutting the dendrogram at exactly k clusters; labels are dense
/// 0..k-1 in order of each cluster's smallest leaf.
inline std::vector<int> cut(const Dendrogram& dg, int k) {
    const int leaves = dg.leaves;
    if (k < 1 || k > leaves)
        throw ValidationError("cut: cluster count out of range [1," + std::to_string(leaves) + "]");

    std::vector<int> root(static_cast<std::size_t>(2 * leaves - 1));
    std::iota(root.begin(), root.end(), 0);
    const int merges_applied = leaves - k;
    for (int t = 0; t < merges_applied; ++t) {
        const auto& m = dg.merges[t];
        root[m.a] = root[m.b] = leaves + t;
    }
    auto find = [&](int v) {
        while (root[v] != v) v = root[v];
        return v;
    };

    std::vector<int> rep(static_cast<std::size_t>(leaves));
    for (int i = 0; i < leaves; ++i) rep[i] = find(i);
    std::vector<int> labels(static_cast<std::size_t>(leaves), -1);
    int next = 0;
    std::vector<std::pair<int, int>> seen;   // (representative, label)
    for (int i = 0; i < leaves; ++i) {
        int lab = -1;
        for (auto& [r, l] : seen)
            if (r == rep[i]) lab = l;
        if (lab == -1) {
            lab = next++;
            seen.emplace_back(rep[i], lab);
        }
        labels[i] = lab;
    }
    return labels;
}

}  // namespace deltacon
