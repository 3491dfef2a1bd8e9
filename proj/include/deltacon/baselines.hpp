#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "deltacon/errors.hpp"
#include "deltacon/graph.hpp"
#include "deltacon/similarity.hpp"

namespace deltacon {

/// Full eigenvalue spectrum of a symmetric graph matrix, sorted descending.
struct Spectrum {
    std::vector<double> values;
};

namespace detail {

/// Presence-only overlap counts on the canonical sorted edge lists; weights
/// are ignored by design for VEO and GED.
inline std::size_t edge_intersection(const Graph& a, const Graph& b) {
    const auto& ea = a.edges();
    const auto& eb = b.edges();
    std::size_t i = 0, j = 0, common = 0;
    while (i < ea.size() && j < eb.size()) {
        auto ka = std::pair(ea[i].u, ea[i].v);
        auto kb = std::pair(eb[j].u, eb[j].v);
        if (ka == kb) {
            ++common;
            ++i;
            ++j;
        } else if (ka < kb) {
            ++i;
        } else {
            ++j;
        }
    }
    return common;
}

}  // namespace detail

/// Vertex/edge overlap similarity: 2(|E1 ∩ E2| + |V1 ∩ V2|) / (|E1|+|E2|+|V1|+|V2|).
inline SimilarityResult veo(const Graph& a, const Graph& b) {
    detail::Stopwatch timer;
    const double common_e = static_cast<double>(detail::edge_intersection(a, b));
    const double common_v = static_cast<double>(std::min(a.node_count(), b.node_count()));
    const double denom = static_cast<double>(a.edge_count() + b.edge_count()) +
                         static_cast<double>(a.node_count() + b.node_count());

    SimilarityResult r;
    r.method = Method::veo;
    r.similarity = denom > 0.0 ? 2.0 * (common_e + common_v) / denom : 1.0;
    r.runtime_ms = timer.ms();
    return r;
}

/// Insert/delete-only graph edit distance; on a shared node set this is the
/// hamming distance between the unweighted adjacency matrices.
inline SimilarityResult ged(const Graph& a, const Graph& b) {
    detail::Stopwatch timer;
    const double common_e = static_cast<double>(detail::edge_intersection(a, b));
    const double common_v = static_cast<double>(std::min(a.node_count(), b.node_count()));
    const double d = static_cast<double>(a.node_count() + b.node_count()) - 2.0 * common_v +
                     static_cast<double>(a.edge_count() + b.edge_count()) - 2.0 * common_e;

    SimilarityResult r;
    r.method = Method::ged;
    r.distance = d;
    r.runtime_ms = timer.ms();
    return r;
}

/// Dense symmetric eigensolve of the chosen matrix view. The default cap
/// keeps the O(n^3) solve at desk scale.
inline Spectrum spectrum(const Graph& g, MatrixKind kind, int node_cap = 2000) {
    const int n = g.node_count();
    if (n > node_cap)
        throw SizeError("spectrum: n = " + std::to_string(n) + " exceeds dense eigensolver cap " +
                        std::to_string(node_cap));
    DenseMatrix m = dense_matrix(g, kind);
    Eigen::MatrixXd em(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) em(i, j) = m(i, j);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(em, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error("eigensolver failed to converge");

    Spectrum s;
    s.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(s.values.begin(), s.values.end(), std::greater<>());
    return s;
}

inline Method lambda_method(MatrixKind kind) {
    switch (kind) {
        case MatrixKind::adjacency: return Method::lambda_adj;
        case MatrixKind::laplacian: return Method::lambda_lap;
        case MatrixKind::normalized_laplacian: return Method::lambda_nl;
    }
    return Method::lambda_adj;
}

/// Euclidean distance between descending spectra, the shorter one zero-padded
/// at the tail up to k = max(n1, n2).
inline SimilarityResult lambda_distance(const Graph& a, const Graph& b, MatrixKind kind,
                                        int node_cap = 2000) {
    detail::Stopwatch timer;
    Spectrum sa = spectrum(a, kind, node_cap);
    Spectrum sb = spectrum(b, kind, node_cap);
    const std::size_t k = std::max(sa.values.size(), sb.values.size());
    sa.values.resize(k, 0.0);
    sb.values.resize(k, 0.0);

    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double d = sa.values[i] - sb.values[i];
        sum += d * d;
    }

    SimilarityResult r;
    r.method = lambda_method(kind);
    r.distance = std::sqrt(sum);
    r.runtime_ms = timer.ms();
    return r;
}

}  // namespace deltacon
