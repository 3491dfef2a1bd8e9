#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "deltacon/errors.hpp"
#include "deltacon/matrix.hpp"

namespace deltacon {

/// Undirected edge, canonicalized to u < v.
struct Edge {
    int u = 0;
    int v = 0;
    double w = 1.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable undirected weighted graph on node ids 0..n-1. Adjacency is kept
/// in CSR form with rows sorted by neighbor id; safe for concurrent reads.
class Graph {
public:
    Graph() = default;

    Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
        if (n_ < 0) throw ValidationError("node count must be nonnegative");
        for (auto& e : edges_) {
            if (e.u > e.v) std::swap(e.u, e.v);
            if (e.u < 0 || e.v >= n_)
                throw ValidationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                      ") outside node range [0," + std::to_string(n_) + ")");
            if (e.u == e.v)
                throw ValidationError("self-loop at node " + std::to_string(e.u));
            if (!std::isfinite(e.w) || e.w <= 0.0)
                throw ValidationError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                      ") has non-positive or non-finite weight");
        }
        std::sort(edges_.begin(), edges_.end(),
                  [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
        for (std::size_t i = 1; i < edges_.size(); ++i)
            if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
                throw ValidationError("duplicate edge (" + std::to_string(edges_[i].u) + "," +
                                      std::to_string(edges_[i].v) + ")");
        build_adjacency();
    }

    int node_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::span<const int> neighbors(int v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    std::span<const double> weights(int v) const {
        return {wts_.data() + offsets_[v], wts_.data() + offsets_[v + 1]};
    }

    /// Weighted degree vector d, d[i] = sum of incident edge weights.
    const std::vector<double>& degrees() const noexcept { return degrees_; }
    double max_degree() const noexcept { return max_degree_; }
    bool has_unit_weights() const noexcept { return unit_weights_; }

    bool has_edge(int u, int v) const {
        if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
        auto row = neighbors(u);
        return std::binary_search(row.begin(), row.end(), v);
    }

    double weight(int u, int v) const {
        auto row = neighbors(u);
        auto it = std::lower_bound(row.begin(), row.end(), v);
        if (it == row.end() || *it != v) return 0.0;
        return wts_[offsets_[u] + static_cast<std::size_t>(it - row.begin())];
    }

    /// Same edge set re-hosted on a node set of size n >= node_count().
    Graph with_node_count(int n) const {
        if (n < n_) throw ValidationError("cannot shrink node space");
        return Graph(n, edges_);
    }

private:
    void build_adjacency() {
        offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
        for (const auto& e : edges_) {
            ++offsets_[e.u + 1];
            ++offsets_[e.v + 1];
        }
        for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
        adj_.resize(edges_.size() * 2);
        wts_.resize(edges_.size() * 2);
        std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
        for (const auto& e : edges_) {
            adj_[cursor[e.u]] = e.v;
            wts_[cursor[e.u]++] = e.w;
            adj_[cursor[e.v]] = e.u;
            wts_[cursor[e.v]++] = e.w;
        }
        // rows come out sorted because edges_ is sorted, except the v->u
        // direction; sort each row to keep binary search valid
        for (int v = 0; v < n_; ++v) {
            std::vector<std::pair<int, double>> row;
            row.reserve(offsets_[v + 1] - offsets_[v]);
            for (std::size_t k = offsets_[v]; k < offsets_[v + 1]; ++k)
                row.emplace_back(adj_[k], wts_[k]);
            std::sort(row.begin(), row.end());
            std::size_t k = offsets_[v];
            for (const auto& [nb, w] : row) {
                adj_[k] = nb;
                wts_[k++] = w;
            }
        }
        degrees_.assign(static_cast<std::size_t>(n_), 0.0);
        unit_weights_ = true;
        for (const auto& e : edges_) {
            degrees_[e.u] += e.w;
            degrees_[e.v] += e.w;
            unit_weights_ &= e.w == 1.0;
        }
        max_degree_ = degrees_.empty() ? 0.0 : *std::max_element(degrees_.begin(), degrees_.end());
    }

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<int> adj_;
    std::vector<double> wts_;
    std::vector<double> degrees_;
    double max_degree_ = 0.0;
    bool unit_weights_ = true;
};

/// Parses an edge-list file: lines "u v" or "u v w", '#' comments, LF or CRLF.
/// Node count is n_override when given, else 1 + max id. With one_based, ids
/// are shifted down by one on ingest.
inline Graph load_edge_list(const std::filesystem::path& path,
                            std::optional<int> n_override = std::nullopt,
                            bool one_based = false) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open edge list: " + path.string());

    std::vector<Edge> edges;
    int max_id = -1;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;

        std::istringstream ls(line);
        long long u, v;
        if (!(ls >> u >> v)) throw ParseError("expected \"u v [w]\"", lineno);
        double w = 1.0;
        if (!ls.eof()) {
            if (!(ls >> w)) throw ParseError("bad weight field", lineno);
        }
        std::string trailing;
        if (ls >> trailing) throw ParseError("trailing tokens after \"u v w\"", lineno);

        if (one_based) {
            if (u < 1 || v < 1) throw ParseError("one-based ids must be >= 1", lineno);
            --u;
            --v;
        }
        if (u < 0 || v < 0) throw ParseError("negative node id", lineno);
        if (!std::isfinite(w)) throw ValidationError("non-finite weight at line " + std::to_string(lineno));
        if (n_override && (u >= *n_override || v >= *n_override))
            throw ValidationError("node id " + std::to_string(std::max(u, v)) +
                                  " exceeds node count override " + std::to_string(*n_override));
        edges.push_back({static_cast<int>(u), static_cast<int>(v), w});
        max_id = std::max(max_id, static_cast<int>(std::max(u, v)));
    }
    int n = n_override ? *n_override : max_id + 1;
    return Graph(n, std::move(edges));
}

inline void save_edge_list(const Graph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write edge list: " + path.string());
    out << "# nodes " << g.node_count() << "\n";
    for (const auto& e : g.edges()) {
        out << e.u << ' ' << e.v;
        if (e.w != 1.0) out << ' ' << e.w;
        out << '\n';
    }
}

/// Re-hosts both graphs on the union node space (extra nodes are singletons).
inline std::pair<Graph, Graph> union_node_space(const Graph& g1, const Graph& g2) {
    int n = std::max(g1.node_count(), g2.node_count());
    return {g1.with_node_count(n), g2.with_node_count(n)};
}

/// Neighbor-influence constant, 1/(1 + max weighted degree), in (0,1).
/// The empty graph would give 1; clamped to 0.5 (any value works there).
inline double epsilon(const Graph& g) {
    if (g.max_degree() <= 0.0) return 0.5;
    return 1.0 / (1.0 + g.max_degree());
}

/// One epsilon for a comparison, so both affinity matrices are commensurable.
inline double shared_epsilon(const Graph& g1, const Graph& g2) {
    double d = std::max(g1.max_degree(), g2.max_degree());
    if (d <= 0.0) return 0.5;
    return 1.0 / (1.0 + d);
}

enum class MatrixKind { adjacency, laplacian, normalized_laplacian };

/// Dense symmetric matrix view of the graph. Normalized Laplacian is the
/// symmetric form D^{-1/2} L D^{-1/2}; rows of isolated nodes are all zero.
inline DenseMatrix dense_matrix(const Graph& g, MatrixKind kind) {
    const int n = g.node_count();
    DenseMatrix m(n, n);
    const auto& deg = g.degrees();
    switch (kind) {
        case MatrixKind::adjacency:
            for (const auto& e : g.edges()) m(e.u, e.v) = m(e.v, e.u) = e.w;
            break;
        case MatrixKind::laplacian:
            for (int i = 0; i < n; ++i) m(i, i) = deg[i];
            for (const auto& e : g.edges()) m(e.u, e.v) = m(e.v, e.u) = -e.w;
            break;
        case MatrixKind::normalized_laplacian:
            for (int i = 0; i < n; ++i) m(i, i) = deg[i] > 0.0 ? 1.0 : 0.0;
            for (const auto& e : g.edges()) {
                double s = -e.w / std::sqrt(deg[e.u] * deg[e.v]);
                m(e.u, e.v) = m(e.v, e.u) = s;
            }
            break;
    }
    return m;
}

}  // namespace deltacon
