#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#if defined(__linux__)
#include <sys/mman.h>
#endif

#include "deltacon/errors.hpp"
#include "deltacon/graph.hpp"
#include "deltacon/matrix.hpp"
#include "deltacon/parallel.hpp"
#include "deltacon/rng.hpp"

namespace deltacon {

struct SolveOptions {
    double tol = 1e-9;     // absolute residual, infinity norm
    int max_iter = 10000;
};

struct SolveStats {
    std::vector<int> iterations;            // per column
    std::vector<double> residuals;          // certified final residual per column
    std::vector<double> residual_history;   // block-max residual per sweep (first block)

    double max_residual() const {
        double r = 0.0;
        for (double x : residuals) r = std::max(r, x);
        return r;
    }
    int max_iterations() const {
        int k = 0;
        for (int i : iterations) k = std::max(k, i);
        return k;
    }
};

enum class AffinityKind { full, reduced };

/// Node influence scores: column k solves [I + eps^2 D - eps A] x = s0_k.
struct AffinityMatrix {
    AffinityKind kind = AffinityKind::full;
    double epsilon_used = 0.0;
    DenseMatrix values;   // n rows; n (full) or g (reduced) columns
    SolveStats stats;
};

/// Assignment of each node to one of `groups` groups; all groups nonempty.
struct Partition {
    int groups = 0;
    std::vector<int> assignment;
    std::uint64_t seed = 0;

    std::vector<double> seed_vector(int k) const {
        std::vector<double> s(assignment.size(), 0.0);
        for (std::size_t i = 0; i < assignment.size(); ++i)
            if (assignment[i] == k) s[i] = 1.0;
        return s;
    }

    std::vector<std::vector<int>> members() const {
        std::vector<std::vector<int>> m(static_cast<std::size_t>(groups));
        for (std::size_t i = 0; i < assignment.size(); ++i)
            m[assignment[i]].push_back(static_cast<int>(i));
        return m;
    }
};

/// Seeded random assignment with every group nonempty: a shuffled node order
/// pins the first g nodes to distinct groups, the rest draw uniformly.
/// g = n yields the singleton partition.
inline Partition random_partition(int n, int g, std::uint64_t rng_seed) {
    if (g < 1 || g > n)
        throw ValidationError("group count " + std::to_string(g) + " out of range [1," +
                              std::to_string(n) + "]");
    Rng rng(split_seed(rng_seed, 0x7061727469ull));
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);

    Partition p;
    p.groups = g;
    p.seed = rng_seed;
    p.assignment.assign(static_cast<std::size_t>(n), 0);
    for (int k = 0; k < n; ++k)
        p.assignment[order[k]] = k < g ? k : rng.below_int(g);
    return p;
}

namespace detail {

/// Solver scratch: row-major n x b, 2 MB aligned and mapped on huge pages
/// where the platform grants them. The gather sweeps are TLB-bound on large
/// graphs otherwise, and whether regular mallocs get promoted is luck.
class ScratchMatrix {
public:
    ScratchMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        const std::size_t count = static_cast<std::size_t>(rows) * cols;
        const std::size_t bytes = count * sizeof(double);
        constexpr std::size_t kHugePage = std::size_t(1) << 21;
        if (bytes >= kHugePage) {
            void* p = nullptr;
            if (posix_memalign(&p, kHugePage, bytes) == 0) {
                owned_ = static_cast<double*>(p);
#if defined(__linux__) && defined(MADV_HUGEPAGE)
                madvise(p, bytes, MADV_HUGEPAGE);
#endif
            }
        }
        if (!owned_) {
            fallback_.resize(count);
            data_ = fallback_.data();
        } else {
            data_ = owned_;
        }
        std::fill(data_, data_ + count, 0.0);
    }
    ~ScratchMatrix() { std::free(owned_); }
    ScratchMatrix(const ScratchMatrix&) = delete;
    ScratchMatrix& operator=(const ScratchMatrix&) = delete;

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double* row(int i) { return data_ + static_cast<std::size_t>(i) * cols_; }
    const double* row(int i) const { return data_ + static_cast<std::size_t>(i) * cols_; }
    double& at(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    friend void swap_data(ScratchMatrix& a, ScratchMatrix& b) {
        std::swap(a.data_, b.data_);
        std::swap(a.owned_, b.owned_);
        std::swap(a.fallback_, b.fallback_);
    }

private:
    int rows_ = 0, cols_ = 0;
    double* data_ = nullptr;
    double* owned_ = nullptr;
    std::vector<double> fallback_;
};

/// Seed block: either a dense n x b matrix, or — for the common unit seeds
/// e_i and group memberships — one block-local column index per row (-1 for
/// none), which spares an n x b read every sweep.
struct SeedBlock {
    const DenseMatrix* dense = nullptr;
    const int* indicator = nullptr;

    void init(ScratchMatrix& cur) const {
        const int n = cur.rows(), b = cur.cols();
        if (dense) {
            for (int i = 0; i < n; ++i) {
                const double* src = dense->row(i);
                double* dst = cur.row(i);
                for (int t = 0; t < b; ++t) dst[t] = src[t];
            }
            return;
        }
        for (int i = 0; i < n; ++i)
            if (indicator[i] >= 0 && indicator[i] < b) cur.at(i, indicator[i]) = 1.0;
    }
};

template <bool kUnitWeights>
void sweep_rows(const Graph& g, double eps, const SeedBlock& seeds, const ScratchMatrix& cur,
                ScratchMatrix& nxt, std::vector<double>& delta) {
    const int n = cur.rows(), b = cur.cols();
    const double eps2 = eps * eps;
    const auto& deg = g.degrees();
    std::fill(delta.begin(), delta.end(), 0.0);
    for (int i = 0; i < n; ++i) {
        double* acc = nxt.row(i);
        const double* self = cur.row(i);
        const double dcoef = eps2 * deg[i];
        if (seeds.dense) {
            const double* s0 = seeds.dense->row(i);
            for (int t = 0; t < b; ++t) acc[t] = s0[t] - dcoef * self[t];
        } else {
            for (int t = 0; t < b; ++t) acc[t] = -dcoef * self[t];
            if (seeds.indicator[i] >= 0) acc[seeds.indicator[i]] += 1.0;
        }
        const auto nbs = g.neighbors(i);
        const auto ws = g.weights(i);
        const std::size_t deg_i = nbs.size();
        for (std::size_t k = 0; k < deg_i; ++k) {
            if (k + 8 < deg_i) __builtin_prefetch(cur.row(nbs[k + 8]));
            const double c = kUnitWeights ? eps : eps * ws[k];
            const double* src = cur.row(nbs[k]);
            for (int t = 0; t < b; ++t) acc[t] += c * src[t];
        }
        for (int t = 0; t < b; ++t) delta[t] = std::max(delta[t], std::abs(acc[t] - self[t]));
    }
}

/// Fixed-point iteration x <- s0 + (eps A - eps^2 D) x on a block of columns
/// until every column's residual max|x_next - x| <= tol; the returned iterate
/// is the one whose residual was measured. The system matrix is strictly
/// diagonally dominant for eps in (0,1) at the standard epsilon, so the
/// residual contracts every sweep.
inline void solve_block(const Graph& g, double eps, const SeedBlock& seeds, int b,
                        const SolveOptions& opts, DenseMatrix& out, int out_col0,
                        SolveStats* stats, bool record_history) {
    const int n = g.node_count();
    ScratchMatrix cur(n, b);
    ScratchMatrix nxt(n, b);
    seeds.init(cur);
    std::vector<double> delta(static_cast<std::size_t>(b));
    std::vector<int> conv_iter(static_cast<std::size_t>(b), 0);

    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        if (g.has_unit_weights())
            sweep_rows<true>(g, eps, seeds, cur, nxt, delta);
        else
            sweep_rows<false>(g, eps, seeds, cur, nxt, delta);

        double block_max = 0.0;
        for (int t = 0; t < b; ++t) {
            block_max = std::max(block_max, delta[t]);
            if (conv_iter[t] == 0 && delta[t] <= opts.tol) conv_iter[t] = iter;
        }
        if (stats && record_history) stats->residual_history.push_back(block_max);

        if (block_max <= opts.tol) {
            for (int i = 0; i < n; ++i) {
                const double* src = cur.row(i);
                double* dst = out.row(i) + out_col0;
                for (int t = 0; t < b; ++t) dst[t] = src[t];
            }
            if (stats) {
                for (int t = 0; t < b; ++t) {
                    stats->iterations[out_col0 + t] = conv_iter[t];
                    stats->residuals[out_col0 + t] = delta[t];
                }
            }
            return;
        }
        swap_data(cur, nxt);
    }

    double worst = *std::max_element(delta.begin(), delta.end());
    throw SolverError("affinity solve did not reach tol " + std::to_string(opts.tol) + " in " +
                          std::to_string(opts.max_iter) + " iterations (residual " +
                          std::to_string(worst) + "); epsilon too large for this graph",
                      worst);
}

constexpr int kBlockCols = 64;

/// Runs solve_block over column blocks in parallel. seed_col(i) gives the
/// (global) seed column of row i, or -1; the block partition is fixed by
/// kBlockCols, so results never depend on the worker count.
template <class SeedColOfRow>
AffinityMatrix solve_columns(const Graph& g, double eps, int cols, AffinityKind kind,
                             const SolveOptions& opts, SeedColOfRow&& seed_col) {
    if (!(eps > 0.0 && eps < 1.0))
        throw ValidationError("epsilon must lie in (0,1), got " + std::to_string(eps));
    if (!(opts.tol > 0.0)) throw ValidationError("tol must be positive");

    const int n = g.node_count();
    AffinityMatrix m;
    m.kind = kind;
    m.epsilon_used = eps;
    m.values = DenseMatrix(n, cols);
    m.stats.iterations.assign(static_cast<std::size_t>(cols), 0);
    m.stats.residuals.assign(static_cast<std::size_t>(cols), 0.0);

    const int nblocks = (cols + kBlockCols - 1) / kBlockCols;
    parallel_for(0, nblocks, [&](int blk) {
        const int c0 = blk * kBlockCols;
        const int b = std::min(kBlockCols, cols - c0);
        std::vector<int> local(static_cast<std::size_t>(n), -1);
        for (int i = 0; i < n; ++i) {
            int col = seed_col(i);
            if (col >= c0 && col < c0 + b) local[i] = col - c0;
        }
        SeedBlock seeds;
        seeds.indicator = local.data();
        solve_block(g, eps, seeds, b, opts, m.values, c0, &m.stats, blk == 0);
    });
    return m;
}

}  // namespace detail

/// Solves [I + eps^2 D - eps A] x = seed_vector to within opts.tol.
inline std::vector<double> solve_affinity_column(const Graph& g, std::span<const double> seed_vector,
                                                 double eps, const SolveOptions& opts = {},
                                                 SolveStats* stats_out = nullptr) {
    const int n = g.node_count();
    if (static_cast<int>(seed_vector.size()) != n)
        throw ValidationError("seed vector length does not match node count");
    for (double x : seed_vector)
        if (!std::isfinite(x)) throw ValidationError("seed vector has non-finite entries");
    if (!(eps > 0.0 && eps < 1.0))
        throw ValidationError("epsilon must lie in (0,1), got " + std::to_string(eps));
    if (!(opts.tol > 0.0)) throw ValidationError("tol must be positive");

    DenseMatrix seed(n, 1);
    for (int i = 0; i < n; ++i) seed(i, 0) = seed_vector[i];
    detail::SeedBlock seeds;
    seeds.dense = &seed;

    DenseMatrix out(n, 1);
    SolveStats stats;
    stats.iterations.assign(1, 0);
    stats.residuals.assign(1, 0.0);
    detail::solve_block(g, eps, seeds, 1, opts, out, 0, &stats, true);
    if (stats_out) *stats_out = std::move(stats);
    return std::move(out.data);
}

/// Full n x n affinity matrix; column i is seeded with e_i. Dense n^2 storage
/// is guarded by node_cap; use reduced_affinity beyond it.
inline AffinityMatrix full_affinity(const Graph& g, double eps, const SolveOptions& opts = {},
                                    int node_cap = 20000) {
    if (g.node_count() > node_cap)
        throw SizeError("full affinity needs n^2 dense storage; n = " +
                        std::to_string(g.node_count()) + " exceeds cap " + std::to_string(node_cap) +
                        " — use reduced_affinity with a partition instead");
    return detail::solve_columns(g, eps, g.node_count(), AffinityKind::full, opts,
                                 [](int i) { return i; });
}

/// Reduced n x g affinity matrix; column k is seeded with the membership
/// vector of group k. Each sweep is linear in the edge count.
inline AffinityMatrix reduced_affinity(const Graph& g, const Partition& p,
                                       double eps, const SolveOptions& opts = {}) {
    if (static_cast<int>(p.assignment.size()) != g.node_count())
        throw ValidationError("partition does not match graph node count");
    for (int a : p.assignment)
        if (a < 0 || a >= p.groups) throw ValidationError("partition has out-of-range group id");

    return detail::solve_columns(g, eps, p.groups, AffinityKind::reduced, opts,
                                 [&](int i) { return p.assignment[i]; });
}

/// Debug dump, row-major, header "n,cols,epsilon".
inline void dump_csv(const AffinityMatrix& m, std::ostream& out) {
    out << "n,cols,epsilon\n"
        << m.values.rows << ',' << m.values.cols << ',' << m.epsilon_used << '\n';
    for (int i = 0; i < m.values.rows; ++i) {
        for (int j = 0; j < m.values.cols; ++j) {
            if (j) out << ',';
            out << m.values(i, j);
        }
        out << '\n';
    }
}

}  // namespace deltacon
