#pragma once

#include <span>
#include <utility>
#include <vector>

#include "amgkit/amg/aggregation.hpp"
#include "amgkit/sparse/csr.hpp"

namespace amgkit {

struct WeightedEdge {
    index_t u = 0;  ///< u < v
    index_t v = 0;
    double weight = 0.0;
    /// False when the weight formula degenerates (zero denominator, non-finite).
    bool usable = true;
};

/// Undirected edge-weighted graph on the off-diagonal pattern of A.
struct WeightGraph {
    index_t n_vertices = 0;
    std::vector<WeightedEdge> edges;

    /// Weight of edge {u, v}, or nullptr when absent.
    const WeightedEdge* find(index_t u, index_t v) const;
};

/// c_ij = 1 - 2 a_ij w_i w_j / (a_ii w_i^2 + a_jj w_j^2), evaluated on the
/// symmetrized coupling (a_ij + a_ji) / 2 for every off-diagonal pair.
WeightGraph build_weight_graph(const CsrMatrix& a, std::span<const double> w);

struct Matching {
    /// Partner of each vertex, -1 when unmatched.
    std::vector<index_t> mate;
    /// Matched edges (u < v) in the order they were selected.
    std::vector<std::pair<index_t, index_t>> edges;
    double weight = 0.0;
};

/// Sorted greedy matching: usable edges of positive weight are scanned by
/// decreasing weight (ties by the smallest (u, v) pair) and taken when both
/// endpoints are still free. The result weighs at least half the optimum.
Matching approx_max_weight_matching(const WeightGraph& g);

/// k sweeps of pairwise matching. Each sweep after the first matches the
/// unsmoothed Galerkin coarse matrix of the previous sweep, so aggregates
/// hold at most 2^k fine nodes. Throws CoarseningError for a zero w.
Aggregation matching_aggregate(const CsrMatrix& a, std::span<const double> w, int sweeps);

}  // namespace amgkit
