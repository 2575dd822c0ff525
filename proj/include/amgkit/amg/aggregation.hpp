#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "amgkit/sparse/matrix.hpp"

namespace amgkit {

enum class AggregationKind { Vmb, Matching };

std::string_view aggregation_name(AggregationKind k);

/// Default strength threshold for decoupled (VMB) aggregation.
inline constexpr double kDefaultTheta = 0.01;

struct AggregationConfig {
    AggregationKind kind = AggregationKind::Vmb;
    double theta = kDefaultTheta;
    /// Matching sweeps k; aggregates grow to at most 2^k nodes.
    int sweeps = 1;
    bool smooth_prolongator = true;
    /// Near-kernel sample; empty means all ones.
    Vector near_kernel;
    int max_levels = 20;
    index_t coarse_size_target = 200;

    /// Throws ConfigError on out-of-range fields.
    void validate() const;
};

/// Map from fine nodes to aggregates. For matching-based aggregation the
/// pair/singleton split refers to the last matching sweep, so that
/// n_coarse == n_pairs + n_singletons.
struct Aggregation {
    index_t n_fine = 0;
    index_t n_coarse = 0;
    std::vector<index_t> assignment;
    index_t n_pairs = 0;
    index_t n_singletons = 0;
    /// Coarse near-kernel w_c with P_hat * w_c == w.
    Vector coarse_w;

    /// Nodes per aggregate.
    std::vector<index_t> sizes() const;
};

/// Row-wise strongly coupled neighbours with |a_ij| stored alongside.
struct StrengthGraph {
    std::vector<index_t> row_ptr{0};
    std::vector<index_t> cols;
    std::vector<double> coupling;

    index_t n() const { return static_cast<index_t>(row_ptr.size()) - 1; }
    std::span<const index_t> strong(index_t i) const {
        return std::span<const index_t>(cols).subspan(row_ptr[i], row_ptr[i + 1] - row_ptr[i]);
    }
};

/// j != i is strong for i iff |a_ij| >= theta * sqrt(a_ii * a_jj).
/// Throws SingularDiagonalError on a nonpositive diagonal.
StrengthGraph strength_neighborhood(const CsrMatrix& a, double theta);

/// Greedy decoupled aggregation:
///  1. visit nodes in ascending order; a node with a nonempty strong set, none
///     of whose strong neighbours is aggregated yet, seeds an aggregate with
///     all of them;
///  2. every other node with strong neighbours joins the aggregate of its
///     strongest phase-1 neighbour (ties to the lowest aggregate id);
///  3. nodes without strong neighbours become singletons.
Aggregation vmb_aggregate(const CsrMatrix& a, double theta);

}  // namespace amgkit
