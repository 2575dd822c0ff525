#pragma once

#include <optional>
#include <span>

#include "amgkit/amg/aggregation.hpp"
#include "amgkit/sparse/csr.hpp"

namespace amgkit {

/// Transfer operator P (n_fine x n_coarse).
struct Prolongator {
    CsrMatrix matrix;
    bool smoothed = false;
    /// Damping used by smooth_prolongator(); present iff smoothed.
    std::optional<double> omega;
};

/// Piecewise injection of the near-kernel sample w.
/// VMB:      P[i, agg(i)] = w_i.
/// Matching: P[i, agg(i)] = w_i / ||w restricted to agg(i)||_2, so P^T P = I.
/// Throws CoarseningError when w vanishes on a whole aggregate.
Prolongator tentative_prolongator(const Aggregation& agg, std::span<const double> w,
                                  AggregationKind kind);

/// P = (I - omega D^-1 A) P_hat with omega = 1 / ||D^-1 A||_inf.
Prolongator smooth_prolongator(const CsrMatrix& a, const Prolongator& p_hat);

/// P^T A P; entries below 1e-300 in magnitude are dropped.
CsrMatrix galerkin_product(const CsrMatrix& a, const CsrMatrix& p);

}  // namespace amgkit
