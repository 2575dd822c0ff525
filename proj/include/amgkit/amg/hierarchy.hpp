#pragma once

#include <optional>
#include <string>
#include <vector>

#include "amgkit/amg/aggregation.hpp"
#include "amgkit/amg/prolongator.hpp"
#include "amgkit/smoothers/smoother.hpp"
#include "amgkit/sparse/matrix.hpp"

namespace amgkit {

struct Level {
    SparseMatrix a;
    /// Near-kernel sample on this level.
    Vector w;
    /// Transfer to the next coarser level; empty on the coarsest level.
    std::optional<Prolongator> p;
    std::optional<Prolongator> tentative;
    CsrMatrix restriction;  ///< P^T, cached for the cycle
    std::optional<Aggregation> aggregation;

    index_t size() const { return a.n_rows(); }
};

/// Smoother payloads attached by build_smoothers(). One smoother per level
/// (the coarsest one included) plus the l1-Jacobi diagonal used by the
/// coarse solver.
struct SmootherSet {
    SmootherKind kind = SmootherKind::L1Jacobi;
    std::vector<Smoother> per_level;
    L1JacobiSmoother coarse;
};

class Hierarchy {
public:
    const std::vector<Level>& levels() const { return levels_; }
    std::vector<Level>& levels() { return levels_; }
    index_t n_levels() const { return static_cast<index_t>(levels_.size()); }
    const Level& level(index_t l) const { return levels_[l]; }

    const AggregationConfig& config() const { return config_; }
    double operator_complexity() const { return operator_complexity_; }
    /// Set when coarsening stalled above the target size on a coarse level.
    bool truncated() const { return truncated_; }
    const std::string& warning() const { return warning_; }

    bool has_smoothers() const { return smoothers_.has_value(); }
    const SmootherSet& smoothers() const;
    void set_smoothers(SmootherSet s) { smoothers_ = std::move(s); }
    void clear_smoothers() { smoothers_.reset(); }

    /// Replaces values of the finest matrix in place (pattern fixed). Coarse
    /// matrices are left alone; rerun build_smoothers() afterwards.
    void update_fine_coefficients(std::span<const Triple> triples);

    /// Switches every level matrix to the given storage layout.
    void set_format(Format format, index_t hack_size = kDefaultHackSize);

private:
    friend Hierarchy build_hierarchy(const SparseMatrix& a, const AggregationConfig& config);

    std::vector<Level> levels_;
    AggregationConfig config_;
    double operator_complexity_ = 1.0;
    bool truncated_ = false;
    std::string warning_;
    std::optional<SmootherSet> smoothers_;
};

/// First half of the two-step setup: aggregates, prolongators and Galerkin
/// coarse matrices until the coarse size target, the level cap, or a stall.
/// Requires a symmetric matrix with positive diagonal. A stall on the finest
/// level throws CoarseningError; on coarser levels the hierarchy is
/// truncated and flagged.
Hierarchy build_hierarchy(const SparseMatrix& a, const AggregationConfig& config);

/// sum_l nnz(A_l) / nnz(A_0)
double operator_complexity(const Hierarchy& h);

}  // namespace amgkit
