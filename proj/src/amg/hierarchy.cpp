#include "amgkit/amg/hierarchy.hpp"

#include <string>

#include "amgkit/amg/matching.hpp"

namespace amgkit {

const SmootherSet& Hierarchy::smoothers() const {
    if (!smoothers_) {
        throw Error("hierarchy has no smoothers: call build_smoothers() after build_hierarchy()");
    }
    return *smoothers_;
}

void Hierarchy::update_fine_coefficients(std::span<const Triple> triples) {
    update_coefficients(levels_.front().a, triples);
}

void Hierarchy::set_format(Format format, index_t hack_size) {
    for (auto& level : levels_) level.a = convert(level.a, format, hack_size);
}

double operator_complexity(const Hierarchy& h) {
    const auto& levels = h.levels();
    if (levels.empty() || levels.front().a.nnz() == 0) return 1.0;
    double total = 0.0;
    for (const auto& level : levels) total += static_cast<double>(level.a.nnz());
    return total / static_cast<double>(levels.front().a.nnz());
}

Hierarchy build_hierarchy(const SparseMatrix& a, const AggregationConfig& config) {
    config.validate();
    CsrMatrix fine = a.to_csr();
    if (fine.n_rows != fine.n_cols) throw DimensionError("build_hierarchy: matrix must be square");
    if (!is_symmetric(fine, 1e-12)) throw Error("build_hierarchy: matrix is not symmetric");
    const Vector diag = fine.diagonal();
    for (index_t i = 0; i < fine.n_rows; ++i) {
        if (!(diag[i] > 0.0)) {
            throw SingularDiagonalError("build_hierarchy: nonpositive diagonal in row " +
                                        std::to_string(i));
        }
    }

    Hierarchy h;
    h.config_ = config;
    Vector w = config.near_kernel;
    if (w.empty()) w.assign(static_cast<std::size_t>(fine.n_rows), 1.0);
    if (static_cast<index_t>(w.size()) != fine.n_rows) {
        throw DimensionError("build_hierarchy: near-kernel vector has the wrong length");
    }

    Level finest;
    finest.a = SparseMatrix(std::move(fine), true);
    finest.w = std::move(w);
    h.levels_.push_back(std::move(finest));

    while (h.levels_.back().size() > config.coarse_size_target &&
           static_cast<int>(h.levels_.size()) < config.max_levels) {
        Level& cur = h.levels_.back();
        const CsrMatrix& a_l = *cur.a.csr();
        Aggregation agg = config.kind == AggregationKind::Vmb
                              ? vmb_aggregate(a_l, config.theta)
                              : matching_aggregate(a_l, cur.w, config.sweeps);
        if (agg.n_coarse >= cur.size()) {
            const std::string msg = "coarsening stalled at level " +
                                    std::to_string(h.levels_.size() - 1) + " with " +
                                    std::to_string(cur.size()) + " unknowns";
            if (h.levels_.size() == 1) throw CoarseningError(msg);
            h.truncated_ = true;
            h.warning_ = msg;
            break;
        }
        Prolongator p_hat = tentative_prolongator(agg, cur.w, config.kind);
        Prolongator p = config.smooth_prolongator ? smooth_prolongator(a_l, p_hat) : p_hat;

        Level next;
        next.a = SparseMatrix(galerkin_product(a_l, p.matrix), true);
        next.w = agg.coarse_w;
        cur.restriction = transpose(p.matrix);
        cur.p = std::move(p);
        cur.tentative = std::move(p_hat);
        cur.aggregation = std::move(agg);
        h.levels_.push_back(std::move(next));
    }
    h.operator_complexity_ = operator_complexity(h);
    return h;
}

}  // namespace amgkit
