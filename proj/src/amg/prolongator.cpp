#include "amgkit/amg/prolongator.hpp"

#include <cmath>
#include <string>

#include "amgkit/sparse/matrix.hpp"

namespace amgkit {

Prolongator tentative_prolongator(const Aggregation& agg, std::span<const double> w,
                                  AggregationKind kind) {
    if (static_cast<index_t>(w.size()) != agg.n_fine ||
        static_cast<index_t>(agg.assignment.size()) != agg.n_fine) {
        throw DimensionError("tentative_prolongator: w has " + std::to_string(w.size()) +
                             " entries for " + std::to_string(agg.n_fine) + " fine nodes");
    }
    Vector norm2(static_cast<std::size_t>(agg.n_coarse), 0.0);
    for (index_t i = 0; i < agg.n_fine; ++i) norm2[agg.assignment[i]] += w[i] * w[i];
    for (index_t c = 0; c < agg.n_coarse; ++c) {
        if (norm2[c] == 0.0) {
            throw CoarseningError("tentative_prolongator: near-kernel vector vanishes on aggregate " +
                                  std::to_string(c));
        }
    }

    Prolongator p;
    p.matrix = CsrMatrix(agg.n_fine, agg.n_coarse);
    auto& m = p.matrix;
    m.col_idx.resize(agg.n_fine);
    m.values.resize(agg.n_fine);
    for (index_t i = 0; i < agg.n_fine; ++i) {
        const index_t c = agg.assignment[i];
        m.row_ptr[i + 1] = i + 1;
        m.col_idx[i] = c;
        m.values[i] = kind == AggregationKind::Vmb ? w[i] : w[i] / std::sqrt(norm2[c]);
    }
    return p;
}

Prolongator smooth_prolongator(const CsrMatrix& a, const Prolongator& p_hat) {
    const double omega = 1.0 / row_scaled_inf_norm(a);
    const Vector diag = a.diagonal();
    CsrMatrix ap = multiply(a, p_hat.matrix);
    const CsrMatrix& ph = p_hat.matrix;

    Prolongator p;
    p.smoothed = true;
    p.omega = omega;
    p.matrix = CsrMatrix(ph.n_rows, ph.n_cols);
    auto& out = p.matrix;
    out.col_idx.reserve(ap.nnz());
    out.values.reserve(ap.nnz());
    for (index_t i = 0; i < ph.n_rows; ++i) {
        const double scale = omega / diag[i];
        index_t kp = ph.row_ptr[i];
        index_t ka = ap.row_ptr[i];
        const index_t ep = ph.row_ptr[i + 1];
        const index_t ea = ap.row_ptr[i + 1];
        auto emit = [&](index_t col, double v) {
            if (v == 0.0) return;
            out.col_idx.push_back(col);
            out.values.push_back(v);
        };
        while (kp < ep || ka < ea) {
            const index_t cp = kp < ep ? ph.col_idx[kp] : ph.n_cols;
            const index_t ca = ka < ea ? ap.col_idx[ka] : ph.n_cols;
            if (cp == ca) {
                emit(cp, ph.values[kp++] - scale * ap.values[ka++]);
            } else if (cp < ca) {
                emit(cp, ph.values[kp++]);
            } else {
                emit(ca, -scale * ap.values[ka++]);
            }
        }
        out.row_ptr[i + 1] = static_cast<index_t>(out.col_idx.size());
    }
    return p;
}

CsrMatrix galerkin_product(const CsrMatrix& a, const CsrMatrix& p) {
    if (a.n_rows != a.n_cols || p.n_rows != a.n_cols) {
        throw DimensionError("galerkin_product: A is " + std::to_string(a.n_rows) + "x" +
                             std::to_string(a.n_cols) + ", P is " + std::to_string(p.n_rows) +
                             "x" + std::to_string(p.n_cols));
    }
    const CsrMatrix ap = multiply(a, p);
    return multiply(transpose(p), ap, 1e-300);
}

}  // namespace amgkit
