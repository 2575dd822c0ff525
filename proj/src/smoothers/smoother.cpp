#include "amgkit/smoothers/smoother.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace amgkit {

std::string_view smoother_name(SmootherKind k) {
    return k == SmootherKind::L1Jacobi ? "l1jacobi" : "ainv";
}

L1JacobiSmoother L1JacobiSmoother::build(const CsrMatrix& a) {
    L1JacobiSmoother s;
    s.m_diag_.assign(static_cast<std::size_t>(a.n_rows), 0.0);
    for (index_t i = 0; i < a.n_rows; ++i) {
        double d = 0.0;
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            d += a.col_idx[k] == i ? a.values[k] : std::abs(a.values[k]);
        }
        s.m_diag_[i] = d;
    }
    s.inv_.resize(s.m_diag_.size());
    std::transform(s.m_diag_.begin(), s.m_diag_.end(), s.inv_.begin(),
                   [](double d) { return 1.0 / d; });
    return s;
}

void L1JacobiSmoother::apply_inverse(std::span<const double> r, std::span<double> z) const {
    for (std::size_t i = 0; i < inv_.size(); ++i) z[i] = inv_[i] * r[i];
}

AinvSmoother AinvSmoother::build(const CsrMatrix& a, double drop_tol) {
    const index_t n = a.n_rows;
    if (a.n_cols != n) throw DimensionError("ainv: matrix must be square");

    AinvSmoother s;
    s.drop_tol_ = drop_tol;
    s.pivots_.resize(static_cast<std::size_t>(n));
    s.d_inv_.resize(static_cast<std::size_t>(n));

    // Columns of Z, and for each row index k the columns j holding z_j[k] != 0.
    std::vector<std::vector<std::pair<index_t, double>>> columns(static_cast<std::size_t>(n));
    std::vector<std::vector<index_t>> occurs(static_cast<std::size_t>(n));

    Vector arow(static_cast<std::size_t>(n), 0.0);
    Vector acc(static_cast<std::size_t>(n), 0.0);
    std::vector<index_t> acc_mark(static_cast<std::size_t>(n), -1);
    std::vector<index_t> cand_mark(static_cast<std::size_t>(n), -1);
    std::vector<index_t> acc_idx;
    std::vector<index_t> candidates;

    for (index_t i = 0; i < n; ++i) {
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) arow[a.col_idx[k]] = a.values[k];

        candidates.clear();
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            for (const index_t j : occurs[a.col_idx[k]]) {
                if (cand_mark[j] != i) {
                    cand_mark[j] = i;
                    candidates.push_back(j);
                }
            }
        }
        std::sort(candidates.begin(), candidates.end());

        acc_idx.clear();
        acc_mark[i] = i;
        acc[i] = 1.0;
        acc_idx.push_back(i);
        for (const index_t j : candidates) {
            double proj = 0.0;
            for (const auto& [k, v] : columns[j]) proj += arow[k] * v;
            if (proj == 0.0) continue;
            const double coef = proj / s.pivots_[j];
            for (const auto& [k, v] : columns[j]) {
                if (acc_mark[k] != i) {
                    acc_mark[k] = i;
                    acc[k] = 0.0;
                    acc_idx.push_back(k);
                }
                acc[k] -= coef * v;
            }
        }
        std::sort(acc_idx.begin(), acc_idx.end());

        auto& col = columns[i];
        for (const index_t k : acc_idx) {
            if (k != i && std::abs(acc[k]) < drop_tol) continue;
            col.emplace_back(k, acc[k]);
        }
        double pivot = 0.0;
        for (const auto& [k, v] : col) pivot += arow[k] * v;
        if (!(pivot > 0.0)) {
            throw BreakdownError("ainv: nonpositive pivot " + std::to_string(pivot) +
                                 " at column " + std::to_string(i));
        }
        s.pivots_[i] = pivot;
        s.d_inv_[i] = 1.0 / pivot;
        for (const auto& entry : col) occurs[entry.first].push_back(i);

        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) arow[a.col_idx[k]] = 0.0;
    }

    s.zt_ = CsrMatrix(n, n);
    for (index_t i = 0; i < n; ++i) {
        for (const auto& [k, v] : columns[i]) {
            s.zt_.col_idx.push_back(k);
            s.zt_.values.push_back(v);
        }
        s.zt_.row_ptr[i + 1] = static_cast<index_t>(s.zt_.col_idx.size());
    }
    return s;
}

void AinvSmoother::apply_inverse(std::span<const double> r, std::span<double> z) const {
    const index_t n = zt_.n_rows;
    Vector t(static_cast<std::size_t>(n));
    zt_.spmv(1.0, r, 0.0, t);
    for (index_t i = 0; i < n; ++i) t[i] *= d_inv_[i];
    std::fill(z.begin(), z.end(), 0.0);
    for (index_t i = 0; i < n; ++i) {
        for (index_t k = zt_.row_ptr[i]; k < zt_.row_ptr[i + 1]; ++k) {
            z[zt_.col_idx[k]] += zt_.values[k] * t[i];
        }
    }
}

void apply_inverse(const Smoother& m, std::span<const double> r, std::span<double> z) {
    std::visit([&](const auto& s) { s.apply_inverse(r, z); }, m);
}

void smoother_apply(const Smoother& m, const SparseMatrix& a, std::span<double> x,
                    std::span<const double> b, int sweeps) {
    const auto n = static_cast<std::size_t>(a.n_rows());
    if (x.size() != n || b.size() != n) throw DimensionError("smoother_apply: size mismatch");
    Vector res(n);
    Vector corr(n);
    for (int s = 0; s < sweeps; ++s) {
        std::copy(b.begin(), b.end(), res.begin());
        a.spmv(-1.0, x, 1.0, res);
        apply_inverse(m, res, corr);
        for (std::size_t i = 0; i < n; ++i) x[i] += corr[i];
    }
}

}  // namespace amgkit
