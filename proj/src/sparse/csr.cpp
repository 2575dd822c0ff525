#include "amgkit/sparse/csr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace amgkit {

CsrMatrix::CsrMatrix(index_t rows, index_t cols)
    : n_rows(rows), n_cols(cols), row_ptr(static_cast<std::size_t>(rows) + 1, 0) {}

CsrMatrix::CsrMatrix(index_t rows, index_t cols, std::vector<index_t> ptr,
                     std::vector<index_t> idx, std::vector<double> vals)
    : n_rows(rows),
      n_cols(cols),
      row_ptr(std::move(ptr)),
      col_idx(std::move(idx)),
      values(std::move(vals)) {
    validate();
}

CsrMatrix CsrMatrix::identity(index_t n) {
    CsrMatrix m(n, n);
    m.col_idx.resize(n);
    m.values.assign(n, 1.0);
    for (index_t i = 0; i < n; ++i) {
        m.row_ptr[i + 1] = i + 1;
        m.col_idx[i] = i;
    }
    return m;
}

void CsrMatrix::spmv(double alpha, std::span<const double> x, double beta,
                     std::span<double> y) const {
    if (static_cast<index_t>(x.size()) != n_cols || static_cast<index_t>(y.size()) != n_rows) {
        throw DimensionError("spmv: matrix is " + std::to_string(n_rows) + "x" +
                             std::to_string(n_cols) + ", x has " + std::to_string(x.size()) +
                             " entries, y has " + std::to_string(y.size()));
    }
    if (alpha == 0.0) {
        if (beta == 0.0) {
            std::fill(y.begin(), y.end(), 0.0);
        } else if (beta != 1.0) {
            for (auto& v : y) v *= beta;
        }
        return;
    }
    for (index_t i = 0; i < n_rows; ++i) {
        double sum = 0.0;
        for (index_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            sum += values[k] * x[col_idx[k]];
        }
        y[i] = beta == 0.0 ? alpha * sum : alpha * sum + beta * y[i];
    }
}

Vector CsrMatrix::diagonal() const {
    Vector d(static_cast<std::size_t>(n_rows), 0.0);
    for (index_t i = 0; i < n_rows; ++i) {
        const index_t k = find(i, i);
        if (k >= 0) d[i] = values[k];
    }
    return d;
}

index_t CsrMatrix::find(index_t i, index_t j) const {
    const auto first = col_idx.begin() + row_ptr[i];
    const auto last = col_idx.begin() + row_ptr[i + 1];
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return -1;
    return static_cast<index_t>(it - col_idx.begin());
}

void CsrMatrix::validate() const {
    if (n_rows < 0 || n_cols < 0) throw DimensionError("csr: negative dimension");
    if (static_cast<index_t>(row_ptr.size()) != n_rows + 1) {
        throw DimensionError("csr: row_ptr must have n_rows + 1 entries");
    }
    if (row_ptr.front() != 0 || row_ptr.back() != static_cast<index_t>(col_idx.size()) ||
        col_idx.size() != values.size()) {
        throw DimensionError("csr: row_ptr does not match the entry arrays");
    }
    for (index_t i = 0; i < n_rows; ++i) {
        if (row_ptr[i + 1] < row_ptr[i]) throw DimensionError("csr: row_ptr decreases");
        for (index_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
            if (col_idx[k] < 0 || col_idx[k] >= n_cols) {
                throw DimensionError("csr: column index out of range in row " + std::to_string(i));
            }
            if (k > row_ptr[i] && col_idx[k] <= col_idx[k - 1]) {
                throw DimensionError("csr: columns not strictly increasing in row " +
                                     std::to_string(i));
            }
        }
    }
}

CsrMatrix transpose(const CsrMatrix& a) {
    CsrMatrix t(a.n_cols, a.n_rows);
    for (index_t k = 0; k < a.nnz(); ++k) ++t.row_ptr[a.col_idx[k] + 1];
    for (index_t i = 0; i < a.n_cols; ++i) t.row_ptr[i + 1] += t.row_ptr[i];
    t.col_idx.resize(a.nnz());
    t.values.resize(a.nnz());
    std::vector<index_t> next(t.row_ptr.begin(), t.row_ptr.end() - 1);
    // Rows are visited in ascending order, so each transposed row comes out sorted.
    for (index_t i = 0; i < a.n_rows; ++i) {
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            const index_t dst = next[a.col_idx[k]]++;
            t.col_idx[dst] = i;
            t.values[dst] = a.values[k];
        }
    }
    return t;
}

CsrMatrix multiply(const CsrMatrix& a, const CsrMatrix& b, double drop_below) {
    if (a.n_cols != b.n_rows) {
        throw DimensionError("multiply: inner dimensions " + std::to_string(a.n_cols) + " and " +
                             std::to_string(b.n_rows) + " differ");
    }
    CsrMatrix c(a.n_rows, b.n_cols);
    std::vector<index_t> marker(static_cast<std::size_t>(b.n_cols), -1);
    std::vector<double> acc(static_cast<std::size_t>(b.n_cols), 0.0);
    std::vector<index_t> cols;
    for (index_t i = 0; i < a.n_rows; ++i) {
        cols.clear();
        for (index_t ka = a.row_ptr[i]; ka < a.row_ptr[i + 1]; ++ka) {
            const index_t j = a.col_idx[ka];
            const double av = a.values[ka];
            for (index_t kb = b.row_ptr[j]; kb < b.row_ptr[j + 1]; ++kb) {
                const index_t col = b.col_idx[kb];
                if (marker[col] != i) {
                    marker[col] = i;
                    acc[col] = 0.0;
                    cols.push_back(col);
                }
                acc[col] += av * b.values[kb];
            }
        }
        std::sort(cols.begin(), cols.end());
        for (const index_t col : cols) {
            if (std::abs(acc[col]) < drop_below) continue;
            c.col_idx.push_back(col);
            c.values.push_back(acc[col]);
        }
        c.row_ptr[i + 1] = static_cast<index_t>(c.col_idx.size());
    }
    return c;
}

bool is_symmetric(const CsrMatrix& a, double tol) {
    if (a.n_rows != a.n_cols) return false;
    double scale = 0.0;
    for (const double v : a.values) scale = std::max(scale, std::abs(v));
    const double bound = tol * scale;
    for (index_t i = 0; i < a.n_rows; ++i) {
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            const index_t j = a.col_idx[k];
            const index_t kt = a.find(j, i);
            const double mirror = kt < 0 ? 0.0 : a.values[kt];
            if (std::abs(a.values[k] - mirror) > bound) return false;
        }
    }
    return true;
}

}  // namespace amgkit
