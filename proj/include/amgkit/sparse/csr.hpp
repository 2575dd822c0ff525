#pragma once

#include <span>
#include <vector>

#include "amgkit/types.hpp"

namespace amgkit {

/// Compressed sparse row storage. Column indices are strictly increasing
/// within a row; this is the canonical interchange layout.
struct CsrMatrix {
    index_t n_rows = 0;
    index_t n_cols = 0;
    std::vector<index_t> row_ptr{0};
    std::vector<index_t> col_idx;
    std::vector<double> values;

    CsrMatrix() = default;
    CsrMatrix(index_t rows, index_t cols);
    CsrMatrix(index_t rows, index_t cols, std::vector<index_t> ptr, std::vector<index_t> idx,
              std::vector<double> vals);

    static CsrMatrix identity(index_t n);

    index_t nnz() const { return static_cast<index_t>(values.size()); }
    index_t row_length(index_t i) const { return row_ptr[i + 1] - row_ptr[i]; }

    /// y <- alpha * A x + beta * y. With beta == 0 the old y is never read.
    void spmv(double alpha, std::span<const double> x, double beta, std::span<double> y) const;

    /// Diagonal entries (0 where the pattern has no diagonal).
    Vector diagonal() const;

    /// Position of (i, j) in col_idx/values, or -1 when outside the pattern.
    index_t find(index_t i, index_t j) const;

    /// Throws DimensionError when the structural invariants are broken.
    void validate() const;

    bool operator==(const CsrMatrix&) const = default;
};

CsrMatrix transpose(const CsrMatrix& a);

/// Sparse product a * b. Entries with magnitude below drop_below are omitted.
CsrMatrix multiply(const CsrMatrix& a, const CsrMatrix& b, double drop_below = 0.0);

/// True when a equals its transpose up to tol * max|a_ij|.
bool is_symmetric(const CsrMatrix& a, double tol = 0.0);

}  // namespace amgkit
