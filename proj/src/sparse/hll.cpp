#include "amgkit/sparse/hll.hpp"

#include <algorithm>
#include <string>

namespace amgkit {

HllMatrix HllMatrix::from_csr(const CsrMatrix& a, index_t hack_size) {
    if (hack_size < 1) throw DimensionError("hll: hack_size must be at least 1");
    HllMatrix m;
    m.n_rows_ = a.n_rows;
    m.n_cols_ = a.n_cols;
    m.hack_size_ = hack_size;
    m.nnz_ = a.nnz();
    m.row_length_.resize(a.n_rows);
    for (index_t i = 0; i < a.n_rows; ++i) m.row_length_[i] = a.row_length(i);

    const index_t n_blocks = (a.n_rows + hack_size - 1) / hack_size;
    m.hack_offsets_.assign(static_cast<std::size_t>(n_blocks) + 1, 0);
    for (index_t b = 0; b < n_blocks; ++b) {
        const index_t r0 = b * hack_size;
        const index_t r1 = std::min(a.n_rows, r0 + hack_size);
        index_t width = 0;
        for (index_t i = r0; i < r1; ++i) width = std::max(width, m.row_length_[i]);
        m.hack_offsets_[b + 1] = m.hack_offsets_[b] + width * (r1 - r0);
    }
    m.col_idx_.assign(m.hack_offsets_.back(), 0);
    m.values_.assign(m.hack_offsets_.back(), 0.0);
    for (index_t i = 0; i < a.n_rows; ++i) {
        const index_t len = m.row_length_[i];
        const index_t width = m.block_width(i / hack_size);
        const index_t pad_col = len > 0 ? a.col_idx[a.row_ptr[i + 1] - 1] : 0;
        for (index_t k = 0; k < width; ++k) {
            const index_t s = m.slot(i, k);
            if (k < len) {
                m.col_idx_[s] = a.col_idx[a.row_ptr[i] + k];
                m.values_[s] = a.values[a.row_ptr[i] + k];
            } else {
                m.col_idx_[s] = pad_col;
            }
        }
    }
    return m;
}

HllMatrix HllMatrix::from_raw(index_t n_rows, index_t n_cols, index_t hack_size,
                              std::vector<index_t> row_length, std::vector<index_t> hack_offsets,
                              std::vector<index_t> col_idx, std::vector<double> values) {
    HllMatrix m;
    m.n_rows_ = n_rows;
    m.n_cols_ = n_cols;
    m.hack_size_ = hack_size;
    m.row_length_ = std::move(row_length);
    m.hack_offsets_ = std::move(hack_offsets);
    m.col_idx_ = std::move(col_idx);
    m.values_ = std::move(values);
    m.nnz_ = 0;
    for (const index_t len : m.row_length_) m.nnz_ += len;
    m.validate();
    return m;
}

index_t HllMatrix::block_rows(index_t b) const {
    return std::min(hack_size_, n_rows_ - b * hack_size_);
}

index_t HllMatrix::block_width(index_t b) const {
    const index_t rows = block_rows(b);
    return rows == 0 ? 0 : (hack_offsets_[b + 1] - hack_offsets_[b]) / rows;
}

index_t HllMatrix::slot(index_t row, index_t k) const {
    const index_t b = row / hack_size_;
    return hack_offsets_[b] + k * block_rows(b) + (row - b * hack_size_);
}

CsrMatrix HllMatrix::to_csr() const {
    CsrMatrix a(n_rows_, n_cols_);
    a.col_idx.reserve(nnz_);
    a.values.reserve(nnz_);
    for (index_t i = 0; i < n_rows_; ++i) {
        for (index_t k = 0; k < row_length_[i]; ++k) {
            const index_t s = slot(i, k);
            a.col_idx.push_back(col_idx_[s]);
            a.values.push_back(values_[s]);
        }
        a.row_ptr[i + 1] = static_cast<index_t>(a.col_idx.size());
    }
    return a;
}

void HllMatrix::spmv(double alpha, std::span<const double> x, double beta,
                     std::span<double> y) const {
    if (static_cast<index_t>(x.size()) != n_cols_ || static_cast<index_t>(y.size()) != n_rows_) {
        throw DimensionError("hll spmv: operand sizes do not conform to " +
                             std::to_string(n_rows_) + "x" + std::to_string(n_cols_));
    }
    if (alpha == 0.0) {
        if (beta == 0.0) {
            std::fill(y.begin(), y.end(), 0.0);
        } else if (beta != 1.0) {
            for (auto& v : y) v *= beta;
        }
        return;
    }
    const index_t n_blocks = this->n_blocks();
    for (index_t b = 0; b < n_blocks; ++b) {
        const index_t rows = block_rows(b);
        const index_t width = block_width(b);
        const index_t base = hack_offsets_[b];
        const index_t r0 = b * hack_size_;
        // Every row of the block runs the full width; padding adds exact zeros.
        for (index_t r = 0; r < rows; ++r) {
            double sum = 0.0;
            for (index_t k = 0; k < width; ++k) {
                const index_t s = base + k * rows + r;
                sum += values_[s] * x[col_idx_[s]];
            }
            const index_t i = r0 + r;
            y[i] = beta == 0.0 ? alpha * sum : alpha * sum + beta * y[i];
        }
    }
}

index_t HllMatrix::find(index_t i, index_t j) const {
    index_t lo = 0;
    index_t hi = row_length_[i];
    while (lo < hi) {
        const index_t mid = (lo + hi) / 2;
        if (col_idx_[slot(i, mid)] < j) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if (lo < row_length_[i] && col_idx_[slot(i, lo)] == j) return slot(i, lo);
    return -1;
}

void HllMatrix::set_value(index_t s, double v) {
    if (s < 0 || s >= storage_size()) throw PatternError("hll: slot " + std::to_string(s) + " out of range");
    const auto it = std::upper_bound(hack_offsets_.begin(), hack_offsets_.end(), s);
    const index_t b = static_cast<index_t>(it - hack_offsets_.begin()) - 1;
    const index_t rows = block_rows(b);
    const index_t k = (s - hack_offsets_[b]) / rows;
    const index_t r = (s - hack_offsets_[b]) % rows;
    if (k >= row_length_[b * hack_size_ + r]) {
        throw PatternError("hll: slot " + std::to_string(s) + " is padding and stays 0.0");
    }
    values_[s] = v;
}

Vector HllMatrix::diagonal() const {
    Vector d(static_cast<std::size_t>(n_rows_), 0.0);
    for (index_t i = 0; i < n_rows_; ++i) {
        const index_t s = find(i, i);
        if (s >= 0) d[i] = values_[s];
    }
    return d;
}

void HllMatrix::validate() const {
    if (hack_size_ < 1) throw DimensionError("hll: hack_size must be at least 1");
    if (static_cast<index_t>(row_length_.size()) != n_rows_) {
        throw DimensionError("hll: row_length must have n_rows entries");
    }
    const index_t n_blocks = (n_rows_ + hack_size_ - 1) / hack_size_;
    if (static_cast<index_t>(hack_offsets_.size()) != n_blocks + 1 || hack_offsets_[0] != 0 ||
        hack_offsets_.back() != static_cast<index_t>(values_.size()) ||
        col_idx_.size() != values_.size()) {
        throw DimensionError("hll: block offsets do not match the storage arrays");
    }
    for (index_t b = 0; b < n_blocks; ++b) {
        const index_t rows = block_rows(b);
        const index_t span = hack_offsets_[b + 1] - hack_offsets_[b];
        if (span < 0 || span % rows != 0) {
            throw DimensionError("hll: block " + std::to_string(b) +
                                 " storage is not rows x width");
        }
        const index_t width = span / rows;
        index_t longest = 0;
        for (index_t r = 0; r < rows; ++r) {
            const index_t i = b * hack_size_ + r;
            const index_t len = row_length_[i];
            if (len < 0 || len > width) {
                throw DimensionError("hll: row " + std::to_string(i) + " exceeds its block width");
            }
            longest = std::max(longest, len);
            for (index_t k = 0; k < len; ++k) {
                const index_t c = col_idx_[slot(i, k)];
                if (c < 0 || c >= n_cols_ || (k > 0 && c <= col_idx_[slot(i, k - 1)])) {
                    throw DimensionError("hll: bad column index in row " + std::to_string(i));
                }
            }
            const index_t pad_col = len > 0 ? col_idx_[slot(i, len - 1)] : 0;
            for (index_t k = len; k < width; ++k) {
                const index_t s = slot(i, k);
                // Rejects NaN as well: NaN != 0.0.
                if (!(values_[s] == 0.0) || col_idx_[s] != pad_col) {
                    throw DimensionError("hll: padding slot of row " + std::to_string(i) +
                                         " must hold 0.0 at the row's last column");
                }
            }
        }
        if (longest != width) {
            throw DimensionError("hll: block " + std::to_string(b) +
                                 " is wider than its longest row");
        }
    }
}

EllMatrix EllMatrix::from_csr(const CsrMatrix& a) {
    EllMatrix m;
    m.slab_ = HllMatrix::from_csr(a, std::max<index_t>(a.n_rows, 1));
    return m;
}

}  // namespace amgkit
