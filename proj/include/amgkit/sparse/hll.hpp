#pragma once

#include <span>
#include <vector>

#include "amgkit/sparse/csr.hpp"

namespace amgkit {

/// Rows per block when none is given; one warp.
inline constexpr index_t kDefaultHackSize = 32;

/// Hacked ELLPACK: rows are cut into blocks of hack_size rows and each
/// block is stored as its own ELLPACK slab, column-major within the block
/// (slot of local row r, entry k is offset + k * block_rows + r).
///
/// Padding slots always hold 0.0 and repeat the row's last valid column
/// (column 0 for an empty row). Storage is only reachable through
/// from_csr()/from_raw(), and from_raw() rejects any other padding, so a
/// padded slot can never change a product.
class HllMatrix {
public:
    HllMatrix() = default;

    static HllMatrix from_csr(const CsrMatrix& a, index_t hack_size = kDefaultHackSize);

    /// Adopts externally built arrays after checking every layout invariant.
    static HllMatrix from_raw(index_t n_rows, index_t n_cols, index_t hack_size,
                              std::vector<index_t> row_length, std::vector<index_t> hack_offsets,
                              std::vector<index_t> col_idx, std::vector<double> values);

    CsrMatrix to_csr() const;

    index_t n_rows() const { return n_rows_; }
    index_t n_cols() const { return n_cols_; }
    index_t hack_size() const { return hack_size_; }
    index_t nnz() const { return nnz_; }
    index_t n_blocks() const { return static_cast<index_t>(hack_offsets_.size()) - 1; }
    index_t block_rows(index_t b) const;
    index_t block_width(index_t b) const;
    /// Stored slots including padding.
    index_t storage_size() const { return static_cast<index_t>(values_.size()); }
    index_t padded_slots() const { return storage_size() - nnz_; }

    std::span<const index_t> row_lengths() const { return row_length_; }
    std::span<const index_t> hack_offsets() const { return hack_offsets_; }
    std::span<const index_t> col_idx() const { return col_idx_; }
    std::span<const double> values() const { return values_; }

    void spmv(double alpha, std::span<const double> x, double beta, std::span<double> y) const;

    /// Storage slot of entry (i, j), or -1 when outside the pattern.
    index_t find(index_t i, index_t j) const;
    /// Overwrites a stored entry; throws PatternError for a padding slot.
    void set_value(index_t slot, double v);
    double value(index_t slot) const { return values_[slot]; }

    Vector diagonal() const;

    void validate() const;

    bool operator==(const HllMatrix&) const = default;

private:
    index_t slot(index_t row, index_t k) const;

    index_t n_rows_ = 0;
    index_t n_cols_ = 0;
    index_t hack_size_ = kDefaultHackSize;
    index_t nnz_ = 0;
    std::vector<index_t> row_length_;
    std::vector<index_t> hack_offsets_{0};
    std::vector<index_t> col_idx_;
    std::vector<double> values_;
};

/// Plain ELLPACK: a single slab whose width is the longest row.
class EllMatrix {
public:
    EllMatrix() = default;

    static EllMatrix from_csr(const CsrMatrix& a);
    CsrMatrix to_csr() const { return slab_.to_csr(); }

    index_t n_rows() const { return slab_.n_rows(); }
    index_t n_cols() const { return slab_.n_cols(); }
    index_t nnz() const { return slab_.nnz(); }
    index_t max_row_length() const { return slab_.n_blocks() > 0 ? slab_.block_width(0) : 0; }
    index_t storage_size() const { return slab_.storage_size(); }
    index_t padded_slots() const { return slab_.padded_slots(); }

    std::span<const index_t> col_idx() const { return slab_.col_idx(); }
    std::span<const double> values() const { return slab_.values(); }

    void spmv(double alpha, std::span<const double> x, double beta, std::span<double> y) const {
        slab_.spmv(alpha, x, beta, y);
    }
    index_t find(index_t i, index_t j) const { return slab_.find(i, j); }
    void set_value(index_t slot, double v) { slab_.set_value(slot, v); }
    double value(index_t slot) const { return slab_.value(slot); }
    Vector diagonal() const { return slab_.diagonal(); }
    void validate() const { slab_.validate(); }

    bool operator==(const EllMatrix&) const = default;

private:
    HllMatrix slab_;
};

}  // namespace amgkit
