#pragma once

#include <span>
#include <string_view>
#include <variant>

#include "amgkit/sparse/coo.hpp"
#include "amgkit/sparse/csr.hpp"
#include "amgkit/sparse/hll.hpp"

namespace amgkit {

enum class Format { Csr, Ell, Hll };

std::string_view format_name(Format f);
Format parse_format(std::string_view name);

/// One logical matrix whose physical layout can be swapped at runtime.
/// Every layout produces bit-identical products: rows are accumulated in
/// ascending column order and padding contributes exact zeros.
class SparseMatrix {
public:
    using Storage = std::variant<CsrMatrix, EllMatrix, HllMatrix>;

    SparseMatrix() = default;
    SparseMatrix(CsrMatrix a, bool symmetric = false)  // NOLINT: implicit by intent
        : storage_(std::move(a)), symmetric_(symmetric) {}
    SparseMatrix(EllMatrix a, bool symmetric = false) : storage_(std::move(a)), symmetric_(symmetric) {}
    SparseMatrix(HllMatrix a, bool symmetric = false) : storage_(std::move(a)), symmetric_(symmetric) {}

    Format format() const { return static_cast<Format>(storage_.index()); }
    bool symmetric() const { return symmetric_; }
    void set_symmetric(bool s) { symmetric_ = s; }

    index_t n_rows() const;
    index_t n_cols() const;
    index_t nnz() const;

    /// Non-null only when the active layout is CSR.
    const CsrMatrix* csr() const { return std::get_if<CsrMatrix>(&storage_); }
    CsrMatrix to_csr() const;

    const Storage& storage() const { return storage_; }
    Storage& storage() { return storage_; }

    void spmv(double alpha, std::span<const double> x, double beta, std::span<double> y) const;
    Vector diagonal() const;

private:
    Storage storage_;
    bool symmetric_ = false;
};

/// Same logical matrix in the target layout; hack_size only matters for HLL.
/// Converting to the current layout (with the same hack size) is the identity.
SparseMatrix convert(const SparseMatrix& m, Format target, index_t hack_size = kDefaultHackSize);

inline void spmv(double alpha, const SparseMatrix& a, std::span<const double> x, double beta,
                 std::span<double> y) {
    a.spmv(alpha, x, beta, y);
}

/// Replaces stored values in place; the pattern never changes. Throws
/// PatternError naming the first position outside the pattern (and then
/// leaves the matrix untouched).
void update_coefficients(SparseMatrix& m, std::span<const Triple> triples);

/// max_i sum_j |a_ij| / |a_ii|, i.e. ||D^-1 A||_inf.
double row_scaled_inf_norm(const CsrMatrix& a);
double row_scaled_inf_norm(const SparseMatrix& a);

}  // namespace amgkit
