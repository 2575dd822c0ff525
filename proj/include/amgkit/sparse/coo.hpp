#pragma once

#include <vector>

#include "amgkit/sparse/csr.hpp"

namespace amgkit {

struct Triple {
    index_t row = 0;
    index_t col = 0;
    double value = 0.0;
};

/// Insert-phase representation: an unordered list of (row, col, value)
/// triples. Duplicates are allowed and are summed by assemble().
class CooBuilder {
public:
    CooBuilder() = default;
    CooBuilder(index_t n_rows, index_t n_cols) : n_rows_(n_rows), n_cols_(n_cols) {}

    void insert(index_t row, index_t col, double value) { triples_.push_back({row, col, value}); }
    void reserve(std::size_t n) { triples_.reserve(n); }

    index_t n_rows() const { return n_rows_; }
    index_t n_cols() const { return n_cols_; }
    const std::vector<Triple>& triples() const { return triples_; }
    std::vector<Triple>& triples() { return triples_; }

private:
    index_t n_rows_ = 0;
    index_t n_cols_ = 0;
    std::vector<Triple> triples_;
};

/// Sorted, deduplicated CSR. Duplicates are summed in (row, col, value)
/// order, so the result does not depend on insertion order.
CsrMatrix assemble(const CooBuilder& builder);

}  // namespace amgkit
