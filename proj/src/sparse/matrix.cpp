#include "amgkit/sparse/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace amgkit {

std::string_view format_name(Format f) {
    switch (f) {
        case Format::Csr: return "csr";
        case Format::Ell: return "ell";
        case Format::Hll: return "hll";
    }
    return "?";
}

Format parse_format(std::string_view name) {
    if (name == "csr") return Format::Csr;
    if (name == "ell") return Format::Ell;
    if (name == "hll") return Format::Hll;
    throw ConfigError("unknown matrix format '" + std::string(name) + "'");
}

index_t SparseMatrix::n_rows() const {
    return std::visit([](const auto& a) -> index_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(a)>, CsrMatrix>) {
            return a.n_rows;
        } else {
            return a.n_rows();
        }
    }, storage_);
}

index_t SparseMatrix::n_cols() const {
    return std::visit([](const auto& a) -> index_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(a)>, CsrMatrix>) {
            return a.n_cols;
        } else {
            return a.n_cols();
        }
    }, storage_);
}

index_t SparseMatrix::nnz() const {
    return std::visit([](const auto& a) { return a.nnz(); }, storage_);
}

CsrMatrix SparseMatrix::to_csr() const {
    return std::visit([](const auto& a) -> CsrMatrix {
        if constexpr (std::is_same_v<std::decay_t<decltype(a)>, CsrMatrix>) {
            return a;
        } else {
            return a.to_csr();
        }
    }, storage_);
}

void SparseMatrix::spmv(double alpha, std::span<const double> x, double beta,
                        std::span<double> y) const {
    std::visit([&](const auto& a) { a.spmv(alpha, x, beta, y); }, storage_);
}

Vector SparseMatrix::diagonal() const {
    return std::visit([](const auto& a) { return a.diagonal(); }, storage_);
}

SparseMatrix convert(const SparseMatrix& m, Format target, index_t hack_size) {
    if (m.format() == target) {
        const auto* hll = std::get_if<HllMatrix>(&m.storage());
        if (hll == nullptr || hll->hack_size() == hack_size) return m;
    }
    CsrMatrix csr = m.to_csr();
    switch (target) {
        case Format::Csr: return {std::move(csr), m.symmetric()};
        case Format::Ell: return {EllMatrix::from_csr(csr), m.symmetric()};
        case Format::Hll: return {HllMatrix::from_csr(csr, hack_size), m.symmetric()};
    }
    return m;
}

void update_coefficients(SparseMatrix& m, std::span<const Triple> triples) {
    std::visit([&](auto& a) {
        std::vector<index_t> slots(triples.size());
        for (std::size_t t = 0; t < triples.size(); ++t) {
            const Triple& e = triples[t];
            index_t s = -1;
            if (e.row >= 0 && e.row < m.n_rows() && e.col >= 0 && e.col < m.n_cols()) {
                s = a.find(e.row, e.col);
            }
            if (s < 0) {
                std::ostringstream msg;
                msg << "update_coefficients: position (" << e.row << ", " << e.col
                    << ") is not in the matrix pattern";
                throw PatternError(msg.str());
            }
            slots[t] = s;
        }
        for (std::size_t t = 0; t < triples.size(); ++t) {
            if constexpr (std::is_same_v<std::decay_t<decltype(a)>, CsrMatrix>) {
                a.values[slots[t]] = triples[t].value;
            } else {
                a.set_value(slots[t], triples[t].value);
            }
        }
    }, m.storage());
}

double row_scaled_inf_norm(const CsrMatrix& a) {
    double norm = 0.0;
    for (index_t i = 0; i < a.n_rows; ++i) {
        double sum = 0.0;
        double diag = 0.0;
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            sum += std::abs(a.values[k]);
            if (a.col_idx[k] == i) diag = a.values[k];
        }
        if (diag == 0.0) {
            throw SingularDiagonalError("row_scaled_inf_norm: zero diagonal in row " +
                                        std::to_string(i));
        }
        norm = std::max(norm, sum / std::abs(diag));
    }
    return norm;
}

double row_scaled_inf_norm(const SparseMatrix& a) {
    if (const auto* csr = a.csr()) return row_scaled_inf_norm(*csr);
    return row_scaled_inf_norm(a.to_csr());
}

}  // namespace amgkit
