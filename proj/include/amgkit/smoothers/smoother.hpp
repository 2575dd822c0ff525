#pragma once

#include <span>
#include <string_view>
#include <variant>

#include "amgkit/sparse/matrix.hpp"

namespace amgkit {

enum class SmootherKind { L1Jacobi, Ainv };

std::string_view smoother_name(SmootherKind k);

/// Diagonal smoother M = diag(a_ii + sum_{j != i} |a_ij|). Convergent for
/// SPD A without a damping factor.
class L1JacobiSmoother {
public:
    L1JacobiSmoother() = default;
    static L1JacobiSmoother build(const CsrMatrix& a);

    const Vector& diagonal() const { return m_diag_; }
    /// z <- M^-1 r
    void apply_inverse(std::span<const double> r, std::span<double> z) const;

    bool operator==(const L1JacobiSmoother&) const = default;

private:
    Vector m_diag_;
    Vector inv_;
};

/// Factored approximate inverse A^-1 ~ Z D^-1 Z^T from an incomplete
/// A-orthogonalization of the unit vectors (SPD only, so W = Z). Z is unit
/// upper triangular; column i is stored as row i of z_transposed().
class AinvSmoother {
public:
    AinvSmoother() = default;

    /// Left-looking biconjugation. After column i is formed, off-diagonal
    /// entries with |z| < drop_tol are discarded. Throws BreakdownError on a
    /// nonpositive pivot.
    static AinvSmoother build(const CsrMatrix& a, double drop_tol);

    const CsrMatrix& z_transposed() const { return zt_; }
    CsrMatrix z() const { return transpose(zt_); }
    const Vector& pivots() const { return pivots_; }
    double drop_tol() const { return drop_tol_; }

    /// z <- Z D^-1 Z^T r
    void apply_inverse(std::span<const double> r, std::span<double> z) const;

    bool operator==(const AinvSmoother&) const = default;

private:
    CsrMatrix zt_;
    Vector pivots_;
    Vector d_inv_;
    double drop_tol_ = 0.0;
};

using Smoother = std::variant<L1JacobiSmoother, AinvSmoother>;

void apply_inverse(const Smoother& m, std::span<const double> r, std::span<double> z);

/// `sweeps` steps of x <- x + M^-1 (b - A x).
void smoother_apply(const Smoother& m, const SparseMatrix& a, std::span<double> x,
                    std::span<const double> b, int sweeps);

}  // namespace amgkit
