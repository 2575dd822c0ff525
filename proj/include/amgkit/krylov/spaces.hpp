#pragma once

#include <functional>
#include <span>
#include <utility>

#include "amgkit/krylov/krylov.hpp"
#include "amgkit/partition/sharded.hpp"
#include "amgkit/sparse/matrix.hpp"

namespace amgkit {

/// Single-address-space vectors.
class SerialSpace {
public:
    using vector_type = Vector;

    explicit SerialSpace(const SparseMatrix& a) : a_(&a) {}

    Vector make_vector() const { return Vector(static_cast<std::size_t>(a_->n_rows()), 0.0); }
    void apply(const Vector& x, Vector& y) const { a_->spmv(1.0, x, 0.0, y); }
    static void copy(const Vector& x, Vector& y) { y = x; }
    static void axpby(double a, const Vector& x, double b, Vector& y);
    static void fused_dots(std::span<const std::pair<const Vector*, const Vector*>> pairs,
                           std::span<double> out);

private:
    const SparseMatrix* a_;
};

/// Shard families: sharded SpMV with halo exchange, owned-part updates,
/// and reductions combined in ascending shard order.
class ShardedSpace {
public:
    using vector_type = DistVector;

    ShardedSpace(const DistMatrix& a, DescriptorFamily family)
        : a_(&a), family_(std::move(family)) {}

    DistVector make_vector() const { return make_dist_vector(family_); }
    void apply(DistVector& x, DistVector& y) const { sharded_spmv(*a_, x, y); }
    static void copy(const DistVector& x, DistVector& y);
    static void axpby(double a, const DistVector& x, double b, DistVector& y);
    static void fused_dots(std::span<const std::pair<const DistVector*, const DistVector*>> pairs,
                           std::span<double> out) {
        amgkit::fused_dots(pairs, out);
    }

    const DescriptorFamily& family() const { return family_; }

private:
    const DistMatrix* a_;
    DescriptorFamily family_;
};

/// Preconditioner acting on plain global vectors: z <- B r.
using GlobalPreconditioner = std::function<void(std::span<const double>, std::span<double>)>;

/// Applies a global preconditioner to shard families by gathering the owned
/// parts, applying it once, and scattering the result back.
class GatheredPreconditioner {
public:
    GatheredPreconditioner(GlobalPreconditioner inner, index_t n_global)
        : inner_(std::move(inner)), r_(static_cast<std::size_t>(n_global)),
          z_(static_cast<std::size_t>(n_global)) {}

    void operator()(const DistVector& r, DistVector& z) {
        gather_into(r, r_);
        inner_(r_, z_);
        scatter_into(z_, z);
    }

private:
    GlobalPreconditioner inner_;
    Vector r_;
    Vector z_;
};

struct SolveResult {
    Vector x;
    SolveStats stats;
};

/// Plain CG / FCG on a single matrix. An empty preconditioner means identity;
/// an empty x0 means the zero vector.
SolveResult cg_solve(const SparseMatrix& a, std::span<const double> b,
                     const GlobalPreconditioner& precond, const SolverConfig& cfg,
                     std::span<const double> x0 = {}, IterateObserver<Vector> observer = {});
SolveResult fcg_solve(const SparseMatrix& a, std::span<const double> b,
                      const GlobalPreconditioner& precond, const SolverConfig& cfg,
                      std::span<const double> x0 = {}, IterateObserver<Vector> observer = {});

/// ||b - A x||_2 / ||b||_2, or the absolute norm when b = 0.
double relative_residual(const SparseMatrix& a, std::span<const double> x,
                         std::span<const double> b);

}  // namespace amgkit
