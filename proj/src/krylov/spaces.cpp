#include "amgkit/krylov/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace amgkit {

std::string_view method_name(KrylovMethod m) { return m == KrylovMethod::Cg ? "cg" : "fcg"; }

void SolverConfig::validate() const {
    if (!(tol > 0.0)) throw ConfigError("solver: tolerance must be positive");
    if (max_iterations < 1) throw ConfigError("solver: max_iterations must be >= 1");
    if (fcg_memory < 1) throw ConfigError("solver: fcg memory must be >= 1");
}

void SerialSpace::axpby(double a, const Vector& x, double b, Vector& y) {
    if (b == 0.0) {
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = a * x[i];
    } else {
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = a * x[i] + b * y[i];
    }
}

void SerialSpace::fused_dots(std::span<const std::pair<const Vector*, const Vector*>> pairs,
                             std::span<double> out) {
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const Vector& x = *pairs[p].first;
        const Vector& y = *pairs[p].second;
        double sum = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
        out[p] = sum;
    }
}

void ShardedSpace::copy(const DistVector& x, DistVector& y) {
    for (std::size_t s = 0; s < x.size(); ++s) {
        const auto src = x[s].owned();
        std::copy(src.begin(), src.end(), y[s].owned_mut().begin());
    }
}

void ShardedSpace::axpby(double a, const DistVector& x, double b, DistVector& y) {
    for (std::size_t s = 0; s < x.size(); ++s) {
        const auto xs = x[s].owned();
        auto ys = y[s].owned_mut();
        if (b == 0.0) {
            for (std::size_t i = 0; i < ys.size(); ++i) ys[i] = a * xs[i];
        } else {
            for (std::size_t i = 0; i < ys.size(); ++i) ys[i] = a * xs[i] + b * ys[i];
        }
    }
}

namespace {

SolveResult run(bool flexible, const SparseMatrix& a, std::span<const double> b,
                const GlobalPreconditioner& precond, const SolverConfig& cfg,
                std::span<const double> x0, IterateObserver<Vector> observer) {
    const auto n = static_cast<std::size_t>(a.n_rows());
    if (b.size() != n || (!x0.empty() && x0.size() != n)) {
        throw DimensionError("solve: right-hand side or initial guess has the wrong length");
    }
    SerialSpace space(a);
    const Vector rhs(b.begin(), b.end());
    SolveResult out;
    out.x = x0.empty() ? Vector(n, 0.0) : Vector(x0.begin(), x0.end());
    auto apply = [&](const Vector& r, Vector& z) {
        if (precond) {
            precond(r, z);
        } else {
            z = r;
        }
    };
    out.stats = flexible ? fcg(space, rhs, out.x, apply, cfg, std::move(observer))
                         : cg(space, rhs, out.x, apply, cfg, std::move(observer));
    return out;
}

}  // namespace

SolveResult cg_solve(const SparseMatrix& a, std::span<const double> b,
                     const GlobalPreconditioner& precond, const SolverConfig& cfg,
                     std::span<const double> x0, IterateObserver<Vector> observer) {
    return run(false, a, b, precond, cfg, x0, std::move(observer));
}

SolveResult fcg_solve(const SparseMatrix& a, std::span<const double> b,
                      const GlobalPreconditioner& precond, const SolverConfig& cfg,
                      std::span<const double> x0, IterateObserver<Vector> observer) {
    return run(true, a, b, precond, cfg, x0, std::move(observer));
}

double relative_residual(const SparseMatrix& a, std::span<const double> x,
                         std::span<const double> b) {
    Vector r(b.begin(), b.end());
    a.spmv(-1.0, x, 1.0, r);
    double rr = 0.0;
    double bb = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        rr += r[i] * r[i];
        bb += b[i] * b[i];
    }
    return bb == 0.0 ? std::sqrt(rr) : std::sqrt(rr / bb);
}

}  // namespace amgkit
