#pragma once

#include <chrono>
#include <cmath>
#include <concepts>
#include <deque>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amgkit/types.hpp"

namespace amgkit {

enum class KrylovMethod { Cg, Fcg };

std::string_view method_name(KrylovMethod m);

struct SolverConfig {
    KrylovMethod method = KrylovMethod::Fcg;
    double tol = 1e-6;
    int max_iterations = 1000;
    /// Directions kept for FCG orthogonalization; 1 gives FCG(1).
    int fcg_memory = 1;

    void validate() const;
};

struct SolveStats {
    int iterations = 0;
    /// ||b - A x|| / ||b|| recomputed from the returned x.
    double final_relative_residual = 0.0;
    /// Residual norm carried by the recurrence at exit, same normalization.
    double recurrence_relative_residual = 0.0;
    bool converged = false;
    double setup_time_hierarchy = 0.0;
    double setup_time_smoothers = 0.0;
    double solve_time = 0.0;
    double time_per_iteration = 0.0;
    /// Recurrence residual before each iteration (entry 0 is the initial one).
    std::vector<double> residual_history;
};

/// Vector space a Krylov driver runs in: operator application, updates and
/// (fused) inner products. Implemented for plain vectors and shard families.
template <class S>
concept KrylovSpace = requires(S& s, typename S::vector_type& v, const typename S::vector_type& cv,
                               std::span<const std::pair<const typename S::vector_type*,
                                                         const typename S::vector_type*>> pairs,
                               std::span<double> out, double a) {
    { s.make_vector() } -> std::same_as<typename S::vector_type>;
    s.apply(v, v);           // y <- A x (x may get its halo refreshed)
    s.copy(cv, v);           // y <- x
    s.axpby(a, cv, a, v);    // y <- a x + b y
    s.fused_dots(pairs, out);
};

template <class P, class V>
concept PreconditionerFor = requires(P& p, const V& r, V& z) { p(r, z); };

/// Called after every iterate update with (iteration, x).
template <class V>
using IterateObserver = std::function<void(int, const V&)>;

namespace detail {

template <class S>
double norm(S& space, const typename S::vector_type& v) {
    using V = typename S::vector_type;
    const std::pair<const V*, const V*> pair{&v, &v};
    double out = 0.0;
    space.fused_dots(std::span(&pair, 1), std::span(&out, 1));
    return std::sqrt(out);
}

/// r <- b - A x; returns ||r||.
template <class S>
double true_residual(S& space, const typename S::vector_type& b, typename S::vector_type& x,
                     typename S::vector_type& r) {
    space.apply(x, r);
    space.axpby(1.0, b, -1.0, r);
    return norm(space, r);
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class S>
bool zero_rhs(S& space, typename S::vector_type& x, double bnorm, SolveStats& stats) {
    if (bnorm != 0.0) return false;
    space.axpby(0.0, x, 0.0, x);
    stats.converged = true;
    stats.residual_history = {0.0};
    return true;
}

}  // namespace detail

/// Preconditioned conjugate gradient with a fixed SPD preconditioner.
/// Stops when ||b - A x|| / ||b|| <= tol (checked on the true residual when
/// the recurrence claims convergence) or after max_iterations.
template <KrylovSpace S, class P>
    requires PreconditionerFor<P, typename S::vector_type>
SolveStats cg(S& space, const typename S::vector_type& b, typename S::vector_type& x, P&& precond,
              const SolverConfig& cfg, IterateObserver<typename S::vector_type> observer = {}) {
    using V = typename S::vector_type;
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    SolveStats stats;
    const double bnorm = detail::norm(space, b);
    if (detail::zero_rhs(space, x, bnorm, stats)) return stats;

    V r = space.make_vector();
    V z = space.make_vector();
    V p = space.make_vector();
    V q = space.make_vector();
    double rnorm = detail::true_residual(space, b, x, r);
    precond(std::as_const(r), z);
    space.copy(z, p);
    double rz = 0.0;
    {
        const std::pair<const V*, const V*> pair{&r, &z};
        space.fused_dots(std::span(&pair, 1), std::span(&rz, 1));
    }
    stats.residual_history.push_back(rnorm / bnorm);

    while (true) {
        if (rnorm / bnorm <= cfg.tol) {
            rnorm = detail::true_residual(space, b, x, r);
            if (rnorm / bnorm <= cfg.tol) {
                stats.converged = true;
                break;
            }
            // Recurrence drifted: restart from the true residual.
            precond(std::as_const(r), z);
            space.copy(z, p);
            const std::pair<const V*, const V*> pair{&r, &z};
            space.fused_dots(std::span(&pair, 1), std::span(&rz, 1));
        }
        if (stats.iterations >= cfg.max_iterations) break;

        space.apply(p, q);
        double pq = 0.0;
        {
            const std::pair<const V*, const V*> pair{&p, &q};
            space.fused_dots(std::span(&pair, 1), std::span(&pq, 1));
        }
        if (!(pq > 0.0)) {
            throw BreakdownError("cg: nonpositive curvature p^T A p = " + std::to_string(pq) +
                                 " at iteration " + std::to_string(stats.iterations));
        }
        const double alpha = rz / pq;
        space.axpby(alpha, p, 1.0, x);
        space.axpby(-alpha, q, 1.0, r);
        ++stats.iterations;
        if (observer) observer(stats.iterations, x);

        precond(std::as_const(r), z);
        const std::pair<const V*, const V*> pairs[2] = {{&r, &r}, {&r, &z}};
        double dots[2] = {0.0, 0.0};
        space.fused_dots(std::span(pairs), std::span(dots));
        rnorm = std::sqrt(dots[0]);
        stats.residual_history.push_back(rnorm / bnorm);
        const double beta = dots[1] / rz;
        rz = dots[1];
        space.axpby(1.0, z, beta, p);
    }

    stats.recurrence_relative_residual = rnorm / bnorm;
    V t = space.make_vector();
    stats.final_relative_residual = detail::true_residual(space, b, x, t) / bnorm;
    stats.converged = stats.final_relative_residual <= cfg.tol;
    stats.solve_time = detail::seconds_since(t0);
    stats.time_per_iteration = stats.iterations > 0 ? stats.solve_time / stats.iterations : 0.0;
    return stats;
}

/// Flexible CG for preconditioners that may change between applications.
/// Each new direction is A-orthogonalized against the last fcg_memory ones.
/// The iteration is arranged so that all inner products it needs
/// (r.r, z.r, z.Az and z.q_j) are formed in one fused reduction, with
/// q = A d obtained by recurrence from A z.
template <KrylovSpace S, class P>
    requires PreconditionerFor<P, typename S::vector_type>
SolveStats fcg(S& space, const typename S::vector_type& b, typename S::vector_type& x, P&& precond,
               const SolverConfig& cfg, IterateObserver<typename S::vector_type> observer = {}) {
    using V = typename S::vector_type;
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    SolveStats stats;
    const double bnorm = detail::norm(space, b);
    if (detail::zero_rhs(space, x, bnorm, stats)) return stats;

    struct Direction {
        V d;
        V q;
        double delta;
    };
    std::deque<Direction> memory;

    V r = space.make_vector();
    V z = space.make_vector();
    V v = space.make_vector();
    detail::true_residual(space, b, x, r);
    double rnorm = 0.0;

    std::vector<std::pair<const V*, const V*>> pairs;
    std::vector<double> dots;
    while (true) {
        precond(std::as_const(r), z);
        space.apply(z, v);
        pairs.assign({{&r, &r}, {&z, &r}, {&z, &v}});
        for (const auto& dir : memory) pairs.emplace_back(&z, &dir.q);
        dots.assign(pairs.size(), 0.0);
        space.fused_dots(pairs, dots);
        rnorm = std::sqrt(dots[0]);
        if (stats.residual_history.size() == static_cast<std::size_t>(stats.iterations)) {
            stats.residual_history.push_back(rnorm / bnorm);
        } else {
            stats.residual_history.back() = rnorm / bnorm;
        }

        if (rnorm / bnorm <= cfg.tol) {
            rnorm = detail::true_residual(space, b, x, r);
            if (rnorm / bnorm <= cfg.tol) {
                stats.converged = true;
                break;
            }
            memory.clear();
            continue;
        }
        if (stats.iterations >= cfg.max_iterations) break;

        // d = z - sum beta_j d_j, q = A z - sum beta_j q_j.
        Direction next{space.make_vector(), space.make_vector(), dots[2]};
        space.copy(z, next.d);
        space.copy(v, next.q);
        for (std::size_t j = 0; j < memory.size(); ++j) {
            const double zq = dots[3 + j];
            const double beta = zq / memory[j].delta;
            space.axpby(-beta, memory[j].d, 1.0, next.d);
            space.axpby(-beta, memory[j].q, 1.0, next.q);
            next.delta -= beta * zq;
        }
        if (!(next.delta > 0.0)) {
            throw BreakdownError("fcg: nonpositive curvature d^T A d = " +
                                 std::to_string(next.delta) + " at iteration " +
                                 std::to_string(stats.iterations));
        }
        const double alpha = dots[1] / next.delta;
        space.axpby(alpha, next.d, 1.0, x);
        space.axpby(-alpha, next.q, 1.0, r);
        ++stats.iterations;
        if (observer) observer(stats.iterations, x);

        memory.push_back(std::move(next));
        if (static_cast<int>(memory.size()) > cfg.fcg_memory) memory.pop_front();
    }

    stats.recurrence_relative_residual = rnorm / bnorm;
    V t = space.make_vector();
    stats.final_relative_residual = detail::true_residual(space, b, x, t) / bnorm;
    stats.converged = stats.final_relative_residual <= cfg.tol;
    stats.solve_time = detail::seconds_since(t0);
    stats.time_per_iteration = stats.iterations > 0 ? stats.solve_time / stats.iterations : 0.0;
    return stats;
}

template <KrylovSpace S, class P>
SolveStats krylov_solve(S& space, const typename S::vector_type& b, typename S::vector_type& x,
                        P&& precond, const SolverConfig& cfg) {
    return cfg.method == KrylovMethod::Cg ? cg(space, b, x, std::forward<P>(precond), cfg)
                                          : fcg(space, b, x, std::forward<P>(precond), cfg);
}

}  // namespace amgkit
