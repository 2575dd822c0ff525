#include <doctest.h>

#include <cmath>
#include <memory>

#include "amgkit/bench/poisson.hpp"
#include "amgkit/krylov/spaces.hpp"
#include "amgkit/smoothers/cycle.hpp"
#include "test_support.hpp"

using namespace amgkit;
using namespace amgkit::testing;

namespace {

struct Recorded {
    SolveResult result;
    std::vector<Vector> iterates;
};

Recorded run(KrylovMethod method, const SparseMatrix& a, const Vector& b, const GlobalPreconditioner& m,
             SolverConfig cfg) {
    cfg.method = method;
    Recorded out;
    auto observer = [&out](int, const Vector& x) { out.iterates.push_back(x); };
    out.result = method == KrylovMethod::Cg ? cg_solve(a, b, m, cfg, {}, observer)
                                            : fcg_solve(a, b, m, cfg, {}, observer);
    return out;
}

GlobalPreconditioner jacobi(const CsrMatrix& a) {
    auto l1 = std::make_shared<L1JacobiSmoother>(L1JacobiSmoother::build(a));
    return [l1](std::span<const double> r, std::span<double> z) { l1->apply_inverse(r, z); };
}

}  // namespace

TEST_CASE("cg: examples") {
    SolverConfig cfg;
    const SolveResult eye = cg_solve(SparseMatrix(CsrMatrix::identity(5)), Vector{1, 2, 3, 4, 5}, {}, cfg);
    CHECK(eye.stats.iterations == 1);
    CHECK(eye.stats.converged);
    CHECK(eye.x == Vector{1, 2, 3, 4, 5});

    cfg.tol = 1e-12;
    Vector d(10), b(10, 1.0);
    for (int i = 0; i < 10; ++i) d[i] = i + 1.0;
    const SolveResult diag = cg_solve(SparseMatrix(diagonal_matrix(d)), b, {}, cfg);
    CHECK(diag.stats.converged);
    CHECK(diag.stats.iterations <= 10);
    CHECK(diag.stats.final_relative_residual <= 1e-12);

    const SolveResult zero = cg_solve(SparseMatrix(tridiag(6)), Vector(6, 0.0), {}, cfg);
    CHECK(zero.x == Vector(6, 0.0));
    CHECK(zero.stats.iterations == 0);
    CHECK(zero.stats.converged);

    CHECK_THROWS_AS(cg_solve(SparseMatrix(diagonal_matrix({1, -1})), Vector{1, 1}, {}, cfg), BreakdownError);
    CHECK_THROWS_AS(cg_solve(SparseMatrix(tridiag(3)), Vector{1, 1}, {}, cfg), DimensionError);
}

TEST_CASE("fcg: examples") {
    SolverConfig cfg;
    const SolveResult eye = fcg_solve(SparseMatrix(CsrMatrix::identity(4)), Vector{4, 3, 2, 1}, {}, cfg);
    CHECK(eye.stats.iterations == 1);
    CHECK(eye.x == Vector{4, 3, 2, 1});
    CHECK_THROWS_AS(fcg_solve(SparseMatrix(diagonal_matrix({1, -1})), Vector{1, 1}, {}, cfg), BreakdownError);
}

TEST_CASE("fcg: identity preconditioner reproduces CG iterates") {
    Rng rng(50);
    for (int trial = 0; trial < 5; ++trial) {
        const CsrMatrix a = random_spd(rng, 50, 0.1);
        const Vector b = random_vector(rng, 50);
        SolverConfig cfg;
        cfg.tol = 1e-10;
        const Recorded c = run(KrylovMethod::Cg, SparseMatrix(a), b, {}, cfg);
        const Recorded f = run(KrylovMethod::Fcg, SparseMatrix(a), b, {}, cfg);
        CHECK(c.result.stats.iterations == f.result.stats.iterations);
        REQUIRE(c.iterates.size() == f.iterates.size());
        for (std::size_t k = 0; k < c.iterates.size(); ++k) {
            const double diff = (to_eigen(c.iterates[k]) - to_eigen(f.iterates[k])).norm();
            CHECK(diff <= 1e-10 * to_eigen(c.iterates[k]).norm());
        }
    }
}

TEST_CASE("fcg: fixed SPD preconditioner matches PCG") {
    Rng rng(51);
    const CsrMatrix a = random_spd(rng, 60, 0.1);
    const Vector b = random_vector(rng, 60);
    SolverConfig cfg;
    cfg.tol = 1e-10;
    const Recorded c = run(KrylovMethod::Cg, SparseMatrix(a), b, jacobi(a), cfg);
    const Recorded f = run(KrylovMethod::Fcg, SparseMatrix(a), b, jacobi(a), cfg);
    REQUIRE(c.iterates.size() == f.iterates.size());
    for (std::size_t k = 0; k < c.iterates.size(); ++k) {
        CHECK((to_eigen(c.iterates[k]) - to_eigen(f.iterates[k])).norm() <= 1e-8 * to_eigen(c.iterates[k]).norm());
    }
}

TEST_CASE("pcg: monotone A-norm error") {
    Rng rng(52);
    for (int trial = 0; trial < 5; ++trial) {
        const index_t n = uniform_index(rng, 10, 100);
        const CsrMatrix a = random_spd(rng, n, 0.1);
        const Vector b = random_vector(rng, n);
        const Eigen::MatrixXd da = to_dense(a);
        const Eigen::VectorXd exact = da.ldlt().solve(to_eigen(b));
        SolverConfig cfg;
        cfg.tol = 1e-12;
        const Recorded c = run(KrylovMethod::Cg, SparseMatrix(a), b, jacobi(a), cfg);
        double prev = a_norm(da, exact);
        for (const Vector& x : c.iterates) {
            const double now = a_norm(da, exact - to_eigen(x));
            CHECK(now <= prev * (1.0 + 1e-12));
            prev = now;
        }
    }
}

TEST_CASE("solve stats: stopping, timing and determinism") {
    Rng rng(53);
    const CsrMatrix a = random_spd(rng, 80, 0.05);
    const Vector b = random_vector(rng, 80);
    for (KrylovMethod method : {KrylovMethod::Cg, KrylovMethod::Fcg}) {
        SolverConfig cfg;
        cfg.tol = 1e-8;
        const Recorded r = run(method, SparseMatrix(a), b, jacobi(a), cfg);
        const SolveStats& s = r.result.stats;
        CHECK(s.converged);
        CHECK(s.final_relative_residual <= cfg.tol);
        CHECK(std::abs(s.final_relative_residual - s.recurrence_relative_residual) <= 1e-8);
        CHECK(s.final_relative_residual ==
              doctest::Approx(relative_residual(SparseMatrix(a), r.result.x, b)).epsilon(1e-12));
        CHECK(s.time_per_iteration * s.iterations == doctest::Approx(s.solve_time));
        CHECK(s.residual_history.size() == static_cast<std::size_t>(s.iterations) + 1);
        CHECK(s.residual_history.front() == doctest::Approx(1.0));

        const Recorded again = run(method, SparseMatrix(a), b, jacobi(a), cfg);
        CHECK(again.result.x == r.result.x);
        CHECK(again.iterates == r.iterates);

        cfg.max_iterations = 2;
        const Recorded capped = run(method, SparseMatrix(a), b, jacobi(a), cfg);
        CHECK_FALSE(capped.result.stats.converged);
        CHECK(capped.result.stats.iterations == 2);
        CHECK(capped.result.stats.final_relative_residual > cfg.tol);
    }
}

TEST_CASE("fcg: deeper direction memory and variable preconditioners") {
    const CsrMatrix a = assemble(gen_poisson_7pt(12, 12, 12).matrix);
    const Vector b(static_cast<std::size_t>(a.n_rows), 1.0);
    AggregationConfig agg;
    auto h = std::make_shared<Hierarchy>(build_hierarchy(SparseMatrix(a, true), agg));
    CycleConfig cycle;
    build_smoothers(*h, cycle);
    const AmgPreconditioner amg(h, cycle);
    for (int memory : {1, 3}) {
        SolverConfig cfg;
        cfg.fcg_memory = memory;
        const SolveResult r = fcg_solve(SparseMatrix(a), b, amg, cfg);
        CHECK(r.stats.converged);
        CHECK(r.stats.iterations < 20);
    }
}

TEST_CASE("solver config validation") {
    SolverConfig cfg;
    cfg.tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.tol = 1e-6;
    cfg.max_iterations = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.max_iterations = 5;
    cfg.fcg_memory = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("relative residual: examples") {
    const SparseMatrix eye(CsrMatrix::identity(2));
    CHECK(relative_residual(eye, Vector{3, 4}, Vector{3, 4}) == 0.0);
    CHECK(relative_residual(eye, Vector{0, 0}, Vector{3, 4}) == 1.0);
    CHECK(relative_residual(eye, Vector{3, 0}, Vector{3, 4}) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(relative_residual(eye, Vector{3, 4}, Vector{0, 0}) == 5.0);
}
