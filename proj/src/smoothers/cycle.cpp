#include "amgkit/smoothers/cycle.hpp"

#include <algorithm>
#include <charconv>

#include "amgkit/krylov/spaces.hpp"

namespace amgkit {

std::string_view cycle_name(CycleKind k) { return k == CycleKind::V ? "v" : "varv"; }

CoarseSolverConfig CoarseSolverConfig::parse(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw ConfigError("coarse solver '" + std::string(spec) + "': expected pcg:<n> or sweeps:<n>");
    }
    const std::string_view kind = spec.substr(0, colon);
    const std::string_view count = spec.substr(colon + 1);
    CoarseSolverConfig cfg;
    if (kind == "pcg") {
        cfg.kind = Kind::PcgL1Jacobi;
    } else if (kind == "sweeps") {
        cfg.kind = Kind::L1JacobiSweeps;
    } else {
        throw ConfigError("coarse solver kind '" + std::string(kind) + "' is not pcg or sweeps");
    }
    const auto res = std::from_chars(count.data(), count.data() + count.size(), cfg.iterations);
    if (res.ec != std::errc() || res.ptr != count.data() + count.size() || cfg.iterations < 1) {
        throw ConfigError("coarse solver count '" + std::string(count) + "' is not a positive integer");
    }
    return cfg;
}

std::string CoarseSolverConfig::to_string() const {
    return (kind == Kind::PcgL1Jacobi ? "pcg:" : "sweeps:") + std::to_string(iterations);
}

void CycleConfig::validate() const {
    if (pre_sweeps < 1 || post_sweeps < 1) throw ConfigError("cycle: sweep counts must be >= 1");
    if (coarse.iterations < 1) throw ConfigError("cycle: coarse solver count must be >= 1");
    if (smoother == SmootherKind::Ainv && !(ainv_drop_tol >= 0.0)) {
        throw ConfigError("cycle: AINV drop tolerance must be nonnegative");
    }
}

int variable_sweeps(int level, int base) {
    if (base < 1) throw ConfigError("variable_sweeps: base must be >= 1");
    return base << level;
}

void build_smoothers(Hierarchy& h, const CycleConfig& cfg) {
    cfg.validate();
    SmootherSet set;
    set.kind = cfg.smoother;
    for (const auto& level : h.levels()) {
        const CsrMatrix a = level.a.to_csr();
        if (cfg.smoother == SmootherKind::L1Jacobi) {
            set.per_level.emplace_back(L1JacobiSmoother::build(a));
        } else {
            set.per_level.emplace_back(AinvSmoother::build(a, cfg.ainv_drop_tol));
        }
    }
    set.coarse = L1JacobiSmoother::build(h.levels().back().a.to_csr());
    h.set_smoothers(std::move(set));
}

void coarse_solve(const SparseMatrix& a, const L1JacobiSmoother& l1, std::span<const double> b,
                  std::span<double> x, const CoarseSolverConfig& cfg) {
    if (cfg.kind == CoarseSolverConfig::Kind::L1JacobiSweeps) {
        smoother_apply(Smoother(l1), a, x, b, cfg.iterations);
        return;
    }
    SerialSpace space(a);
    SolverConfig solver;
    solver.method = KrylovMethod::Cg;
    solver.tol = cfg.tol;
    solver.max_iterations = static_cast<int>(std::min<index_t>(cfg.iterations, a.n_rows()));
    const Vector rhs(b.begin(), b.end());
    Vector sol(x.begin(), x.end());
    auto precond = [&](const Vector& r, Vector& z) { l1.apply_inverse(r, z); };
    cg(space, rhs, sol, precond, solver);
    std::copy(sol.begin(), sol.end(), x.begin());
}

Vector coarse_solve(const SparseMatrix& a, std::span<const double> b,
                    const CoarseSolverConfig& cfg) {
    Vector x(b.size(), 0.0);
    coarse_solve(a, L1JacobiSmoother::build(a.to_csr()), b, x, cfg);
    return x;
}

namespace {

void cycle_level(const Hierarchy& h, const SmootherSet& smoothers, const CycleConfig& cfg,
                 index_t l, std::span<const double> r, std::span<double> z) {
    const Level& level = h.level(l);
    if (l + 1 == h.n_levels()) {
        std::fill(z.begin(), z.end(), 0.0);
        coarse_solve(level.a, smoothers.coarse, r, z, cfg.coarse);
        return;
    }
    const int lvl = static_cast<int>(l);
    const int pre = cfg.cycle == CycleKind::V ? cfg.pre_sweeps : variable_sweeps(lvl, cfg.pre_sweeps);
    const int post =
        cfg.cycle == CycleKind::V ? cfg.post_sweeps : variable_sweeps(lvl, cfg.post_sweeps);
    const Smoother& m = smoothers.per_level[l];

    // First sweep from a zero guess reduces to z = M^-1 r.
    apply_inverse(m, r, z);
    smoother_apply(m, level.a, z, r, pre - 1);

    Vector res(r.begin(), r.end());
    level.a.spmv(-1.0, z, 1.0, res);
    const index_t nc = h.level(l + 1).size();
    Vector rc(static_cast<std::size_t>(nc));
    level.restriction.spmv(1.0, res, 0.0, rc);
    Vector zc(static_cast<std::size_t>(nc));
    cycle_level(h, smoothers, cfg, l + 1, rc, zc);
    level.p->matrix.spmv(1.0, zc, 1.0, z);

    smoother_apply(m, level.a, z, r, post);
}

}  // namespace

void vcycle_apply(const Hierarchy& h, const CycleConfig& cfg, std::span<const double> r,
                  std::span<double> z) {
    const SmootherSet& smoothers = h.smoothers();
    if (static_cast<index_t>(r.size()) != h.level(0).size() || z.size() != r.size()) {
        throw DimensionError("vcycle_apply: vector length does not match the finest level");
    }
    cycle_level(h, smoothers, cfg, 0, r, z);
}

Vector vcycle_apply(const Hierarchy& h, const CycleConfig& cfg, std::span<const double> r) {
    Vector z(r.size(), 0.0);
    vcycle_apply(h, cfg, r, z);
    return z;
}

AmgPreconditioner::AmgPreconditioner(std::shared_ptr<const Hierarchy> h, CycleConfig cfg)
    : h_(std::move(h)), cfg_(cfg) {
    cfg_.validate();
    if (!h_->has_smoothers()) {
        throw Error("AmgPreconditioner: hierarchy has no smoothers; run build_smoothers() first");
    }
}

}  // namespace amgkit
