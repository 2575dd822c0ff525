#include "amgkit/bench/benchmark.hpp"

#include <chrono>
#include <memory>

#include "amgkit/bench/poisson.hpp"
#include "amgkit/krylov/spaces.hpp"
#include "amgkit/partition/sharded.hpp"

#ifndef AMGKIT_VERSION
#define AMGKIT_VERSION "0.0.0"
#endif

namespace amgkit {

std::string_view library_version() { return "amgkit " AMGKIT_VERSION; }

std::string_view preset_name(Preset p) {
    switch (p) {
        case Preset::Vbm: return "vbm";
        case Preset::Smatch: return "smatch";
        case Preset::Vmatch: return "vmatch";
        case Preset::Custom: return "custom";
    }
    return "?";
}

Preset parse_preset(std::string_view name) {
    for (const Preset p : {Preset::Vbm, Preset::Smatch, Preset::Vmatch, Preset::Custom}) {
        if (preset_name(p) == name) return p;
    }
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

std::string_view report_format_name(ReportFormat f) {
    return f == ReportFormat::Json ? "json" : "csv";
}

ReportFormat parse_report_format(std::string_view name) {
    if (name == "json") return ReportFormat::Json;
    if (name == "csv") return ReportFormat::Csv;
    throw ConfigError("unknown report format '" + std::string(name) + "'");
}

void BenchConfig::validate() const {
    if (nx < 2 || ny < 2 || nz < 2) throw ConfigError("bench: grid dimensions must be >= 2");
    if (shards < 1) throw ConfigError("bench: shard count must be >= 1");
    if (hack_size < 1) throw ConfigError("bench: hack size must be >= 1");
    aggregation.validate();
    cycle.validate();
    solver.validate();
}

BenchConfig preset_config(Preset p) {
    BenchConfig cfg;
    cfg.preset = p;
    cfg.aggregation.kind = AggregationKind::Vmb;
    cfg.aggregation.smooth_prolongator = true;
    cfg.cycle.cycle = CycleKind::V;
    cfg.cycle.pre_sweeps = 4;
    cfg.cycle.post_sweeps = 4;
    cfg.cycle.smoother = SmootherKind::L1Jacobi;
    cfg.cycle.coarse = {CoarseSolverConfig::Kind::PcgL1Jacobi, 40, 1e-10};
    cfg.solver.method = KrylovMethod::Fcg;
    cfg.solver.tol = 1e-6;
    switch (p) {
        case Preset::Vbm:
        case Preset::Custom:
            break;
        case Preset::Smatch:
            cfg.aggregation.kind = AggregationKind::Matching;
            cfg.aggregation.sweeps = 3;
            break;
        case Preset::Vmatch:
            cfg.aggregation.kind = AggregationKind::Matching;
            cfg.aggregation.sweeps = 3;
            cfg.aggregation.smooth_prolongator = false;
            cfg.cycle.cycle = CycleKind::VariableV;
            cfg.cycle.pre_sweeps = 2;
            cfg.cycle.post_sweeps = 2;
            break;
    }
    return cfg;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

BenchReport run_benchmark(const BenchConfig& cfg) {
    cfg.validate();
    PoissonSystem sys = gen_poisson_7pt(cfg.nx, cfg.ny, cfg.nz);
    CsrMatrix a = assemble(sys.matrix);

    BenchReport report;
    report.config = cfg;
    report.version = std::string(library_version());
    report.n_unknowns = a.n_rows;
    report.nnz = a.nnz();

    const DescriptorFamily family = build_descriptors(Partition::block(a.n_rows, cfg.shards), a);
    const DistMatrix dist_a = shard_matrix(family, a, cfg.format, cfg.hack_size);

    auto t0 = std::chrono::steady_clock::now();
    auto hierarchy = std::make_shared<Hierarchy>(build_hierarchy(SparseMatrix(a, true), cfg.aggregation));
    hierarchy->set_format(cfg.format, cfg.hack_size);
    const double t_hierarchy = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    build_smoothers(*hierarchy, cfg.cycle);
    const double t_smoothers = seconds_since(t0);

    for (index_t l = 0; l < hierarchy->n_levels(); ++l) {
        LevelInfo info;
        info.size = hierarchy->level(l).size();
        info.nnz = hierarchy->level(l).a.nnz();
        if (l + 1 < hierarchy->n_levels()) {
            const bool variable = cfg.cycle.cycle == CycleKind::VariableV;
            const int lvl = static_cast<int>(l);
            info.pre_sweeps = variable ? variable_sweeps(lvl, cfg.cycle.pre_sweeps) : cfg.cycle.pre_sweeps;
            info.post_sweeps =
                variable ? variable_sweeps(lvl, cfg.cycle.post_sweeps) : cfg.cycle.post_sweeps;
        }
        report.levels.push_back(info);
    }
    report.operator_complexity = hierarchy->operator_complexity();
    report.hierarchy_truncated = hierarchy->truncated();

    const AmgPreconditioner amg(hierarchy, cfg.cycle);
    GatheredPreconditioner precond(
        [&amg](std::span<const double> r, std::span<double> z) { amg(r, z); }, a.n_rows);
    ShardedSpace space(dist_a, family);
    const DistVector b = scatter(family, sys.rhs);
    DistVector x = space.make_vector();
    report.stats = krylov_solve(space, b, x, precond, cfg.solver);
    report.stats.setup_time_hierarchy = t_hierarchy;
    report.stats.setup_time_smoothers = t_smoothers;
    report.solution = gather(x);
    report.hierarchy = hierarchy;
    return report;
}

}  // namespace amgkit
