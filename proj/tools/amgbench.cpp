// Poisson benchmark driver: builds the hierarchy for a preset, runs the
// sharded FCG solve and writes a JSON or CSV report.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "amgkit/bench/benchmark.hpp"

namespace {

struct Options {
    amgkit::index_t nx = 32, ny = 32, nz = 32;
    std::string preset = "vbm";
    std::optional<double> theta;
    std::optional<int> match_sweeps;
    std::optional<std::string> smoother;
    std::optional<int> smoother_sweeps;
    std::optional<std::string> cycle;
    std::optional<std::string> coarse;
    std::optional<double> tol;
    std::optional<int> maxit;
    int shards = 1;
    std::string format = "hll";
    amgkit::index_t hack_size = amgkit::kDefaultHackSize;
    std::string out;
    std::string report = "json";
};

amgkit::BenchConfig to_config(const Options& o) {
    using namespace amgkit;
    BenchConfig cfg = preset_config(parse_preset(o.preset));
    cfg.nx = o.nx;
    cfg.ny = o.ny;
    cfg.nz = o.nz;
    if (o.theta) cfg.aggregation.theta = *o.theta;
    if (o.match_sweeps) cfg.aggregation.sweeps = *o.match_sweeps;
    if (o.smoother) {
        if (*o.smoother == "l1jacobi") {
            cfg.cycle.smoother = SmootherKind::L1Jacobi;
        } else if (*o.smoother == "ainv") {
            cfg.cycle.smoother = SmootherKind::Ainv;
        } else {
            throw ConfigError("unknown smoother '" + *o.smoother + "'");
        }
    }
    if (o.smoother_sweeps) cfg.cycle.pre_sweeps = cfg.cycle.post_sweeps = *o.smoother_sweeps;
    if (o.cycle) {
        if (*o.cycle == "v") {
            cfg.cycle.cycle = CycleKind::V;
        } else if (*o.cycle == "varv") {
            cfg.cycle.cycle = CycleKind::VariableV;
        } else {
            throw ConfigError("unknown cycle '" + *o.cycle + "'");
        }
    }
    if (o.coarse) {
        const double coarse_tol = cfg.cycle.coarse.tol;
        cfg.cycle.coarse = CoarseSolverConfig::parse(*o.coarse);
        cfg.cycle.coarse.tol = coarse_tol;
    }
    if (o.tol) cfg.solver.tol = *o.tol;
    if (o.maxit) cfg.solver.max_iterations = *o.maxit;
    cfg.shards = o.shards;
    cfg.format = parse_format(o.format);
    cfg.hack_size = o.hack_size;
    cfg.out_path = o.out;
    cfg.report = parse_report_format(o.report);
    cfg.validate();
    return cfg;
}

void print_summary(const amgkit::BenchReport& r) {
    std::cerr << "preset " << amgkit::preset_name(r.config.preset) << ", " << r.n_unknowns
              << " unknowns, " << r.levels.size() << " levels, operator complexity "
              << r.operator_complexity << '\n'
              << (r.stats.converged ? "converged" : "NOT converged") << " in "
              << r.stats.iterations << " iterations, relative residual "
              << r.stats.final_relative_residual << ", solve " << r.stats.solve_time << " s\n";
    if (r.hierarchy_truncated) std::cerr << "warning: hierarchy truncated before coarse target\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Algebraic multigrid benchmark on the 3D Poisson problem"};
    Options o;
    app.add_option("--nx", o.nx, "Grid points in x")->capture_default_str();
    app.add_option("--ny", o.ny, "Grid points in y")->capture_default_str();
    app.add_option("--nz", o.nz, "Grid points in z")->capture_default_str();
    app.add_option("--preset", o.preset, "vbm, smatch, vmatch or custom")
        ->check(CLI::IsMember({"vbm", "smatch", "vmatch", "custom"}))
        ->capture_default_str();
    app.add_option("--theta", o.theta, "Strength threshold for decoupled aggregation");
    app.add_option("--match-sweeps", o.match_sweeps, "Matching sweeps per level");
    app.add_option("--smoother", o.smoother, "l1jacobi or ainv")
        ->check(CLI::IsMember({"l1jacobi", "ainv"}));
    app.add_option("--smoother-sweeps", o.smoother_sweeps, "Pre and post sweeps on the finest level");
    app.add_option("--cycle", o.cycle, "v or varv")->check(CLI::IsMember({"v", "varv"}));
    app.add_option("--coarse", o.coarse, "pcg:<maxit> or sweeps:<n>");
    app.add_option("--tol", o.tol, "Relative residual tolerance");
    app.add_option("--maxit", o.maxit, "Maximum FCG iterations");
    app.add_option("--shards", o.shards, "Number of row shards")->capture_default_str();
    app.add_option("--format", o.format, "csr, ell or hll")
        ->check(CLI::IsMember({"csr", "ell", "hll"}))
        ->capture_default_str();
    app.add_option("--hack-size", o.hack_size, "Rows per HLL block")->capture_default_str();
    app.add_option("--out", o.out, "Report file; standard output when omitted");
    app.add_option("--report", o.report, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const amgkit::BenchConfig cfg = to_config(o);
        const amgkit::BenchReport report = amgkit::run_benchmark(cfg);
        if (o.out.empty()) {
            if (cfg.report == amgkit::ReportFormat::Json) {
                std::cout << amgkit::report_to_json(report) << '\n';
            } else {
                std::cout << amgkit::csv_header() << '\n' << amgkit::csv_row(report) << '\n';
            }
        } else {
            amgkit::emit_report(report, cfg.report, o.out);
        }
        print_summary(report);
        return report.stats.converged ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "amgbench: " << e.what() << '\n';
        return 1;
    }
}
