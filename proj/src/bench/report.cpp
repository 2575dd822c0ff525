#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "amgkit/bench/benchmark.hpp"
#include "json.hpp"

namespace amgkit {

namespace {

using nlohmann::json;

json number(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

double read_number(const json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    return j.get<double>();
}

AggregationKind parse_aggregation(std::string_view s) {
    if (s == aggregation_name(AggregationKind::Vmb)) return AggregationKind::Vmb;
    if (s == aggregation_name(AggregationKind::Matching)) return AggregationKind::Matching;
    throw ConfigError("unknown aggregation '" + std::string(s) + "'");
}

CycleKind parse_cycle(std::string_view s) {
    if (s == cycle_name(CycleKind::V)) return CycleKind::V;
    if (s == cycle_name(CycleKind::VariableV)) return CycleKind::VariableV;
    throw ConfigError("unknown cycle '" + std::string(s) + "'");
}

SmootherKind parse_smoother(std::string_view s) {
    if (s == smoother_name(SmootherKind::L1Jacobi)) return SmootherKind::L1Jacobi;
    if (s == smoother_name(SmootherKind::Ainv)) return SmootherKind::Ainv;
    throw ConfigError("unknown smoother '" + std::string(s) + "'");
}

KrylovMethod parse_method(std::string_view s) {
    if (s == method_name(KrylovMethod::Cg)) return KrylovMethod::Cg;
    if (s == method_name(KrylovMethod::Fcg)) return KrylovMethod::Fcg;
    throw ConfigError("unknown Krylov method '" + std::string(s) + "'");
}

json config_to_json(const BenchConfig& c) {
    return json{
        {"nx", c.nx},
        {"ny", c.ny},
        {"nz", c.nz},
        {"preset", preset_name(c.preset)},
        {"aggregation", aggregation_name(c.aggregation.kind)},
        {"theta", c.aggregation.theta},
        {"match_sweeps", c.aggregation.sweeps},
        {"smooth_prolongator", c.aggregation.smooth_prolongator},
        {"max_levels", c.aggregation.max_levels},
        {"coarse_size_target", c.aggregation.coarse_size_target},
        {"cycle", cycle_name(c.cycle.cycle)},
        {"pre_sweeps", c.cycle.pre_sweeps},
        {"post_sweeps", c.cycle.post_sweeps},
        {"smoother", smoother_name(c.cycle.smoother)},
        {"ainv_drop_tol", c.cycle.ainv_drop_tol},
        {"coarse", c.cycle.coarse.to_string()},
        {"coarse_tol", c.cycle.coarse.tol},
        {"method", method_name(c.solver.method)},
        {"tol", c.solver.tol},
        {"max_iterations", c.solver.max_iterations},
        {"fcg_memory", c.solver.fcg_memory},
        {"shards", c.shards},
        {"format", format_name(c.format)},
        {"hack_size", c.hack_size},
        {"out", c.out_path.string()},
        {"report", report_format_name(c.report)},
    };
}

BenchConfig config_from_json(const json& j) {
    BenchConfig c;
    c.nx = j.at("nx").get<index_t>();
    c.ny = j.at("ny").get<index_t>();
    c.nz = j.at("nz").get<index_t>();
    c.preset = parse_preset(j.at("preset").get<std::string>());
    c.aggregation.kind = parse_aggregation(j.at("aggregation").get<std::string>());
    c.aggregation.theta = j.at("theta").get<double>();
    c.aggregation.sweeps = j.at("match_sweeps").get<int>();
    c.aggregation.smooth_prolongator = j.at("smooth_prolongator").get<bool>();
    c.aggregation.max_levels = j.at("max_levels").get<int>();
    c.aggregation.coarse_size_target = j.at("coarse_size_target").get<index_t>();
    c.cycle.cycle = parse_cycle(j.at("cycle").get<std::string>());
    c.cycle.pre_sweeps = j.at("pre_sweeps").get<int>();
    c.cycle.post_sweeps = j.at("post_sweeps").get<int>();
    c.cycle.smoother = parse_smoother(j.at("smoother").get<std::string>());
    c.cycle.ainv_drop_tol = j.at("ainv_drop_tol").get<double>();
    c.cycle.coarse = CoarseSolverConfig::parse(j.at("coarse").get<std::string>());
    c.cycle.coarse.tol = j.at("coarse_tol").get<double>();
    c.solver.method = parse_method(j.at("method").get<std::string>());
    c.solver.tol = j.at("tol").get<double>();
    c.solver.max_iterations = j.at("max_iterations").get<int>();
    c.solver.fcg_memory = j.at("fcg_memory").get<int>();
    c.shards = j.at("shards").get<int>();
    c.format = parse_format(j.at("format").get<std::string>());
    c.hack_size = j.at("hack_size").get<index_t>();
    c.out_path = j.at("out").get<std::string>();
    c.report = parse_report_format(j.at("report").get<std::string>());
    return c;
}

std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string report_to_json(const BenchReport& r) {
    json levels = json::array();
    for (const LevelInfo& l : r.levels) {
        levels.push_back({{"size", l.size},
                          {"nnz", l.nnz},
                          {"pre_sweeps", l.pre_sweeps},
                          {"post_sweeps", l.post_sweeps}});
    }
    json history = json::array();
    for (const double v : r.stats.residual_history) history.push_back(number(v));
    const json doc{
        {"version", r.version},
        {"config", config_to_json(r.config)},
        {"problem", {{"n_unknowns", r.n_unknowns}, {"nnz", r.nnz}}},
        {"hierarchy",
         {{"levels", static_cast<index_t>(r.levels.size())},
          {"level_info", levels},
          {"operator_complexity", number(r.operator_complexity)},
          {"truncated", r.hierarchy_truncated}}},
        {"solve",
         {{"iterations", r.stats.iterations},
          {"converged", r.stats.converged},
          {"final_relative_residual", number(r.stats.final_relative_residual)},
          {"recurrence_relative_residual", number(r.stats.recurrence_relative_residual)},
          {"setup_time_hierarchy", r.stats.setup_time_hierarchy},
          {"setup_time_smoothers", r.stats.setup_time_smoothers},
          {"solve_time", r.stats.solve_time},
          {"time_per_iteration", r.stats.time_per_iteration},
          {"residual_history", history}}},
    };
    return doc.dump(2);
}

BenchReport report_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("report JSON: ") + e.what());
    }
    try {
        BenchReport r;
        r.version = doc.at("version").get<std::string>();
        r.config = config_from_json(doc.at("config"));
        r.n_unknowns = doc.at("problem").at("n_unknowns").get<index_t>();
        r.nnz = doc.at("problem").at("nnz").get<index_t>();
        const json& h = doc.at("hierarchy");
        for (const json& l : h.at("level_info")) {
            r.levels.push_back({l.at("size").get<index_t>(), l.at("nnz").get<index_t>(),
                                l.at("pre_sweeps").get<int>(), l.at("post_sweeps").get<int>()});
        }
        if (h.at("levels").get<index_t>() != static_cast<index_t>(r.levels.size())) {
            throw FormatError("report JSON: level count does not match level_info");
        }
        r.operator_complexity = read_number(h.at("operator_complexity"));
        r.hierarchy_truncated = h.at("truncated").get<bool>();
        const json& s = doc.at("solve");
        r.stats.iterations = s.at("iterations").get<int>();
        r.stats.converged = s.at("converged").get<bool>();
        r.stats.final_relative_residual = read_number(s.at("final_relative_residual"));
        r.stats.recurrence_relative_residual = read_number(s.at("recurrence_relative_residual"));
        r.stats.setup_time_hierarchy = s.at("setup_time_hierarchy").get<double>();
        r.stats.setup_time_smoothers = s.at("setup_time_smoothers").get<double>();
        r.stats.solve_time = s.at("solve_time").get<double>();
        r.stats.time_per_iteration = s.at("time_per_iteration").get<double>();
        for (const json& v : s.at("residual_history")) r.stats.residual_history.push_back(read_number(v));
        return r;
    } catch (const json::exception& e) {
        throw FormatError(std::string("report JSON: ") + e.what());
    }
}

std::string csv_header() {
    return "version,nx,ny,nz,preset,aggregation,theta,match_sweeps,smooth_prolongator,cycle,"
           "pre_sweeps,post_sweeps,smoother,coarse,method,tol,max_iterations,shards,format,"
           "hack_size,n_unknowns,nnz,levels,level_sizes,level_nnz,operator_complexity,"
           "truncated,iterations,converged,final_relative_residual,setup_time_hierarchy,"
           "setup_time_smoothers,solve_time,time_per_iteration";
}

std::string csv_row(const BenchReport& r) {
    const BenchConfig& c = r.config;
    std::string sizes;
    std::string nnzs;
    for (const LevelInfo& l : r.levels) {
        if (!sizes.empty()) {
            sizes += ';';
            nnzs += ';';
        }
        sizes += std::to_string(l.size);
        nnzs += std::to_string(l.nnz);
    }
    std::ostringstream out;
    out << r.version << ',' << c.nx << ',' << c.ny << ',' << c.nz << ',' << preset_name(c.preset)
        << ',' << aggregation_name(c.aggregation.kind) << ',' << fmt_double(c.aggregation.theta)
        << ',' << c.aggregation.sweeps << ',' << (c.aggregation.smooth_prolongator ? 1 : 0) << ','
        << cycle_name(c.cycle.cycle) << ',' << c.cycle.pre_sweeps << ',' << c.cycle.post_sweeps
        << ',' << smoother_name(c.cycle.smoother) << ',' << c.cycle.coarse.to_string() << ','
        << method_name(c.solver.method) << ',' << fmt_double(c.solver.tol) << ','
        << c.solver.max_iterations << ',' << c.shards << ',' << format_name(c.format) << ','
        << c.hack_size << ',' << r.n_unknowns << ',' << r.nnz << ',' << r.levels.size() << ','
        << sizes << ',' << nnzs << ',' << fmt_double(r.operator_complexity) << ','
        << (r.hierarchy_truncated ? 1 : 0) << ',' << r.stats.iterations << ','
        << (r.stats.converged ? 1 : 0) << ',' << fmt_double(r.stats.final_relative_residual)
        << ',' << fmt_double(r.stats.setup_time_hierarchy) << ','
        << fmt_double(r.stats.setup_time_smoothers) << ',' << fmt_double(r.stats.solve_time) << ','
        << fmt_double(r.stats.time_per_iteration);
    return out.str();
}

void emit_report(const BenchReport& report, ReportFormat format, const std::filesystem::path& path) {
    if (format == ReportFormat::Json) {
        std::ofstream out(path, std::ios::trunc);
        if (!out) throw Error("cannot open '" + path.string() + "' for writing");
        out << report_to_json(report) << '\n';
        if (!out) throw Error("write to '" + path.string() + "' failed");
        return;
    }
    std::error_code ec;
    const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) throw Error("cannot open '" + path.string() + "' for appending");
    if (fresh) out << csv_header() << '\n';
    out << csv_row(report) << '\n';
    if (!out) throw Error("write to '" + path.string() + "' failed");
}

}  // namespace amgkit
