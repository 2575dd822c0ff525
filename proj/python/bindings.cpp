#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>
#include <string>

#include "amgkit/bench/benchmark.hpp"
#include "amgkit/bench/poisson.hpp"
#include "amgkit/krylov/spaces.hpp"
#include "amgkit/sparse/matrix_market.hpp"

namespace py = pybind11;
using namespace amgkit;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

py::array_t<double> to_array(const Vector& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

std::span<const double> view(const Array& a) {
    if (a.ndim() != 1) throw DimensionError("expected a 1-d array");
    return {a.data(), static_cast<std::size_t>(a.size())};
}

void check_length(std::span<const double> x, index_t n, const char* what) {
    if (static_cast<index_t>(x.size()) != n) {
        throw DimensionError(std::string(what) + ": length " + std::to_string(x.size()) + ", expected " +
                             std::to_string(n));
    }
}

py::array_t<double> spmv_of(const SparseMatrix& a, const Array& x) {
    const auto xs = view(x);
    check_length(xs, a.n_cols(), "spmv");
    Vector y(static_cast<std::size_t>(a.n_rows()));
    a.spmv(1.0, xs, 0.0, y);
    return to_array(y);
}

template <class T>
std::string repr_of(std::string_view kind, const T& a) {
    return "<amgkit." + std::string(kind) + " " + std::to_string(a.n_rows()) + "x" + std::to_string(a.n_cols()) +
           ", nnz=" + std::to_string(a.nnz()) + ">";
}

}  // namespace

PYBIND11_MODULE(_amgkit, m) {
    m.doc() = "Aggregation-based algebraic multigrid with sharded Krylov solvers";
    m.attr("__version__") = std::string(library_version());

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<AssemblyError>(m, "AssemblyError", error);
    py::register_exception<DimensionError>(m, "DimensionError", error);
    py::register_exception<PatternError>(m, "PatternError", error);
    py::register_exception<SingularDiagonalError>(m, "SingularDiagonalError", error);
    py::register_exception<FormatError>(m, "FormatError", error);
    py::register_exception<PartitionError>(m, "PartitionError", error);
    py::register_exception<CoarseningError>(m, "CoarseningError", error);
    py::register_exception<BreakdownError>(m, "BreakdownError", error);
    py::register_exception<ConfigError>(m, "ConfigError", error);

    py::enum_<Format>(m, "Format").value("CSR", Format::Csr).value("ELL", Format::Ell).value("HLL", Format::Hll);
    py::enum_<AggregationKind>(m, "AggregationKind")
        .value("VMB", AggregationKind::Vmb)
        .value("MATCHING", AggregationKind::Matching);
    py::enum_<CycleKind>(m, "CycleKind").value("V", CycleKind::V).value("VARIABLE_V", CycleKind::VariableV);
    py::enum_<SmootherKind>(m, "SmootherKind")
        .value("L1_JACOBI", SmootherKind::L1Jacobi)
        .value("AINV", SmootherKind::Ainv);
    py::enum_<KrylovMethod>(m, "KrylovMethod").value("CG", KrylovMethod::Cg).value("FCG", KrylovMethod::Fcg);
    py::enum_<Preset>(m, "Preset")
        .value("VBM", Preset::Vbm)
        .value("SMATCH", Preset::Smatch)
        .value("VMATCH", Preset::Vmatch)
        .value("CUSTOM", Preset::Custom);
    py::enum_<ReportFormat>(m, "ReportFormat").value("JSON", ReportFormat::Json).value("CSV", ReportFormat::Csv);

    py::class_<CsrMatrix>(m, "CsrMatrix")
        .def(py::init<index_t, index_t, std::vector<index_t>, std::vector<index_t>, std::vector<double>>(),
             py::arg("n_rows"), py::arg("n_cols"), py::arg("row_ptr"), py::arg("col_idx"), py::arg("values"))
        .def_static("identity", &CsrMatrix::identity, py::arg("n"))
        .def_readonly("n_rows", &CsrMatrix::n_rows)
        .def_readonly("n_cols", &CsrMatrix::n_cols)
        .def_readonly("row_ptr", &CsrMatrix::row_ptr)
        .def_readonly("col_idx", &CsrMatrix::col_idx)
        .def_readonly("values", &CsrMatrix::values)
        .def_property_readonly("nnz", &CsrMatrix::nnz)
        .def("diagonal", [](const CsrMatrix& a) { return to_array(a.diagonal()); })
        .def("spmv", [](const CsrMatrix& a, const Array& x) { return spmv_of(SparseMatrix(a), x); }, py::arg("x"))
        .def("transpose", [](const CsrMatrix& a) { return transpose(a); })
        .def("__eq__", [](const CsrMatrix& a, const CsrMatrix& b) { return a == b; })
        .def("__repr__", [](const CsrMatrix& a) {
            return "<amgkit.CsrMatrix " + std::to_string(a.n_rows) + "x" + std::to_string(a.n_cols) +
                   ", nnz=" + std::to_string(a.nnz()) + ">";
        });

    m.def(
        "assemble",
        [](index_t n_rows, index_t n_cols, const std::vector<index_t>& rows, const std::vector<index_t>& cols,
           const std::vector<double>& values) {
            if (rows.size() != cols.size() || rows.size() != values.size()) {
                throw DimensionError("assemble: rows, cols and values differ in length");
            }
            CooBuilder b(n_rows, n_cols);
            b.reserve(rows.size());
            for (std::size_t k = 0; k < rows.size(); ++k) b.insert(rows[k], cols[k], values[k]);
            return assemble(b);
        },
        py::arg("n_rows"), py::arg("n_cols"), py::arg("rows"), py::arg("cols"), py::arg("values"),
        "CSR matrix from (row, col, value) triples; duplicates are summed.");

    m.def(
        "poisson_7pt",
        [](index_t nx, index_t ny, index_t nz) {
            const PoissonSystem sys = gen_poisson_7pt(nx, ny, nz);
            return py::make_tuple(assemble(sys.matrix), to_array(sys.rhs));
        },
        py::arg("nx"), py::arg("ny"), py::arg("nz"), "(matrix, rhs) of the 7-point Poisson problem.");

    m.def(
        "read_matrix_market",
        [](const std::filesystem::path& path) { return assemble(read_matrix_market(path)); }, py::arg("path"));
    m.def(
        "write_matrix_market",
        [](const CsrMatrix& a, const std::filesystem::path& path) { write_matrix_market(SparseMatrix(a), path); },
        py::arg("a"), py::arg("path"));

    py::class_<SparseMatrix>(m, "SparseMatrix")
        .def(py::init<CsrMatrix, bool>(), py::arg("a"), py::arg("symmetric") = false)
        .def_property_readonly("format", &SparseMatrix::format)
        .def_property_readonly("symmetric", &SparseMatrix::symmetric)
        .def_property_readonly("n_rows", &SparseMatrix::n_rows)
        .def_property_readonly("n_cols", &SparseMatrix::n_cols)
        .def_property_readonly("nnz", &SparseMatrix::nnz)
        .def("to_csr", &SparseMatrix::to_csr)
        .def("diagonal", [](const SparseMatrix& a) { return to_array(a.diagonal()); })
        .def("spmv", &spmv_of, py::arg("x"))
        .def(
            "update_coefficients",
            [](SparseMatrix& a, const std::vector<std::tuple<index_t, index_t, double>>& entries) {
                std::vector<Triple> triples;
                for (const auto& [i, j, v] : entries) triples.push_back({i, j, v});
                update_coefficients(a, triples);
            },
            py::arg("entries"))
        .def("__repr__", [](const SparseMatrix& a) {
            return repr_of("SparseMatrix[" + std::string(format_name(a.format())) + "]", a);
        });
    py::implicitly_convertible<CsrMatrix, SparseMatrix>();

    m.def("convert", &convert, py::arg("a"), py::arg("format"), py::arg("hack_size") = kDefaultHackSize);

    py::class_<AggregationConfig>(m, "AggregationConfig")
        .def(py::init<>())
        .def_readwrite("kind", &AggregationConfig::kind)
        .def_readwrite("theta", &AggregationConfig::theta)
        .def_readwrite("sweeps", &AggregationConfig::sweeps)
        .def_readwrite("smooth_prolongator", &AggregationConfig::smooth_prolongator)
        .def_readwrite("near_kernel", &AggregationConfig::near_kernel)
        .def_readwrite("max_levels", &AggregationConfig::max_levels)
        .def_readwrite("coarse_size_target", &AggregationConfig::coarse_size_target)
        .def("validate", &AggregationConfig::validate);

    py::class_<CoarseSolverConfig>(m, "CoarseSolverConfig")
        .def(py::init<>())
        .def_static("parse", &CoarseSolverConfig::parse, py::arg("spec"))
        .def_readwrite("iterations", &CoarseSolverConfig::iterations)
        .def_readwrite("tol", &CoarseSolverConfig::tol)
        .def("__str__", &CoarseSolverConfig::to_string);

    py::class_<CycleConfig>(m, "CycleConfig")
        .def(py::init<>())
        .def_readwrite("cycle", &CycleConfig::cycle)
        .def_readwrite("pre_sweeps", &CycleConfig::pre_sweeps)
        .def_readwrite("post_sweeps", &CycleConfig::post_sweeps)
        .def_readwrite("smoother", &CycleConfig::smoother)
        .def_readwrite("ainv_drop_tol", &CycleConfig::ainv_drop_tol)
        .def_readwrite("coarse", &CycleConfig::coarse)
        .def("validate", &CycleConfig::validate);

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("method", &SolverConfig::method)
        .def_readwrite("tol", &SolverConfig::tol)
        .def_readwrite("max_iterations", &SolverConfig::max_iterations)
        .def_readwrite("fcg_memory", &SolverConfig::fcg_memory)
        .def("validate", &SolverConfig::validate);

    py::class_<Hierarchy, std::shared_ptr<Hierarchy>>(m, "Hierarchy")
        .def_property_readonly("n_levels", &Hierarchy::n_levels)
        .def_property_readonly("operator_complexity", &Hierarchy::operator_complexity)
        .def_property_readonly("truncated", &Hierarchy::truncated)
        .def_property_readonly("warning", &Hierarchy::warning)
        .def_property_readonly("has_smoothers", &Hierarchy::has_smoothers)
        .def("level_matrix", [](const Hierarchy& h, index_t l) { return h.levels().at(l).a.to_csr(); })
        .def("prolongator",
             [](const Hierarchy& h, index_t l) -> std::optional<CsrMatrix> {
                 const Level& level = h.levels().at(l);
                 if (!level.p) return std::nullopt;
                 return level.p->matrix;
             })
        .def("tentative_prolongator",
             [](const Hierarchy& h, index_t l) -> std::optional<CsrMatrix> {
                 const Level& level = h.levels().at(l);
                 if (!level.tentative) return std::nullopt;
                 return level.tentative->matrix;
             })
        .def("aggregate_sizes",
             [](const Hierarchy& h, index_t l) -> std::vector<index_t> {
                 const Level& level = h.levels().at(l);
                 return level.aggregation ? level.aggregation->sizes() : std::vector<index_t>{};
             })
        .def_property_readonly("level_sizes",
                               [](const Hierarchy& h) {
                                   std::vector<index_t> out;
                                   for (const Level& level : h.levels()) out.push_back(level.size());
                                   return out;
                               })
        .def("set_format", &Hierarchy::set_format, py::arg("format"), py::arg("hack_size") = kDefaultHackSize);

    m.def(
        "build_hierarchy",
        [](const SparseMatrix& a, const AggregationConfig& cfg) {
            return std::make_shared<Hierarchy>(build_hierarchy(a, cfg));
        },
        py::arg("a"), py::arg("config") = AggregationConfig{}, py::call_guard<py::gil_scoped_release>());
    m.def(
        "build_smoothers", [](Hierarchy& h, const CycleConfig& cfg) { build_smoothers(h, cfg); }, py::arg("hierarchy"),
        py::arg("config") = CycleConfig{}, py::call_guard<py::gil_scoped_release>());

    py::class_<AmgPreconditioner>(m, "AmgPreconditioner")
        .def(py::init([](std::shared_ptr<Hierarchy> h, const CycleConfig& cfg) {
                 return AmgPreconditioner(std::move(h), cfg);
             }),
             py::arg("hierarchy"), py::arg("config") = CycleConfig{})
        .def("__call__", [](const AmgPreconditioner& p, const Array& r) {
            const auto rs = view(r);
            check_length(rs, p.hierarchy().level(0).size(), "preconditioner");
            Vector z(rs.size());
            p(rs, z);
            return to_array(z);
        });

    py::class_<SolveStats>(m, "SolveStats")
        .def_readonly("iterations", &SolveStats::iterations)
        .def_readonly("final_relative_residual", &SolveStats::final_relative_residual)
        .def_readonly("recurrence_relative_residual", &SolveStats::recurrence_relative_residual)
        .def_readonly("converged", &SolveStats::converged)
        .def_readonly("setup_time_hierarchy", &SolveStats::setup_time_hierarchy)
        .def_readonly("setup_time_smoothers", &SolveStats::setup_time_smoothers)
        .def_readonly("solve_time", &SolveStats::solve_time)
        .def_readonly("time_per_iteration", &SolveStats::time_per_iteration)
        .def_readonly("residual_history", &SolveStats::residual_history);

    m.def(
        "solve",
        [](const SparseMatrix& a, const Array& b, const AmgPreconditioner* precond, const SolverConfig& cfg,
           std::optional<Array> x0) {
            const auto bs = view(b);
            check_length(bs, a.n_rows(), "rhs");
            std::span<const double> x0s;
            if (x0) {
                x0s = view(*x0);
                check_length(x0s, a.n_rows(), "x0");
            }
            GlobalPreconditioner m;
            if (precond != nullptr) m = *precond;
            SolveResult r;
            {
                py::gil_scoped_release release;
                r = cfg.method == KrylovMethod::Cg ? cg_solve(a, bs, m, cfg, x0s) : fcg_solve(a, bs, m, cfg, x0s);
            }
            return py::make_tuple(to_array(r.x), r.stats);
        },
        py::arg("a"), py::arg("b"), py::arg("preconditioner") = nullptr, py::arg("config") = SolverConfig{},
        py::arg("x0") = py::none(), "Returns (x, stats). A missing preconditioner means identity.");

    m.def(
        "relative_residual",
        [](const SparseMatrix& a, const Array& x, const Array& b) { return relative_residual(a, view(x), view(b)); },
        py::arg("a"), py::arg("x"), py::arg("b"));

    py::class_<BenchConfig>(m, "BenchConfig")
        .def(py::init<>())
        .def_readwrite("nx", &BenchConfig::nx)
        .def_readwrite("ny", &BenchConfig::ny)
        .def_readwrite("nz", &BenchConfig::nz)
        .def_readwrite("preset", &BenchConfig::preset)
        .def_readwrite("aggregation", &BenchConfig::aggregation)
        .def_readwrite("cycle", &BenchConfig::cycle)
        .def_readwrite("solver", &BenchConfig::solver)
        .def_readwrite("shards", &BenchConfig::shards)
        .def_readwrite("format", &BenchConfig::format)
        .def_readwrite("hack_size", &BenchConfig::hack_size)
        .def_readwrite("out_path", &BenchConfig::out_path)
        .def_readwrite("report", &BenchConfig::report)
        .def("validate", &BenchConfig::validate);

    py::class_<LevelInfo>(m, "LevelInfo")
        .def_readonly("size", &LevelInfo::size)
        .def_readonly("nnz", &LevelInfo::nnz)
        .def_readonly("pre_sweeps", &LevelInfo::pre_sweeps)
        .def_readonly("post_sweeps", &LevelInfo::post_sweeps);

    py::class_<BenchReport>(m, "BenchReport")
        .def_readonly("config", &BenchReport::config)
        .def_readonly("n_unknowns", &BenchReport::n_unknowns)
        .def_readonly("nnz", &BenchReport::nnz)
        .def_readonly("levels", &BenchReport::levels)
        .def_readonly("operator_complexity", &BenchReport::operator_complexity)
        .def_readonly("hierarchy_truncated", &BenchReport::hierarchy_truncated)
        .def_readonly("stats", &BenchReport::stats)
        .def_readonly("version", &BenchReport::version)
        .def_property_readonly("solution", [](const BenchReport& r) { return to_array(r.solution); })
        .def("to_json", [](const BenchReport& r) { return report_to_json(r); })
        .def("to_csv_row", [](const BenchReport& r) { return csv_row(r); });

    m.def("preset_config", &preset_config, py::arg("preset"));
    m.def("run_benchmark", &run_benchmark, py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("report_to_json", &report_to_json, py::arg("report"));
    m.def("report_from_json", [](const std::string& text) { return report_from_json(text); }, py::arg("text"));
    m.def("csv_header", &csv_header);
    m.def("emit_report", &emit_report, py::arg("report"), py::arg("format"), py::arg("path"));
}
