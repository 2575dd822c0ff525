#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "amgkit/amg/aggregation.hpp"
#include "amgkit/krylov/krylov.hpp"
#include "amgkit/smoothers/cycle.hpp"
#include "amgkit/sparse/matrix.hpp"

namespace amgkit {

enum class Preset { Vbm, Smatch, Vmatch, Custom };
enum class ReportFormat { Json, Csv };

std::string_view preset_name(Preset p);
Preset parse_preset(std::string_view name);
std::string_view report_format_name(ReportFormat f);
ReportFormat parse_report_format(std::string_view name);

struct BenchConfig {
    index_t nx = 32;
    index_t ny = 32;
    index_t nz = 32;
    Preset preset = Preset::Vbm;
    AggregationConfig aggregation;
    CycleConfig cycle;
    SolverConfig solver;
    int shards = 1;
    Format format = Format::Hll;
    index_t hack_size = kDefaultHackSize;
    std::filesystem::path out_path;
    ReportFormat report = ReportFormat::Json;

    void validate() const;
};

/// Configuration of a named preset:
///  VBM    decoupled aggregation, smoothed prolongators, V-cycle,
///         4 + 4 l1-Jacobi sweeps, coarse PCG capped at 40 iterations;
///  SMATCH 3 matching sweeps (aggregates of up to 8), otherwise as VBM;
///  VMATCH as SMATCH with unsmoothed prolongators and a variable V-cycle
///         starting from 2 sweeps.
/// Custom starts from the VBM choices.
BenchConfig preset_config(Preset p);

struct LevelInfo {
    index_t size = 0;
    index_t nnz = 0;
    int pre_sweeps = 0;
    int post_sweeps = 0;

    bool operator==(const LevelInfo&) const = default;
};

struct BenchReport {
    BenchConfig config;
    index_t n_unknowns = 0;
    index_t nnz = 0;
    std::vector<LevelInfo> levels;
    double operator_complexity = 0.0;
    bool hierarchy_truncated = false;
    SolveStats stats;
    std::string version;
    /// Global solution and the hierarchy used; kept in memory only, never
    /// serialized.
    Vector solution;
    std::shared_ptr<const Hierarchy> hierarchy;
};

/// Poisson matrix -> descriptors -> hierarchy (timed) -> smoothers (timed)
/// -> sharded FCG (timed) -> report. Non-convergence is reported through
/// stats.converged, not thrown.
BenchReport run_benchmark(const BenchConfig& cfg);

std::string report_to_json(const BenchReport& report);
BenchReport report_from_json(std::string_view json);

/// Stable CSV layout: one header line, one row per report.
std::string csv_header();
std::string csv_row(const BenchReport& report);

/// JSON overwrites the file; CSV appends a row and writes the header only
/// when the file is new or empty. Throws Error carrying the path on I/O
/// failure.
void emit_report(const BenchReport& report, ReportFormat format,
                 const std::filesystem::path& path);

std::string_view library_version();

}  // namespace amgkit
