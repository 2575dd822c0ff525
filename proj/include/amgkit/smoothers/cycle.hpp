#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "amgkit/amg/hierarchy.hpp"
#include "amgkit/smoothers/smoother.hpp"

namespace amgkit {

enum class CycleKind { V, VariableV };

std::string_view cycle_name(CycleKind k);

struct CoarseSolverConfig {
    enum class Kind { L1JacobiSweeps, PcgL1Jacobi };
    Kind kind = Kind::PcgL1Jacobi;
    /// Sweep count, or the PCG iteration cap.
    int iterations = 40;
    /// Relative residual at which coarse PCG stops early.
    double tol = 1e-10;

    /// "pcg:<maxit>" or "sweeps:<n>".
    static CoarseSolverConfig parse(std::string_view spec);
    std::string to_string() const;
};

struct CycleConfig {
    CycleKind cycle = CycleKind::V;
    /// Sweeps on the finest level; a variable V-cycle doubles them per level.
    int pre_sweeps = 4;
    int post_sweeps = 4;
    SmootherKind smoother = SmootherKind::L1Jacobi;
    double ainv_drop_tol = 0.1;
    CoarseSolverConfig coarse;

    void validate() const;
};

/// base * 2^level
int variable_sweeps(int level, int base);

/// Second half of the two-step setup. Builds (or rebuilds) one smoother per
/// level from the current level matrices; matrices and transfers are not
/// touched.
void build_smoothers(Hierarchy& h, const CycleConfig& cfg);

/// Approximate solve on the coarsest level. The prebuilt diagonal overload
/// avoids recomputing the l1 diagonal on every call.
Vector coarse_solve(const SparseMatrix& a, std::span<const double> b,
                    const CoarseSolverConfig& cfg);
void coarse_solve(const SparseMatrix& a, const L1JacobiSmoother& l1, std::span<const double> b,
                  std::span<double> x, const CoarseSolverConfig& cfg);

/// z <- B r for the multigrid operator B: pre-smoothing from a zero guess,
/// restriction, one recursive coarse correction, prolongation and
/// post-smoothing on every level above the coarsest.
void vcycle_apply(const Hierarchy& h, const CycleConfig& cfg, std::span<const double> r,
                  std::span<double> z);
Vector vcycle_apply(const Hierarchy& h, const CycleConfig& cfg, std::span<const double> r);

/// Callable wrapper for the Krylov drivers.
class AmgPreconditioner {
public:
    AmgPreconditioner(std::shared_ptr<const Hierarchy> h, CycleConfig cfg);

    void operator()(std::span<const double> r, std::span<double> z) const {
        vcycle_apply(*h_, cfg_, r, z);
    }
    const Hierarchy& hierarchy() const { return *h_; }
    const CycleConfig& config() const { return cfg_; }

private:
    std::shared_ptr<const Hierarchy> h_;
    CycleConfig cfg_;
};

}  // namespace amgkit
