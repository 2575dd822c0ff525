#pragma once

#include "amgkit/sparse/coo.hpp"

namespace amgkit {

struct PoissonSystem {
    CooBuilder matrix;
    Vector rhs;
};

/// 7-point finite differences for -lap u = 1 on the unit cube with zero
/// Dirichlet data, boundary nodes eliminated. Unknowns are the interior
/// grid points in lexicographic order (x fastest); rows carry 6 on the
/// diagonal and -1 per existing neighbour, and the right-hand side is h^2
/// with h = 1 / (nx + 1).
PoissonSystem gen_poisson_7pt(index_t nx, index_t ny, index_t nz);

}  // namespace amgkit
