#include "amgkit/bench/poisson.hpp"

#include <string>

namespace amgkit {

PoissonSystem gen_poisson_7pt(index_t nx, index_t ny, index_t nz) {
    if (nx < 2 || ny < 2 || nz < 2) {
        throw ConfigError("gen_poisson_7pt: grid dimensions must be >= 2, got " +
                          std::to_string(nx) + "x" + std::to_string(ny) + "x" + std::to_string(nz));
    }
    const index_t n = nx * ny * nz;
    const double h = 1.0 / static_cast<double>(nx + 1);
    PoissonSystem sys{CooBuilder(n, n), Vector(static_cast<std::size_t>(n), h * h)};
    sys.matrix.reserve(static_cast<std::size_t>(7 * n));
    const auto id = [&](index_t i, index_t j, index_t k) { return i + nx * (j + ny * k); };
    for (index_t k = 0; k < nz; ++k) {
        for (index_t j = 0; j < ny; ++j) {
            for (index_t i = 0; i < nx; ++i) {
                const index_t row = id(i, j, k);
                if (k > 0) sys.matrix.insert(row, id(i, j, k - 1), -1.0);
                if (j > 0) sys.matrix.insert(row, id(i, j - 1, k), -1.0);
                if (i > 0) sys.matrix.insert(row, id(i - 1, j, k), -1.0);
                sys.matrix.insert(row, row, 6.0);
                if (i + 1 < nx) sys.matrix.insert(row, id(i + 1, j, k), -1.0);
                if (j + 1 < ny) sys.matrix.insert(row, id(i, j + 1, k), -1.0);
                if (k + 1 < nz) sys.matrix.insert(row, id(i, j, k + 1), -1.0);
            }
        }
    }
    return sys;
}

}  // namespace amgkit
