#pragma once

#include <filesystem>
#include <iosfwd>

#include "amgkit/sparse/coo.hpp"
#include "amgkit/sparse/matrix.hpp"

namespace amgkit {

/// Reads a coordinate-format Matrix Market file (real, integer or pattern;
/// general or symmetric). Symmetric files are mirrored into full storage.
CooBuilder read_matrix_market(const std::filesystem::path& path);
CooBuilder read_matrix_market(std::istream& in);

/// Writes a general real coordinate file, 1-based, with round-trip exact values.
void write_matrix_market(const SparseMatrix& matrix, const std::filesystem::path& path);
void write_matrix_market(const SparseMatrix& matrix, std::ostream& out);

}  // namespace amgkit
