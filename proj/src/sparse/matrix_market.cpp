#include "amgkit/sparse/matrix_market.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

namespace amgkit {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

enum class Symmetry { General, Symmetric, SkewSymmetric };

}  // namespace

CooBuilder read_matrix_market(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("matrix market: empty input");
    std::istringstream header(line);
    std::string banner, object, layout, field, symmetry;
    header >> banner >> object >> layout >> field >> symmetry;
    if (banner != "%%MatrixMarket" || lower(object) != "matrix") {
        throw FormatError("matrix market: missing '%%MatrixMarket matrix' banner");
    }
    if (lower(layout) != "coordinate") {
        throw FormatError("matrix market: only coordinate layout is supported, got '" + layout + "'");
    }
    field = lower(field);
    if (field != "real" && field != "integer" && field != "pattern" && field != "double") {
        throw FormatError("matrix market: unsupported field '" + field + "'");
    }
    const bool pattern = field == "pattern";
    Symmetry sym = Symmetry::General;
    symmetry = lower(symmetry);
    if (symmetry == "symmetric") {
        sym = Symmetry::Symmetric;
    } else if (symmetry == "skew-symmetric") {
        sym = Symmetry::SkewSymmetric;
    } else if (symmetry != "general") {
        throw FormatError("matrix market: unsupported symmetry '" + symmetry + "'");
    }

    do {
        if (!std::getline(in, line)) throw FormatError("matrix market: missing size line");
    } while (line.empty() || line[0] == '%');
    index_t rows = 0, cols = 0, entries = 0;
    {
        std::istringstream size_line(line);
        if (!(size_line >> rows >> cols >> entries) || rows < 0 || cols < 0 || entries < 0) {
            throw FormatError("matrix market: malformed size line '" + line + "'");
        }
    }

    CooBuilder builder(rows, cols);
    builder.reserve(static_cast<std::size_t>(sym == Symmetry::General ? entries : 2 * entries));
    index_t read = 0;
    while (read < entries && std::getline(in, line)) {
        if (line.empty() || line[0] == '%') continue;
        std::istringstream entry(line);
        index_t i = 0, j = 0;
        double v = 1.0;
        if (!(entry >> i >> j) || (!pattern && !(entry >> v))) {
            throw FormatError("matrix market: malformed entry '" + line + "'");
        }
        if (i < 1 || i > rows || j < 1 || j > cols) {
            throw FormatError("matrix market: entry '" + line + "' outside the declared size");
        }
        builder.insert(i - 1, j - 1, v);
        if (sym != Symmetry::General && i != j) {
            builder.insert(j - 1, i - 1, sym == Symmetry::Symmetric ? v : -v);
        }
        ++read;
    }
    if (read != entries) {
        throw FormatError("matrix market: expected " + std::to_string(entries) + " entries, found " +
                          std::to_string(read));
    }
    return builder;
}

CooBuilder read_matrix_market(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("matrix market: cannot open " + path.string());
    try {
        return read_matrix_market(in);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void write_matrix_market(const SparseMatrix& matrix, std::ostream& out) {
    const CsrMatrix a = matrix.to_csr();
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.n_rows << ' ' << a.n_cols << ' ' << a.nnz() << '\n';
    std::array<char, 64> buf{};
    for (index_t i = 0; i < a.n_rows; ++i) {
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            // Shortest representation that parses back to the same double.
            const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), a.values[k]);
            out << (i + 1) << ' ' << (a.col_idx[k] + 1) << ' '
                << std::string_view(buf.data(), static_cast<std::size_t>(res.ptr - buf.data()))
                << '\n';
        }
    }
}

void write_matrix_market(const SparseMatrix& matrix, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("matrix market: cannot open " + path.string() + " for writing");
    write_matrix_market(matrix, out);
    if (!out) throw Error("matrix market: write to " + path.string() + " failed");
}

}  // namespace amgkit
