#include "amgkit/sparse/coo.hpp"

#include <algorithm>
#include <sstream>

namespace amgkit {

CsrMatrix assemble(const CooBuilder& builder) {
    const index_t n_rows = builder.n_rows();
    const index_t n_cols = builder.n_cols();
    const auto& triples = builder.triples();

    std::vector<index_t> offsets(static_cast<std::size_t>(n_rows) + 1, 0);
    for (std::size_t t = 0; t < triples.size(); ++t) {
        const Triple& e = triples[t];
        if (e.row < 0 || e.row >= n_rows || e.col < 0 || e.col >= n_cols) {
            std::ostringstream msg;
            msg << "assemble: triple #" << t << " (" << e.row << ", " << e.col << ", " << e.value
                << ") lies outside the " << n_rows << "x" << n_cols << " index space";
            throw AssemblyError(msg.str());
        }
        ++offsets[e.row + 1];
    }
    for (index_t i = 0; i < n_rows; ++i) offsets[i + 1] += offsets[i];

    // Bucket by row, then order each row by (col, value).
    std::vector<std::pair<index_t, double>> bucket(triples.size());
    std::vector<index_t> next(offsets.begin(), offsets.end() - 1);
    for (const Triple& e : triples) bucket[next[e.row]++] = {e.col, e.value};

    CsrMatrix out(n_rows, n_cols);
    out.col_idx.reserve(triples.size());
    out.values.reserve(triples.size());
    for (index_t i = 0; i < n_rows; ++i) {
        const auto first = bucket.begin() + offsets[i];
        const auto last = bucket.begin() + offsets[i + 1];
        std::sort(first, last);
        const auto row_start = static_cast<index_t>(out.col_idx.size());
        for (auto it = first; it != last; ++it) {
            if (static_cast<index_t>(out.col_idx.size()) > row_start &&
                out.col_idx.back() == it->first) {
                out.values.back() += it->second;
            } else {
                out.col_idx.push_back(it->first);
                out.values.push_back(it->second);
            }
        }
        out.row_ptr[i + 1] = static_cast<index_t>(out.col_idx.size());
    }
    return out;
}

}  // namespace amgkit
