#include "amgkit/amg/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace amgkit {

std::string_view aggregation_name(AggregationKind k) {
    return k == AggregationKind::Vmb ? "vmb" : "matching";
}

void AggregationConfig::validate() const {
    if (kind == AggregationKind::Vmb && !(theta > 0.0 && theta < 1.0)) {
        throw ConfigError("aggregation: theta must lie in (0, 1), got " + std::to_string(theta));
    }
    if (sweeps < 1) throw ConfigError("aggregation: matching sweeps must be >= 1");
    if (max_levels < 1) throw ConfigError("aggregation: max_levels must be >= 1");
    if (coarse_size_target < 1) throw ConfigError("aggregation: coarse_size_target must be >= 1");
}

std::vector<index_t> Aggregation::sizes() const {
    std::vector<index_t> out(static_cast<std::size_t>(n_coarse), 0);
    for (const index_t a : assignment) ++out[a];
    return out;
}

StrengthGraph strength_neighborhood(const CsrMatrix& a, double theta) {
    const Vector diag = a.diagonal();
    for (index_t i = 0; i < a.n_rows; ++i) {
        if (!(diag[i] > 0.0)) {
            throw SingularDiagonalError("strength: nonpositive diagonal " + std::to_string(diag[i]) +
                                        " in row " + std::to_string(i));
        }
    }
    StrengthGraph g;
    g.row_ptr.assign(static_cast<std::size_t>(a.n_rows) + 1, 0);
    for (index_t i = 0; i < a.n_rows; ++i) {
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            const index_t j = a.col_idx[k];
            if (j == i) continue;
            const double mag = std::abs(a.values[k]);
            if (mag >= theta * std::sqrt(diag[i] * diag[j])) {
                g.cols.push_back(j);
                g.coupling.push_back(mag);
            }
        }
        g.row_ptr[i + 1] = static_cast<index_t>(g.cols.size());
    }
    return g;
}

Aggregation vmb_aggregate(const CsrMatrix& a, double theta) {
    const StrengthGraph g = strength_neighborhood(a, theta);
    const index_t n = a.n_rows;
    Aggregation agg;
    agg.n_fine = n;
    agg.assignment.assign(static_cast<std::size_t>(n), -1);
    auto& assign = agg.assignment;
    index_t next = 0;

    for (index_t i = 0; i < n; ++i) {
        if (assign[i] >= 0) continue;
        const auto strong = g.strong(i);
        if (strong.empty()) continue;
        const bool free = std::none_of(strong.begin(), strong.end(),
                                       [&](index_t j) { return assign[j] >= 0; });
        if (!free) continue;
        assign[i] = next;
        for (const index_t j : strong) assign[j] = next;
        ++next;
    }

    const std::vector<index_t> phase1 = assign;
    for (index_t i = 0; i < n; ++i) {
        if (assign[i] >= 0) continue;
        index_t best = -1;
        double best_coupling = -1.0;
        for (index_t k = g.row_ptr[i]; k < g.row_ptr[i + 1]; ++k) {
            const index_t target = phase1[g.cols[k]];
            if (target < 0) continue;
            const double c = g.coupling[k];
            if (c > best_coupling || (c == best_coupling && target < best)) {
                best = target;
                best_coupling = c;
            }
        }
        if (best >= 0) assign[i] = best;
    }

    for (index_t i = 0; i < n; ++i) {
        if (assign[i] < 0) assign[i] = next++;
    }
    agg.n_coarse = next;
    agg.coarse_w.assign(static_cast<std::size_t>(next), 1.0);
    return agg;
}

}  // namespace amgkit
