#include "amgkit/amg/matching.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "amgkit/amg/prolongator.hpp"

namespace amgkit {

const WeightedEdge* WeightGraph::find(index_t u, index_t v) const {
    if (u > v) std::swap(u, v);
    const auto it = std::find_if(edges.begin(), edges.end(),
                                 [&](const WeightedEdge& e) { return e.u == u && e.v == v; });
    return it == edges.end() ? nullptr : &*it;
}

WeightGraph build_weight_graph(const CsrMatrix& a, std::span<const double> w) {
    if (a.n_rows != a.n_cols || static_cast<index_t>(w.size()) != a.n_rows) {
        throw DimensionError("build_weight_graph: A must be square and match w");
    }
    const Vector diag = a.diagonal();
    WeightGraph g;
    g.n_vertices = a.n_rows;
    for (index_t i = 0; i < a.n_rows; ++i) {
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            const index_t j = a.col_idx[k];
            const index_t kt = a.find(j, i);
            if (j == i || (j < i && kt >= 0)) continue;  // pair already seen from row j
            const double aij = 0.5 * (a.values[k] + (kt >= 0 ? a.values[kt] : 0.0));
            const index_t u = std::min(i, j);
            const index_t v = std::max(i, j);
            const double denom = diag[u] * w[u] * w[u] + diag[v] * w[v] * w[v];
            WeightedEdge e{u, v, 0.0, false};
            if (denom != 0.0) {
                e.weight = 1.0 - 2.0 * aij * w[u] * w[v] / denom;
                e.usable = std::isfinite(e.weight);
            }
            g.edges.push_back(e);
        }
    }
    std::sort(g.edges.begin(), g.edges.end(), [](const WeightedEdge& x, const WeightedEdge& y) {
        return x.u != y.u ? x.u < y.u : x.v < y.v;
    });
    return g;
}

Matching approx_max_weight_matching(const WeightGraph& g) {
    std::vector<const WeightedEdge*> order;
    order.reserve(g.edges.size());
    for (const auto& e : g.edges) {
        if (e.usable && e.weight > 0.0) order.push_back(&e);
    }
    std::sort(order.begin(), order.end(), [](const WeightedEdge* x, const WeightedEdge* y) {
        if (x->weight != y->weight) return x->weight > y->weight;
        return x->u != y->u ? x->u < y->u : x->v < y->v;
    });
    Matching m;
    m.mate.assign(static_cast<std::size_t>(g.n_vertices), -1);
    for (const WeightedEdge* e : order) {
        if (m.mate[e->u] >= 0 || m.mate[e->v] >= 0) continue;
        m.mate[e->u] = e->v;
        m.mate[e->v] = e->u;
        m.edges.emplace_back(e->u, e->v);
        m.weight += e->weight;
    }
    return m;
}

Aggregation matching_aggregate(const CsrMatrix& a, std::span<const double> w, int sweeps) {
    if (sweeps < 1) throw ConfigError("matching_aggregate: sweeps must be >= 1");
    if (static_cast<index_t>(w.size()) != a.n_rows) {
        throw DimensionError("matching_aggregate: w does not match A");
    }
    if (std::all_of(w.begin(), w.end(), [](double v) { return v == 0.0; })) {
        throw CoarseningError("matching_aggregate: near-kernel vector is zero");
    }

    Aggregation result;
    result.n_fine = a.n_rows;
    result.assignment.resize(static_cast<std::size_t>(a.n_rows));
    for (index_t i = 0; i < a.n_rows; ++i) result.assignment[i] = i;
    result.n_coarse = a.n_rows;
    result.coarse_w.assign(w.begin(), w.end());

    CsrMatrix current = a;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        const index_t n = current.n_rows;
        const Matching m = approx_max_weight_matching(build_weight_graph(current, result.coarse_w));
        if (m.edges.empty() && sweep > 0) break;

        // Coarse nodes are numbered by their smallest member.
        Aggregation step;
        step.n_fine = n;
        step.assignment.assign(static_cast<std::size_t>(n), -1);
        index_t next = 0;
        for (index_t i = 0; i < n; ++i) {
            if (step.assignment[i] >= 0) continue;
            step.assignment[i] = next;
            if (m.mate[i] >= 0) {
                step.assignment[m.mate[i]] = next;
                ++step.n_pairs;
            } else {
                ++step.n_singletons;
            }
            ++next;
        }
        step.n_coarse = next;
        step.coarse_w.assign(static_cast<std::size_t>(next), 0.0);
        for (index_t i = 0; i < n; ++i) {
            step.coarse_w[step.assignment[i]] += result.coarse_w[i] * result.coarse_w[i];
        }
        for (auto& v : step.coarse_w) v = std::sqrt(v);

        const Prolongator p = tentative_prolongator(step, result.coarse_w, AggregationKind::Matching);
        if (sweep + 1 < sweeps) current = galerkin_product(current, p.matrix);

        for (auto& target : result.assignment) target = step.assignment[target];
        result.n_coarse = step.n_coarse;
        result.n_pairs = step.n_pairs;
        result.n_singletons = step.n_singletons;
        result.coarse_w = std::move(step.coarse_w);
    }
    return result;
}

}  // namespace amgkit
