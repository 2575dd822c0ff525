#include <doctest.h>

#include <cmath>
#include <set>

#include "amgkit/amg/matching.hpp"
#include "amgkit/amg/prolongator.hpp"
#include "test_support.hpp"

using namespace amgkit;
using namespace amgkit::testing;

namespace {

/// Exhaustive maximum weight over all matchings of the usable positive edges.
double brute_force_matching(const WeightGraph& g) {
    std::vector<const WeightedEdge*> edges;
    for (const auto& e : g.edges) {
        if (e.usable && e.weight > 0.0) edges.push_back(&e);
    }
    std::vector<bool> used(static_cast<std::size_t>(g.n_vertices), false);
    double best = 0.0;
    auto recurse = [&](auto&& self, std::size_t k, double acc) -> void {
        best = std::max(best, acc);
        for (std::size_t e = k; e < edges.size(); ++e) {
            const auto& ed = *edges[e];
            if (used[ed.u] || used[ed.v]) continue;
            used[ed.u] = used[ed.v] = true;
            self(self, e + 1, acc + ed.weight);
            used[ed.u] = used[ed.v] = false;
        }
    };
    recurse(recurse, 0, 0.0);
    return best;
}

WeightGraph graph_of(index_t n, std::vector<WeightedEdge> edges) {
    WeightGraph g;
    g.n_vertices = n;
    g.edges = std::move(edges);
    return g;
}

bool valid_matching(const Matching& m, index_t n) {
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (const auto& [u, v] : m.edges) {
        if (++seen[u] > 1 || ++seen[v] > 1) return false;
        if (m.mate[u] != v || m.mate[v] != u) return false;
    }
    for (index_t i = 0; i < n; ++i) {
        if ((m.mate[i] >= 0) != (seen[i] == 1)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("strength: examples") {
    const StrengthGraph d = strength_neighborhood(diagonal_matrix({1, 2, 3}), 0.25);
    for (index_t i = 0; i < 3; ++i) CHECK(d.strong(i).empty());

    const StrengthGraph t = strength_neighborhood(tridiag(4), 0.25);
    CHECK(t.strong(0).size() == 1);
    CHECK(t.strong(1).size() == 2);
    CHECK(t.strong(2)[0] == 1);
    CHECK(t.strong(2)[1] == 3);

    const StrengthGraph none = strength_neighborhood(tridiag(4), 0.6);
    for (index_t i = 0; i < 4; ++i) CHECK(none.strong(i).empty());

    CHECK_THROWS_AS(strength_neighborhood(tridiag(3, -1.0, 0.0), 0.25), SingularDiagonalError);
}

TEST_CASE("strength: membership follows the inequality") {
    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const CsrMatrix a = random_spd(rng, 30, 0.2);
        const double theta = uniform(rng, 0.01, 0.9);
        const StrengthGraph g = strength_neighborhood(a, theta);
        const Vector diag = a.diagonal();
        for (index_t i = 0; i < a.n_rows; ++i) {
            std::set<index_t> strong(g.strong(i).begin(), g.strong(i).end());
            for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
                const index_t j = a.col_idx[k];
                const bool expect = j != i && std::abs(a.values[k]) >= theta * std::sqrt(diag[i] * diag[j]);
                CHECK(strong.count(j) == (expect ? 1u : 0u));
            }
        }
    }
}

TEST_CASE("vmb: examples") {
    const Aggregation d = vmb_aggregate(diagonal_matrix({1, 1, 1, 1}), 0.25);
    CHECK(d.n_coarse == 4);

    const Aggregation p = vmb_aggregate(tridiag(3), 0.25);
    CHECK(p.n_coarse == 1);
    CHECK(p.assignment == std::vector<index_t>{0, 0, 0});

    CooBuilder b(4, 4);
    for (index_t i = 0; i < 4; ++i) b.insert(i, i, 2.0);
    b.insert(0, 1, -1.0);
    b.insert(1, 0, -1.0);
    b.insert(2, 3, -1.0);
    b.insert(3, 2, -1.0);
    const Aggregation pairs = vmb_aggregate(assemble(b), 0.25);
    CHECK(pairs.n_coarse == 2);
    CHECK(pairs.assignment == std::vector<index_t>{0, 0, 1, 1});
}

TEST_CASE("vmb: assignment is total and surjective") {
    Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        const CsrMatrix a = random_spd(rng, uniform_index(rng, 1, 80), 0.1);
        const Aggregation agg = vmb_aggregate(a, uniform(rng, 0.01, 0.5));
        std::vector<int> hit(static_cast<std::size_t>(agg.n_coarse), 0);
        for (const index_t c : agg.assignment) {
            REQUIRE(c >= 0);
            REQUIRE(c < agg.n_coarse);
            hit[c] = 1;
        }
        for (const int h : hit) CHECK(h == 1);
        CHECK(agg.coarse_w.size() == static_cast<std::size_t>(agg.n_coarse));
    }
}

TEST_CASE("weight graph: examples") {
    const WeightGraph g = build_weight_graph(tridiag(3), Vector{1, 1, 1});
    REQUIRE(g.find(0, 1) != nullptr);
    CHECK(g.find(0, 1)->weight == 1.5);
    CHECK(g.find(1, 0) == g.find(0, 1));
    CHECK(g.find(0, 2) == nullptr);

    const WeightGraph z = build_weight_graph(tridiag(3), Vector{0, 0, 1});
    CHECK_FALSE(z.find(0, 1)->usable);
    CHECK(z.find(1, 2)->usable);
}

TEST_CASE("weight graph: symmetric on nonsymmetric patterns") {
    Rng rng(6);
    CsrMatrix a = random_spd(rng, 20, 0.3);
    const Vector w = random_vector(rng, 20, 0.5, 2.0);
    const WeightGraph g = build_weight_graph(a, w);
    const Vector d = a.diagonal();
    for (const WeightedEdge& e : g.edges) {
        CHECK(e.u < e.v);
        const index_t k = a.find(e.u, e.v);
        REQUIRE(k >= 0);
        const double expect =
            1.0 - 2.0 * a.values[k] * w[e.u] * w[e.v] / (d[e.u] * w[e.u] * w[e.u] + d[e.v] * w[e.v] * w[e.v]);
        CHECK(e.weight == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("matching: small graphs") {
    const Matching one = approx_max_weight_matching(graph_of(2, {{0, 1, 1.0, true}}));
    CHECK(one.edges.size() == 1);
    CHECK(one.mate == std::vector<index_t>{1, 0});

    const Matching path = approx_max_weight_matching(graph_of(3, {{0, 1, 1.0, true}, {1, 2, 2.0, true}}));
    REQUIRE(path.edges.size() == 1);
    CHECK(path.edges[0] == std::pair<index_t, index_t>{1, 2});
    CHECK(path.mate[0] == -1);

    const Matching tri = approx_max_weight_matching(
        graph_of(3, {{0, 1, 1.0, true}, {0, 2, 1.0, true}, {1, 2, 1.0, true}}));
    REQUIRE(tri.edges.size() == 1);
    CHECK(tri.edges[0] == std::pair<index_t, index_t>{0, 1});

    const Matching unusable = approx_max_weight_matching(graph_of(2, {{0, 1, 5.0, false}}));
    CHECK(unusable.edges.empty());
}

TEST_CASE("matching: half-approximation against brute force") {
    Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const index_t n = uniform_index(rng, 1, 12);
        std::vector<WeightedEdge> edges;
        for (index_t u = 0; u < n; ++u) {
            for (index_t v = u + 1; v < n; ++v) {
                if (uniform(rng, 0.0, 1.0) < 0.4) {
                    // Coarse weight grid so ties occur.
                    edges.push_back({u, v, std::round(uniform(rng, 0.0, 5.0) * 2.0) / 2.0, true});
                }
            }
        }
        const WeightGraph g = graph_of(n, edges);
        const Matching m = approx_max_weight_matching(g);
        CHECK(valid_matching(m, n));
        double weight = 0.0;
        for (const auto& [u, v] : m.edges) weight += g.find(u, v)->weight;
        CHECK(weight == doctest::Approx(m.weight));
        CHECK(weight >= 0.5 * brute_force_matching(g) - 1e-12);
    }
}

TEST_CASE("matching aggregation: path examples") {
    const Aggregation k1 = matching_aggregate(tridiag(4), Vector(4, 1.0), 1);
    CHECK(k1.n_coarse == 2);
    CHECK(k1.n_pairs == 2);
    CHECK(k1.n_singletons == 0);
    CHECK(k1.assignment == std::vector<index_t>{0, 0, 1, 1});

    const Aggregation k2 = matching_aggregate(tridiag(4), Vector(4, 1.0), 2);
    CHECK(k2.n_coarse == 1);
    CHECK(k2.sizes() == std::vector<index_t>{4});

    CHECK_THROWS_AS(matching_aggregate(tridiag(4), Vector(4, 0.0), 1), CoarseningError);
}

TEST_CASE("matching aggregation: isolated vertex becomes a unit singleton") {
    CooBuilder b(3, 3);
    b.insert(0, 0, 2.0);
    b.insert(1, 1, 2.0);
    b.insert(0, 1, -1.0);
    b.insert(1, 0, -1.0);
    b.insert(2, 2, 3.0);
    const Vector w{1.0, 1.0, 2.0};
    const Aggregation agg = matching_aggregate(assemble(b), w, 1);
    CHECK(agg.n_pairs == 1);
    CHECK(agg.n_singletons == 1);
    const Prolongator p = tentative_prolongator(agg, w, AggregationKind::Matching);
    const index_t k = p.matrix.row_ptr[2];
    CHECK(p.matrix.values[k] == 1.0);
}

TEST_CASE("matching aggregation: size bound, surjectivity, near kernel") {
    Rng rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        const index_t n = uniform_index(rng, 2, 90);
        const CsrMatrix a = random_spd(rng, n, 0.08);
        const int k = static_cast<int>(uniform_index(rng, 1, 3));
        const Vector w = trial % 2 == 0 ? Vector(static_cast<std::size_t>(n), 1.0)
                                        : random_vector(rng, n, 0.5, 1.5);
        const Aggregation agg = matching_aggregate(a, w, k);
        CHECK(agg.n_coarse == agg.n_pairs + agg.n_singletons);
        CHECK(agg.n_coarse * (index_t{1} << k) >= n);
        for (const index_t s : agg.sizes()) {
            CHECK(s >= 1);
            CHECK(s <= (index_t{1} << k));
        }
        const Prolongator p = tentative_prolongator(agg, w, AggregationKind::Matching);
        Vector pw(static_cast<std::size_t>(n));
        p.matrix.spmv(1.0, agg.coarse_w, 0.0, pw);
        for (index_t i = 0; i < n; ++i) CHECK(std::abs(pw[i] - w[i]) <= 1e-14 * std::abs(w[i]));
    }
}
