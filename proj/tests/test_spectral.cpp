#include <doctest.h>

#include "oracles.hpp"

#include "churnnet/churn.hpp"
#include "churnnet/metrics.hpp"
#include "churnnet/spectral.hpp"

#include <cmath>

using namespace churnnet;
using V = GraphView::Vertex;
using EdgeList = std::vector<std::pair<V, V>>;

namespace {

GraphView graph(std::size_t n, const EdgeList& edges) {
    std::vector<Position> pos;
    for (std::size_t k = 0; k < n; ++k) {
        pos.push_back({static_cast<double>(k) / static_cast<double>(n), 0.5});
    }
    return GraphView::from_edges(std::move(pos), edges);
}

void check_against_dense(const GraphView& g, std::uint64_t seed) {
    const auto [l1, l2] = oracle::dense_top_two(g);
    SpectralOptions opts;
    opts.seed = seed;
    const SpectralResult r = spectral_gap(g, opts);
    REQUIRE(r.converged);
    REQUIRE(std::abs(r.lambda1 - l1) <= 1e-6);
    REQUIRE(std::abs(r.lambda2 - l2) <= 1e-6);
    REQUIRE(std::abs(r.gap - (l1 - l2)) <= 1e-6);

    std::size_t max_degree = 0;
    for (V v = 0; v < g.size(); ++v) {
        max_degree = std::max(max_degree, g.degree(v));
    }
    const double mean_degree = degree_and_power_stats(g).mean_degree;
    REQUIRE(r.lambda1 <= static_cast<double>(max_degree) + 1e-9);
    REQUIRE(r.lambda1 >= mean_degree - 1e-9);
    REQUIRE(r.lambda1 >= r.lambda2);
    REQUIRE(r.gap >= 0.0);
}

} // namespace

TEST_CASE("spectral examples") {
    SUBCASE("triangle") {
        const auto r = spectral_gap(graph(3, {{0, 1}, {1, 2}, {0, 2}}));
        CHECK(r.converged);
        CHECK(r.lambda1 == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(r.lambda2 == doctest::Approx(-1.0).epsilon(1e-9));
        CHECK(r.gap == doctest::Approx(3.0).epsilon(1e-9));
    }
    SUBCASE("path of three") {
        // Characteristic polynomial x^3 - 2x.
        const auto r = spectral_gap(graph(3, {{0, 1}, {1, 2}}));
        CHECK(r.converged);
        CHECK(r.lambda1 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
        CHECK(std::abs(r.lambda2) < 1e-9);
        CHECK(r.gap == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    }
    SUBCASE("star with three leaves") {
        const GraphView star = graph(4, {{0, 1}, {0, 2}, {0, 3}});
        const auto r = spectral_gap(star);
        CHECK(r.converged);
        CHECK(r.lambda1 == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
        CHECK(std::abs(r.lambda2) < 1e-9);
        CHECK(r.gap == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
        const auto [l1, l2] = oracle::dense_top_two(star);
        CHECK(r.lambda1 == doctest::Approx(l1).epsilon(1e-9));
        CHECK(std::abs(r.lambda2 - l2) < 1e-9);
    }
    SUBCASE("single edge") {
        const auto r = spectral_gap(graph(2, {{0, 1}}));
        CHECK(r.lambda1 == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.lambda2 == doctest::Approx(-1.0).epsilon(1e-9));
    }
    SUBCASE("complete graph K6") {
        EdgeList e;
        for (V a = 0; a < 6; ++a) {
            for (V b = a + 1; b < 6; ++b) {
                e.emplace_back(a, b);
            }
        }
        const auto r = spectral_gap(graph(6, e));
        CHECK(r.lambda1 == doctest::Approx(5.0).epsilon(1e-9));
        CHECK(r.lambda2 == doctest::Approx(-1.0).epsilon(1e-9));
    }
    SUBCASE("even cycle, bipartite") {
        EdgeList e;
        for (V a = 0; a < 8; ++a) {
            e.emplace_back(a, (a + 1) % 8);
        }
        const auto r = spectral_gap(graph(8, e));
        CHECK(r.lambda1 == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(r.lambda2 == doctest::Approx(2.0 * std::cos(2.0 * 3.141592653589793 / 8.0)).epsilon(1e-9));
    }
}

TEST_CASE("spectral preconditions") {
    CHECK_THROWS_AS(spectral_gap(graph(4, {{0, 1}, {2, 3}})), Disconnected);
    CHECK_THROWS_AS(spectral_gap(graph(1, {})), Disconnected);
}

TEST_CASE("spectral gap matches a dense eigensolver") {
    Rng rng(101);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 2 + rng.below(199);
        const double density = trial % 3 == 0 ? 0.3 * rng.uniform() : 4.0 / static_cast<double>(n) * rng.uniform();
        const GraphView g = oracle::random_connected_graph(rng, n, density);
        check_against_dense(g, static_cast<std::uint64_t>(trial));
    }
}

TEST_CASE("spectral gap on simulated networks") {
    for (double q : {0.0, 0.2, 1.0}) {
        Params p;
        p.n_agents = 150;
        p.q = q;
        p.seed = 5;
        p.p_min = 0.3;
        p.p_max = 0.6;
        SimState st = bootstrap(p);
        for (int k = 0; k < 200; ++k) {
            churn_step(st);
        }
        const GraphView g = GraphView::from(st.net);
        if (is_connected(g)) {
            check_against_dense(g, 3);
        }
    }
}

TEST_CASE("spectral gap is deterministic for a seed") {
    Rng rng(7);
    const GraphView g = oracle::random_connected_graph(rng, 80, 0.05);
    SpectralOptions opts;
    opts.seed = 12;
    const auto a = spectral_gap(g, opts);
    const auto b = spectral_gap(g, opts);
    CHECK(a.gap == b.gap);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("iteration cap reports non-convergence") {
    Rng rng(8);
    const GraphView g = oracle::random_connected_graph(rng, 120, 0.02);
    SpectralOptions opts;
    opts.max_iterations = 3;
    const auto r = spectral_gap(g, opts);
    CHECK(!r.converged);
    CHECK(r.iterations <= 6);
}
