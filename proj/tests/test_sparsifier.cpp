#include <doctest.h>

#include <cmath>
#include <limits>

#include "expandopt/constructors.hpp"
#include "expandopt/rng.hpp"
#include "expandopt/sparsifier.hpp"
#include "expandopt/spectral.hpp"

using namespace expandopt;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Graph scaled(const Graph& g, double factor) {
    std::vector<Edge> edges = g.edges();
    for (auto& e : edges) e.w *= factor;
    return Graph(g.vertex_count(), edges);
}

}  // namespace

TEST_SUITE("sparsifier") {

TEST_CASE("edge vectors of K3 resolve the ones-complement projection") {
    const auto vectors = edge_vectors(named_graph(NamedKind::complete, 3));
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(3, 3);
    for (const auto& v : vectors) sum += v * v.transpose();
    const auto spectrum = symmetric_spectrum(sum);
    CHECK(std::abs(spectrum[0]) < 1e-8);
    CHECK(std::abs(spectrum[1] - 1.0) < 1e-8);
    CHECK(std::abs(spectrum[2] - 1.0) < 1e-8);
}

TEST_CASE("single-edge path has a unit edge vector") {
    const auto vectors = edge_vectors(Graph(2, {{0, 1}}));
    REQUIRE(vectors.size() == 1);
    CHECK(std::abs(vectors[0].squaredNorm() - 1.0) < 1e-12);
}

TEST_CASE("edge vectors require connectivity") {
    CHECK_THROWS_AS(edge_vectors(Graph(4, {{0, 1}, {2, 3}})), std::invalid_argument);
}

TEST_CASE("weighted reconstruction on small random graphs") {
    SplitMix64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + static_cast<int>(rng.next_below(8));
        std::vector<Edge> edges;
        for (int v = 1; v < n; ++v)
            edges.push_back({static_cast<int>(rng.next_below(v)), v, 0.5 + rng.next_double()});
        for (int k = 0; k < n / 2; ++k) {
            int u = static_cast<int>(rng.next_below(n)), v = static_cast<int>(rng.next_below(n));
            if (u == v) continue;
            if (u > v) std::swap(u, v);
            bool dup = false;
            for (const auto& e : edges) dup |= (e.u == u && e.v == v);
            if (!dup) edges.push_back({u, v, 0.5 + rng.next_double()});
        }
        const Graph g(n, edges);
        const auto vectors = edge_vectors(g);
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
        for (const auto& v : vectors) sum += v * v.transpose();
        const Eigen::MatrixXd projection =
            Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
        CHECK((sum - projection).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("barrier potentials") {
    const auto p = barrier_potentials(Eigen::MatrixXd::Zero(3, 3), 2.0, -2.0);
    CHECK(std::abs(p.upper - 1.5) < 1e-12);
    CHECK(std::abs(p.lower - 1.5) < 1e-12);
    const auto q = barrier_potentials(Eigen::MatrixXd::Identity(2, 2), 3.0, 0.0);
    CHECK(std::abs(q.upper - 1.0) < 1e-12);
    CHECK(std::abs(q.lower - 2.0) < 1e-12);
    CHECK_THROWS_AS(barrier_potentials(Eigen::MatrixXd::Identity(2, 2), 1.0, 0.0), std::runtime_error);
}

TEST_CASE("shift quotas match the scalar hand oracle") {
    // A = 0 (1x1), v = (1), u = 2, l = -2, both shifts 1:
    //   upper: (1/9) / (1/2 - 1/3) + 1/3 = 1
    //   lower: 1 / (1 - 1/2) - 1 = 1
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(1, 1);
    Eigen::VectorXd v(1);
    v << 1.0;
    const auto quotas = shift_quotas(a, v, 2.0, -2.0, 1.0, 1.0);
    CHECK(std::abs(quotas.upper - 1.0) < 1e-12);
    CHECK(std::abs(quotas.lower - 1.0) < 1e-12);
}

TEST_CASE("zero vector gives zero quadratic contributions") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(2);
    const auto quotas = shift_quotas(a, v, 4.0, -4.0, 1.0, 1.0);
    CHECK(quotas.upper == 0.0);
    CHECK(quotas.lower == 0.0);
}

TEST_CASE("K8 sparsifier meets the d=3 certificate") {
    const Graph g = named_graph(NamedKind::complete, 8);
    const Graph h = bss_sparsify(g, {.d = 3});
    CHECK(h.edge_count() <= 3 * 7);
    const double bound = sparsifier_ratio_bound(3);
    CHECK(std::abs(bound - 13.9282) < 1e-4);
    CHECK(loewner_sandwich_check(g, h, bound + 1e-6));
    const auto range = pencil_range(g, h);
    CHECK(range.min >= 1.0 - 1e-8);  // rescaled so the floor sits at 1
}

TEST_CASE("K5 sparsifier meets the d=2 certificate") {
    const Graph g = named_graph(NamedKind::complete, 5);
    const Graph h = bss_sparsify(g, {.d = 2});
    CHECK(h.edge_count() <= 2 * 4);
    const double bound = sparsifier_ratio_bound(2);
    CHECK(std::abs(bound - 33.9706) < 1e-4);
    CHECK(loewner_sandwich_check(g, h, bound + 1e-6));
}

TEST_CASE("zero-cost edge is picked while infinite-cost edges never are") {
    const Graph g = named_graph(NamedKind::complete, 5);
    SparsifierParams params{.d = 2};
    params.mu.assign(g.edge_count(), 1.0);
    params.mu[3] = 0.0;    // free edge: argmin whenever feasible
    params.mu[7] = kInf;   // blocked edge: never selected
    const Graph h = bss_sparsify(g, params);
    const auto& free_edge = g.edges()[3];
    CHECK(h.edge_index(free_edge.u, free_edge.v) >= 0);
    const auto& blocked = g.edges()[7];
    CHECK(h.edge_index(blocked.u, blocked.v) < 0);
    CHECK(loewner_sandwich_check(g, h, sparsifier_ratio_bound(2) + 1e-6));
}

TEST_CASE("identical inputs give identical sparsifiers") {
    const Graph g = named_graph(NamedKind::complete, 9);
    const Graph a = bss_sparsify(g, {.d = 2});
    const Graph b = bss_sparsify(g, {.d = 2});
    CHECK(a == b);
}

TEST_CASE("support stays inside the input edge set") {
    const Graph g = random_regular({14, 4, 2});
    const Graph h = bss_sparsify(g, {.d = 3});
    for (const auto& e : h.edges()) CHECK(g.edge_index(e.u, e.v) >= 0);
}

TEST_CASE("loewner sandwich check basics") {
    const Graph g = named_graph(NamedKind::petersen, 10);
    CHECK(loewner_sandwich_check(g, g, 1.0));
    CHECK(loewner_sandwich_check(g, scaled(g, 2.0), 2.0));
    CHECK_FALSE(loewner_sandwich_check(g, scaled(g, 2.0), 1.5));
    CHECK_THROWS_AS(loewner_sandwich_check(g, named_graph(NamedKind::complete, 5), 1.0),
                    std::invalid_argument);
}

TEST_CASE("sandwich holds across sizes, degrees and weights") {
    SplitMix64 rng(5);
    std::vector<Graph> inputs{named_graph(NamedKind::complete, 12), random_regular({20, 6, 9}),
                              named_graph(NamedKind::complete, 32)};
    {
        // weighted complete graph
        std::vector<Edge> edges;
        for (int u = 0; u < 10; ++u)
            for (int v = u + 1; v < 10; ++v) edges.push_back({u, v, 0.5 + 1.5 * rng.next_double()});
        inputs.emplace_back(10, edges);
    }
    for (const auto& g : inputs)
        for (int d : {2, 3, 4}) {
            const Graph h = bss_sparsify(g, {.d = d});
            CHECK(h.edge_count() <= d * (g.vertex_count() - 1));
            CHECK(loewner_sandwich_check(g, h, sparsifier_ratio_bound(d) + 1e-6));
        }
}

TEST_CASE("bad inputs are rejected") {
    CHECK_THROWS_AS(bss_sparsify(named_graph(NamedKind::complete, 5), {.d = 1}), std::invalid_argument);
    CHECK_THROWS_AS(bss_sparsify(Graph(4, {{0, 1}, {2, 3}}), {.d = 2}), std::invalid_argument);
    SparsifierParams short_mu{.d = 2};
    short_mu.mu = {1.0};
    CHECK_THROWS_AS(bss_sparsify(named_graph(NamedKind::complete, 5), short_mu), std::invalid_argument);
}

}  // TEST_SUITE
