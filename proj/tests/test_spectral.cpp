#include <doctest.h>

#include <cmath>

#include "expandopt/constructors.hpp"
#include "expandopt/spectral.hpp"

using namespace expandopt;

namespace {

bool close(double a, double b, double tol = 1e-8) { return std::abs(a - b) <= tol; }

// C20 with offsets {1, 2}: connected 4-regular with lambda_1 = 3.52 > 2*sqrt(3),
// a compact non-Ramanujan witness.
Graph c20_offsets_1_2() {
    std::vector<Edge> edges;
    for (int i = 0; i < 20; ++i) {
        edges.push_back({i, (i + 1) % 20});
        edges.push_back({i, (i + 2) % 20});
    }
    return Graph(20, edges);
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("identity spectrum") {
    const auto s = symmetric_spectrum(Eigen::MatrixXd::Identity(3, 3));
    for (double v : s) CHECK(close(v, 1.0));
}

TEST_CASE("cycle C4 laplacian spectrum is {0,2,2,4}") {
    const auto s = symmetric_spectrum(laplacian(named_graph(NamedKind::cycle, 4)));
    CHECK(close(s[0], 0.0));
    CHECK(close(s[1], 2.0));
    CHECK(close(s[2], 2.0));
    CHECK(close(s[3], 4.0));
}

TEST_CASE("petersen adjacency spectrum is {-2 x4, 1 x5, 3}") {
    const auto s = symmetric_spectrum(adjacency_matrix(named_graph(NamedKind::petersen, 10)));
    for (int i = 0; i < 4; ++i) CHECK(close(s[i], -2.0));
    for (int i = 4; i < 9; ++i) CHECK(close(s[i], 1.0));
    CHECK(close(s[9], 3.0));
}

TEST_CASE("asymmetric input is rejected") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 1) = 1e-6;
    CHECK_THROWS_AS(symmetric_spectrum(m), std::invalid_argument);
}

TEST_CASE("reduced condition number") {
    CHECK(close(reduced_condition_number(named_graph(NamedKind::complete, 6)), 1.0));
    CHECK(close(reduced_condition_number(named_graph(NamedKind::cycle, 4)), 2.0));
    CHECK_THROWS_AS(reduced_condition_number(Graph(4, {{0, 1}, {2, 3}})), std::invalid_argument);
}

TEST_CASE("adjacency extremes") {
    const auto k5 = adjacency_extremes(named_graph(NamedKind::complete, 5));
    CHECK(close(k5.lambda_second, -1.0));
    CHECK(close(k5.lambda_nontrivial_abs, 1.0));
    const auto pet = adjacency_extremes(named_graph(NamedKind::petersen, 10));
    CHECK(close(pet.lambda_second, 1.0));
    CHECK(close(pet.lambda_nontrivial_abs, 2.0));
    const auto c4 = adjacency_extremes(named_graph(NamedKind::cycle, 4));
    CHECK(close(c4.lambda_second, 0.0));
    CHECK(close(c4.lambda_nontrivial_abs, 2.0));
    CHECK_THROWS_AS(adjacency_extremes(named_graph(NamedKind::path, 4)), std::invalid_argument);
}

TEST_CASE("kappa upper bound") {
    CHECK(close(kappa_upper_bound(3, 2.0), 5.0));
    CHECK(std::isinf(kappa_upper_bound(2, 2.0)));
    CHECK(close(kappa_upper_bound(30, 10.7703), 2.1202, 5e-5));  // 10.7703 = 2 sqrt(29) rounded
    CHECK_THROWS_AS(kappa_upper_bound(3, 3.5), std::invalid_argument);
    CHECK_THROWS_AS(kappa_upper_bound(3, -0.1), std::invalid_argument);
}

TEST_CASE("ramanujan verdicts") {
    const auto pet = ramanujan_check(named_graph(NamedKind::petersen, 10));
    CHECK(pet.ramanujan);
    CHECK(close(pet.margin, 2.0 * std::sqrt(2.0) - 2.0));
    CHECK(ramanujan_check(named_graph(NamedKind::complete, 5)).ramanujan);
    CHECK_FALSE(ramanujan_check(c20_offsets_1_2()).ramanujan);
    CHECK_THROWS_AS(ramanujan_check(named_graph(NamedKind::cycle, 5)), std::invalid_argument);  // d = 2
}

TEST_CASE("bipartite graphs exclude the -d eigenvalue") {
    // K_{3,3}: spectrum {3, 0 x4, -3}; after excluding +-3 the verdict holds.
    std::vector<Edge> edges;
    for (int u = 0; u < 3; ++u)
        for (int v = 3; v < 6; ++v) edges.push_back({u, v});
    const auto verdict = ramanujan_check(Graph(6, edges));
    CHECK(verdict.ramanujan);
    CHECK(close(verdict.margin, 2.0 * std::sqrt(2.0)));
}

TEST_CASE("alon-boppana values") {
    CHECK(close(alon_boppana(4, 10), 2.9713, 5e-5));
    CHECK(close(alon_boppana(2, 4), 1.5));
    CHECK_THROWS_AS(alon_boppana(4, 1), std::invalid_argument);
}

TEST_CASE("alon-boppana lower-bounds lambda_second on samples") {
    for (const Graph& g : {named_graph(NamedKind::petersen, 10), named_graph(NamedKind::cycle, 6),
                           random_regular({24, 4, 5}), circulant_regular(13, 4)}) {
        const int d = *g.regular_degree();
        const int diam = diameter(g);
        if (diam < 2) continue;
        CHECK(adjacency_extremes(g).lambda_second >= alon_boppana(d, diam) - 1e-6);
    }
}

TEST_CASE("cheeger bounds") {
    const auto b = cheeger_bounds(30, 2.0 * std::sqrt(29.0));
    CHECK(close(b.lower, 9.6149, 1e-4));
    CHECK(close(b.upper, 33.9673, 1e-4));
    const auto zero = cheeger_bounds(4, 4.0);
    CHECK(zero.lower == 0.0);
    CHECK(zero.upper == 0.0);
    const auto c = cheeger_bounds(2, 0.0);
    CHECK(close(c.lower, 1.0));
    CHECK(close(c.upper, 2.0 * std::sqrt(2.0)));
    CHECK(cheeger_bounds(5, -1.0).lower == 3.0);  // negative lambda_second is fine
    CHECK_THROWS_AS(cheeger_bounds(3, 3.5), std::invalid_argument);
}

TEST_CASE("cheeger brute force") {
    CHECK(close(cheeger_bruteforce(named_graph(NamedKind::cycle, 4)), 1.0));
    CHECK(close(cheeger_bruteforce(named_graph(NamedKind::complete, 4)), 2.0));
    CHECK_THROWS_AS(cheeger_bruteforce(named_graph(NamedKind::cycle, 21)), std::invalid_argument);
}

TEST_CASE("brute-force cheeger sits inside the spectral interval") {
    for (const Graph& g :
         {named_graph(NamedKind::complete, 4), named_graph(NamedKind::complete, 6),
          named_graph(NamedKind::cycle, 6), named_graph(NamedKind::cycle, 8),
          named_graph(NamedKind::petersen, 10), circulant_regular(11, 4), random_regular({12, 4, 11})}) {
        const int d = *g.regular_degree();
        const double h = cheeger_bruteforce(g);
        const auto bounds = cheeger_bounds(d, std::min(double(d), adjacency_extremes(g).lambda_second));
        CHECK(h >= bounds.lower - 1e-9);
        CHECK(h <= bounds.upper + 1e-9);
    }
}

TEST_CASE("regular graphs satisfy lambda(L) = d - lambda(A) as multisets") {
    for (const Graph& g : {named_graph(NamedKind::petersen, 10), random_regular({16, 4, 3})}) {
        const int d = *g.regular_degree();
        const auto ls = symmetric_spectrum(laplacian(g));
        auto as = symmetric_spectrum(adjacency_matrix(g));
        const int n = g.vertex_count();
        for (int i = 0; i < n; ++i) CHECK(close(ls[i], d - as[n - 1 - i]));
    }
}

TEST_CASE("spectral report on K6") {
    const auto report = spectral_report(named_graph(NamedKind::complete, 6));
    CHECK(report.degree_d == 5);
    CHECK(close(report.kappa_tilde, 1.0));
    CHECK(report.ramanujan);
    CHECK(report.diameter == 1);
    CHECK(close(report.cheeger_lower, 3.0));  // (5 - (-1))/2
}

TEST_CASE("report fields are mutually consistent on petersen") {
    const auto report = spectral_report(named_graph(NamedKind::petersen, 10));
    CHECK(report.degree_d == 3);
    CHECK(close(report.lambda_second, 1.0));
    CHECK(close(report.lambda_nontrivial_abs, 2.0));
    CHECK(close(report.kappa_tilde, (3.0 + 2.0) / (3.0 - 1.0)));
    CHECK(close(report.kappa_bound, kappa_upper_bound(3, 2.0)));
    CHECK(report.kappa_tilde <= report.kappa_bound + 1e-9);
    CHECK(report.ramanujan);
    CHECK(report.diameter == 2);
}

}  // TEST_SUITE
