#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "expandopt/constructors.hpp"
#include "expandopt/graph.hpp"
#include "expandopt/graph_io.hpp"
#include "expandopt/rng.hpp"

using namespace expandopt;

namespace {

Graph triangle() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

// Random connected small graph: spanning tree plus extra edges, random weights.
Graph random_weighted_graph(SplitMix64& rng, int n) {
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) {
        int u = static_cast<int>(rng.next_below(v));
        edges.push_back({u, v, 0.25 + rng.next_double()});
    }
    const int extra = static_cast<int>(rng.next_below(n));
    for (int k = 0; k < extra; ++k) {
        int u = static_cast<int>(rng.next_below(n));
        int v = static_cast<int>(rng.next_below(n));
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        bool dup = false;
        for (const auto& e : edges) dup |= (e.u == u && e.v == v);
        if (!dup) edges.push_back({u, v, 0.25 + rng.next_double()});
    }
    return Graph(n, edges);
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("triangle builds with three canonical edges") {
    const Graph g = triangle();
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 3);
    CHECK(g.regular_degree() == 2);
    CHECK(g.edges()[0] == Edge{0, 1, 1.0});
    CHECK(g.edges()[2] == Edge{1, 2, 1.0});
}

TEST_CASE("self-loop, range and weight violations are rejected") {
    CHECK_THROWS_AS(Graph(2, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{-1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{0, 1, -0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(0, {}), std::invalid_argument);
}

TEST_CASE("reversed duplicates collapse, conflicting weights do not") {
    const Graph g(4, {{0, 1}, {1, 0}});
    CHECK(g.edge_count() == 1);
    CHECK_THROWS_AS(Graph(4, {{0, 1, 1.0}, {1, 0, 2.0}}), std::invalid_argument);
}

TEST_CASE("laplacian of the triangle is D - A") {
    const auto l = laplacian(triangle());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(l(i, j) == (i == j ? 2.0 : -1.0));
}

TEST_CASE("laplacian of a single weighted edge") {
    const auto l = laplacian(Graph(2, {{0, 1, 3.0}}));
    CHECK(l(0, 0) == 3.0);
    CHECK(l(0, 1) == -3.0);
    CHECK(l(1, 0) == -3.0);
    CHECK(l(1, 1) == 3.0);
}

TEST_CASE("incidence row carries +1 at the smaller endpoint") {
    const auto b = incidence_matrix(Graph(2, {{0, 1}}));
    CHECK(b.rows() == 1);
    CHECK(b(0, 0) == 1.0);
    CHECK(b(0, 1) == -1.0);
}

TEST_CASE("empty edge set gives a 0 x n incidence matrix") {
    const auto b = incidence_matrix(Graph(3, {}));
    CHECK(b.rows() == 0);
    CHECK(b.cols() == 3);
}

TEST_CASE("B^T Diag(w) B equals the laplacian on random graphs") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = random_weighted_graph(rng, 2 + static_cast<int>(rng.next_below(9)));
        const auto m = graph_matrices(g);
        Eigen::VectorXd w(g.edge_count());
        for (int e = 0; e < g.edge_count(); ++e) w(e) = g.edges()[e].w;
        const Eigen::MatrixXd rebuilt = m.incidence.transpose() * w.asDiagonal() * m.incidence;
        CHECK((rebuilt - m.laplacian).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((m.laplacian - m.laplacian.transpose()).cwiseAbs().maxCoeff() == 0.0);
        CHECK(m.laplacian.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("unit-weight laplacian rows sum to zero exactly") {
    const auto l = laplacian(named_graph(NamedKind::petersen, 10));
    CHECK(l.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("connectivity") {
    CHECK(is_connected(triangle()));
    CHECK_FALSE(is_connected(Graph(4, {{0, 1}, {2, 3}})));
    CHECK(is_connected(Graph(1, {})));
}

TEST_CASE("diameter") {
    CHECK(diameter(named_graph(NamedKind::complete, 5)) == 1);
    CHECK(diameter(named_graph(NamedKind::path, 4)) == 3);
    CHECK(diameter(named_graph(NamedKind::cycle, 6)) == 3);
    CHECK_THROWS_AS(diameter(Graph(4, {{0, 1}, {2, 3}})), std::invalid_argument);
}

TEST_CASE("bipartiteness") {
    CHECK(is_bipartite(named_graph(NamedKind::cycle, 6)));
    CHECK_FALSE(is_bipartite(triangle()));
}

TEST_CASE("graph files round-trip exactly") {
    SplitMix64 rng(99);
    const auto path = std::filesystem::temp_directory_path() / "expandopt_roundtrip.json";
    for (int trial = 0; trial < 25; ++trial) {
        const Graph g = random_weighted_graph(rng, 2 + static_cast<int>(rng.next_below(12)));
        write_graph(g, path.string());
        CHECK(read_graph(path.string()) == g);
    }
    std::filesystem::remove(path);
}

TEST_CASE("weighted path file preserves weights exactly") {
    const Graph g(3, {{0, 1, 0.1}, {1, 2, 1.0 / 3.0}});
    const auto path = std::filesystem::temp_directory_path() / "expandopt_weights.json";
    write_graph(g, path.string());
    const Graph back = read_graph(path.string());
    CHECK(back.edges()[0].w == 0.1);
    CHECK(back.edges()[1].w == 1.0 / 3.0);
    std::filesystem::remove(path);
}

TEST_CASE("malformed graph files are rejected") {
    const auto path = std::filesystem::temp_directory_path() / "expandopt_bad.json";
    auto write_text = [&](const std::string& text) {
        std::ofstream out(path);
        out << text;
    };
    write_text("{\"n\": 3, \"edges\": [[0, 1");  // truncated
    CHECK_THROWS_AS(read_graph(path.string()), std::runtime_error);
    write_text("{\"n\": 3, \"edges\": [[0, 1]], \"extra\": 1}");
    CHECK_THROWS_AS(read_graph(path.string()), std::runtime_error);
    write_text("{\"edges\": []}");
    CHECK_THROWS_AS(read_graph(path.string()), std::runtime_error);
    write_text("{\"n\": 2, \"edges\": [[0]]}");
    CHECK_THROWS_AS(read_graph(path.string()), std::runtime_error);
    CHECK_THROWS_AS(read_graph("/nonexistent/nowhere.json"), std::runtime_error);
    std::filesystem::remove(path);
}

}  // TEST_SUITE
