#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

namespace expandopt {

/// Undirected weighted edge, canonical form u < v.
struct Edge {
    int u = 0;
    int v = 0;
    double w = 1.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple undirected graph with optional nonnegative edge weights.
///
/// Vertices are dense 0-based ids. Edges are stored sorted by (u, v) with
/// u < v; duplicates in the input collapse when their weights agree and are
/// rejected otherwise. Immutable after construction, safe to share across
/// threads.
class Graph {
public:
    /// Validates, canonicalizes and deduplicates the edge list.
    /// Throws std::invalid_argument on out-of-range endpoints, self-loops,
    /// negative weights, or duplicate edges with conflicting weights.
    Graph(int n, std::vector<Edge> edges);

    int vertex_count() const noexcept { return n_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }

    /// Neighbor lists (unordered pairs expanded both ways), built once.
    const std::vector<std::vector<int>>& neighbors() const noexcept { return adj_; }

    std::vector<int> degrees() const;

    /// Common degree if the graph is regular, nullopt otherwise.
    std::optional<int> regular_degree() const;

    /// True when every edge weight is exactly 1.
    bool unit_weights() const;

    /// Index of edge (u, v) in edges(), or -1 when absent.
    int edge_index(int u, int v) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

/// Adjacency, incidence and Laplacian views of one graph.
struct GraphMatrices {
    Eigen::MatrixXd adjacency;  // n x n, symmetric, weighted
    Eigen::MatrixXd incidence;  // |E| x n, row e: +1 at min endpoint, -1 at max
    Eigen::MatrixXd laplacian;  // B^T Diag(w) B = D - A for unit weights
};

Eigen::MatrixXd adjacency_matrix(const Graph& g);
Eigen::MatrixXd incidence_matrix(const Graph& g);
Eigen::MatrixXd laplacian(const Graph& g);
GraphMatrices graph_matrices(const Graph& g);

/// Breadth-first reachability from vertex 0 covers all n vertices.
bool is_connected(const Graph& g);

/// Two-colorability (ignores weights).
bool is_bipartite(const Graph& g);

/// Max shortest-path length over all pairs. Throws on disconnected input.
int diameter(const Graph& g);

}  // namespace expandopt
