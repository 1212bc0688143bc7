#include "expandopt/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>

namespace expandopt {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
    if (n < 1) throw std::invalid_argument("graph: vertex count must be >= 1, got " + std::to_string(n));
    for (auto& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw std::invalid_argument("graph: endpoint out of range: (" + std::to_string(e.u) + ", " +
                                        std::to_string(e.v) + ") with n = " + std::to_string(n));
        if (e.u == e.v)
            throw std::invalid_argument("graph: self-loop at vertex " + std::to_string(e.u));
        if (e.w < 0.0 || !std::isfinite(e.w))
            throw std::invalid_argument("graph: weight of edge (" + std::to_string(e.u) + ", " +
                                        std::to_string(e.v) + ") must be finite and >= 0");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    edges_.reserve(edges.size());
    for (const auto& e : edges) {
        if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v) {
            if (edges_.back().w != e.w)
                throw std::invalid_argument("graph: duplicate edge (" + std::to_string(e.u) + ", " +
                                            std::to_string(e.v) + ") with conflicting weights");
            continue;  // exact duplicate collapses
        }
        edges_.push_back(e);
    }
    adj_.resize(n_);
    for (const auto& e : edges_) {
        adj_[e.u].push_back(e.v);
        adj_[e.v].push_back(e.u);
    }
}

std::vector<int> Graph::degrees() const {
    std::vector<int> deg(n_);
    for (int i = 0; i < n_; ++i) deg[i] = static_cast<int>(adj_[i].size());
    return deg;
}

std::optional<int> Graph::regular_degree() const {
    const auto deg = degrees();
    for (int d : deg)
        if (d != deg[0]) return std::nullopt;
    return deg[0];
}

bool Graph::unit_weights() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.w == 1.0; });
}

int Graph::edge_index(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{u, v},
                               [](const Edge& e, const std::pair<int, int>& key) {
                                   return std::tie(e.u, e.v) < std::tie(key.first, key.second);
                               });
    if (it == edges_.end() || it->u != u || it->v != v) return -1;
    return static_cast<int>(it - edges_.begin());
}

Eigen::MatrixXd adjacency_matrix(const Graph& g) {
    const int n = g.vertex_count();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges()) {
        a(e.u, e.v) = e.w;
        a(e.v, e.u) = e.w;
    }
    return a;
}

Eigen::MatrixXd incidence_matrix(const Graph& g) {
    const int n = g.vertex_count();
    const int m = g.edge_count();
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, n);
    // Row for edge (i, j), i < j: +1 at i, -1 at j.
    for (int e = 0; e < m; ++e) {
        b(e, g.edges()[e].u) = 1.0;
        b(e, g.edges()[e].v) = -1.0;
    }
    return b;
}

Eigen::MatrixXd laplacian(const Graph& g) {
    const int n = g.vertex_count();
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges()) {
        l(e.u, e.u) += e.w;
        l(e.v, e.v) += e.w;
        l(e.u, e.v) -= e.w;
        l(e.v, e.u) -= e.w;
    }
    return l;
}

GraphMatrices graph_matrices(const Graph& g) {
    return {adjacency_matrix(g), incidence_matrix(g), laplacian(g)};
}

bool is_connected(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : g.neighbors()[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == n;
}

bool is_bipartite(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> color(n, -1);
    for (int s = 0; s < n; ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : g.neighbors()[u]) {
                if (color[v] == -1) {
                    color[v] = 1 - color[u];
                    q.push(v);
                } else if (color[v] == color[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

int diameter(const Graph& g) {
    const int n = g.vertex_count();
    if (!is_connected(g)) throw std::invalid_argument("diameter: graph is disconnected (infinite diameter)");
    int diam = 0;
    std::vector<int> dist(n);
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : g.neighbors()[u]) {
                if (dist[v] == -1) {
                    dist[v] = dist[u] + 1;
                    diam = std::max(diam, dist[v]);
                    q.push(v);
                }
            }
        }
    }
    return diam;
}

}  // namespace expandopt
