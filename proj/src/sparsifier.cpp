#include "expandopt/sparsifier.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Householder>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace expandopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Orthonormal basis of the complement of the all-ones direction, n x (n-1).
Eigen::MatrixXd ones_complement_basis(int n) {
    Eigen::MatrixXd ones = Eigen::MatrixXd::Constant(n, 1, 1.0 / std::sqrt(double(n)));
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    return q.rightCols(n - 1);
}

}  // namespace

std::vector<Eigen::VectorXd> edge_vectors(const Graph& g) {
    if (!is_connected(g)) throw std::invalid_argument("edge_vectors: graph is disconnected");
    const int n = g.vertex_count();
    const Eigen::MatrixXd l = laplacian(g);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l);
    if (solver.info() != Eigen::Success) throw std::runtime_error("edge_vectors: eigensolver failed");
    const auto& lam = solver.eigenvalues();
    const auto& vec = solver.eigenvectors();
    Eigen::VectorXd inv_sqrt(n);
    for (int i = 0; i < n; ++i) inv_sqrt(i) = lam(i) > 1e-9 * lam(n - 1) ? 1.0 / std::sqrt(lam(i)) : 0.0;
    const Eigen::MatrixXd sqrt_pinv = vec * inv_sqrt.asDiagonal() * vec.transpose();

    std::vector<Eigen::VectorXd> vectors;
    vectors.reserve(g.edges().size());
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : g.edges()) {
        Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
        b(e.u) = 1.0;
        b(e.v) = -1.0;
        Eigen::VectorXd v = std::sqrt(e.w) * (sqrt_pinv * b);
        sum += v * v.transpose();
        vectors.push_back(std::move(v));
    }
    const Eigen::MatrixXd projection =
        Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / double(n));
    if ((sum - projection).cwiseAbs().maxCoeff() > 1e-8)
        throw std::runtime_error("edge_vectors: sum v v^T does not reproduce the projection onto ones-complement");
    return vectors;
}

BarrierPotentials barrier_potentials(const Eigen::MatrixXd& a, double u, double l) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    const auto& lam = solver.eigenvalues();
    if (lam(0) <= l || lam(lam.size() - 1) >= u)
        throw std::runtime_error("barrier breach: spectrum [" + std::to_string(lam(0)) + ", " +
                                 std::to_string(lam(lam.size() - 1)) + "] not inside (" + std::to_string(l) +
                                 ", " + std::to_string(u) + ")");
    double upper = 0.0, lower = 0.0;
    for (int i = 0; i < lam.size(); ++i) {
        upper += 1.0 / (u - lam(i));
        lower += 1.0 / (lam(i) - l);
    }
    return {upper, lower};
}

ShiftQuotas shift_quotas(const Eigen::MatrixXd& a, const Eigen::VectorXd& v, double u, double l,
                         double delta_u, double delta_l) {
    if (delta_u <= 0.0 || delta_l <= 0.0) throw std::invalid_argument("shift_quotas: shifts must be positive");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    const auto& lam = solver.eigenvalues();
    const int n = static_cast<int>(lam.size());
    if (lam(0) <= l || lam(n - 1) >= u)
        throw std::runtime_error("shift_quotas: barrier breach");
    const Eigen::VectorXd y = solver.eigenvectors().transpose() * v;

    double phi_u = 0.0, phi_u_shifted = 0.0, phi_l = 0.0, phi_l_shifted = 0.0;
    double quad_u1 = 0.0, quad_u2 = 0.0, quad_l1 = 0.0, quad_l2 = 0.0;
    const double us = u + delta_u;
    const double ls = l + delta_l;
    for (int i = 0; i < n; ++i) {
        phi_u += 1.0 / (u - lam(i));
        phi_u_shifted += 1.0 / (us - lam(i));
        phi_l += 1.0 / (lam(i) - l);
        phi_l_shifted += 1.0 / (lam(i) - ls);
        const double y2 = y(i) * y(i);
        quad_u1 += y2 / ((us - lam(i)) * (us - lam(i)));
        quad_u2 += y2 / (us - lam(i));
        quad_l1 += y2 / ((lam(i) - ls) * (lam(i) - ls));
        quad_l2 += y2 / (lam(i) - ls);
    }
    const double dec_u = phi_u - phi_u_shifted;
    const double dec_l = phi_l_shifted - phi_l;
    if (dec_u <= 0.0 || dec_l <= 0.0)
        throw std::runtime_error("shift_quotas: potential decrement vanished");
    return {quad_u1 / dec_u + quad_u2, quad_l1 / dec_l - quad_l2};
}

double sparsifier_ratio_bound(int d) {
    const double s = std::sqrt(double(d));
    return (d + 1 + 2 * s) / (d + 1 - 2 * s);
}

Graph bss_sparsify(const Graph& g, const SparsifierParams& params) {
    const int n = g.vertex_count();
    const int d = params.d;
    if (d <= 1) throw std::invalid_argument("bss_sparsify: requires d > 1");
    if (!is_connected(g)) throw std::invalid_argument("bss_sparsify: graph is disconnected");
    if (n < 2) throw std::invalid_argument("bss_sparsify: requires n >= 2");
    const int m_edges = g.edge_count();
    if (!params.mu.empty() && static_cast<int>(params.mu.size()) != m_edges)
        throw std::invalid_argument("bss_sparsify: mu must cover exactly the edge set");

    const auto vectors = edge_vectors(g);

    // Work in an orthonormal basis of the ones-complement: the edge vectors
    // span an m = n-1 dimensional space where they resolve the identity.
    // The accumulated matrix there has exactly the generalized eigenvalues
    // of (L_H, L_G).
    const int m = n - 1;
    const Eigen::MatrixXd basis = ones_complement_basis(n);
    std::vector<Eigen::VectorXd> reduced;
    reduced.reserve(m_edges);
    for (const auto& v : vectors) reduced.push_back(basis.transpose() * v);

    const double sqrt_d = std::sqrt(double(d));
    const double eps_u = (sqrt_d - 1.0) / (d + sqrt_d);
    const double eps_l = 1.0 / sqrt_d;
    double u = m / eps_u;
    double l = -m / eps_l;
    const double delta_u = (sqrt_d + 1.0) / (sqrt_d - 1.0);
    const double delta_l = 1.0;

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    std::vector<double> s(m_edges, 0.0);
    const long long rounds = 1LL * d * (n - 1);

    for (long long round = 0; round < rounds; ++round) {
        // Barrier feasibility is asserted every round, not just at the end.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
        const auto& lam = solver.eigenvalues();
        if (lam(0) <= l || lam(m - 1) >= u)
            throw std::runtime_error("bss_sparsify: barrier breach at round " + std::to_string(round) +
                                     " (spectrum [" + std::to_string(lam(0)) + ", " + std::to_string(lam(m - 1)) +
                                     "], barriers (" + std::to_string(l) + ", " + std::to_string(u) + "))");
        double phi_u = 0.0, phi_u_shifted = 0.0, phi_l = 0.0, phi_l_shifted = 0.0;
        const double us = u + delta_u;
        const double ls = l + delta_l;
        for (int i = 0; i < m; ++i) {
            phi_u += 1.0 / (u - lam(i));
            phi_u_shifted += 1.0 / (us - lam(i));
            phi_l += 1.0 / (lam(i) - l);
            phi_l_shifted += 1.0 / (lam(i) - ls);
        }
        const double dec_u = phi_u - phi_u_shifted;
        const double dec_l = phi_l_shifted - phi_l;

        int best = -1;
        double best_upper = 0.0, best_lower = 0.0;
        for (int e = 0; e < m_edges; ++e) {
            const double cost = params.mu.empty() ? 1.0 : params.mu[e];
            if (cost == kInf) continue;  // blocked edge
            if (best >= 0) {
                const double best_cost = params.mu.empty() ? 1.0 : params.mu[best];
                if (cost >= best_cost) continue;  // argmin with smallest-id tie-break
            }
            const Eigen::VectorXd y = solver.eigenvectors().transpose() * reduced[e];
            if (y.squaredNorm() < 1e-14) continue;  // zero-weight edge contributes nothing
            double quad_u1 = 0.0, quad_u2 = 0.0, quad_l1 = 0.0, quad_l2 = 0.0;
            for (int i = 0; i < m; ++i) {
                const double y2 = y(i) * y(i);
                quad_u1 += y2 / ((us - lam(i)) * (us - lam(i)));
                quad_u2 += y2 / (us - lam(i));
                quad_l1 += y2 / ((lam(i) - ls) * (lam(i) - ls));
                quad_l2 += y2 / (lam(i) - ls);
            }
            const double upper = quad_u1 / dec_u + quad_u2;
            const double lower = quad_l1 / dec_l - quad_l2;
            if (lower - upper >= -params.tolerance) {
                best = e;
                best_upper = upper;
                best_lower = lower;
            }
        }
        if (best < 0)
            throw std::runtime_error("bss_sparsify: no feasible edge at round " + std::to_string(round) +
                                     " (barriers (" + std::to_string(l) + ", " + std::to_string(u) + "))");
        // 1/s taken at the midpoint of [upper, lower].
        const double step = 2.0 / (best_upper + best_lower);
        a += step * reduced[best] * reduced[best].transpose();
        s[best] += step;
        u += delta_u;
        l += delta_l;
    }

    // Rescale so the smallest generalized eigenvalue of (L_H, L_G) equals 1.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> final_solver(a, Eigen::EigenvaluesOnly);
    const double lam_min = final_solver.eigenvalues()(0);
    if (lam_min <= 0.0) throw std::runtime_error("bss_sparsify: accumulated matrix is singular");
    const double rescale = 1.0 / lam_min;

    std::vector<Edge> picked;
    for (int e = 0; e < m_edges; ++e)
        if (s[e] > 0.0) {
            Edge edge = g.edges()[e];
            edge.w = s[e] * g.edges()[e].w * rescale;
            picked.push_back(edge);
        }
    return Graph(n, std::move(picked));
}

PencilRange pencil_range(const Graph& g, const Graph& h) {
    if (g.vertex_count() != h.vertex_count())
        throw std::invalid_argument("pencil_range: vertex sets differ");
    if (!is_connected(g) || !is_connected(h))
        throw std::invalid_argument("pencil_range: both graphs must be connected");
    const int n = g.vertex_count();
    const Eigen::MatrixXd basis = ones_complement_basis(n);
    const Eigen::MatrixXd ag = basis.transpose() * laplacian(g) * basis;
    const Eigen::MatrixXd ah = basis.transpose() * laplacian(h) * basis;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(ah, ag, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
    if (solver.info() != Eigen::Success) throw std::runtime_error("pencil_range: generalized eigensolver failed");
    const auto& lam = solver.eigenvalues();
    return {lam(0), lam(lam.size() - 1)};
}

bool loewner_sandwich_check(const Graph& g, const Graph& h, double ratio) {
    const auto range = pencil_range(g, h);
    return range.min >= 1.0 - 1e-8 && range.max <= ratio + 1e-8;
}

}  // namespace expandopt
