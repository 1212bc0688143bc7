#include "expandopt/mixing.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "expandopt/spectral.hpp"

namespace expandopt {

MixingMatrix mixing_matrix(const Graph& g, double theta1) {
    if (!(theta1 > 0.0 && theta1 < 1.0))
        throw std::invalid_argument("mixing_matrix: theta1 must lie in (0, 1)");
    if (!is_connected(g)) throw std::invalid_argument("mixing_matrix: graph is disconnected");
    const Eigen::MatrixXd l = laplacian(g);
    const auto spectrum = symmetric_spectrum(l);
    const double lambda_max = spectrum.back();
    if (lambda_max <= 0.0) throw std::invalid_argument("mixing_matrix: graph has no edges with positive weight");
    const double scale = 2.0 / ((1.0 + theta1) * lambda_max);
    MixingMatrix m;
    m.w_matrix = Eigen::MatrixXd::Identity(g.vertex_count(), g.vertex_count()) - scale * l;
    m.theta1 = theta1;
    m.source_lambda_max = lambda_max;
    return m;
}

MixingValidation validate_mixing(const MixingMatrix& m, const Graph& g) {
    const auto& w = m.w_matrix;
    const int n = g.vertex_count();
    MixingValidation v;
    v.spectral_floor = (m.theta1 - 1.0) / (m.theta1 + 1.0);
    if (w.rows() != n || w.cols() != n) {
        v.pass = false;
        v.sparsity_ok = false;
        return v;
    }
    v.max_row_sum_deviation = (w.rowwise().sum().array() - 1.0).abs().maxCoeff();
    v.max_asymmetry = (w - w.transpose()).cwiseAbs().maxCoeff();
    Eigen::MatrixXd sym = 0.5 * (w + w.transpose());
    const auto spectrum = symmetric_spectrum(sym);
    v.min_eigenvalue = spectrum.front();
    v.max_eigenvalue = spectrum.back();
    v.entries_in_range = (w.array() >= 0.0).all() && (w.array() <= 1.0).all();
    for (int i = 0; i < n; ++i)
        if (!(w(i, i) > 0.0 && w(i, i) <= 1.0 + 1e-12)) v.diagonal_in_range = false;
    for (int i = 0; i < n && v.sparsity_ok; ++i)
        for (int j = i + 1; j < n; ++j)
            if (w(i, j) != 0.0 && g.edge_index(i, j) < 0) {
                v.sparsity_ok = false;
                break;
            }
    v.pass = v.max_row_sum_deviation < 1e-10 && v.max_asymmetry < 1e-10 && v.sparsity_ok &&
             v.min_eigenvalue > v.spectral_floor - 1e-9 && v.max_eigenvalue <= 1.0 + 1e-10;
    return v;
}

Eigen::SparseMatrix<double> sparse_mixing(const MixingMatrix& m, const Graph& g) {
    const int n = g.vertex_count();
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(2 * g.edges().size() + n);
    for (int i = 0; i < n; ++i) entries.emplace_back(i, i, m.w_matrix(i, i));
    for (const auto& e : g.edges()) {
        entries.emplace_back(e.u, e.v, m.w_matrix(e.u, e.v));
        entries.emplace_back(e.v, e.u, m.w_matrix(e.v, e.u));
    }
    Eigen::SparseMatrix<double> w(n, n);
    w.setFromTriplets(entries.begin(), entries.end());
    return w;
}

}  // namespace expandopt
