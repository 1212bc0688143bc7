#include "expandopt/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace expandopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int require_regular(const Graph& g, const char* op) {
    const auto d = g.regular_degree();
    if (!d) throw std::invalid_argument(std::string(op) + ": graph is not regular");
    return *d;
}

void require_connected(const Graph& g, const char* op) {
    if (!is_connected(g)) throw std::invalid_argument(std::string(op) + ": graph is disconnected");
}

}  // namespace

std::vector<double> symmetric_spectrum(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("symmetric_spectrum: matrix is not square");
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10)
        throw std::invalid_argument("symmetric_spectrum: asymmetry " + std::to_string(asym) + " exceeds 1e-10");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw std::runtime_error("symmetric_spectrum: eigensolver failed");
    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

double reduced_condition_number(const Graph& g) {
    require_connected(g, "reduced_condition_number");
    const auto spectrum = symmetric_spectrum(laplacian(g));
    if (spectrum.size() < 2)
        throw std::invalid_argument("reduced_condition_number: need at least 2 vertices");
    return spectrum.back() / spectrum[1];
}

AdjacencyExtremes adjacency_extremes(const Graph& g) {
    require_connected(g, "adjacency_extremes");
    const int d = require_regular(g, "adjacency_extremes");
    const auto spectrum = symmetric_spectrum(adjacency_matrix(g));
    const int n = static_cast<int>(spectrum.size());
    if (n < 2) throw std::invalid_argument("adjacency_extremes: need at least 2 vertices");
    if (std::abs(spectrum[n - 1] - d) > 1e-6)
        throw std::runtime_error("adjacency_extremes: principal eigenvalue " + std::to_string(spectrum[n - 1]) +
                                 " differs from degree " + std::to_string(d));
    const double lambda_second = spectrum[n - 2];
    const double lambda_abs = std::max(std::abs(spectrum[0]), std::abs(lambda_second));
    return {lambda_second, lambda_abs};
}

double kappa_upper_bound(int d, double lambda1) {
    if (lambda1 < 0.0) throw std::invalid_argument("kappa_upper_bound: lambda1 must be >= 0");
    if (lambda1 > d + 1e-9 * std::max(1.0, double(d)))
        throw std::invalid_argument("kappa_upper_bound: lambda1 exceeds degree d");
    if (d - lambda1 <= 1e-9 * std::max(1.0, double(d))) return kInf;
    return (d + lambda1) / (d - lambda1);
}

RamanujanVerdict ramanujan_check(const Graph& g) {
    require_connected(g, "ramanujan_check");
    const int d = require_regular(g, "ramanujan_check");
    if (d < 3) throw std::invalid_argument("ramanujan_check: requires degree >= 3, got " + std::to_string(d));
    const auto spectrum = symmetric_spectrum(adjacency_matrix(g));
    const int n = static_cast<int>(spectrum.size());
    if (std::abs(spectrum[n - 1] - d) > 1e-6)
        throw std::runtime_error("ramanujan_check: principal eigenvalue differs from degree");
    // One copy of +d always excluded; for bipartite graphs the -d copy too.
    int lo = 0;
    if (is_bipartite(g)) {
        if (std::abs(spectrum[0] + d) > 1e-6)
            throw std::runtime_error("ramanujan_check: bipartite graph without -d eigenvalue");
        lo = 1;
    }
    const double lambda = std::max(std::abs(spectrum[lo]), std::abs(spectrum[n - 2]));
    const double threshold = 2.0 * std::sqrt(double(d) - 1.0);
    return {lambda <= threshold + 1e-8, threshold - lambda};
}

double alon_boppana(int d, int diam) {
    if (d < 2) throw std::invalid_argument("alon_boppana: requires d >= 2");
    if (diam / 2 < 1) throw std::invalid_argument("alon_boppana: requires diameter >= 2");
    const double root = 2.0 * std::sqrt(double(d) - 1.0);
    return root - (root - 1.0) / double(diam / 2);
}

CheegerBounds cheeger_bounds(int d, double lambda1) {
    // lambda_second of a regular graph can be negative (complete graphs),
    // and the inequality pair stays valid there; only lambda1 > d is out.
    if (lambda1 > d + 1e-9 * std::max(1.0, double(d)))
        throw std::invalid_argument("cheeger_bounds: need lambda1 <= d");
    const double gap = std::max(0.0, double(d) - lambda1);
    return {0.5 * gap, std::sqrt(2.0 * d * gap)};
}

double cheeger_bruteforce(const Graph& g) {
    const int n = g.vertex_count();
    if (n > 20) throw std::invalid_argument("cheeger_bruteforce: refused for n > 20");
    require_connected(g, "cheeger_bruteforce");
    const auto& edges = g.edges();
    double best = kInf;
    const std::uint32_t all = (n == 32) ? 0xFFFFFFFFu : ((1u << n) - 1);
    for (std::uint32_t mask = 1; mask < all; ++mask) {
        const int size = __builtin_popcount(mask);
        if (2 * size > n) continue;
        int cut = 0;
        for (const auto& e : edges)
            cut += (((mask >> e.u) ^ (mask >> e.v)) & 1u);
        best = std::min(best, double(cut) / double(size));
    }
    return best;
}

SpectralReport spectral_report(const Graph& g) {
    require_connected(g, "spectral_report");
    const int d = require_regular(g, "spectral_report");
    SpectralReport report;
    report.degree_d = d;
    report.kappa_tilde = reduced_condition_number(g);
    const auto extremes = adjacency_extremes(g);
    report.lambda_second = extremes.lambda_second;
    report.lambda_nontrivial_abs = extremes.lambda_nontrivial_abs;
    report.kappa_bound = kappa_upper_bound(d, std::min(double(d), extremes.lambda_nontrivial_abs));
    const auto verdict = ramanujan_check(g);
    report.ramanujan = verdict.ramanujan;
    report.ramanujan_margin = verdict.margin;
    report.diameter = diameter(g);
    report.alon_boppana_lower =
        (report.diameter >= 2) ? alon_boppana(d, report.diameter) : -kInf;
    const auto cheeger = cheeger_bounds(d, std::min(double(d), extremes.lambda_second));
    report.cheeger_lower = cheeger.lower;
    report.cheeger_upper = cheeger.upper;
    return report;
}

}  // namespace expandopt
