#pragma once

#include <Eigen/Core>
#include <vector>

#include "expandopt/graph.hpp"

namespace expandopt {

/// Full spectrum of a symmetric matrix, ascending. Deterministic dense
/// solve (Householder tridiagonalization + implicit-shift QR).
/// Throws if max |M - M^T| exceeds 1e-10.
std::vector<double> symmetric_spectrum(const Eigen::MatrixXd& m);

/// kappa_tilde = lambda_max(L_{G,w}) / (smallest Laplacian eigenvalue above
/// the kernel). Requires a connected graph.
double reduced_condition_number(const Graph& g);

struct AdjacencyExtremes {
    double lambda_second;         // second largest adjacency eigenvalue
    double lambda_nontrivial_abs; // max |lambda| with one copy of d removed
};

/// Requires a connected d-regular graph; verifies the principal eigenvalue
/// equals d within 1e-6.
AdjacencyExtremes adjacency_extremes(const Graph& g);

/// (d + lambda1) / (d - lambda1); +infinity when lambda1 == d.
/// Requires 0 <= lambda1 <= d.
double kappa_upper_bound(int d, double lambda1);

struct RamanujanVerdict {
    bool ramanujan;
    double margin;  // 2*sqrt(d-1) - lambda_nontrivial_abs
};

/// Ramanujan test: max non-trivial |lambda| <= 2*sqrt(d-1) + 1e-8, with the
/// -d copy also excluded for bipartite graphs (standard convention).
/// Requires connected d-regular, d >= 3.
RamanujanVerdict ramanujan_check(const Graph& g);

/// Alon-Boppana lower bound 2*sqrt(d-1) - (2*sqrt(d-1) - 1)/floor(D/2).
/// Requires d >= 2 and diameter >= 2.
double alon_boppana(int d, int diam);

struct CheegerBounds {
    double lower;  // (d - lambda1)/2
    double upper;  // sqrt(2 d (d - lambda1))
};

/// Requires lambda1 <= d (negative values are fine: complete graphs have
/// lambda_second = -1).
CheegerBounds cheeger_bounds(int d, double lambda1);

/// Exhaustive h(G) = min over nonempty S, |S| <= n/2, of cut(S)/|S|.
/// Refused for n > 20.
double cheeger_bruteforce(const Graph& g);

struct SpectralReport {
    int degree_d = 0;
    double lambda_second = 0.0;
    double lambda_nontrivial_abs = 0.0;
    double kappa_tilde = 0.0;
    double kappa_bound = 0.0;  // may be +infinity
    bool ramanujan = false;
    double ramanujan_margin = 0.0;
    double alon_boppana_lower = 0.0;
    double cheeger_lower = 0.0;
    double cheeger_upper = 0.0;
    int diameter = 0;
};

/// Aggregates the spectral analytics for a connected regular graph.
SpectralReport spectral_report(const Graph& g);

}  // namespace expandopt
