#pragma once

#include <Eigen/Core>
#include <vector>

#include "expandopt/graph.hpp"

namespace expandopt {

/// Columns of V = sqrt(L_G^+) B^T sqrt(w), one n-vector per edge in canonical
/// order. For a connected graph, sum_e v_e v_e^T is the projection onto the
/// complement of the all-ones direction (verified within 1e-8).
std::vector<Eigen::VectorXd> edge_vectors(const Graph& g);

struct BarrierPotentials {
    double upper;  // tr (uI - A)^-1
    double lower;  // tr (A - lI)^-1
};

/// Requires spec(A) strictly inside (l, u); throws on a barrier breach.
BarrierPotentials barrier_potentials(const Eigen::MatrixXd& a, double u, double l);

struct ShiftQuotas {
    double upper;  // U^{dU}(A, v)
    double lower;  // L_{dL}(A, v)
};

/// The two resolvent/squared-resolvent quadratic forms normalized by the
/// barrier potential decrements. Requires barrier feasibility and positive
/// shifts; throws when a potential decrement vanishes.
ShiftQuotas shift_quotas(const Eigen::MatrixXd& a, const Eigen::VectorXd& v, double u, double l,
                         double delta_u, double delta_l);

struct SparsifierParams {
    int d = 2;                 // target parameter, > 1; output has <= d(n-1) edges
    std::vector<double> mu;    // communication cost per canonical edge id;
                               // empty = uniform 1; +infinity marks a blocked edge
    double tolerance = 1e-9;   // slack for feasibility comparisons
};

/// Twice-Ramanujan sparsifier via the barrier-function selection rule with
/// cost-aware argmin (ties broken by smallest canonical edge id). The output
/// weights are rescaled so the smallest generalized eigenvalue of
/// (L_H, L_G) on the complement of ones equals 1, which puts the sandwich
/// L_G <= L_H <= ratio * L_G in its literal form.
Graph bss_sparsify(const Graph& g, const SparsifierParams& params);

/// (d + 1 + 2 sqrt(d)) / (d + 1 - 2 sqrt(d)).
double sparsifier_ratio_bound(int d);

struct PencilRange {
    double min;
    double max;
};

/// Generalized eigenvalue range of (L_H, L_G) restricted to the complement
/// of the all-ones direction; independent dense generalized eigensolve.
PencilRange pencil_range(const Graph& g, const Graph& h);

/// True iff all generalized eigenvalues lie in [1 - 1e-8, ratio + 1e-8].
bool loewner_sandwich_check(const Graph& g, const Graph& h, double ratio);

}  // namespace expandopt
