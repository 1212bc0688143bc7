#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "expandopt/graph.hpp"

namespace expandopt {

/// Mixing matrix W = I - 2 / ((1 + theta1) * lambda_max(L)) * L_{G,w}.
/// Symmetric, row sums 1, nonzero pattern = graph edges + diagonal,
/// spectrum inside ((theta1 - 1)/(theta1 + 1), 1].
struct MixingMatrix {
    Eigen::MatrixXd w_matrix;
    double theta1 = 0.0;
    double source_lambda_max = 0.0;  // lambda_max(L) used in the formula
};

/// Builds W from a connected graph. Requires 0 < theta1 < 1.
MixingMatrix mixing_matrix(const Graph& g, double theta1);

/// Diagnostic residuals for a candidate mixing matrix. Never throws;
/// pass reflects only the hard invariants (symmetry, row sums, spectral
/// range, sparsity pattern). Entry nonnegativity is reported separately
/// since the construction can violate it on some weighted graphs.
struct MixingValidation {
    double max_row_sum_deviation = 0.0;
    double max_asymmetry = 0.0;
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    double spectral_floor = 0.0;  // (theta1 - 1)/(theta1 + 1)
    bool entries_in_range = true;   // 0 <= W_ij <= 1 everywhere
    bool diagonal_in_range = true;  // diagonal in (0, 1]
    bool sparsity_ok = true;        // off-diagonal nonzeros only on edges
    bool pass = false;
};

MixingValidation validate_mixing(const MixingMatrix& m, const Graph& g);

/// Sparse view for simulation (one W-multiplication per communication round).
Eigen::SparseMatrix<double> sparse_mixing(const MixingMatrix& m, const Graph& g);

}  // namespace expandopt
