#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expandopt/graph.hpp"
#include "expandopt/mixing.hpp"

namespace expandopt {

enum class ProblemKind { example1, example2, quadratic_consensus };

/// Decentralized problem instance over M agents holding data l = (l_1..l_M).
///
/// example1: f_i(x) = l_i x_i / (|x|_1 + eps) on R^M (P = M), non-convex.
/// example2: f_i(x) = indicator{x >= sqrt(|l_i|)} + x^2 on R (P = 1), split
///           into smooth s_i = x^2 and the prox-friendly indicator r_i.
/// quadratic_consensus: f_i(x) = (x - l_i)^2 / 2 on R (P = 1).
struct ProblemSpec {
    ProblemKind kind = ProblemKind::quadratic_consensus;
    std::vector<double> l;
    double epsilon_smooth = 1e-5;  // example1's eps
    int dimension = 1;             // P; example1 forces P = M, example2 P = 1

    static ProblemSpec make_example1(std::vector<double> l, double eps = 1e-5);
    static ProblemSpec make_example2(std::vector<double> l);
    static ProblemSpec make_quadratic_consensus(std::vector<double> l);
};

struct ValueGrad {
    double value;
    Eigen::VectorXd grad;
};

/// f_i and its (sub)gradient at one agent's local copy, sgn(0) = 0.
ValueGrad example1_value_and_grad(const Eigen::VectorXd& x_row, int i, const ProblemSpec& spec);

double example2_smooth_value(double x);
double example2_smooth_grad(double x);
/// prox of alpha * r_i: projection onto {x >= sqrt(|l_i|)} (alpha-independent).
double example2_prox(double y, int i, const ProblemSpec& spec);

/// min_x F(x) used by the delta_k series: the analytic infimum -max|l|/M for
/// example1, max|l| for example2, the value at the mean for the quadratic.
double analytic_optimum(const ProblemSpec& spec);

/// Data vector for experiments: seeded uniforms on [0, 1] whose largest entry
/// is then forced to 1.25 so the maximum is decisively unique.
std::vector<double> seeded_data_vector(int m, std::uint64_t seed);

struct TraceRecord {
    int iter;
    double delta;
    double cumulative_messages;
};

enum class StopReason { stopped, max_iters, diverged };

struct SimulationTrace {
    std::vector<TraceRecord> records;
    StopReason reason = StopReason::max_iters;
    int stop_index = 0;   // k0 for stopped; last iteration otherwise
    double alpha = 0.0;   // config echo
    double theta1 = 0.0;
    double tol = 0.0;
    std::uint64_t seed = 0;
    double per_round = 0.0;
    Eigen::MatrixXd final_x;
};

struct RunOptions {
    double alpha = 0.02;
    double tol = 1e-3;
    int max_iters = 100000;
    std::uint64_t seed = 0;                     // echoed into the trace
    std::optional<Eigen::MatrixXd> x0;          // default: all zeros
    std::optional<std::vector<double>> mu;      // per-edge cost; default uniform 1
};

/// EXTRA with W-tilde = (W+I)/2 as displayed; one W-multiplication (one
/// communication round) per iteration. delta_k = mean F_i(x^k) - min F; stops
/// at the first k0 >= 1 with |delta_k0 - delta_{k0-1}| < tol.
SimulationTrace extra_run(const Graph& g, const MixingMatrix& w, const ProblemSpec& spec,
                          const RunOptions& opts);

/// PG-EXTRA: half-step, prox, and the (W+I)/2 correction; delta_k uses the
/// smooth part only.
SimulationTrace pg_extra_run(const Graph& g, const MixingMatrix& w, const ProblemSpec& spec,
                             const RunOptions& opts);

struct CommCost {
    std::vector<double> mu;    // per canonical edge id
    double per_round;          // sum over edges of 2 * mu_e
    long long directed_count;  // 2 |E|
};

/// Uniform cost when mu is empty. Throws when mu does not cover the edge set.
CommCost comm_per_round(const Graph& g, const std::vector<double>& mu = {});

/// k0 * per_round; requires a trace that stopped.
double total_comm(const SimulationTrace& trace, const CommCost& cost);

struct SweepRow {
    int d = 0;
    std::string source;        // "lps(p,q)" or "random"
    double kappa_tilde = 0.0;
    int k0 = 0;
    double per_round = 0.0;
    double total = 0.0;
    std::string error;         // nonempty when this degree failed
};

struct SweepResult {
    std::vector<SweepRow> rows;  // sorted by total, failed rows last
    int argmin_d = 0;
};

/// Runs the problem over one generated topology per degree (LPS where an
/// exact construction exists, random regular otherwise) and ranks degrees by
/// total communication. Per-degree failures are annotated, not fatal.
SweepResult degree_sweep(int n, const std::vector<int>& degrees, ProblemKind kind, double alpha,
                         double theta1, double tol, int max_iters, std::uint64_t seed);

}  // namespace expandopt
