#include "expandopt/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "expandopt/constructors.hpp"
#include "expandopt/rng.hpp"
#include "expandopt/spectral.hpp"

namespace expandopt {

namespace {

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

void validate_spec(const ProblemSpec& spec, int m) {
    if (static_cast<int>(spec.l.size()) != m)
        throw std::invalid_argument("problem: data vector has " + std::to_string(spec.l.size()) +
                                    " entries for " + std::to_string(m) + " agents");
    if (spec.kind == ProblemKind::example1 && spec.dimension != m)
        throw std::invalid_argument("problem: example1 requires P = M");
    if (spec.kind != ProblemKind::example1 && spec.dimension != 1)
        throw std::invalid_argument("problem: this problem is one-dimensional");
    for (double v : spec.l)
        if (!std::isfinite(v)) throw std::invalid_argument("problem: non-finite data entry");
}

// Objective sum (1/M) sum_i F_i(x) of the delta_k series; smooth part only
// for example2.
double mean_objective(const Eigen::MatrixXd& x, const ProblemSpec& spec) {
    const int m = static_cast<int>(x.rows());
    double sum = 0.0;
    switch (spec.kind) {
        case ProblemKind::example1:
            for (int i = 0; i < m; ++i) {
                const double denom = x.row(i).cwiseAbs().sum() + spec.epsilon_smooth;
                sum += spec.l[i] * x(i, i) / denom;
            }
            break;
        case ProblemKind::example2:
            for (int i = 0; i < m; ++i) sum += example2_smooth_value(x(i, 0));
            break;
        case ProblemKind::quadratic_consensus:
            for (int i = 0; i < m; ++i) sum += 0.5 * (x(i, 0) - spec.l[i]) * (x(i, 0) - spec.l[i]);
            break;
    }
    return sum / m;
}

double delta_value(const Eigen::MatrixXd& x, const ProblemSpec& spec, double optimum) {
    const double gap = mean_objective(x, spec) - optimum;
    return spec.kind == ProblemKind::example2 ? std::abs(gap) : gap;
}

// Gradient of the smooth part, row i w.r.t. agent i's copy.
void gradient(const Eigen::MatrixXd& x, const ProblemSpec& spec, Eigen::MatrixXd& out) {
    const int m = static_cast<int>(x.rows());
    switch (spec.kind) {
        case ProblemKind::example1:
            for (int i = 0; i < m; ++i) {
                const auto vg = example1_value_and_grad(x.row(i).transpose(), i, spec);
                out.row(i) = vg.grad.transpose();
            }
            break;
        case ProblemKind::example2:
            out = 2.0 * x;
            break;
        case ProblemKind::quadratic_consensus:
            for (int i = 0; i < m; ++i) out(i, 0) = x(i, 0) - spec.l[i];
            break;
    }
}

bool diverged(const Eigen::MatrixXd& x, double delta) {
    return !std::isfinite(delta) || !x.allFinite() || x.cwiseAbs().maxCoeff() > 1e12;
}

struct LoopSetup {
    Eigen::SparseMatrix<double> w;
    Eigen::MatrixXd x0;
    double per_round;
    double optimum;
};

LoopSetup prepare(const Graph& g, const MixingMatrix& w, const ProblemSpec& spec, const RunOptions& opts) {
    const int m = g.vertex_count();
    validate_spec(spec, m);
    if (opts.alpha <= 0.0) throw std::invalid_argument("run: alpha must be positive");
    if (opts.tol <= 0.0) throw std::invalid_argument("run: tol must be positive");
    LoopSetup setup{sparse_mixing(w, g), Eigen::MatrixXd::Zero(m, spec.dimension),
                    comm_per_round(g, opts.mu.value_or(std::vector<double>{})).per_round,
                    analytic_optimum(spec)};
    if (opts.x0) {
        if (opts.x0->rows() != m || opts.x0->cols() != spec.dimension)
            throw std::invalid_argument("run: x0 has the wrong shape");
        setup.x0 = *opts.x0;
    }
    return setup;
}

SimulationTrace make_trace(const MixingMatrix& w, const RunOptions& opts, double per_round) {
    SimulationTrace trace;
    trace.alpha = opts.alpha;
    trace.theta1 = w.theta1;
    trace.tol = opts.tol;
    trace.seed = opts.seed;
    trace.per_round = per_round;
    return trace;
}

}  // namespace

ProblemSpec ProblemSpec::make_example1(std::vector<double> l, double eps) {
    ProblemSpec spec;
    spec.kind = ProblemKind::example1;
    spec.dimension = static_cast<int>(l.size());
    spec.l = std::move(l);
    spec.epsilon_smooth = eps;
    return spec;
}

ProblemSpec ProblemSpec::make_example2(std::vector<double> l) {
    ProblemSpec spec;
    spec.kind = ProblemKind::example2;
    spec.dimension = 1;
    spec.l = std::move(l);
    return spec;
}

ProblemSpec ProblemSpec::make_quadratic_consensus(std::vector<double> l) {
    ProblemSpec spec;
    spec.kind = ProblemKind::quadratic_consensus;
    spec.dimension = 1;
    spec.l = std::move(l);
    return spec;
}

ValueGrad example1_value_and_grad(const Eigen::VectorXd& x_row, int i, const ProblemSpec& spec) {
    if (spec.kind != ProblemKind::example1) throw std::invalid_argument("example1: wrong problem kind");
    if (!x_row.allFinite()) throw std::invalid_argument("example1: non-finite input");
    const double denom = x_row.cwiseAbs().sum() + spec.epsilon_smooth;
    const double li = spec.l[i];
    ValueGrad vg;
    vg.value = li * x_row(i) / denom;
    vg.grad = Eigen::VectorXd::Zero(x_row.size());
    const double scale = li * x_row(i) / (denom * denom);
    for (int k = 0; k < x_row.size(); ++k) vg.grad(k) = -scale * sign(x_row(k));
    vg.grad(i) += li / denom;
    return vg;
}

double example2_smooth_value(double x) { return x * x; }
double example2_smooth_grad(double x) { return 2.0 * x; }

double example2_prox(double y, int i, const ProblemSpec& spec) {
    return std::max(y, std::sqrt(std::abs(spec.l[i])));
}

double analytic_optimum(const ProblemSpec& spec) {
    const int m = static_cast<int>(spec.l.size());
    if (m == 0) throw std::invalid_argument("problem: empty data vector");
    double max_abs = 0.0;
    for (double v : spec.l) max_abs = std::max(max_abs, std::abs(v));
    switch (spec.kind) {
        case ProblemKind::example1:
            // Infimum along the ray -sgn(l_n) t e_n where |l_n| = max|l|.
            return -max_abs / m;
        case ProblemKind::example2:
            // x* = max_i sqrt(|l_i|), F* = (x*)^2.
            return max_abs;
        case ProblemKind::quadratic_consensus: {
            double mean = 0.0;
            for (double v : spec.l) mean += v;
            mean /= m;
            double value = 0.0;
            for (double v : spec.l) value += 0.5 * (mean - v) * (mean - v);
            return value / m;
        }
    }
    throw std::invalid_argument("problem: unknown kind");
}

std::vector<double> seeded_data_vector(int m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("seeded_data_vector: m must be >= 1");
    SplitMix64 rng(seed);
    std::vector<double> l(m);
    for (double& v : l) v = rng.next_double();
    // Force a decisively unique maximum. A near-tie at the top stalls the
    // prox-split dynamics under the delta-difference stopping rule (the rule
    // fires at the first flat delta extremum), so the max entry is lifted
    // well clear of the field.
    *std::max_element(l.begin(), l.end()) = 1.25;
    return l;
}

SimulationTrace extra_run(const Graph& g, const MixingMatrix& w, const ProblemSpec& spec,
                          const RunOptions& opts) {
    auto setup = prepare(g, w, spec, opts);
    SimulationTrace trace = make_trace(w, opts, setup.per_round);
    const int m = g.vertex_count();
    const int p = spec.dimension;

    Eigen::MatrixXd x_prev = setup.x0;
    Eigen::MatrixXd grad_prev(m, p), grad_cur(m, p);
    double delta_prev = delta_value(x_prev, spec, setup.optimum);
    trace.records.push_back({0, delta_prev, 0.0});

    // x^1 = W x^0 - alpha grad f(x^0); W x^0 is the round's single multiply.
    gradient(x_prev, spec, grad_prev);
    Eigen::MatrixXd wx_prev = setup.w * x_prev;
    Eigen::MatrixXd x_cur = wx_prev - opts.alpha * grad_prev;

    for (int k = 1; k <= opts.max_iters; ++k) {
        const double delta_cur = delta_value(x_cur, spec, setup.optimum);
        trace.records.push_back({k, delta_cur, double(k) * setup.per_round});
        if (diverged(x_cur, delta_cur)) {
            trace.reason = StopReason::diverged;
            trace.stop_index = k;
            trace.final_x = x_cur;
            return trace;
        }
        if (std::abs(delta_cur - delta_prev) < opts.tol) {
            trace.reason = StopReason::stopped;
            trace.stop_index = k;
            trace.final_x = x_cur;
            return trace;
        }
        if (k == opts.max_iters) break;
        // x^{k+2} = (W+I) x^{k+1} - (W+I)/2 x^k - alpha (grad(x^{k+1}) - grad(x^k));
        // W x^k is cached from the previous round.
        Eigen::MatrixXd wx_cur = setup.w * x_cur;
        gradient(x_cur, spec, grad_cur);
        Eigen::MatrixXd x_next =
            wx_cur + x_cur - 0.5 * (wx_prev + x_prev) - opts.alpha * (grad_cur - grad_prev);
        x_prev.swap(x_cur);
        x_cur = std::move(x_next);
        wx_prev = std::move(wx_cur);
        grad_prev.swap(grad_cur);
        delta_prev = delta_cur;
    }
    trace.reason = StopReason::max_iters;
    trace.stop_index = opts.max_iters;
    trace.final_x = x_cur;
    return trace;
}

SimulationTrace pg_extra_run(const Graph& g, const MixingMatrix& w, const ProblemSpec& spec,
                             const RunOptions& opts) {
    if (spec.kind != ProblemKind::example2)
        throw std::invalid_argument("pg_extra_run: implemented for the prox-split problem (example2)");
    auto setup = prepare(g, w, spec, opts);
    SimulationTrace trace = make_trace(w, opts, setup.per_round);
    const int m = g.vertex_count();

    auto prox = [&](const Eigen::MatrixXd& y) {
        Eigen::MatrixXd out(m, 1);
        for (int i = 0; i < m; ++i) out(i, 0) = example2_prox(y(i, 0), i, spec);
        return out;
    };

    Eigen::MatrixXd x_prev = setup.x0;
    double delta_prev = delta_value(x_prev, spec, setup.optimum);
    trace.records.push_back({0, delta_prev, 0.0});

    // x^{1/2} = W x^0 - alpha grad s(x^0); x^1 = prox(x^{1/2}).
    Eigen::MatrixXd grad_prev(m, 1), grad_cur(m, 1);
    gradient(x_prev, spec, grad_prev);
    Eigen::MatrixXd wx_prev = setup.w * x_prev;
    Eigen::MatrixXd half_prev = wx_prev - opts.alpha * grad_prev;
    Eigen::MatrixXd x_cur = prox(half_prev);

    for (int k = 1; k <= opts.max_iters; ++k) {
        const double delta_cur = delta_value(x_cur, spec, setup.optimum);
        trace.records.push_back({k, delta_cur, double(k) * setup.per_round});
        if (diverged(x_cur, delta_cur)) {
            trace.reason = StopReason::diverged;
            trace.stop_index = k;
            trace.final_x = x_cur;
            return trace;
        }
        if (std::abs(delta_cur - delta_prev) < opts.tol) {
            trace.reason = StopReason::stopped;
            trace.stop_index = k;
            trace.final_x = x_cur;
            return trace;
        }
        if (k == opts.max_iters) break;
        // x^{k+3/2} = W x^{k+1} + x^{k+1/2} - (W+I)/2 x^k - alpha (grad s(x^{k+1}) - grad s(x^k))
        Eigen::MatrixXd wx_cur = setup.w * x_cur;
        gradient(x_cur, spec, grad_cur);
        Eigen::MatrixXd half_cur =
            wx_cur + half_prev - 0.5 * (wx_prev + x_prev) - opts.alpha * (grad_cur - grad_prev);
        Eigen::MatrixXd x_next = prox(half_cur);
        x_prev.swap(x_cur);
        x_cur = std::move(x_next);
        wx_prev = std::move(wx_cur);
        half_prev = std::move(half_cur);
        grad_prev.swap(grad_cur);
        delta_prev = delta_cur;
    }
    trace.reason = StopReason::max_iters;
    trace.stop_index = opts.max_iters;
    trace.final_x = x_cur;
    return trace;
}

CommCost comm_per_round(const Graph& g, const std::vector<double>& mu) {
    const int m = g.edge_count();
    CommCost cost;
    if (mu.empty()) {
        cost.mu.assign(m, 1.0);
    } else {
        if (static_cast<int>(mu.size()) != m)
            throw std::invalid_argument("comm_per_round: mu covers " + std::to_string(mu.size()) +
                                        " edges, graph has " + std::to_string(m));
        for (double v : mu)
            if (!(v >= 0.0)) throw std::invalid_argument("comm_per_round: costs must be >= 0");
        cost.mu = mu;
    }
    cost.per_round = 0.0;
    for (double v : cost.mu) cost.per_round += 2.0 * v;  // one message each direction
    cost.directed_count = 2LL * m;
    return cost;
}

double total_comm(const SimulationTrace& trace, const CommCost& cost) {
    if (trace.reason != StopReason::stopped && trace.stop_index != 0)
        throw std::invalid_argument("total_comm: trace did not stop");
    return double(trace.stop_index) * cost.per_round;
}

SweepResult degree_sweep(int n, const std::vector<int>& degrees, ProblemKind kind, double alpha,
                         double theta1, double tol, int max_iters, std::uint64_t seed) {
    if (degrees.empty()) throw std::invalid_argument("degree_sweep: no degrees given");
    const auto l = seeded_data_vector(n, seed);
    ProblemSpec spec;
    switch (kind) {
        case ProblemKind::example1: spec = ProblemSpec::make_example1(l); break;
        case ProblemKind::example2: spec = ProblemSpec::make_example2(l); break;
        case ProblemKind::quadratic_consensus: spec = ProblemSpec::make_quadratic_consensus(l); break;
    }
    SweepResult result;
    for (int d : degrees) {
        SweepRow row;
        row.d = d;
        try {
            Graph g = [&] {
                if (auto params = find_lps_params(n, d)) {
                    row.source = "lps(" + std::to_string(params->p) + "," + std::to_string(params->q) + ")";
                    return lps_graph(*params);
                }
                row.source = "random";
                return random_regular({n, d, seed, 200'000'000});
            }();
            row.kappa_tilde = reduced_condition_number(g);
            const auto w = mixing_matrix(g, theta1);
            RunOptions opts;
            opts.alpha = alpha;
            opts.tol = tol;
            opts.max_iters = max_iters;
            opts.seed = seed;
            const auto trace = (kind == ProblemKind::example2) ? pg_extra_run(g, w, spec, opts)
                                                               : extra_run(g, w, spec, opts);
            if (trace.reason != StopReason::stopped)
                throw std::runtime_error(trace.reason == StopReason::diverged
                                             ? "diverged at iteration " + std::to_string(trace.stop_index)
                                             : "did not stop within max_iters");
            row.k0 = trace.stop_index;
            row.per_round = trace.per_round;
            row.total = total_comm(trace, comm_per_round(g));
        } catch (const std::exception& err) {
            row.error = err.what();
        }
        result.rows.push_back(std::move(row));
    }
    std::stable_sort(result.rows.begin(), result.rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.error.empty() != b.error.empty()) return a.error.empty();
        if (a.error.empty() && b.error.empty()) return a.total < b.total;
        return false;
    });
    if (result.rows.front().error.empty()) result.argmin_d = result.rows.front().d;
    return result;
}

}  // namespace expandopt
