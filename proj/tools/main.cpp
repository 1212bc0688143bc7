// Command-line front end: topology generation, spectral reports,
// sparsification, decentralized-optimization simulation and the
// table-reproduction harness.
//
// Exit codes: 0 success, 2 config error, 3 numerical failure, 4 resource limit.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "expandopt/constructors.hpp"
#include "expandopt/experiments.hpp"
#include "expandopt/graph_io.hpp"
#include "expandopt/mixing.hpp"
#include "expandopt/optimizers.hpp"
#include "expandopt/sparsifier.hpp"
#include "expandopt/spectral.hpp"
#include "expandopt/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitResource = 4;

using namespace expandopt;

void print_spectral(const SpectralReport& r, double kappa, bool as_json) {
    if (as_json) {
        nlohmann::json doc{{"version", kVersion},
                           {"degree", r.degree_d},
                           {"lambda_second", r.lambda_second},
                           {"lambda_nontrivial_abs", r.lambda_nontrivial_abs},
                           {"kappa_tilde", kappa},
                           {"kappa_bound", std::isfinite(r.kappa_bound) ? nlohmann::json(r.kappa_bound)
                                                                        : nlohmann::json("inf")},
                           {"ramanujan", r.ramanujan},
                           {"ramanujan_margin", r.ramanujan_margin},
                           {"alon_boppana_lower", r.alon_boppana_lower},
                           {"cheeger_lower", r.cheeger_lower},
                           {"cheeger_upper", r.cheeger_upper},
                           {"diameter", r.diameter}};
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::cout.precision(10);
    std::cout << "degree=" << r.degree_d << "\n"
              << "lambda_second=" << r.lambda_second << "\n"
              << "lambda_nontrivial_abs=" << r.lambda_nontrivial_abs << "\n"
              << "kappa_tilde=" << kappa << "\n"
              << "kappa_bound=" << r.kappa_bound << "\n"
              << "ramanujan=" << (r.ramanujan ? "true" : "false") << "\n"
              << "ramanujan_margin=" << r.ramanujan_margin << "\n"
              << "alon_boppana_lower=" << r.alon_boppana_lower << "\n"
              << "cheeger_lower=" << r.cheeger_lower << "\n"
              << "cheeger_upper=" << r.cheeger_upper << "\n"
              << "diameter=" << r.diameter << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{std::string(kVersion) + " - expander topology design for decentralized optimization"};
    app.require_subcommand(1);
    bool as_json = false;
    std::uint64_t global_seed = 1;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--seed", global_seed, "default seed for seeded subcommands");

    // --- gen ---
    auto* gen = app.add_subcommand("gen", "generate a topology and write it as a graph file");
    std::string gen_kind;
    int gen_p = 29, gen_q = 13, gen_n = 0, gen_d = 0;
    std::uint64_t gen_seed = 0;
    bool gen_seed_set = false;
    long long gen_attempts = 10'000'000;
    std::string gen_reading = "standard";
    std::string gen_out;
    gen->add_option("--kind", gen_kind, "lps | random | circulant | complete | cycle | path | petersen")
        ->required();
    gen->add_option("--p", gen_p, "LPS prime p");
    gen->add_option("--q", gen_q, "LPS prime q");
    gen->add_option("--n", gen_n, "vertex count");
    gen->add_option("--d", gen_d, "degree");
    gen->add_option("--seed", gen_seed, "random-regular seed")->each([&](const std::string&) { gen_seed_set = true; });
    gen->add_option("--max-attempts", gen_attempts, "permutation draw budget");
    gen->add_option("--offset-reading", gen_reading, "circulant offsets: standard | paper-literal");
    gen->add_option("-o,--output", gen_out, "output graph file")->required();

    // --- spectral ---
    auto* spectral = app.add_subcommand("spectral", "print the spectral report of a graph file");
    std::string spectral_in;
    spectral->add_option("--graph", spectral_in, "input graph file")->required();

    // --- sparsify ---
    auto* sparsify = app.add_subcommand("sparsify", "twice-Ramanujan sparsifier with optional edge costs");
    std::string sparsify_in, sparsify_out, sparsify_mu;
    int sparsify_d = 2;
    sparsify->add_option("--graph", sparsify_in, "input graph file")->required();
    sparsify->add_option("--d", sparsify_d, "target parameter d > 1")->required();
    sparsify->add_option("--mu-file", sparsify_mu, "JSON map \"u-v\" -> cost");
    sparsify->add_option("-o,--output", sparsify_out, "output graph file")->required();

    // --- simulate ---
    auto* simulate = app.add_subcommand("simulate", "run EXTRA / PG-EXTRA over a topology");
    ExperimentConfig cfg;
    std::string sim_config_path, sim_graph;
    simulate->add_option("--config", sim_config_path, "JSON config file (flags override)");
    simulate->add_option("--graph", sim_graph, "input graph file");
    std::string sim_problem;
    double sim_alpha = -1, sim_theta1 = -1, sim_tol = -1;
    std::uint64_t sim_seed = 0;
    bool sim_seed_set = false;
    int sim_max_iters = -1;
    std::string sim_mu_file, sim_trace, sim_report;
    simulate->add_option("--problem", sim_problem, "ex1 | ex2 | quad");
    simulate->add_option("--alpha", sim_alpha, "step size");
    simulate->add_option("--theta1", sim_theta1, "mixing parameter in (0,1)");
    simulate->add_option("--tol", sim_tol, "stopping tolerance on |delta_k - delta_{k-1}|");
    simulate->add_option("--seed", sim_seed, "data-vector seed")->each([&](const std::string&) { sim_seed_set = true; });
    simulate->add_option("--max-iters", sim_max_iters, "iteration cap");
    simulate->add_option("--mu-file", sim_mu_file, "JSON map \"u-v\" -> cost");
    simulate->add_option("-o,--output", sim_trace, "trace CSV path");
    simulate->add_option("--report", sim_report, "report JSON path");

    // --- sweep ---
    auto* sweep = app.add_subcommand("sweep", "rank degrees by total communication");
    int sweep_n = 256;
    std::vector<int> sweep_degrees;
    std::string sweep_problem = "quad", sweep_out;
    double sweep_alpha = 0.02, sweep_theta1 = 0.5, sweep_tol = 1e-3;
    int sweep_max_iters = 100000;
    std::uint64_t sweep_seed = 0;
    bool sweep_seed_set = false;
    sweep->add_option("--n", sweep_n, "vertex count")->required();
    sweep->add_option("--degrees", sweep_degrees, "degree list")->required()->delimiter(',');
    sweep->add_option("--problem", sweep_problem, "ex1 | ex2 | quad");
    sweep->add_option("--alpha", sweep_alpha, "step size");
    sweep->add_option("--theta1", sweep_theta1, "mixing parameter");
    sweep->add_option("--tol", sweep_tol, "stopping tolerance");
    sweep->add_option("--max-iters", sweep_max_iters, "iteration cap");
    sweep->add_option("--seed", sweep_seed, "data seed")->each([&](const std::string&) { sweep_seed_set = true; });
    sweep->add_option("-o,--output", sweep_out, "sweep CSV path");

    // --- reproduce-tables ---
    auto* tables = app.add_subcommand("reproduce-tables", "measured vs published communication tables");
    double tab_alpha = 0.02, tab_theta1 = 0.5, tab_tol = 1e-3;
    int tab_max_iters = 3000;
    std::uint64_t tab_seed = 0;
    bool tab_seed_set = false;
    std::string tab_out;
    tables->add_option("--alpha", tab_alpha, "shared step size");
    tables->add_option("--theta1", tab_theta1, "shared mixing parameter");
    tables->add_option("--tol", tab_tol, "shared stopping tolerance");
    tables->add_option("--max-iters", tab_max_iters, "iteration cap per run");
    tables->add_option("--seed", tab_seed, "data seed")->each([&](const std::string&) { tab_seed_set = true; });
    tables->add_option("-o,--output", tab_out, "CSV output path");

    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) {
        Graph g = [&] {
            if (gen_kind == "lps") return lps_graph(gen_p, gen_q);
            if (gen_kind == "random")
                return random_regular({gen_n, gen_d, gen_seed_set ? gen_seed : global_seed, gen_attempts});
            if (gen_kind == "circulant") {
                const auto reading = gen_reading == "paper-literal" ? CirculantReading::kZeroToHalfDMinus1
                                                                    : CirculantReading::kOneToHalfD;
                if (gen_reading != "standard" && gen_reading != "paper-literal")
                    throw std::invalid_argument("gen: --offset-reading must be standard or paper-literal");
                return circulant_regular(gen_n, gen_d, reading);
            }
            if (gen_kind == "petersen" && gen_n == 0) gen_n = 10;
            return named_graph(named_kind_from_string(gen_kind), gen_n);
        }();
        write_graph(g, gen_out);
        if (as_json) {
            nlohmann::json doc{{"n", g.vertex_count()},
                               {"edges", g.edge_count()},
                               {"connected", is_connected(g)},
                               {"output", gen_out}};
            if (auto d = g.regular_degree()) doc["degree"] = *d;
            std::cout << doc.dump() << "\n";
        } else {
            std::cout << "wrote " << gen_out << ": n=" << g.vertex_count() << " edges=" << g.edge_count()
                      << (is_connected(g) ? " connected" : " DISCONNECTED") << "\n";
        }
        return kExitOk;
    }

    if (spectral->parsed()) {
        const Graph g = read_graph(spectral_in);
        const auto report = spectral_report(g);
        print_spectral(report, report.kappa_tilde, as_json);
        return kExitOk;
    }

    if (sparsify->parsed()) {
        const Graph g = read_graph(sparsify_in);
        SparsifierParams params;
        params.d = sparsify_d;
        if (!sparsify_mu.empty()) params.mu = read_mu_file(g, sparsify_mu);
        const Graph h = bss_sparsify(g, params);
        write_graph(h, sparsify_out);
        const double bound = sparsifier_ratio_bound(sparsify_d);
        const auto range = pencil_range(g, h);
        const bool ok = loewner_sandwich_check(g, h, bound);
        if (as_json) {
            nlohmann::json doc{{"edges", h.edge_count()},
                               {"edge_cap", sparsify_d * (g.vertex_count() - 1)},
                               {"pencil_min", range.min},
                               {"pencil_max", range.max},
                               {"ratio_bound", bound},
                               {"sandwich_ok", ok},
                               {"output", sparsify_out}};
            std::cout << doc.dump() << "\n";
        } else {
            std::cout.precision(10);
            std::cout << "edges=" << h.edge_count() << " (cap " << sparsify_d * (g.vertex_count() - 1) << ")\n"
                      << "pencil range=[" << range.min << ", " << range.max << "] bound=" << bound << "\n"
                      << "sandwich certificate: " << (ok ? "PASS" : "FAIL") << "\n";
        }
        return ok ? kExitOk : kExitNumerical;
    }

    if (simulate->parsed()) {
        if (!sim_config_path.empty()) cfg = read_config(sim_config_path);
        if (!sim_graph.empty()) {
            cfg.topology.kind = "file";
            cfg.topology.path = sim_graph;
        }
        if (!sim_problem.empty()) cfg.problem = sim_problem;
        if (sim_alpha > 0) cfg.alpha = sim_alpha;
        if (sim_theta1 > 0) cfg.theta1 = sim_theta1;
        if (sim_tol > 0) cfg.tol = sim_tol;
        if (sim_seed_set)
            cfg.seed = sim_seed;
        else if (cfg.seed == 1)
            cfg.seed = global_seed;
        if (sim_max_iters > 0) cfg.max_iters = sim_max_iters;
        if (!sim_mu_file.empty()) cfg.mu_file = sim_mu_file;
        if (!sim_trace.empty()) cfg.trace_out = sim_trace;
        if (!sim_report.empty()) cfg.report_out = sim_report;
        const auto result = run_experiment(cfg);
        const char* reason = result.trace.reason == StopReason::stopped
                                 ? "stopped"
                                 : (result.trace.reason == StopReason::diverged ? "diverged" : "max-iters");
        if (as_json) {
            nlohmann::json doc{{"stop_reason", reason},
                               {"k0", result.trace.stop_index},
                               {"kappa_tilde", result.kappa_tilde},
                               {"per_round", result.trace.per_round},
                               {"total", result.trace.stop_index * result.trace.per_round},
                               {"final_delta", result.trace.records.back().delta}};
            std::cout << doc.dump() << "\n";
        } else {
            std::cout.precision(10);
            std::cout << reason << " at k0=" << result.trace.stop_index
                      << " kappa_tilde=" << result.kappa_tilde << " per_round=" << result.trace.per_round
                      << " total=" << result.trace.stop_index * result.trace.per_round << "\n";
        }
        if (result.trace.reason == StopReason::diverged) return kExitNumerical;
        if (result.trace.reason == StopReason::max_iters) return kExitResource;
        return kExitOk;
    }

    if (sweep->parsed()) {
        ProblemKind kind = ProblemKind::quadratic_consensus;
        if (sweep_problem == "ex1") kind = ProblemKind::example1;
        else if (sweep_problem == "ex2") kind = ProblemKind::example2;
        else if (sweep_problem != "quad") throw std::invalid_argument("sweep: bad --problem");
        const auto result = degree_sweep(sweep_n, sweep_degrees, kind, sweep_alpha, sweep_theta1, sweep_tol,
                                         sweep_max_iters, sweep_seed_set ? sweep_seed : global_seed);
        const std::string csv = sweep_to_csv(result);
        if (!sweep_out.empty()) {
            std::ofstream out(sweep_out);
            if (!out) throw std::runtime_error("cannot open for writing: " + sweep_out);
            out << csv;
        }
        std::cout << csv;
        return kExitOk;
    }

    if (tables->parsed()) {
        const auto report = reproduce_tables(tab_alpha, tab_theta1, tab_tol,
                                             tab_seed_set ? tab_seed : global_seed, tab_max_iters);
        if (!tab_out.empty()) {
            std::ofstream out(tab_out);
            if (!out) throw std::runtime_error("cannot open for writing: " + tab_out);
            out << table_report_to_csv(report);
        }
        std::cout << (as_json ? table_report_to_csv(report) : table_report_to_text(report));
        return kExitOk;
    }

    return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const expandopt::resource_limit_error& err) {
        std::cerr << "error (resource limit): " << err.what() << "\n";
        return kExitResource;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error (config): " << err.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& err) {
        std::cerr << "error (numerical): " << err.what() << "\n";
        return kExitNumerical;
    }
}
