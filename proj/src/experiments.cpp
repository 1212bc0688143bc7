#include "expandopt/experiments.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "expandopt/constructors.hpp"
#include "expandopt/graph_io.hpp"
#include "expandopt/mixing.hpp"
#include "expandopt/version.hpp"

namespace expandopt {

using nlohmann::json;

namespace {

CirculantReading reading_from_string(const std::string& name) {
    if (name == "standard") return CirculantReading::kOneToHalfD;
    if (name == "paper-literal") return CirculantReading::kZeroToHalfDMinus1;
    throw std::invalid_argument("config: offset_reading must be \"standard\" or \"paper-literal\"");
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known, const char* where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok) throw std::invalid_argument(std::string("config: unknown key \"") + key + "\" in " + where);
    }
}

ProblemKind problem_kind(const std::string& name) {
    if (name == "ex1") return ProblemKind::example1;
    if (name == "ex2") return ProblemKind::example2;
    if (name == "quad") return ProblemKind::quadratic_consensus;
    throw std::invalid_argument("config: problem must be ex1, ex2 or quad");
}

ProblemSpec make_spec(ProblemKind kind, std::vector<double> l) {
    switch (kind) {
        case ProblemKind::example1: return ProblemSpec::make_example1(std::move(l));
        case ProblemKind::example2: return ProblemSpec::make_example2(std::move(l));
        case ProblemKind::quadratic_consensus: return ProblemSpec::make_quadratic_consensus(std::move(l));
    }
    throw std::invalid_argument("config: unknown problem kind");
}

struct PublishedRow {
    const char* label;
    double kappa;
    long long k0_ex1;
    long long total_ex1;
    long long k0_ex2;
    long long total_ex2;
};

// Reference rows as published (Tables I and II); displayed side by side with
// measurements, never merged with them.
constexpr PublishedRow kPublished[] = {
    {"LPS(29,13)", 1.9538, 52, 1703520, 811, 26568360},
    {"circulant-30", 30.5375, 444, 14545440, 1001, 32792760},
    {"circulant-60", 32.1103, 494, 32366880, 832, 54512640},
    {"circulant-120", 27.1499, 454, 59492160, 953, 124881120},
};

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument(std::string("config: malformed JSON: ") + err.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("config: expected a JSON object");
    reject_unknown_keys(doc,
                        {"topology", "problem", "alpha", "theta1", "tol", "seed", "max_iters", "mu_uniform",
                         "mu_file", "trace_out", "report_out"},
                        "config");
    ExperimentConfig cfg;
    if (doc.contains("topology")) {
        const auto& topo = doc["topology"];
        if (!topo.is_object()) throw std::invalid_argument("config: topology must be an object");
        reject_unknown_keys(topo, {"kind", "p", "q", "n", "d", "seed", "path", "name", "offset_reading"},
                            "topology");
        cfg.topology.kind = topo.value("kind", "");
        cfg.topology.p = topo.value("p", 0);
        cfg.topology.q = topo.value("q", 0);
        cfg.topology.n = topo.value("n", 0);
        cfg.topology.d = topo.value("d", 0);
        cfg.topology.seed = topo.value("seed", std::uint64_t{0});
        cfg.topology.path = topo.value("path", "");
        cfg.topology.name = topo.value("name", "");
        cfg.topology.offset_reading = topo.value("offset_reading", "standard");
    }
    cfg.problem = doc.value("problem", cfg.problem);
    cfg.alpha = doc.value("alpha", cfg.alpha);
    cfg.theta1 = doc.value("theta1", cfg.theta1);
    cfg.tol = doc.value("tol", cfg.tol);
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.max_iters = doc.value("max_iters", cfg.max_iters);
    cfg.mu_uniform = doc.value("mu_uniform", cfg.mu_uniform);
    cfg.mu_file = doc.value("mu_file", cfg.mu_file);
    cfg.trace_out = doc.value("trace_out", cfg.trace_out);
    cfg.report_out = doc.value("report_out", cfg.report_out);
    validate_config(cfg);
    return cfg;
}

ExperimentConfig read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(text);
}

void validate_config(const ExperimentConfig& cfg) {
    problem_kind(cfg.problem);
    if (cfg.topology.kind.empty()) throw std::invalid_argument("config: missing topology");
    if (!(cfg.alpha > 0.0)) throw std::invalid_argument("config: alpha must be > 0");
    if (!(cfg.theta1 > 0.0 && cfg.theta1 < 1.0)) throw std::invalid_argument("config: theta1 must be in (0, 1)");
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("config: tol must be > 0");
    if (cfg.max_iters < 1) throw std::invalid_argument("config: max_iters must be >= 1");
    if (!(cfg.mu_uniform >= 0.0)) throw std::invalid_argument("config: mu_uniform must be >= 0");
    reading_from_string(cfg.topology.offset_reading);
}

std::string config_to_json(const ExperimentConfig& cfg) {
    json topo{{"kind", cfg.topology.kind}};
    if (cfg.topology.kind == "lps") {
        topo["p"] = cfg.topology.p;
        topo["q"] = cfg.topology.q;
    } else if (cfg.topology.kind == "random") {
        topo["n"] = cfg.topology.n;
        topo["d"] = cfg.topology.d;
        topo["seed"] = cfg.topology.seed;
    } else if (cfg.topology.kind == "circulant") {
        topo["n"] = cfg.topology.n;
        topo["d"] = cfg.topology.d;
        topo["offset_reading"] = cfg.topology.offset_reading;
    } else if (cfg.topology.kind == "named") {
        topo["name"] = cfg.topology.name;
        topo["n"] = cfg.topology.n;
    } else if (cfg.topology.kind == "file") {
        topo["path"] = cfg.topology.path;
    }
    json doc{{"topology", topo},   {"problem", cfg.problem}, {"alpha", cfg.alpha},
             {"theta1", cfg.theta1}, {"tol", cfg.tol},         {"seed", cfg.seed},
             {"max_iters", cfg.max_iters}, {"mu_uniform", cfg.mu_uniform}};
    if (!cfg.mu_file.empty()) doc["mu_file"] = cfg.mu_file;
    if (!cfg.trace_out.empty()) doc["trace_out"] = cfg.trace_out;
    if (!cfg.report_out.empty()) doc["report_out"] = cfg.report_out;
    return doc.dump();
}

Graph realize_topology(const TopologyConfig& topology) {
    if (topology.kind == "lps") return lps_graph(topology.p, topology.q);
    if (topology.kind == "random")
        return random_regular({topology.n, topology.d, topology.seed, 10'000'000});
    if (topology.kind == "circulant")
        return circulant_regular(topology.n, topology.d, reading_from_string(topology.offset_reading));
    if (topology.kind == "named")
        return named_graph(named_kind_from_string(topology.name), topology.n);
    if (topology.kind == "file") return read_graph(topology.path);
    throw std::invalid_argument("config: unknown topology kind \"" + topology.kind + "\"");
}

std::vector<double> read_mu_file(const Graph& g, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("mu file: cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& err) {
        throw std::invalid_argument(std::string("mu file: malformed JSON: ") + err.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("mu file: expected an object of \"u-v\" keys");
    std::vector<double> mu(g.edge_count(), -1.0);
    for (const auto& [key, value] : doc.items()) {
        const auto dash = key.find('-');
        if (dash == std::string::npos) throw std::invalid_argument("mu file: bad edge key \"" + key + "\"");
        int u, v;
        try {
            u = std::stoi(key.substr(0, dash));
            v = std::stoi(key.substr(dash + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("mu file: bad edge key \"" + key + "\"");
        }
        const int idx = g.edge_index(u, v);
        if (idx < 0) throw std::invalid_argument("mu file: edge " + key + " is not in the graph");
        if (!value.is_number()) throw std::invalid_argument("mu file: cost of " + key + " must be a number");
        mu[idx] = value.get<double>();
    }
    for (int e = 0; e < g.edge_count(); ++e)
        if (mu[e] < 0.0)
            throw std::invalid_argument("mu file: missing cost for edge " + std::to_string(g.edges()[e].u) +
                                        "-" + std::to_string(g.edges()[e].v));
    return mu;
}

void write_trace_csv(const SimulationTrace& trace, const std::string& config_json, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << "# version: " << kVersion << "\n";
    out << "# config: " << config_json << "\n";
    out << "iter,delta_k,cumulative_messages\n";
    out.precision(17);
    for (const auto& rec : trace.records)
        out << rec.iter << ',' << rec.delta << ',' << rec.cumulative_messages << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    const Graph g = realize_topology(cfg.topology);
    if (!is_connected(g)) throw std::invalid_argument("experiment: topology is disconnected");

    ExperimentResult result;
    result.kappa_tilde = reduced_condition_number(g);
    if (g.regular_degree() && g.vertex_count() >= 3 && *g.regular_degree() >= 3)
        result.report = spectral_report(g);

    const auto w = mixing_matrix(g, cfg.theta1);
    const auto kind = problem_kind(cfg.problem);
    const auto spec = make_spec(kind, seeded_data_vector(g.vertex_count(), cfg.seed));
    RunOptions opts;
    opts.alpha = cfg.alpha;
    opts.tol = cfg.tol;
    opts.max_iters = cfg.max_iters;
    opts.seed = cfg.seed;
    if (!cfg.mu_file.empty())
        opts.mu = read_mu_file(g, cfg.mu_file);
    else if (cfg.mu_uniform != 1.0)
        opts.mu = std::vector<double>(g.edge_count(), cfg.mu_uniform);
    result.trace =
        (kind == ProblemKind::example2) ? pg_extra_run(g, w, spec, opts) : extra_run(g, w, spec, opts);

    const std::string echo = config_to_json(cfg);
    if (!cfg.trace_out.empty()) write_trace_csv(result.trace, echo, cfg.trace_out);
    if (!cfg.report_out.empty()) {
        json doc;
        doc["version"] = kVersion;
        doc["config"] = json::parse(echo);
        doc["kappa_tilde"] = result.kappa_tilde;
        if (result.report) {
            const auto& r = *result.report;
            doc["spectral"] = {{"degree", r.degree_d},
                               {"lambda_second", r.lambda_second},
                               {"lambda_nontrivial_abs", r.lambda_nontrivial_abs},
                               {"kappa_tilde", r.kappa_tilde},
                               {"kappa_bound", std::isfinite(r.kappa_bound) ? json(r.kappa_bound) : json("inf")},
                               {"ramanujan", r.ramanujan},
                               {"ramanujan_margin", r.ramanujan_margin},
                               {"alon_boppana_lower", r.alon_boppana_lower},
                               {"cheeger_lower", r.cheeger_lower},
                               {"cheeger_upper", r.cheeger_upper},
                               {"diameter", r.diameter}};
        } else {
            doc["spectral"] = {{"degree", "irregular"}};
        }
        doc["stop_reason"] = result.trace.reason == StopReason::stopped
                                 ? "stopped"
                                 : (result.trace.reason == StopReason::diverged ? "diverged" : "max-iters");
        doc["k0"] = result.trace.stop_index;
        doc["per_round"] = result.trace.per_round;
        std::ofstream out(cfg.report_out);
        if (!out) throw std::runtime_error("cannot open for writing: " + cfg.report_out);
        out << doc.dump(2) << "\n";
    }
    return result;
}

TableReport reproduce_tables(double alpha, double theta1, double tol, std::uint64_t seed, int max_iters) {
    TableReport report;
    report.alpha = alpha;
    report.theta1 = theta1;
    report.tol = tol;
    report.seed = seed;

    for (const auto& pub : kPublished) {
        TableRow base;
        base.label = pub.label;
        base.published_kappa = pub.kappa;
        TableRow row1 = base, row2 = base;
        row1.published_k0 = pub.k0_ex1;
        row1.published_total = pub.total_ex1;
        row2.published_k0 = pub.k0_ex2;
        row2.published_total = pub.total_ex2;
        try {
            const Graph g = (base.label == "LPS(29,13)")
                                ? lps_graph(29, 13)
                                : circulant_regular(1092, std::stoi(base.label.substr(10)));
            const double kappa = reduced_condition_number(g);
            row1.kappa = row2.kappa = kappa;
            const auto w = mixing_matrix(g, theta1);
            const auto l = seeded_data_vector(g.vertex_count(), seed);
            const auto cost = comm_per_round(g);
            RunOptions opts;
            opts.alpha = alpha;
            opts.tol = tol;
            opts.max_iters = max_iters;
            opts.seed = seed;

            auto fill = [&](TableRow& row, const SimulationTrace& trace) {
                if (trace.reason != StopReason::stopped) {
                    row.error = trace.reason == StopReason::diverged
                                    ? "diverged at iteration " + std::to_string(trace.stop_index)
                                    : "did not stop within max_iters";
                    return;
                }
                row.ok = true;
                row.k0 = trace.stop_index;
                row.per_round = trace.per_round;
                row.total = total_comm(trace, cost);
            };
            fill(row1, extra_run(g, w, ProblemSpec::make_example1(l), opts));
            fill(row2, pg_extra_run(g, w, ProblemSpec::make_example2(l), opts));
        } catch (const std::exception& err) {
            row1.error = row2.error = err.what();
        }
        report.example1.push_back(std::move(row1));
        report.example2.push_back(std::move(row2));
    }
    return report;
}

namespace {

void append_table(std::ostringstream& out, const char* title, const std::vector<TableRow>& rows) {
    out << title << "\n";
    out << "  label           published kappa/k0/total        measured kappa/k0/total\n";
    for (const auto& row : rows) {
        out << "  " << row.label;
        for (std::size_t i = row.label.size(); i < 16; ++i) out << ' ';
        std::ostringstream pub;
        pub << row.published_kappa << " / " << row.published_k0 << " / " << row.published_total;
        out << pub.str();
        for (std::size_t i = pub.str().size(); i < 32; ++i) out << ' ';
        if (row.ok)
            out << row.kappa << " / " << row.k0 << " / " << (long long)std::llround(row.total);
        else
            out << "FAILED: " << row.error;
        out << "\n";
    }
}

}  // namespace

std::string table_report_to_text(const TableReport& report) {
    std::ostringstream out;
    out.precision(6);
    out << "reproduce-tables: alpha=" << report.alpha << " theta1=" << report.theta1 << " tol=" << report.tol
        << " seed=" << report.seed << "\n";
    out << "(published columns are reference values; measured columns use the local run)\n";
    append_table(out, "Example 1 (EXTRA)", report.example1);
    append_table(out, "Example 2 (PG-EXTRA)", report.example2);
    return out.str();
}

std::string table_report_to_csv(const TableReport& report) {
    std::ostringstream out;
    out.precision(17);
    out << "# version: " << kVersion << "\n";
    out << "# alpha=" << report.alpha << " theta1=" << report.theta1 << " tol=" << report.tol
        << " seed=" << report.seed << "\n";
    out << "example,label,published_kappa,published_k0,published_total,measured_kappa,measured_k0,"
           "per_round,measured_total,status\n";
    auto rows = [&](const char* name, const std::vector<TableRow>& table) {
        for (const auto& row : table) {
            out << name << ',' << row.label << ',' << row.published_kappa << ',' << row.published_k0 << ','
                << row.published_total << ',';
            if (row.ok)
                out << row.kappa << ',' << row.k0 << ',' << row.per_round << ',' << row.total << ",ok\n";
            else
                out << ",,,,\"" << row.error << "\"\n";
        }
    };
    rows("ex1", report.example1);
    rows("ex2", report.example2);
    return out.str();
}

std::string sweep_to_csv(const SweepResult& result) {
    std::ostringstream out;
    out.precision(17);
    out << "# version: " << kVersion << "\n";
    out << "# argmin_d=" << result.argmin_d << "\n";
    out << "d,source,kappa_tilde,k0,per_round,total,status\n";
    for (const auto& row : result.rows) {
        out << row.d << ',' << row.source << ',';
        if (row.error.empty())
            out << row.kappa_tilde << ',' << row.k0 << ',' << row.per_round << ',' << row.total << ",ok\n";
        else
            out << ",,,,\"" << row.error << "\"\n";
    }
    return out.str();
}

}  // namespace expandopt
