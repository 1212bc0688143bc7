#include "expandopt/graph_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace expandopt {

using nlohmann::json;

std::string graph_to_json(const Graph& g) {
    json doc;
    doc["n"] = g.vertex_count();
    json edges = json::array();
    for (const auto& e : g.edges()) {
        if (e.w == 1.0)
            edges.push_back({e.u, e.v});
        else
            edges.push_back({e.u, e.v, e.w});
    }
    doc["edges"] = std::move(edges);
    return doc.dump();
}

Graph graph_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw std::runtime_error(std::string("graph file: malformed JSON: ") + err.what());
    }
    if (!doc.is_object()) throw std::runtime_error("graph file: expected a JSON object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (key != "n" && key != "edges")
            throw std::runtime_error("graph file: unknown key \"" + key + "\"");
    }
    if (!doc.contains("n") || !doc["n"].is_number_integer())
        throw std::runtime_error("graph file: missing or non-integer \"n\"");
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw std::runtime_error("graph file: missing or non-array \"edges\"");
    const int n = doc["n"].get<int>();
    std::vector<Edge> edges;
    edges.reserve(doc["edges"].size());
    for (const auto& item : doc["edges"]) {
        if (!item.is_array() || item.size() < 2 || item.size() > 3)
            throw std::runtime_error("graph file: each edge must be [u, v] or [u, v, w]");
        if (!item[0].is_number_integer() || !item[1].is_number_integer())
            throw std::runtime_error("graph file: edge endpoints must be integers");
        Edge e{item[0].get<int>(), item[1].get<int>(), 1.0};
        if (item.size() == 3) {
            if (!item[2].is_number()) throw std::runtime_error("graph file: edge weight must be a number");
            e.w = item[2].get<double>();
        }
        edges.push_back(e);
    }
    try {
        return Graph(n, std::move(edges));
    } catch (const std::invalid_argument& err) {
        throw std::runtime_error(std::string("graph file: ") + err.what());
    }
}

void write_graph(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << graph_to_json(g) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

Graph read_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return graph_from_json(text);
}

}  // namespace expandopt
