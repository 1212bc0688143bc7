#pragma once

#include <string>

#include "expandopt/graph.hpp"

namespace expandopt {

/// Graph interchange format: JSON {"n": int, "edges": [[u, v], [u, v, w], ...]}.
/// Weight entries are omitted on write when exactly 1; ids are 0-based.
/// read_graph rejects malformed documents and unknown keys.
void write_graph(const Graph& g, const std::string& path);
Graph read_graph(const std::string& path);

std::string graph_to_json(const Graph& g);
Graph graph_from_json(const std::string& text);

}  // namespace expandopt
