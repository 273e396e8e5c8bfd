#pragma once

#include <filesystem>
#include <string>

#include "nspm/rdf.hpp"

namespace nspm {

/// Parses an N-Triples file into a Graph; duplicate statements collapse.
/// Blank and '#'-comment lines are skipped. Throws IoError / ParseError.
Graph load_local_graph(const std::filesystem::path& path);

Graph parse_ntriples(const std::string& text);

/// Canonical serialization: sorted triples, one statement per line.
std::string serialize_ntriples(const Graph& g);

void save_ntriples(const Graph& g, const std::filesystem::path& path);

}  // namespace nspm
