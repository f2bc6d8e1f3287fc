#ifndef PDBS_EDGELIST_HPP
#define PDBS_EDGELIST_HPP

#include <string>
#include <string_view>

#include "pdbs/graph.hpp"

namespace pdbs {

// Text edge-list format: first line "n <N>", then one "i j" line per edge
// with 0 <= i < j < N, sorted lexicographically. Parsing ignores blank lines
// and '#' comments; serialization never emits them.

std::string serialize(const Graph& g);

// Throws ParseError (with a line number) on malformed lines, duplicate edges,
// self loops, or out-of-range vertices.
Graph parse_edge_list(std::string_view text);

}  // namespace pdbs

#endif
