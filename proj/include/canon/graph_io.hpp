#pragma once

#include <string>
#include <string_view>

#include "canon/graph.hpp"

namespace canon {

/// `cg 1` text format: header, `n <N>`, then `e <u> <v>` lines (u < v,
/// increasing), then `k <v> <c>` lines (increasing). 1-based, LF endings.
std::string write_cg(const ColoredGraph& g);
ColoredGraph parse_cg(std::string_view text);

/// graph6 for uncolored graphs. The writer emits no header and no newline
/// and throws UnsupportedInput on colored graphs;
/// the reader accepts an optional `>>graph6<<` header and trailing newline.
std::string write_graph6(const ColoredGraph& g);
ColoredGraph parse_graph6(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace canon
