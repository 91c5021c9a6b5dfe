#pragma once

// Text formats read by the command-line tool.
//
//   points: one point per line, coordinates separated by whitespace and/or
//           commas; blank lines and lines starting with '#' are skipped.
//   graph:  "n m" header, then m lines "u v [w]" with 0-based vertices.
//   sample: one site index per line.

#include <istream>
#include <string>
#include <vector>

#include "gapratio/metric.hpp"

namespace gapratio::io {

std::vector<std::vector<double>> read_points(std::istream& in, const std::string& name = "<input>");
std::vector<std::vector<double>> read_points_file(const std::string& path);

Graph read_graph(std::istream& in, const std::string& name = "<input>");
Graph read_graph_file(const std::string& path);

std::vector<Index> read_sample(std::istream& in, const std::string& name = "<input>");
std::vector<Index> read_sample_file(const std::string& path);

/// "0,3,5" or "0 3 5".
std::vector<Index> parse_index_list(const std::string& text);

}  // namespace gapratio::io
