#include "io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "gapratio/error.hpp"

namespace gapratio::io {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\r') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool skip(const std::string& line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

[[noreturn]] void fail(const std::string& name, std::size_t line, const std::string& what) {
  throw Error(Errc::parse_error, name + ":" + std::to_string(line) + ": " + what);
}

template <typename T>
bool parse_number(const std::string& tok, T& value) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if constexpr (std::is_floating_point_v<T>) {
    if (!tok.empty() && tok[0] == '+') ++first;
  }
  const auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open " + path);
  return in;
}

}  // namespace

std::vector<std::vector<double>> read_points(std::istream& in, const std::string& name) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skip(line)) continue;
    std::vector<double> row;
    for (const auto& tok : split(line)) {
      double v;
      if (!parse_number(tok, v)) fail(name, lineno, "not a number: '" + tok + "'");
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail(name, lineno, "expected " + std::to_string(rows.front().size()) + " coordinates, got " +
                             std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<double>> read_points_file(const std::string& path) {
  auto in = open(path);
  return read_points(in, path);
}

Graph read_graph(std::istream& in, const std::string& name) {
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  std::size_t n = 0, m = 0;
  std::vector<Edge> edges;
  int weighted = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (skip(line)) continue;
    const auto tok = split(line);
    if (!have_header) {
      if (tok.size() != 2 || !parse_number(tok[0], n) || !parse_number(tok[1], m)) {
        fail(name, lineno, "expected header 'n m'");
      }
      have_header = true;
      continue;
    }
    if (tok.size() != 2 && tok.size() != 3) fail(name, lineno, "expected 'u v [w]'");
    Edge e;
    if (!parse_number(tok[0], e.u) || !parse_number(tok[1], e.v)) {
      fail(name, lineno, "vertex ids must be nonnegative integers");
    }
    const int has_w = tok.size() == 3 ? 1 : 0;
    if (weighted >= 0 && weighted != has_w) fail(name, lineno, "mixed weighted and unweighted edges");
    weighted = has_w;
    if (has_w && !parse_number(tok[2], e.weight)) fail(name, lineno, "weight is not a number");
    if (e.u >= n || e.v >= n) fail(name, lineno, "vertex id out of range for n = " + std::to_string(n));
    edges.push_back(e);
  }
  if (!have_header) throw Error(Errc::parse_error, name + ": missing 'n m' header");
  if (edges.size() != m) {
    throw Error(Errc::parse_error, name + ": header announces " + std::to_string(m) +
                                       " edges, file has " + std::to_string(edges.size()));
  }
  return Graph(n, std::move(edges), weighted == 1);
}

Graph read_graph_file(const std::string& path) {
  auto in = open(path);
  return read_graph(in, path);
}

std::vector<Index> read_sample(std::istream& in, const std::string& name) {
  std::vector<Index> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skip(line)) continue;
    const auto tok = split(line);
    if (tok.size() != 1) fail(name, lineno, "expected one index per line");
    Index v;
    if (!parse_number(tok[0], v)) fail(name, lineno, "not an index: '" + tok[0] + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<Index> read_sample_file(const std::string& path) {
  auto in = open(path);
  return read_sample(in, path);
}

std::vector<Index> parse_index_list(const std::string& text) {
  std::vector<Index> out;
  for (const auto& tok : split(text)) {
    Index v;
    if (!parse_number(tok, v)) throw Error(Errc::parse_error, "not an index: '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace gapratio::io
