#include "linkbuild/edge_list.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace linkbuild {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Splits on whitespace; returns at most `max_fields + 1` fields so that
// trailing junk is detectable.
std::vector<std::string_view> split_fields(std::string_view s, std::size_t max_fields) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size() && out.size() <= max_fields) {
    while (i < s.size() && is_space(s[i])) ++i;
    if (i == s.size()) break;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t parse_index(std::string_view field, std::size_t line) {
  if (!field.empty() && field.front() == '-') {
    throw ParseError(line, "negative id '" + std::string(field) + "'");
  }
  std::uint64_t value = 0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  if (!field.empty() && field.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

DirectedGraph load_edge_list(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  bool have_n = false;
  std::uint64_t n = 0;
  std::vector<Edge> edges;

  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (!have_n) {
      const auto fields = split_fields(line, 1);
      if (fields.size() != 1) throw ParseError(line_no, "expected node count");
      n = parse_index(fields[0], line_no);
      if (n > std::numeric_limits<NodeId>::max()) throw ParseError(line_no, "node count too large");
      have_n = true;
      continue;
    }

    const auto fields = split_fields(line, 2);
    if (fields.size() != 2) throw ParseError(line_no, "expected 'u v'");
    const auto u = parse_index(fields[0], line_no);
    const auto v = parse_index(fields[1], line_no);
    if (u >= n || v >= n) {
      throw ParseError(line_no, "endpoint " + std::to_string(u >= n ? u : v) +
                                    " out of range for n=" + std::to_string(n));
    }
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  if (!have_n) throw ParseError(0, "missing node count");
  return DirectedGraph::build(static_cast<std::size_t>(n), edges);
}

DirectedGraph load_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_edge_list(in);
}

DirectedGraph load_edge_list_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  return load_edge_list(in);
}

void save_edge_list(const DirectedGraph& g, std::ostream& out) {
  out << g.num_nodes() << '\n';
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v : g.out_neighbors(u)) out << u << ' ' << v << '\n';
  }
}

std::string save_edge_list(const DirectedGraph& g) {
  std::ostringstream out;
  save_edge_list(g, out);
  return out.str();
}

void save_edge_list_file(const DirectedGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(0, "cannot write " + path.string());
  save_edge_list(g, out);
}

}  // namespace linkbuild
