#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "linkbuild/graph.hpp"

namespace linkbuild {

/// Malformed edge-list input. line() is 1-based; 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Edge-list text format:
//   # comment lines anywhere
//   n            first non-comment line: node count
//   u v          one directed edge per line, base-10, whitespace separated
// LF or CRLF line endings are accepted; the writer emits LF.
DirectedGraph load_edge_list(std::istream& in);
DirectedGraph load_edge_list(std::string_view text);
DirectedGraph load_edge_list_file(const std::filesystem::path& path);

void save_edge_list(const DirectedGraph& g, std::ostream& out);
std::string save_edge_list(const DirectedGraph& g);
void save_edge_list_file(const DirectedGraph& g, const std::filesystem::path& path);

}  // namespace linkbuild
