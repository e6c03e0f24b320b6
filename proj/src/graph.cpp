#include "linkbuild/graph.hpp"

#include <algorithm>

namespace linkbuild {

namespace {

std::string edge_str(NodeId u, NodeId v) {
  return "(" + std::to_string(u) + ", " + std::to_string(v) + ")";
}

}  // namespace

DirectedGraph DirectedGraph::build(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::size_t> degree(n, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw GraphError("edge " + edge_str(u, v) + " has an endpoint out of range for n=" +
                       std::to_string(n));
    }
    ++degree[u];
  }

  DirectedGraph g;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
  g.targets_.resize(edges.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) g.targets_[cursor[u]++] = v;

  // Sort each row and drop duplicates, compacting in place.
  std::size_t write = 0;
  std::size_t row_begin = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t row_end = g.offsets_[i + 1];
    auto first = g.targets_.begin() + static_cast<std::ptrdiff_t>(row_begin);
    auto last = g.targets_.begin() + static_cast<std::ptrdiff_t>(row_end);
    std::sort(first, last);
    last = std::unique(first, last);
    g.offsets_[i] = write;
    for (auto it = first; it != last; ++it) g.targets_[write++] = *it;
    row_begin = row_end;
  }
  g.offsets_[n] = write;
  g.targets_.resize(write);
  g.targets_.shrink_to_fit();
  return g;
}

bool DirectedGraph::has_edge(NodeId u, NodeId v) const {
  const auto row = out_neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<Edge> DirectedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (NodeId v : out_neighbors(u)) out.emplace_back(u, v);
  }
  return out;
}

std::vector<NodeId> DirectedGraph::in_neighbors(NodeId v) const {
  std::vector<NodeId> out;
  for (NodeId u = 0; u < num_nodes(); ++u) {
    if (has_edge(u, v)) out.push_back(u);
  }
  return out;
}

DirectedGraph add_edge(const DirectedGraph& g, NodeId u, NodeId v) {
  const std::size_t n = g.num_nodes();
  if (u >= n || v >= n) {
    throw GraphError("edge " + edge_str(u, v) + " has an endpoint out of range for n=" +
                     std::to_string(n));
  }
  if (g.has_edge(u, v)) return g;
  auto edges = g.edges();
  edges.emplace_back(u, v);
  return DirectedGraph::build(n, edges);
}

BacklinkView::BacklinkView(const DirectedGraph& g, NodeId target, std::span<const NodeId> sources)
    : graph_(&g), target_(target) {
  const std::size_t n = g.num_nodes();
  if (target >= n) {
    throw GraphError("target " + std::to_string(target) + " out of range for n=" +
                     std::to_string(n));
  }
  if (sources.empty()) return;
  added_.assign(n, 0);
  for (NodeId s : sources) {
    if (s >= n) {
      throw GraphError("backlink source " + std::to_string(s) + " out of range for n=" +
                       std::to_string(n));
    }
    if (s == target) throw GraphError("backlink source equals the target node");
    if (!g.has_edge(s, target)) added_[s] = 1;
  }
}

DirectedGraph BacklinkView::materialize() const {
  auto edges = graph_->edges();
  for (NodeId i = 0; i < num_nodes(); ++i) {
    if (adds_link(i)) edges.emplace_back(i, target_);
  }
  return DirectedGraph::build(num_nodes(), edges);
}

}  // namespace linkbuild
