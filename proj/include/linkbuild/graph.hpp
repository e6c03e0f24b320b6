#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace linkbuild {

/// Dense node index in [0, n).
using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/*
  DirectedGraph: immutable directed graph over dense node ids.

  Adjacency is stored in CSR form with each out-list sorted ascending and
  free of duplicates. Parallel edges collapse on construction; self-loops are
  kept and count toward the outdegree. Modification returns a new graph.
*/
class DirectedGraph {
 public:
  DirectedGraph() = default;

  /// Builds a graph from an edge sequence; throws GraphError on an endpoint >= n.
  static DirectedGraph build(std::size_t n, std::span<const Edge> edges);
  static DirectedGraph build(std::size_t n, std::initializer_list<Edge> edges) {
    return build(n, std::span<const Edge>(edges.begin(), edges.size()));
  }

  std::size_t num_nodes() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return targets_.size(); }

  std::span<const NodeId> out_neighbors(NodeId i) const {
    return {targets_.data() + offsets_[i], targets_.data() + offsets_[i + 1]};
  }
  std::size_t outdeg(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }
  bool is_sink(NodeId i) const { return outdeg(i) == 0; }
  bool has_edge(NodeId u, NodeId v) const;

  /// All edges in (source, target) lexicographic order.
  std::vector<Edge> edges() const;

  /// Nodes i with i -> v, ascending.
  std::vector<NodeId> in_neighbors(NodeId v) const;

  bool operator==(const DirectedGraph&) const = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

/// Returns g with the edge u -> v added (a copy of g if already present).
DirectedGraph add_edge(const DirectedGraph& g, NodeId u, NodeId v);

/*
  BacklinkView: a graph plus a set of tentative backlinks (s, x) into one
  target, evaluated without copying the adjacency. Sources that already link
  to x are recorded but change nothing, matching E ∪ (S × {x}) semantics.
*/
class BacklinkView {
 public:
  BacklinkView(const DirectedGraph& g, NodeId target, std::span<const NodeId> sources = {});

  const DirectedGraph& graph() const noexcept { return *graph_; }
  NodeId target() const noexcept { return target_; }
  std::size_t num_nodes() const noexcept { return graph_->num_nodes(); }

  /// True if i gained a new out-edge to the target in this view.
  bool adds_link(NodeId i) const { return !added_.empty() && added_[i] != 0; }

  std::size_t outdeg(NodeId i) const { return graph_->outdeg(i) + (adds_link(i) ? 1 : 0); }
  bool is_sink(NodeId i) const { return outdeg(i) == 0; }

  template <typename Fn>
  void for_each_out(NodeId i, Fn&& fn) const {
    for (NodeId j : graph_->out_neighbors(i)) fn(j);
    if (adds_link(i)) fn(target_);
  }

  /// Materializes the augmented graph.
  DirectedGraph materialize() const;

 private:
  const DirectedGraph* graph_;
  NodeId target_;
  std::vector<char> added_;
};

}  // namespace linkbuild
