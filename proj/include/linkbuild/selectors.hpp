#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "linkbuild/graph.hpp"
#include "linkbuild/surfer.hpp"

namespace linkbuild {

enum class Strategy { naive, r_greedy, pi_greedy, exhaustive };

std::string_view to_string(Strategy s);
/// Accepts "naive", "rgreedy", "pigreedy", "exhaustive"; throws std::invalid_argument.
Strategy parse_strategy(std::string_view name);

class SelectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SelectionStep {
  NodeId chosen = 0;
  /// Strategy objective after the choice: pi_i/(d_i+1) for naive, pi_x/z_xx
  /// for r-Greedy, pi_x for pi-greedy and exhaustive.
  double objective = 0.0;

  bool operator==(const SelectionStep&) const = default;
};

struct SelectionResult {
  Strategy strategy = Strategy::naive;
  NodeId target = 0;
  /// Chosen backlink sources, ascending.
  std::vector<NodeId> sources;
  double initial_pi_x = 0.0;
  /// PageRank of the target in G(V, E ∪ (sources × {x})).
  double final_pi_x = 0.0;
  /// One entry per chosen source, in selection order.
  std::vector<SelectionStep> trace;

  bool operator==(const SelectionResult&) const = default;
};

struct SelectorOptions {
  SurferParams surfer;
  /// Worker threads for candidate sweeps; 0 uses hardware concurrency.
  std::size_t threads = 0;
  /// Skip r-Greedy candidates whose certified gain bound cannot win the round.
  bool prune = true;
  std::uint64_t enumeration_cap = 1'000'000;
};

/// Objectives within this relative distance of the maximum count as ties;
/// ties go to the smallest NodeId.
inline constexpr double kTieRelTol = 1e-10;

/// V \ ({x} ∪ in-neighbors of x), ascending.
std::vector<NodeId> candidate_set(const DirectedGraph& g, NodeId x);

SelectionResult naive_select(const DirectedGraph& g, NodeId x, std::size_t k,
                             const SelectorOptions& opts = {});
SelectionResult r_greedy_select(const DirectedGraph& g, NodeId x, std::size_t k,
                                const SelectorOptions& opts = {});
SelectionResult pi_greedy_select(const DirectedGraph& g, NodeId x, std::size_t k,
                                 const SelectorOptions& opts = {});
SelectionResult exhaustive_select(const DirectedGraph& g, NodeId x, std::size_t k,
                                  const SelectorOptions& opts = {});

SelectionResult select(Strategy strategy, const DirectedGraph& g, NodeId x, std::size_t k,
                       const SelectorOptions& opts = {});

/// PageRank of x after adding backlinks from `sources`.
double pi_with_backlinks(const DirectedGraph& g, NodeId x, std::span<const NodeId> sources,
                         const SurferParams& params = {});

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace linkbuild
