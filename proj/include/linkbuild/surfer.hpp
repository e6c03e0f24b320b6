#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "linkbuild/graph.hpp"

namespace linkbuild {

/// Random-surfer parameters: continuation probability alpha, L1 tolerance and
/// iteration cap shared by every fixed-point solve.
struct SurferParams {
  double alpha = 0.85;
  double tol = 1e-12;
  std::size_t max_iter = 100000;

  /// Throws std::invalid_argument unless 0 < alpha < 1, tol > 0, max_iter >= 1.
  void validate() const;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual, std::size_t iterations)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + " after " +
                           std::to_string(iterations) + " iterations)"),
        residual_(residual),
        iterations_(iterations) {}
  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  std::size_t iterations_;
};

struct PageRankVector {
  std::vector<double> values;
  std::size_t iterations = 0;
  /// L1 norm of pi^T - pi^T Q at the returned vector's predecessor; an upper
  /// bound for the returned vector's own residual.
  double residual = 0.0;

  double operator[](NodeId i) const { return values[i]; }
  std::size_t size() const noexcept { return values.size(); }
  double sum() const;
};

/// Row i of Q = (1-alpha)/n + alpha P, with sinks spreading uniformly.
std::vector<double> transition_row(const DirectedGraph& g, NodeId i, double alpha);

/// Power iteration from the uniform vector; Q is never materialized.
PageRankVector pagerank(const DirectedGraph& g, const SurferParams& params = {});
PageRankVector pagerank(const BacklinkView& view, const SurferParams& params = {});

/// Probability of reaching the target before the first zap, per start node.
/// Entry x is 1 by convention. Sinks count as linking to every node,
/// themselves and the target included.
std::vector<double> reach_probabilities(const BacklinkView& view, const SurferParams& params = {});
std::vector<double> reach_probabilities(const DirectedGraph& g, NodeId x,
                                        const SurferParams& params = {});

/// Expected visits to x starting at x before the first zap (z_xx >= 1).
double visits_zxx(const BacklinkView& view, const SurferParams& params = {});
double visits_zxx(const DirectedGraph& g, NodeId x, const SurferParams& params = {});

/// r_x = 1 + sum over i != x of reach[i].
double reachability(const BacklinkView& view, const SurferParams& params = {});
double reachability(const DirectedGraph& g, NodeId x, const SurferParams& params = {});

struct SurferMetrics {
  NodeId target = 0;
  double alpha = 0.0;
  std::vector<double> reach;
  double z_xx = 1.0;
  double r_x = 1.0;

  std::size_t num_nodes() const noexcept { return reach.size(); }
  /// pi_x/z_xx = (1-alpha)/n * r_x, the quantity r-Greedy maximizes.
  double reach_objective() const;
  /// (1-alpha)/n * z_xx * r_x; equals the target's PageRank.
  double pagerank_estimate() const;
};

SurferMetrics surfer_metrics(const BacklinkView& view, const SurferParams& params = {});
SurferMetrics surfer_metrics(const DirectedGraph& g, NodeId x, const SurferParams& params = {});

/// Column sums of the Green's function of the chain absorbed at x or on a zap:
/// totals[u] = sum_i E[visits to u | start at i], for u != x (totals[x] = 0).
/// Iterates converge from below; `remainder` bounds the L1 distance to the
/// limit, so totals[u] + remainder is a certified upper bound.
struct VisitTotals {
  std::vector<double> totals;
  double remainder = 0.0;
};
VisitTotals visit_totals(const BacklinkView& view, const SurferParams& params = {});

}  // namespace linkbuild
