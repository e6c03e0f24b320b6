#include "linkbuild/surfer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace linkbuild {

void SurferParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
}

double PageRankVector::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

std::vector<double> transition_row(const DirectedGraph& g, NodeId i, double alpha) {
  const std::size_t n = g.num_nodes();
  if (i >= n) throw GraphError("node " + std::to_string(i) + " out of range");
  const double zap = (1.0 - alpha) / static_cast<double>(n);
  if (g.is_sink(i)) return std::vector<double>(n, zap + alpha / static_cast<double>(n));
  std::vector<double> row(n, zap);
  const double follow = alpha / static_cast<double>(g.outdeg(i));
  for (NodeId j : g.out_neighbors(i)) row[j] += follow;
  return row;
}

PageRankVector pagerank(const DirectedGraph& g, const SurferParams& params) {
  if (g.num_nodes() == 0) throw GraphError("pagerank of an empty graph");
  return pagerank(BacklinkView(g, 0), params);
}

PageRankVector pagerank(const BacklinkView& view, const SurferParams& params) {
  params.validate();
  const std::size_t n = view.num_nodes();
  const double alpha = params.alpha;
  const double inv_n = 1.0 / static_cast<double>(n);

  std::vector<double> cur(n, inv_n);
  std::vector<double> next(n);
  double residual = 0.0;
  for (std::size_t it = 1; it <= params.max_iter; ++it) {
    double mass = 0.0;
    double sink_mass = 0.0;
    for (NodeId i = 0; i < n; ++i) {
      mass += cur[i];
      if (view.is_sink(i)) sink_mass += cur[i];
    }
    std::fill(next.begin(), next.end(), ((1.0 - alpha) * mass + alpha * sink_mass) * inv_n);
    for (NodeId i = 0; i < n; ++i) {
      const std::size_t d = view.outdeg(i);
      if (d == 0) continue;
      const double share = alpha * cur[i] / static_cast<double>(d);
      view.for_each_out(i, [&](NodeId j) { next[j] += share; });
    }
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual += std::abs(next[i] - cur[i]);
    cur.swap(next);
    if (residual <= params.tol) return PageRankVector{std::move(cur), it, residual};
  }
  throw ConvergenceError("pagerank did not converge", residual, params.max_iter);
}

std::vector<double> reach_probabilities(const BacklinkView& view, const SurferParams& params) {
  params.validate();
  const std::size_t n = view.num_nodes();
  const NodeId x = view.target();
  const double alpha = params.alpha;
  const double stop = params.tol * (1.0 - alpha);

  std::vector<double> cur(n, 0.0);
  std::vector<double> next(n, 0.0);
  cur[x] = 1.0;
  double gap = 0.0;
  for (std::size_t it = 1; it <= params.max_iter; ++it) {
    const double total = std::accumulate(cur.begin(), cur.end(), 0.0);
    gap = 0.0;
    for (NodeId i = 0; i < n; ++i) {
      double v = 1.0;
      if (i != x) {
        const std::size_t d = view.outdeg(i);
        if (d == 0) {
          v = alpha * total / static_cast<double>(n);
        } else {
          double acc = 0.0;
          view.for_each_out(i, [&](NodeId j) { acc += cur[j]; });
          v = alpha * acc / static_cast<double>(d);
        }
      }
      next[i] = v;
      gap = std::max(gap, std::abs(v - cur[i]));
    }
    cur.swap(next);
    if (gap <= stop) return cur;
  }
  throw ConvergenceError("reach probabilities did not converge", gap, params.max_iter);
}

std::vector<double> reach_probabilities(const DirectedGraph& g, NodeId x,
                                        const SurferParams& params) {
  return reach_probabilities(BacklinkView(g, x), params);
}

namespace {

// Probability of returning to x before zapping, from the reach vector.
double return_probability(const BacklinkView& view, const std::vector<double>& reach,
                          double alpha) {
  const NodeId x = view.target();
  const std::size_t d = view.outdeg(x);
  if (d == 0) {
    const double total = std::accumulate(reach.begin(), reach.end(), 0.0);
    return alpha * total / static_cast<double>(reach.size());
  }
  double acc = 0.0;
  view.for_each_out(x, [&](NodeId j) { acc += reach[j]; });
  return alpha * acc / static_cast<double>(d);
}

double reach_sum(const std::vector<double>& reach, NodeId x) {
  double s = 1.0;
  for (NodeId i = 0; i < reach.size(); ++i) {
    if (i != x) s += reach[i];
  }
  return s;
}

}  // namespace

double visits_zxx(const BacklinkView& view, const SurferParams& params) {
  const auto reach = reach_probabilities(view, params);
  return 1.0 / (1.0 - return_probability(view, reach, params.alpha));
}

double visits_zxx(const DirectedGraph& g, NodeId x, const SurferParams& params) {
  return visits_zxx(BacklinkView(g, x), params);
}

double reachability(const BacklinkView& view, const SurferParams& params) {
  return reach_sum(reach_probabilities(view, params), view.target());
}

double reachability(const DirectedGraph& g, NodeId x, const SurferParams& params) {
  return reachability(BacklinkView(g, x), params);
}

double SurferMetrics::reach_objective() const {
  return (1.0 - alpha) / static_cast<double>(num_nodes()) * r_x;
}

double SurferMetrics::pagerank_estimate() const { return reach_objective() * z_xx; }

SurferMetrics surfer_metrics(const BacklinkView& view, const SurferParams& params) {
  SurferMetrics m;
  m.target = view.target();
  m.alpha = params.alpha;
  m.reach = reach_probabilities(view, params);
  m.z_xx = 1.0 / (1.0 - return_probability(view, m.reach, params.alpha));
  m.r_x = reach_sum(m.reach, m.target);
  return m;
}

SurferMetrics surfer_metrics(const DirectedGraph& g, NodeId x, const SurferParams& params) {
  return surfer_metrics(BacklinkView(g, x), params);
}

VisitTotals visit_totals(const BacklinkView& view, const SurferParams& params) {
  params.validate();
  const std::size_t n = view.num_nodes();
  const NodeId x = view.target();
  const double alpha = params.alpha;
  const double inv_n = 1.0 / static_cast<double>(n);
  // L1 contraction factor is alpha; scale the stop threshold with n since the
  // totals sum to roughly n/(1-alpha).
  const double stop = params.tol * (1.0 - alpha) * static_cast<double>(n);

  std::vector<double> cur(n, 0.0);
  std::vector<double> next(n, 0.0);
  double gap = 0.0;
  for (std::size_t it = 1; it <= params.max_iter; ++it) {
    double sink_pool = 0.0;
    for (NodeId i = 0; i < n; ++i) {
      if (i != x && view.is_sink(i)) sink_pool += cur[i];
    }
    std::fill(next.begin(), next.end(), 1.0 + alpha * sink_pool * inv_n);
    next[x] = 0.0;
    for (NodeId i = 0; i < n; ++i) {
      if (i == x) continue;
      const std::size_t d = view.outdeg(i);
      if (d == 0) continue;
      const double share = alpha * cur[i] / static_cast<double>(d);
      view.for_each_out(i, [&](NodeId j) {
        if (j != x) next[j] += share;
      });
    }
    gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) gap += std::abs(next[i] - cur[i]);
    cur.swap(next);
    if (gap <= stop) return VisitTotals{std::move(cur), gap * alpha / (1.0 - alpha)};
  }
  throw ConvergenceError("visit totals did not converge", gap, params.max_iter);
}

}  // namespace linkbuild
