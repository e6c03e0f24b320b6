#include "linkbuild/selectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "parallel.hpp"

namespace linkbuild {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::naive: return "naive";
    case Strategy::r_greedy: return "rgreedy";
    case Strategy::pi_greedy: return "pigreedy";
    case Strategy::exhaustive: return "exhaustive";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "naive") return Strategy::naive;
  if (name == "rgreedy" || name == "r-greedy") return Strategy::r_greedy;
  if (name == "pigreedy" || name == "pi-greedy") return Strategy::pi_greedy;
  if (name == "exhaustive") return Strategy::exhaustive;
  throw std::invalid_argument("unknown strategy '" + std::string(name) +
                              "' (expected naive, rgreedy, pigreedy or exhaustive)");
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step.
    const std::uint64_t num = n - k + i;
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t r = result / g;
    const std::uint64_t d = i / g;
    const std::uint64_t m = num / d;
    if (r > std::numeric_limits<std::uint64_t>::max() / m) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result = r * m;
  }
  return result;
}

std::vector<NodeId> candidate_set(const DirectedGraph& g, NodeId x) {
  if (x >= g.num_nodes()) throw GraphError("target " + std::to_string(x) + " out of range");
  std::vector<NodeId> out;
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    if (i != x && !g.has_edge(i, x)) out.push_back(i);
  }
  return out;
}

double pi_with_backlinks(const DirectedGraph& g, NodeId x, std::span<const NodeId> sources,
                         const SurferParams& params) {
  return pagerank(BacklinkView(g, x, sources), params)[x];
}

namespace {

bool within_tie(double v, double best) {
  return v >= best - kTieRelTol * std::max(std::abs(best), std::abs(v));
}

// Index of the tie-winning maximum; `ids` ascending in parallel with `values`
// is not required, the smallest id among near-maxima wins.
std::size_t tie_argmax(const std::vector<double>& values, const std::vector<NodeId>& ids) {
  const double best = *std::max_element(values.begin(), values.end());
  std::size_t win = values.size();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (within_tie(values[i], best) && (win == values.size() || ids[i] < ids[win])) win = i;
  }
  return win;
}

std::vector<NodeId> checked_candidates(const DirectedGraph& g, NodeId x, std::size_t k) {
  if (k == 0) throw SelectionError("k must be at least 1");
  auto cands = candidate_set(g, x);
  if (k > cands.size()) {
    throw SelectionError("k=" + std::to_string(k) + " exceeds the " +
                         std::to_string(cands.size()) + " available backlink candidates");
  }
  return cands;
}

SelectionResult finish(Strategy s, const DirectedGraph& g, NodeId x, double initial_pi,
                       std::vector<NodeId> sources, std::vector<SelectionStep> trace,
                       const SurferParams& params) {
  SelectionResult r;
  r.strategy = s;
  r.target = x;
  std::sort(sources.begin(), sources.end());
  r.final_pi_x = pi_with_backlinks(g, x, sources, params);
  r.sources = std::move(sources);
  r.initial_pi_x = initial_pi;
  r.trace = std::move(trace);
  return r;
}

void erase_value(std::vector<NodeId>& v, NodeId id) {
  v.erase(std::find(v.begin(), v.end(), id));
}

}  // namespace

SelectionResult naive_select(const DirectedGraph& g, NodeId x, std::size_t k,
                             const SelectorOptions& opts) {
  auto cands = checked_candidates(g, x, k);
  const auto pi = pagerank(g, opts.surfer);

  std::vector<double> score(cands.size());
  for (std::size_t i = 0; i < cands.size(); ++i) {
    score[i] = pi[cands[i]] / static_cast<double>(g.outdeg(cands[i]) + 1);
  }

  std::vector<NodeId> chosen;
  std::vector<SelectionStep> trace;
  for (std::size_t round = 0; round < k; ++round) {
    const std::size_t w = tie_argmax(score, cands);
    chosen.push_back(cands[w]);
    trace.push_back({cands[w], score[w]});
    score.erase(score.begin() + static_cast<std::ptrdiff_t>(w));
    cands.erase(cands.begin() + static_cast<std::ptrdiff_t>(w));
  }
  return finish(Strategy::naive, g, x, pi[x], std::move(chosen), std::move(trace), opts.surfer);
}

SelectionResult r_greedy_select(const DirectedGraph& g, NodeId x, std::size_t k,
                                const SelectorOptions& opts) {
  auto remaining = checked_candidates(g, x, k);
  const auto& params = opts.surfer;
  const double alpha = params.alpha;
  const double scale = (1.0 - alpha) / static_cast<double>(g.num_nodes());
  const double initial_pi = pagerank(g, params)[x];

  std::vector<NodeId> chosen;
  std::vector<SelectionStep> trace;
  for (std::size_t round = 0; round < k; ++round) {
    auto evaluate = [&](NodeId u) {
      auto trial = chosen;
      trial.push_back(u);
      return reachability(BacklinkView(g, x, trial), params);
    };

    std::vector<NodeId> evaluated_ids;
    std::vector<double> evaluated;
    if (!opts.prune) {
      evaluated_ids = remaining;
      evaluated = detail::parallel_map<double>(remaining.size(), opts.threads,
                                               [&](std::size_t i) { return evaluate(remaining[i]); });
    } else {
      // Adding u -> x raises r_x by (f'_u - f_u) * sum_i G_iu / G_uu, where
      // f'_u <= alpha and G_uu >= 1, so (alpha - f_u) * sum_i G_iu bounds the gain.
      const BacklinkView view(g, x, chosen);
      const auto f = reach_probabilities(view, params);
      const auto visits = visit_totals(view, params);
      double base = 1.0;
      for (NodeId i = 0; i < f.size(); ++i) {
        if (i != x) base += f[i];
      }

      std::vector<double> bound(remaining.size());
      for (std::size_t i = 0; i < remaining.size(); ++i) {
        const NodeId u = remaining[i];
        bound[i] = std::max(0.0, alpha - f[u]) * (visits.totals[u] + visits.remainder);
      }
      std::vector<std::size_t> order(remaining.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return bound[a] > bound[b]; });

      const std::size_t batch = detail::resolve_threads(opts.threads, remaining.size());
      double best = -std::numeric_limits<double>::infinity();
      std::size_t pos = 0;
      while (pos < order.size()) {
        const double cutoff = best - kTieRelTol * std::abs(best) - 1e-9 * std::max(1.0, best);
        if (base + bound[order[pos]] * (1.0 + 1e-9) < cutoff) break;
        const std::size_t end = std::min(order.size(), pos + batch);
        auto vals = detail::parallel_map<double>(end - pos, opts.threads, [&](std::size_t i) {
          return evaluate(remaining[order[pos + i]]);
        });
        for (std::size_t i = 0; i < vals.size(); ++i) {
          evaluated_ids.push_back(remaining[order[pos + i]]);
          evaluated.push_back(vals[i]);
          best = std::max(best, vals[i]);
        }
        pos = end;
      }
    }

    const std::size_t w = tie_argmax(evaluated, evaluated_ids);
    const NodeId u = evaluated_ids[w];
    chosen.push_back(u);
    trace.push_back({u, scale * evaluated[w]});
    erase_value(remaining, u);
  }
  return finish(Strategy::r_greedy, g, x, initial_pi, std::move(chosen), std::move(trace), params);
}

SelectionResult pi_greedy_select(const DirectedGraph& g, NodeId x, std::size_t k,
                                 const SelectorOptions& opts) {
  auto remaining = checked_candidates(g, x, k);
  const double initial_pi = pagerank(g, opts.surfer)[x];

  std::vector<NodeId> chosen;
  std::vector<SelectionStep> trace;
  for (std::size_t round = 0; round < k; ++round) {
    auto vals = detail::parallel_map<double>(remaining.size(), opts.threads, [&](std::size_t i) {
      auto trial = chosen;
      trial.push_back(remaining[i]);
      return pi_with_backlinks(g, x, trial, opts.surfer);
    });
    const std::size_t w = tie_argmax(vals, remaining);
    const NodeId u = remaining[w];
    chosen.push_back(u);
    trace.push_back({u, vals[w]});
    erase_value(remaining, u);
  }
  return finish(Strategy::pi_greedy, g, x, initial_pi, std::move(chosen), std::move(trace),
                opts.surfer);
}

namespace {

// Lexicographic successor of a k-combination of [0, m); false when exhausted.
bool next_combination(std::vector<std::size_t>& idx, std::size_t m) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (idx[i] < m - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

SelectionResult exhaustive_select(const DirectedGraph& g, NodeId x, std::size_t k,
                                  const SelectorOptions& opts) {
  const auto cands = checked_candidates(g, x, k);
  const std::uint64_t total = binomial(cands.size(), k);
  if (total > opts.enumeration_cap) {
    throw SelectionError("exhaustive search needs " + std::to_string(total) +
                         " subsets, above the cap of " + std::to_string(opts.enumeration_cap) +
                         "; use a smaller instance or budget");
  }
  const double initial_pi = pagerank(g, opts.surfer)[x];

  // Subsets are evaluated in chunks so memory stays bounded by the chunk.
  constexpr std::size_t kChunk = 4096;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(total));
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  bool more = true;
  while (more) {
    std::vector<std::vector<NodeId>> chunk;
    while (more && chunk.size() < kChunk) {
      std::vector<NodeId> s(k);
      for (std::size_t j = 0; j < k; ++j) s[j] = cands[idx[j]];
      chunk.push_back(std::move(s));
      more = next_combination(idx, cands.size());
    }
    auto vals = detail::parallel_map<double>(chunk.size(), opts.threads, [&](std::size_t i) {
      return pi_with_backlinks(g, x, chunk[i], opts.surfer);
    });
    values.insert(values.end(), vals.begin(), vals.end());
  }

  const double best = *std::max_element(values.begin(), values.end());
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < values.size(); ++i, next_combination(idx, cands.size())) {
    if (!within_tie(values[i], best)) continue;
    std::vector<NodeId> chosen(k);
    std::vector<SelectionStep> trace;
    for (std::size_t j = 0; j < k; ++j) {
      chosen[j] = cands[idx[j]];
      trace.push_back({chosen[j], values[i]});
    }
    return finish(Strategy::exhaustive, g, x, initial_pi, std::move(chosen), std::move(trace),
                  opts.surfer);
  }
  throw SelectionError("exhaustive search found no maximizer");  // unreachable
}

SelectionResult select(Strategy strategy, const DirectedGraph& g, NodeId x, std::size_t k,
                       const SelectorOptions& opts) {
  switch (strategy) {
    case Strategy::naive: return naive_select(g, x, k, opts);
    case Strategy::r_greedy: return r_greedy_select(g, x, k, opts);
    case Strategy::pi_greedy: return pi_greedy_select(g, x, k, opts);
    case Strategy::exhaustive: return exhaustive_select(g, x, k, opts);
  }
  throw std::invalid_argument("unknown strategy");
}

}  // namespace linkbuild
