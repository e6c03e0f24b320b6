#include "linkbuild/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "parallel.hpp"

namespace linkbuild {

// ---------------------------------------------------------------------------
// Tables

std::string format_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12g", v);
      return buf;
    }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

std::size_t Table::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::out_of_range("no column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_field(fields[i]);
  }
  out << '\n';
}

}  // namespace

void Table::write_csv(std::ostream& out) const {
  write_csv_row(out, header);
  for (const auto& row : rows) {
    std::vector<std::string> fields;
    fields.reserve(row.size());
    for (const auto& c : row) fields.push_back(format_cell(c));
    write_csv_row(out, fields);
  }
}

void Table::write_json(std::ostream& out) const {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < header.size() && i < row.size(); ++i) {
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>) {
              // Round-trip through the 12-digit CSV form so both outputs agree.
              obj[header[i]] = std::isfinite(v) ? nlohmann::ordered_json(std::stod(format_cell(v)))
                                                : nlohmann::ordered_json(nullptr);
            } else {
              obj[header[i]] = v;
            }
          },
          row[i]);
    }
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << '\n';
}

Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char ch = line[i];
      if (quoted) {
        if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else if (ch == '"') {
          quoted = false;
        } else {
          cur += ch;
        }
      } else if (ch == '"') {
        quoted = true;
      } else if (ch == ',') {
        fields.push_back(std::move(cur));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    fields.push_back(std::move(cur));
    if (first) {
      t.header = std::move(fields);
      first = false;
    } else {
      if (fields.size() != t.header.size()) {
        throw std::runtime_error("csv row has " + std::to_string(fields.size()) +
                                 " fields, header has " + std::to_string(t.header.size()));
      }
      std::vector<Cell> row(fields.begin(), fields.end());
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Random graphs

DirectedGraph random_digraph(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      if (i != j && rng.uniform() < p) edges.emplace_back(i, j);
    }
  }
  return DirectedGraph::build(n, edges);
}

namespace {

SelectorOptions with_alpha(SelectorOptions opts, double alpha) {
  opts.surfer.alpha = alpha;
  return opts;
}

Cell opt_cell(const std::optional<double>& v) {
  return v ? Cell(*v) : Cell(std::string());
}

bool exhaustive_feasible(const DirectedGraph& g, NodeId x, std::size_t k, double budget) {
  const auto m = candidate_set(g, x).size();
  const double subsets = static_cast<double>(binomial(m, k));
  return subsets * static_cast<double>(g.num_nodes() + g.num_edges()) <= budget;
}

Cell to_cell(std::size_t v) { return Cell(static_cast<std::int64_t>(v)); }

}  // namespace

// ---------------------------------------------------------------------------
// Naive on cycle-vs-sink

std::vector<std::pair<std::size_t, std::size_t>> default_theorem1_points() {
  return {{8, 2}, {20, 5}, {40, 10}, {100, 25}, {200, 50}};
}

std::vector<Theorem1Row> run_theorem1(const Theorem1Config& cfg) {
  auto points = cfg.points.empty() ? default_theorem1_points() : cfg.points;
  std::sort(points.begin(), points.end());
  const auto opts = with_alpha(cfg.selector, cfg.alpha);
  // Instances run one at a time; each selector parallelizes internally.
  std::vector<Theorem1Row> rows;
  for (const auto& [u, k] : points) {
    FamilyOptions fo;
    fo.max_clique_degree = cfg.max_clique_degree;
    fo.surfer = opts.surfer;
    const auto inst = cycle_vs_sink(u, k, cfg.delta, cfg.alpha, fo);
    const auto& p = inst.params;
    const auto naive = naive_select(inst.graph, inst.target, k, opts);
    const auto sinks = inst.nodes_with(Role::sink);

    Theorem1Row r;
    r.u = u;
    r.k = k;
    r.t_c = p.t_c;
    r.t_s = p.t_s;
    r.t_i = p.t_i;
    r.n = p.n;
    r.lambda = p.lambda;
    r.naive_picks_cycle = naive.sources == inst.nodes_with(Role::cycle);
    r.pi_x_naive = naive.final_pi_x;
    r.pi_x_optimal = pi_with_backlinks(inst.graph, inst.target, sinks, opts.surfer);
    r.empirical_ratio = r.pi_x_optimal / r.pi_x_naive;
    const auto shape = FamilyShape::of(p);
    r.system_ratio = system_ratio(Family::cycle_vs_sink, cfg.alpha, shape, SinkMass::exact);
    r.large_clique_ratio =
        system_ratio(Family::cycle_vs_sink, cfg.alpha, shape, SinkMass::vanishing);
    r.formula_ratio = naive_ratio(cfg.alpha, static_cast<double>(k), static_cast<double>(p.t_s),
                              static_cast<double>(p.t_c));
    if (exhaustive_feasible(inst.graph, inst.target, k, cfg.exhaustive_budget)) {
      const auto best = exhaustive_select(inst.graph, inst.target, k, opts);
      r.exhaustive_ratio = best.final_pi_x / r.pi_x_naive;
    }
    r.limit_ratio = naive_limit(cfg.alpha, cfg.delta);
    r.lower_bound = theorem1_bound(cfg.alpha);
    rows.push_back(r);
  }
  return rows;
}

Table theorem1_table(const std::vector<Theorem1Row>& rows) {
  Table t;
  t.header = {"u",           "k",           "t_c",          "t_s",
              "t_i",         "n",           "lambda",       "naive_picks_cycle",
              "pi_x_naive",  "pi_x_optimal", "empirical_ratio", "system_ratio",
              "large_clique_ratio", "formula_ratio", "exhaustive_ratio", "limit_ratio",
              "lower_bound"};
  for (const auto& r : rows) {
    t.rows.push_back({to_cell(r.u), to_cell(r.k), to_cell(r.t_c), to_cell(r.t_s), to_cell(r.t_i),
                      to_cell(r.n), r.lambda, r.naive_picks_cycle, r.pi_x_naive, r.pi_x_optimal,
                      r.empirical_ratio, r.system_ratio, r.large_clique_ratio, r.formula_ratio,
                      opt_cell(r.exhaustive_ratio), r.limit_ratio, r.lower_bound});
  }
  return t;
}

// ---------------------------------------------------------------------------
// r-Greedy on sink-vs-sink

std::vector<std::size_t> default_theorem3_sizes() { return {5, 10, 20, 50, 100, 200, 500}; }

std::vector<Theorem3Row> run_theorem3(const Theorem3Config& cfg) {
  auto cs = cfg.cs.empty() ? default_theorem3_sizes() : cfg.cs;
  std::sort(cs.begin(), cs.end());
  const auto opts = with_alpha(cfg.selector, cfg.alpha);
  std::vector<Theorem3Row> rows;
  for (std::size_t c : cs) {
    FamilyOptions fo;
    fo.max_clique_degree = cfg.max_clique_degree;
    fo.surfer = opts.surfer;
    const auto inst = sink_vs_sink(c, cfg.k, cfg.alpha, fo);
    const auto& p = inst.params;
    const auto rg = r_greedy_select(inst.graph, inst.target, cfg.k, opts);
    const auto light = inst.nodes_with(Role::light);
    const auto shaded = inst.nodes_with(Role::shaded);

    Theorem3Row r;
    r.c = c;
    r.k = cfg.k;
    r.t_b = p.t_b;
    r.t_c = p.t_c;
    r.t_i = p.t_i;
    r.n = p.n;
    r.rgreedy_choice = rg.sources == light ? "light" : rg.sources == shaded ? "shaded" : "mixed";
    r.pi_x_rgreedy = rg.final_pi_x;
    r.pi_x_optimal = pi_with_backlinks(inst.graph, inst.target, shaded, opts.surfer);
    r.empirical_ratio = r.pi_x_optimal / r.pi_x_rgreedy;
    r.system_ratio = system_ratio(Family::sink_vs_sink, cfg.alpha, FamilyShape::of(p));
    r.formula_ratio =
        rgreedy_ratio(cfg.alpha, static_cast<double>(cfg.k), static_cast<double>(c));
    if (exhaustive_feasible(inst.graph, inst.target, cfg.k, cfg.exhaustive_budget)) {
      const auto best = exhaustive_select(inst.graph, inst.target, cfg.k, opts);
      r.exhaustive_ratio = best.final_pi_x / r.pi_x_rgreedy;
    }
    r.bound = rgreedy_limit(cfg.alpha);
    rows.push_back(r);
  }
  return rows;
}

Table theorem3_table(const std::vector<Theorem3Row>& rows) {
  Table t;
  t.header = {"c",           "k",            "t_b",          "t_c",
              "t_i",         "n",            "rgreedy_choice", "pi_x_rgreedy",
              "pi_x_optimal", "empirical_ratio", "system_ratio", "formula_ratio",
              "exhaustive_ratio", "bound"};
  for (const auto& r : rows) {
    t.rows.push_back({to_cell(r.c), to_cell(r.k), to_cell(r.t_b), to_cell(r.t_c), to_cell(r.t_i),
                      to_cell(r.n), r.rgreedy_choice, r.pi_x_rgreedy, r.pi_x_optimal,
                      r.empirical_ratio, r.system_ratio, r.formula_ratio,
                      opt_cell(r.exhaustive_ratio), r.bound});
  }
  return t;
}

// ---------------------------------------------------------------------------
// r-Greedy guarantee

std::vector<GuaranteeInstance> guarantee_instances(const GuaranteeConfig& cfg) {
  if (cfg.max_n < 2) throw std::invalid_argument("guarantee sweep needs max_n >= 2");
  if (cfg.max_k < 1) throw std::invalid_argument("guarantee sweep needs max_k >= 1");
  Rng rng(cfg.seed);
  std::vector<GuaranteeInstance> out;
  for (std::size_t idx = 0; idx < cfg.instances; ++idx) {
    GuaranteeInstance inst;
    inst.index = idx;
    inst.edge_probability = kSweepEdgeProbabilities[idx % std::size(kSweepEdgeProbabilities)];
    for (;;) {
      const std::size_t n = rng.between(2, cfg.max_n);
      inst.graph = random_digraph(n, inst.edge_probability, rng);
      inst.target = static_cast<NodeId>(rng.below(n));
      const auto m = candidate_set(inst.graph, inst.target).size();
      if (m == 0) continue;
      inst.k = rng.between(1, std::min(cfg.max_k, m));
      break;
    }
    out.push_back(std::move(inst));
  }
  return out;
}

GuaranteeReport run_guarantee(const GuaranteeConfig& cfg) {
  auto inner = with_alpha(cfg.selector, cfg.alpha);
  const std::size_t outer_threads = inner.threads;
  inner.threads = 1;

  GuaranteeReport rep;
  rep.alpha = cfg.alpha;
  rep.factor = theorem2_factor(cfg.alpha);
  rep.e_bound = 1.0 - 1.0 / std::numbers::e;
  rep.instances = guarantee_instances(cfg);

  auto evaluated = detail::parallel_map<GuaranteeInstance>(
      rep.instances.size(), outer_threads, [&](std::size_t i) {
        auto inst = rep.instances[i];
        const auto rg = r_greedy_select(inst.graph, inst.target, inst.k, inner);
        const auto opt = exhaustive_select(inst.graph, inst.target, inst.k, inner);
        inst.pi_rgreedy = rg.final_pi_x;
        inst.pi_optimal = opt.final_pi_x;
        inst.reach_obj_rgreedy =
            surfer_metrics(BacklinkView(inst.graph, inst.target, rg.sources), inner.surfer)
                .reach_objective();
        inst.reach_obj_optimal =
            surfer_metrics(BacklinkView(inst.graph, inst.target, opt.sources), inner.surfer)
                .reach_objective();
        return inst;
      });
  rep.instances = std::move(evaluated);

  rep.min_ratio = std::numeric_limits<double>::infinity();
  rep.min_reach_ratio = std::numeric_limits<double>::infinity();
  for (const auto& inst : rep.instances) {
    rep.min_ratio = std::min(rep.min_ratio, inst.ratio());
    rep.min_reach_ratio = std::min(rep.min_reach_ratio, inst.reach_ratio());
    if (inst.ratio() < rep.factor - 1e-10 || inst.reach_ratio() < rep.e_bound - 1e-10) {
      rep.violations.push_back(inst.index);
    }
  }
  return rep;
}

Table GuaranteeReport::table() const {
  Table t;
  t.header = {"instance",   "n",          "edges",       "edge_probability", "target",
              "k",          "pi_rgreedy", "pi_optimal",  "ratio",            "reach_ratio",
              "factor",     "e_bound"};
  for (const auto& inst : instances) {
    t.rows.push_back({to_cell(inst.index), to_cell(inst.graph.num_nodes()),
                      to_cell(inst.graph.num_edges()), inst.edge_probability,
                      to_cell(inst.target), to_cell(inst.k), inst.pi_rgreedy, inst.pi_optimal,
                      inst.ratio(), inst.reach_ratio(), factor, e_bound});
  }
  return t;
}

// ---------------------------------------------------------------------------
// Non-submodularity witness

namespace {

std::vector<NodeId> subset_of(const std::vector<NodeId>& cands, std::uint32_t mask) {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (mask & (1u << i)) out.push_back(cands[i]);
  }
  return out;
}

constexpr double kWitnessMargin = 1e-10;
constexpr std::size_t kWitnessMaxCandidates = 12;

}  // namespace

std::optional<Witness> find_nonsubmodular_witness(const WitnessConfig& cfg) {
  if (cfg.max_n < 2) return std::nullopt;
  SurferParams sp = cfg.surfer;
  sp.alpha = cfg.alpha;
  Rng rng(cfg.seed);
  for (std::size_t t = 0; t < cfg.instances; ++t) {
    const std::size_t n = rng.between(2, cfg.max_n);
    const double p = kSweepEdgeProbabilities[t % std::size(kSweepEdgeProbabilities)];
    const auto g = random_digraph(n, p, rng);
    for (NodeId x = 0; x < n; ++x) {
      const auto cands = candidate_set(g, x);
      const std::size_t m = cands.size();
      if (m < 2 || m > kWitnessMaxCandidates) continue;
      const std::uint32_t full = (1u << m) - 1;
      std::vector<double> value(full + 1);
      for (std::uint32_t mask = 0; mask <= full; ++mask) {
        value[mask] = pi_with_backlinks(g, x, subset_of(cands, mask), sp);
      }
      for (std::uint32_t b = 1; b <= full; ++b) {
        for (std::size_t yi = 0; yi < m; ++yi) {
          const std::uint32_t ybit = 1u << yi;
          if (b & ybit) continue;
          const double gain_b = value[b | ybit] - value[b];
          // Proper submasks of b, including the empty set.
          for (std::uint32_t a = (b - 1) & b;; a = (a - 1) & b) {
            const double gain_a = value[a | ybit] - value[a];
            if (gain_b - gain_a > kWitnessMargin) {
              Witness w;
              w.graph = g;
              w.target = x;
              w.a = subset_of(cands, a);
              w.b = subset_of(cands, b);
              w.y = cands[yi];
              w.pi_a = value[a];
              w.pi_ay = value[a | ybit];
              w.pi_b = value[b];
              w.pi_by = value[b | ybit];
              return w;
            }
            if (a == 0) break;
          }
        }
      }
    }
  }
  return std::nullopt;
}

bool verify_witness(const Witness& w, const SurferParams& params) {
  const std::size_t n = w.graph.num_nodes();
  if (w.target >= n || w.y >= n || w.y == w.target) return false;
  if (!std::includes(w.b.begin(), w.b.end(), w.a.begin(), w.a.end()) || w.a.size() >= w.b.size()) {
    return false;
  }
  if (std::find(w.b.begin(), w.b.end(), w.y) != w.b.end()) return false;

  auto pi_of = [&](const std::vector<NodeId>& s, bool with_y) {
    DirectedGraph g = w.graph;
    for (NodeId v : s) g = add_edge(g, v, w.target);
    if (with_y) g = add_edge(g, w.y, w.target);
    return pagerank(g, params)[w.target];
  };
  const double a = pi_of(w.a, false);
  const double ay = pi_of(w.a, true);
  const double b = pi_of(w.b, false);
  const double by = pi_of(w.b, true);
  return (by - b) - (ay - a) > kWitnessMargin;
}

}  // namespace linkbuild
