#include "linkbuild/families.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "linkbuild/edge_list.hpp"

namespace linkbuild {

std::string_view to_string(Role r) {
  switch (r) {
    case Role::target: return "target";
    case Role::cycle: return "cycle";
    case Role::sink: return "sink";
    case Role::shaded: return "shaded";
    case Role::light: return "light";
    case Role::tail: return "tail";
    case Role::clique: return "clique";
  }
  return "unknown";
}

Role parse_role(std::string_view name) {
  for (Role r : {Role::target, Role::cycle, Role::sink, Role::shaded, Role::light, Role::tail,
                 Role::clique}) {
    if (to_string(r) == name) return r;
  }
  throw std::invalid_argument("unknown role '" + std::string(name) + "'");
}

std::string_view to_string(Family f) {
  return f == Family::cycle_vs_sink ? "cycle_vs_sink" : "sink_vs_sink";
}

std::vector<NodeId> FamilyInstance::nodes_with(Role role) const {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < roles.size(); ++i) {
    if (roles[i] == role) out.push_back(i);
  }
  return out;
}

double lambda_param(double alpha, std::size_t k_count, std::size_t u_size, double delta) {
  const double a = alpha;
  const double k = static_cast<double>(k_count);
  const double u = static_cast<double>(u_size);
  const double d = delta;
  const double num = ((a * a - a) * d + 2 * a * a) * k * u + 2 * ((a - 1) * d + 2 * a - 1) * k +
                     2 * (a * a - a) * d + 4 * (a * a - a);
  const double den = 2 * a * a * k * u + ((2 * a * a - 2 * a) * d + 4 * a * a - 2 * a) * k +
                     (2 * a * a * a - 2 * a * a) * d + 4 * a * a * a - 4 * a * a;
  const double lambda = num / den;
  if (!(1.0 - lambda * alpha > 0.0)) {
    throw FamilyError("lambda=" + std::to_string(lambda) +
                      " gives a non-positive 1 - lambda*alpha; no valid sink tail length");
  }
  return lambda;
}

double sink_tail_length(double alpha, std::size_t k, std::size_t u, double delta) {
  const double lambda = lambda_param(alpha, k, u, delta);
  return static_cast<double>(u) / (2.0 * (1.0 - lambda * alpha));
}

namespace {

class Builder {
 public:
  NodeId add(Role r) {
    roles_.push_back(r);
    return static_cast<NodeId>(roles_.size() - 1);
  }
  void link(NodeId u, NodeId v) { edges_.emplace_back(u, v); }

  void add_tails(NodeId to, std::size_t count) {
    for (std::size_t t = 0; t < count; ++t) link(add(Role::tail), to);
  }

  // Circulant digraph on `size` fresh nodes; degree size-1 is the complete digraph.
  std::size_t add_clique(std::size_t size, std::size_t max_degree) {
    const NodeId first = static_cast<NodeId>(roles_.size());
    for (std::size_t j = 0; j < size; ++j) add(Role::clique);
    const std::size_t degree = std::min(size - 1, max_degree);
    for (std::size_t j = 0; j < size; ++j) {
      for (std::size_t s = 1; s <= degree; ++s) {
        link(first + static_cast<NodeId>(j), first + static_cast<NodeId>((j + s) % size));
      }
    }
    return degree;
  }

  std::size_t size() const { return roles_.size(); }
  DirectedGraph graph() const { return DirectedGraph::build(roles_.size(), edges_); }
  std::vector<Role> take_roles() { return std::move(roles_); }

 private:
  std::vector<Role> roles_;
  std::vector<Edge> edges_;
};

std::size_t clique_size(std::size_t nominal, const FamilyOptions& opts) {
  return std::max<std::size_t>(2, opts.clique_size.value_or(nominal));
}

FamilyInstance build_cycle_vs_sink(FamilyParams p, const FamilyOptions& opts) {
  Builder b;
  const NodeId x = b.add(Role::target);
  std::vector<NodeId> cycle(p.k);
  std::vector<NodeId> sinks(p.k);
  for (auto& c : cycle) c = b.add(Role::cycle);
  for (auto& s : sinks) s = b.add(Role::sink);
  for (std::size_t i = 0; i < p.k; ++i) b.link(cycle[i], cycle[(i + 1) % p.k]);
  for (NodeId s : sinks) b.link(x, s);
  for (NodeId c : cycle) b.add_tails(c, p.t_c);
  for (NodeId s : sinks) b.add_tails(s, p.t_s);
  p.clique_degree = b.add_clique(p.t_i, opts.max_clique_degree);
  p.n = b.size();

  FamilyInstance inst;
  inst.graph = b.graph();
  inst.target = x;
  inst.roles = b.take_roles();
  inst.params = p;
  return inst;
}

// min over cycle nodes of pi/2 against max over sinks of pi.
std::pair<double, double> cycle_sink_scores(const FamilyInstance& inst, const SurferParams& sp) {
  const auto pi = pagerank(inst.graph, sp);
  double cycle_min = std::numeric_limits<double>::infinity();
  double sink_max = 0.0;
  for (NodeId i = 0; i < inst.roles.size(); ++i) {
    if (inst.roles[i] == Role::cycle) cycle_min = std::min(cycle_min, pi[i] / 2.0);
    if (inst.roles[i] == Role::sink) sink_max = std::max(sink_max, pi[i]);
  }
  return {cycle_min, sink_max};
}

}  // namespace

FamilyInstance cycle_vs_sink(std::size_t u, std::size_t k, double delta, double alpha,
                             const FamilyOptions& opts) {
  if (u < 2) throw FamilyError("cycle_vs_sink needs u >= 2");
  if (k < 2) throw FamilyError("cycle_vs_sink needs k >= 2");
  if (!(delta > 0.0)) throw FamilyError("cycle_vs_sink needs delta > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) throw FamilyError("alpha must lie in (0, 1)");

  FamilyParams p;
  p.family = Family::cycle_vs_sink;
  p.alpha = alpha;
  p.k = k;
  p.u = u;
  p.delta = delta;
  p.lambda = lambda_param(alpha, k, u, delta);
  p.t_c = u;
  p.t_i = clique_size(u * u, opts);
  const double ts_real = static_cast<double>(u) / (2.0 * (1.0 - p.lambda * alpha));
  const auto ts0 = static_cast<std::size_t>(std::max(1.0, std::round(ts_real)));

  SurferParams sp = opts.surfer;
  sp.alpha = alpha;
  double last_ratio = 0.0;
  for (std::size_t step = 0; step <= 3 && step < ts0; ++step) {
    p.t_s = ts0 - step;
    auto inst = build_cycle_vs_sink(p, opts);
    const auto [cycle_score, sink_score] = cycle_sink_scores(inst, sp);
    if (cycle_score > sink_score) return inst;
    last_ratio = 2.0 * cycle_score / sink_score;
  }
  throw FamilyError("cycle_vs_sink(u=" + std::to_string(u) + ", k=" + std::to_string(k) +
                    "): pi_c/pi_s = " + std::to_string(last_ratio) +
                    " does not exceed 2 after adjusting t_s");
}

FamilyInstance sink_vs_sink(std::size_t c, std::size_t k, double alpha, const FamilyOptions& opts) {
  if (c < 1) throw FamilyError("sink_vs_sink needs c >= 1");
  if (k < 1) throw FamilyError("sink_vs_sink needs k >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw FamilyError("alpha must lie in (0, 1)");

  FamilyParams p;
  p.family = Family::sink_vs_sink;
  p.alpha = alpha;
  p.k = k;
  p.c = c;
  p.t_b = c;
  p.t_c = c + 1;
  p.t_i = clique_size(c * c, opts);

  Builder b;
  const NodeId x = b.add(Role::target);
  std::vector<NodeId> shaded(k);
  std::vector<NodeId> light(k);
  for (auto& s : shaded) s = b.add(Role::shaded);
  for (auto& l : light) l = b.add(Role::light);
  for (NodeId s : shaded) b.link(x, s);
  for (NodeId s : shaded) b.add_tails(s, p.t_b);
  for (NodeId l : light) b.add_tails(l, p.t_c);
  p.clique_degree = b.add_clique(p.t_i, opts.max_clique_degree);
  p.n = b.size();

  FamilyInstance inst;
  inst.graph = b.graph();
  inst.target = x;
  inst.roles = b.take_roles();
  inst.params = p;
  return inst;
}

void write_roles(const FamilyInstance& inst, std::ostream& out) {
  for (NodeId i = 0; i < inst.roles.size(); ++i) out << i << ' ' << to_string(inst.roles[i]) << '\n';
}

std::vector<Role> read_roles(std::istream& in, std::size_t n) {
  std::vector<Role> roles(n, Role::tail);
  std::vector<char> seen(n, 0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    long long id = -1;
    std::string name;
    std::string extra;
    if (!(fields >> id >> name) || (fields >> extra)) {
      throw ParseError(line_no, "expected 'nodeid role'");
    }
    if (id < 0 || static_cast<std::size_t>(id) >= n) {
      throw ParseError(line_no, "node id " + std::to_string(id) + " out of range");
    }
    try {
      roles[static_cast<std::size_t>(id)] = parse_role(name);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    seen[static_cast<std::size_t>(id)] = 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen[i]) throw ParseError(0, "no role given for node " + std::to_string(i));
  }
  return roles;
}

}  // namespace linkbuild
