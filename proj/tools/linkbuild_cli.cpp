// linkbuild: experiment harness for backlink selection on PageRank graphs.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 bound violation.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "linkbuild/closed_form.hpp"
#include "linkbuild/edge_list.hpp"
#include "linkbuild/experiments.hpp"
#include "linkbuild/families.hpp"
#include "linkbuild/selectors.hpp"

namespace lb = linkbuild;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitViolation = 3;

struct Common {
  double alpha = 0.85;
  double tol = 1e-12;
  std::string format;
  std::string out;
  std::size_t threads = 0;

  lb::SelectorOptions selector() const {
    lb::SelectorOptions o;
    o.surfer.alpha = alpha;
    o.surfer.tol = tol;
    o.threads = threads;
    return o;
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw lb::ParseError(0, "cannot write " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void emit(const lb::Table& t, const Common& c) {
  Output out(c.out);
  if (c.format == "json") {
    t.write_json(out.stream());
  } else {
    t.write_csv(out.stream());
  }
}

void add_common(CLI::App* cmd, Common& c, const std::string& default_format) {
  c.format = default_format;
  cmd->add_option("--alpha", c.alpha, "continuation probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--tol", c.tol, "L1 convergence tolerance")->capture_default_str();
  cmd->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"csv", "json", "text"}))
      ->capture_default_str();
  cmd->add_option("--out", c.out, "write output to PATH instead of stdout");
  cmd->add_option("--threads", c.threads, "worker threads (0 = all cores)")->capture_default_str();
}

std::string join_ids(const std::vector<lb::NodeId>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? " " : "") + std::to_string(ids[i]);
  return s;
}

// ---------------------------------------------------------------------------

struct SelectArgs {
  Common common;
  std::string graph;
  lb::NodeId x = 0;
  std::size_t k = 1;
  std::string strategy = "rgreedy";
};

int run_select(const SelectArgs& a) {
  const auto g = lb::load_edge_list_file(a.graph);
  const auto strategy = lb::parse_strategy(a.strategy);
  const auto r = lb::select(strategy, g, a.x, a.k, a.common.selector());

  Output out(a.common.out);
  auto& os = out.stream();
  if (a.common.format == "json") {
    nlohmann::ordered_json j;
    j["strategy"] = lb::to_string(r.strategy);
    j["target"] = r.target;
    j["k"] = a.k;
    j["sources"] = r.sources;
    j["pi_x_before"] = r.initial_pi_x;
    j["pi_x_after"] = r.final_pi_x;
    auto trace = nlohmann::ordered_json::array();
    for (const auto& s : r.trace) trace.push_back({{"chosen", s.chosen}, {"objective", s.objective}});
    j["trace"] = trace;
    os << j.dump(2) << '\n';
  } else if (a.common.format == "csv") {
    lb::Table t;
    t.header = {"strategy", "target", "step", "chosen", "objective", "pi_x_before", "pi_x_after"};
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      t.rows.push_back({std::string(lb::to_string(r.strategy)), std::int64_t{r.target},
                        static_cast<std::int64_t>(i + 1), std::int64_t{r.trace[i].chosen},
                        r.trace[i].objective, r.initial_pi_x, r.final_pi_x});
    }
    t.write_csv(os);
  } else {
    os << "strategy: " << lb::to_string(r.strategy) << '\n'
       << "target: " << r.target << '\n'
       << "sources: " << join_ids(r.sources) << '\n'
       << "pi_x_before: " << lb::format_cell(r.initial_pi_x) << '\n'
       << "pi_x_after: " << lb::format_cell(r.final_pi_x) << '\n'
       << "trace:\n";
    for (std::size_t i = 0; i < r.trace.size(); ++i) {
      os << "  " << i + 1 << ": node " << r.trace[i].chosen << " objective "
         << lb::format_cell(r.trace[i].objective) << '\n';
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------

template <typename A, typename B>
std::vector<std::pair<A, B>> combine(const std::vector<A>& as, const std::vector<B>& bs,
                                     bool paired) {
  std::vector<std::pair<A, B>> out;
  if (paired) {
    if (as.size() != bs.size()) throw CLI::ValidationError("--paired needs equally many values");
    for (std::size_t i = 0; i < as.size(); ++i) out.emplace_back(as[i], bs[i]);
  } else {
    for (const auto& a : as) {
      for (const auto& b : bs) out.emplace_back(a, b);
    }
  }
  return out;
}

struct Theorem1Args {
  Common common;
  std::vector<std::size_t> us;
  std::vector<std::size_t> ks;
  bool paired = false;
  double delta = 0.01;
  std::size_t clique_degree = 8;
};

int run_theorem1(const Theorem1Args& a) {
  lb::Theorem1Config cfg;
  cfg.alpha = a.common.alpha;
  cfg.delta = a.delta;
  cfg.max_clique_degree = a.clique_degree;
  cfg.selector = a.common.selector();
  if (!a.us.empty() || !a.ks.empty()) {
    const auto us = a.us.empty() ? std::vector<std::size_t>{20} : a.us;
    const auto ks = a.ks.empty() ? std::vector<std::size_t>{5} : a.ks;
    cfg.points = combine(us, ks, a.paired);
  }
  emit(lb::theorem1_table(lb::run_theorem1(cfg)), a.common);
  return 0;
}

struct Theorem3Args {
  Common common;
  std::vector<std::size_t> cs;
  std::size_t k = 5;
  std::size_t clique_degree = 8;
};

int run_theorem3(const Theorem3Args& a) {
  lb::Theorem3Config cfg;
  cfg.alpha = a.common.alpha;
  cfg.k = a.k;
  cfg.cs = a.cs;
  cfg.max_clique_degree = a.clique_degree;
  cfg.selector = a.common.selector();
  emit(lb::theorem3_table(lb::run_theorem3(cfg)), a.common);
  return 0;
}

// ---------------------------------------------------------------------------

struct GuaranteeArgs {
  Common common;
  std::size_t instances = 100;
  std::size_t max_n = 12;
  std::size_t max_k = 3;
  std::uint64_t seed = 1;
};

int run_guarantee(const GuaranteeArgs& a) {
  lb::GuaranteeConfig cfg;
  cfg.alpha = a.common.alpha;
  cfg.instances = a.instances;
  cfg.max_n = a.max_n;
  cfg.max_k = a.max_k;
  cfg.seed = a.seed;
  cfg.selector = a.common.selector();
  const auto rep = lb::run_guarantee(cfg);

  emit(rep.table(), a.common);
  std::cerr << "instances: " << rep.instances.size() << '\n'
            << "min_ratio: " << lb::format_cell(rep.min_ratio)
            << " (bound " << lb::format_cell(rep.factor) << ")\n"
            << "min_reach_ratio: " << lb::format_cell(rep.min_reach_ratio)
            << " (bound " << lb::format_cell(rep.e_bound) << ")\n"
            << "violations: " << rep.violations.size() << '\n';
  if (rep.violations.empty()) return 0;
  for (std::size_t idx : rep.violations) {
    const auto& inst = rep.instances[idx];
    std::cerr << "# violating instance " << idx << " target " << inst.target << " k " << inst.k
              << '\n';
    lb::save_edge_list(inst.graph, std::cerr);
  }
  return kExitViolation;
}

// ---------------------------------------------------------------------------

struct WitnessArgs {
  Common common;
  std::size_t max_n = 6;
  std::size_t instances = 200;
  std::uint64_t seed = 1;
};

int run_witness(const WitnessArgs& a) {
  lb::WitnessConfig cfg;
  cfg.alpha = a.common.alpha;
  cfg.max_n = a.max_n;
  cfg.instances = a.instances;
  cfg.seed = a.seed;
  cfg.surfer.alpha = a.common.alpha;
  cfg.surfer.tol = a.common.tol;
  const auto w = lb::find_nonsubmodular_witness(cfg);

  Output out(a.common.out);
  auto& os = out.stream();
  if (!w) {
    if (a.common.format == "json") {
      os << nlohmann::ordered_json{{"found", false}}.dump(2) << '\n';
    } else {
      os << "found: false\n";
    }
    return 0;
  }
  const bool verified = lb::verify_witness(*w, cfg.surfer);
  if (a.common.format == "json") {
    nlohmann::ordered_json j;
    j["found"] = true;
    j["verified"] = verified;
    j["n"] = w->graph.num_nodes();
    auto edges = nlohmann::ordered_json::array();
    for (const auto& [u, v] : w->graph.edges()) edges.push_back({u, v});
    j["edges"] = edges;
    j["target"] = w->target;
    j["a"] = w->a;
    j["b"] = w->b;
    j["y"] = w->y;
    j["pi_a"] = w->pi_a;
    j["pi_a_y"] = w->pi_ay;
    j["pi_b"] = w->pi_b;
    j["pi_b_y"] = w->pi_by;
    j["excess"] = w->excess();
    os << j.dump(2) << '\n';
  } else {
    os << "found: true\nverified: " << (verified ? "true" : "false") << '\n'
       << "target: " << w->target << '\n'
       << "A: " << join_ids(w->a) << '\n'
       << "B: " << join_ids(w->b) << '\n'
       << "y: " << w->y << '\n'
       << "pi_x(A): " << lb::format_cell(w->pi_a) << '\n'
       << "pi_x(A+y): " << lb::format_cell(w->pi_ay) << '\n'
       << "pi_x(B): " << lb::format_cell(w->pi_b) << '\n'
       << "pi_x(B+y): " << lb::format_cell(w->pi_by) << '\n'
       << "excess: " << lb::format_cell(w->excess()) << '\n'
       << "graph:\n";
    lb::save_edge_list(w->graph, os);
  }
  return verified ? 0 : kExitViolation;
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string family = "cycle";
  std::size_t u = 20;
  std::size_t c = 10;
  std::size_t k = 5;
  double delta = 0.01;
  double alpha = 0.85;
  std::size_t clique_degree = 0;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  lb::FamilyOptions fo;
  if (a.clique_degree > 0) fo.max_clique_degree = a.clique_degree;
  fo.surfer.alpha = a.alpha;
  const auto inst = a.family == "cycle" ? lb::cycle_vs_sink(a.u, a.k, a.delta, a.alpha, fo)
                                        : lb::sink_vs_sink(a.c, a.k, a.alpha, fo);
  if (a.out.empty()) {
    lb::save_edge_list(inst.graph, std::cout);
    return 0;
  }
  lb::save_edge_list_file(inst.graph, a.out);
  std::ofstream roles(a.out + ".roles");
  if (!roles) throw lb::ParseError(0, "cannot write " + a.out + ".roles");
  lb::write_roles(inst, roles);
  std::cerr << "wrote " << a.out << " (n=" << inst.params.n << ", target " << inst.target
            << ") and " << a.out << ".roles\n";
  return 0;
}

int run_bounds(double alpha, double delta) {
  lb::Table t;
  t.header = {"quantity", "value"};
  t.rows = {
      {std::string("theorem1_bound"), lb::theorem1_bound(alpha)},
      {std::string("naive_limit"), lb::naive_limit(alpha, delta)},
      {std::string("no_clique_bound"), lb::no_clique_bound(alpha)},
      {std::string("no_clique_bound_magnitude"), lb::no_clique_bound_magnitude(alpha)},
      {std::string("rgreedy_limit"), lb::rgreedy_limit(alpha)},
      {std::string("theorem2_factor"), lb::theorem2_factor(alpha)},
      {std::string("theorem2_ratio_bound"), 1.0 / lb::theorem2_factor(alpha)},
      {std::string("e_factor"), lb::e_factor()},
  };
  t.write_csv(std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Backlink selection experiments on PageRank graphs"};
  app.require_subcommand(1);

  SelectArgs sel;
  auto* select_cmd = app.add_subcommand("select", "choose k backlinks for a target in a graph file");
  select_cmd->add_option("graph", sel.graph, "edge-list file")->required()->check(CLI::ExistingFile);
  select_cmd->add_option("--x,--target", sel.x, "target node")->capture_default_str();
  select_cmd->add_option("--k", sel.k, "number of backlinks")->capture_default_str();
  select_cmd->add_option("--strategy", sel.strategy, "selection strategy")
      ->check(CLI::IsMember({"naive", "rgreedy", "pigreedy", "exhaustive"}))
      ->capture_default_str();
  add_common(select_cmd, sel.common, "text");

  Theorem1Args t1;
  auto* t1_cmd = app.add_subcommand("theorem1", "naive vs optimal on cycle-vs-sink graphs");
  t1_cmd->add_option("--u", t1.us, "tail sizes u");
  t1_cmd->add_option("--k", t1.ks, "budgets k");
  t1_cmd->add_flag("--paired", t1.paired, "zip --u and --k instead of taking all combinations");
  t1_cmd->add_option("--delta", t1.delta, "ranking margin")->capture_default_str();
  t1_cmd->add_option("--clique-degree", t1.clique_degree, "cap on clique out-degree")
      ->capture_default_str();
  add_common(t1_cmd, t1.common, "csv");

  Theorem3Args t3;
  auto* t3_cmd = app.add_subcommand("theorem3", "r-Greedy vs optimal on sink-vs-sink graphs");
  t3_cmd->add_option("--c", t3.cs, "size parameters c");
  t3_cmd->add_option("--k", t3.k, "budget k")->capture_default_str();
  t3_cmd->add_option("--clique-degree", t3.clique_degree, "cap on clique out-degree")
      ->capture_default_str();
  add_common(t3_cmd, t3.common, "csv");

  GuaranteeArgs ga;
  auto* g_cmd = app.add_subcommand("guarantee", "r-Greedy vs exhaustive on seeded random graphs");
  g_cmd->add_option("--instances", ga.instances)->capture_default_str();
  g_cmd->add_option("--max-n", ga.max_n)->capture_default_str();
  g_cmd->add_option("--k", ga.max_k, "largest budget drawn per instance")->capture_default_str();
  g_cmd->add_option("--seed", ga.seed)->capture_default_str();
  add_common(g_cmd, ga.common, "csv");

  WitnessArgs wa;
  auto* w_cmd = app.add_subcommand("witness", "search for a non-submodularity witness of pi_x");
  w_cmd->add_option("--max-n", wa.max_n)->capture_default_str();
  w_cmd->add_option("--instances", wa.instances)->capture_default_str();
  w_cmd->add_option("--seed", wa.seed)->capture_default_str();
  add_common(w_cmd, wa.common, "text");

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "write an adversarial family instance");
  gen_cmd->add_option("--family", gen.family)
      ->check(CLI::IsMember({"cycle", "sink"}))
      ->capture_default_str();
  gen_cmd->add_option("--u", gen.u)->capture_default_str();
  gen_cmd->add_option("--c", gen.c)->capture_default_str();
  gen_cmd->add_option("--k", gen.k)->capture_default_str();
  gen_cmd->add_option("--delta", gen.delta)->capture_default_str();
  gen_cmd->add_option("--alpha", gen.alpha)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  gen_cmd->add_option("--clique-degree", gen.clique_degree, "cap on clique out-degree (0 = complete)");
  gen_cmd->add_option("--out", gen.out, "edge-list path; roles go to PATH.roles");

  double b_alpha = 0.85;
  double b_delta = 0.0;
  auto* b_cmd = app.add_subcommand("bounds", "print the closed-form bounds");
  b_cmd->add_option("--alpha", b_alpha)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  b_cmd->add_option("--delta", b_delta)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*select_cmd) return run_select(sel);
    if (*t1_cmd) return run_theorem1(t1);
    if (*t3_cmd) return run_theorem3(t3);
    if (*g_cmd) return run_guarantee(ga);
    if (*w_cmd) return run_witness(wa);
    if (*gen_cmd) return run_generate(gen);
    if (*b_cmd) return run_bounds(b_alpha, b_delta);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
