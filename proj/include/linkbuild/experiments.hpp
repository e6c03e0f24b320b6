#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "linkbuild/closed_form.hpp"
#include "linkbuild/families.hpp"
#include "linkbuild/graph.hpp"
#include "linkbuild/selectors.hpp"
#include "linkbuild/surfer.hpp"

namespace linkbuild {

// ---------------------------------------------------------------------------
// Tabular output

using Cell = std::variant<std::int64_t, double, bool, std::string>;

/// Floats use 12 significant digits.
std::string format_cell(const Cell& c);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  std::size_t column(const std::string& name) const;  ///< throws std::out_of_range
  void write_csv(std::ostream& out) const;
  void write_json(std::ostream& out) const;
};

/// Reads a CSV produced by write_csv; every cell comes back as a string.
Table read_csv(std::istream& in);

// ---------------------------------------------------------------------------
// Seeded randomness

/// mt19937_64 with portable integer/real mappings, so a seed reproduces the
/// same instances on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }

 private:
  std::mt19937_64 engine_;
};

/// Each ordered pair (i, j), i != j, is an edge independently with
/// probability p. Sinks may occur.
DirectedGraph random_digraph(std::size_t n, double p, Rng& rng);

/// Edge probabilities cycled through by the random sweeps.
inline constexpr double kSweepEdgeProbabilities[] = {0.1, 0.3, 0.5};

// ---------------------------------------------------------------------------
// Naive vs optimal on cycle-vs-sink graphs

struct Theorem1Config {
  double alpha = 0.85;
  double delta = 0.01;
  std::vector<std::pair<std::size_t, std::size_t>> points;  ///< (u, k)
  std::size_t max_clique_degree = 8;
  /// Exhaustive baseline runs when C(|candidates|, k) * (n + m) is below this.
  double exhaustive_budget = 2e7;
  SelectorOptions selector;
};

/// (8,2), (20,5), (40,10), (100,25), (200,50): u = 4k up to (200, 50).
std::vector<std::pair<std::size_t, std::size_t>> default_theorem1_points();

struct Theorem1Row {
  std::size_t u = 0, k = 0, t_c = 0, t_s = 0, t_i = 0, n = 0;
  double lambda = 0;
  bool naive_picks_cycle = false;
  double pi_x_naive = 0;
  double pi_x_optimal = 0;
  double empirical_ratio = 0;
  double system_ratio = 0;      ///< exact finite-size role system
  double large_clique_ratio = 0;  ///< role system with vanishing sink mass
  double formula_ratio = 0;
  std::optional<double> exhaustive_ratio;
  double limit_ratio = 0;
  double lower_bound = 0;
};

std::vector<Theorem1Row> run_theorem1(const Theorem1Config& cfg);
Table theorem1_table(const std::vector<Theorem1Row>& rows);

// ---------------------------------------------------------------------------
// r-Greedy vs optimal on sink-vs-sink graphs

struct Theorem3Config {
  double alpha = 0.85;
  std::size_t k = 5;
  std::vector<std::size_t> cs;
  std::size_t max_clique_degree = 8;
  double exhaustive_budget = 2e7;
  SelectorOptions selector;
};

std::vector<std::size_t> default_theorem3_sizes();

struct Theorem3Row {
  std::size_t c = 0, k = 0, t_b = 0, t_c = 0, t_i = 0, n = 0;
  std::string rgreedy_choice;  ///< "light", "shaded" or "mixed"
  double pi_x_rgreedy = 0;
  double pi_x_optimal = 0;
  double empirical_ratio = 0;
  double system_ratio = 0;
  double formula_ratio = 0;
  std::optional<double> exhaustive_ratio;
  double bound = 0;
};

std::vector<Theorem3Row> run_theorem3(const Theorem3Config& cfg);
Table theorem3_table(const std::vector<Theorem3Row>& rows);

// ---------------------------------------------------------------------------
// r-Greedy guarantee over random graphs

struct GuaranteeConfig {
  double alpha = 0.85;
  std::size_t instances = 100;
  std::size_t max_n = 12;
  std::size_t max_k = 3;
  std::uint64_t seed = 1;
  SelectorOptions selector;
};

struct GuaranteeInstance {
  std::size_t index = 0;
  DirectedGraph graph;
  NodeId target = 0;
  std::size_t k = 0;
  double edge_probability = 0;
  double pi_rgreedy = 0;
  double pi_optimal = 0;
  double reach_obj_rgreedy = 0;  ///< pi_x / z_xx after r-Greedy
  double reach_obj_optimal = 0;  ///< pi_x / z_xx at the exhaustive optimum
  double ratio() const { return pi_rgreedy / pi_optimal; }
  double reach_ratio() const { return reach_obj_rgreedy / reach_obj_optimal; }
};

struct GuaranteeReport {
  double alpha = 0;
  double factor = 0;    ///< (1 - alpha^2)(1 - 1/e)
  double e_bound = 0;   ///< 1 - 1/e
  double min_ratio = 0;
  double min_reach_ratio = 0;
  std::vector<GuaranteeInstance> instances;
  std::vector<std::size_t> violations;  ///< indices into instances

  Table table() const;
};

/// The same seed always yields the same instances and report.
std::vector<GuaranteeInstance> guarantee_instances(const GuaranteeConfig& cfg);
GuaranteeReport run_guarantee(const GuaranteeConfig& cfg);

// ---------------------------------------------------------------------------
// Non-submodularity witness for pi_x

struct WitnessConfig {
  double alpha = 0.85;
  std::size_t max_n = 6;
  std::size_t instances = 200;
  std::uint64_t seed = 1;
  SurferParams surfer;
};

struct Witness {
  DirectedGraph graph;
  NodeId target = 0;
  std::vector<NodeId> a;
  std::vector<NodeId> b;
  NodeId y = 0;
  double pi_a = 0, pi_ay = 0, pi_b = 0, pi_by = 0;

  /// pi(B+y) - pi(B) - (pi(A+y) - pi(A)); positive for a witness.
  double excess() const { return (pi_by - pi_b) - (pi_ay - pi_a); }
};

std::optional<Witness> find_nonsubmodular_witness(const WitnessConfig& cfg);

/// Recomputes the four values on explicitly materialized graphs and checks
/// A ⊂ B, y ∉ B ∪ {x}, and a strict violation.
bool verify_witness(const Witness& w, const SurferParams& params);

}  // namespace linkbuild
