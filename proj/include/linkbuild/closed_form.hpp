#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>

#include "linkbuild/families.hpp"

namespace linkbuild {

class ClosedFormError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Scenario { initial, algorithm_chosen, optimal };

std::string_view to_string(Scenario s);

/// How mass leaving the remaining sinks enters the common base term pi_t.
/// `exact` keeps alpha*k*pi_sink/n (the finite graph); `vanishing` drops it,
/// the t_i -> infinity regime of naive_ratio.
enum class SinkMass { exact, vanishing };

/// Role multiplicities of a family graph. For sink-vs-sink, `t_s` carries
/// t_b (tails per shaded node) and `t_c` the tails per light node. Real
/// valued so limits can be probed with non-integer tails.
struct FamilyShape {
  double k = 1;
  double t_c = 0;
  double t_s = 0;
  double t_i = 0;

  /// n = k(t_s + t_c + 2) + t_i + 1 (same form for both families).
  double num_nodes() const { return k * (t_s + t_c + 2) + t_i + 1; }

  static FamilyShape of(const FamilyParams& p);
};

/// Per-role PageRanks of a symmetric family graph. For sink-vs-sink `pi_s`
/// holds the shaded value pi_b and `pi_c` the light value.
struct RolePageRanks {
  Family family = Family::cycle_vs_sink;
  Scenario scenario = Scenario::initial;
  double pi_t = 0;
  double pi_x = 0;
  double pi_s = 0;
  double pi_c = 0;
  double pi_i = 0;
  /// Largest absolute equation residual of the solved system.
  double residual = 0;

  double pi_b() const { return pi_s; }
  /// sum of role value times multiplicity; 1 under SinkMass::exact.
  double total_mass(const FamilyShape& shape) const;
};

/// Solves the five-equation role system by Gaussian elimination.
/// "algorithm_chosen" is the naive pick (cycle nodes) for cycle-vs-sink and
/// the r-Greedy pick (light nodes) for sink-vs-sink; "optimal" links the
/// sinks / shaded nodes.
RolePageRanks solve_family_system(Family family, Scenario scenario, double alpha,
                                  const FamilyShape& shape, SinkMass sink_mass = SinkMass::exact);

/// pi_x(optimal) / pi_x(algorithm_chosen) from the role systems.
double system_ratio(Family family, double alpha, const FamilyShape& shape,
                    SinkMass sink_mass = SinkMass::exact);

/// Naive approximation ratio in the vanishing-sink-mass regime.
double naive_ratio(double alpha, double k, double t_s, double t_c);

/// Limit of naive_ratio as u, k grow with t_s from the lambda parameterization.
double naive_limit(double alpha, double delta);

/// (2 - alpha) / (2(1 - alpha)(1 - alpha^2)), the naive lower bound.
double theorem1_bound(double alpha);

/// Bound without the isolated clique. The raw expression is negative for
/// alpha in (0, 1); the ratio is its magnitude.
double no_clique_bound(double alpha);
double no_clique_bound_magnitude(double alpha);

/// 1/(1 - alpha^2): limit of the r-Greedy ratio on the sink-vs-sink family.
double rgreedy_limit(double alpha);
/// (1 - alpha^2)(1 - 1/e): r-Greedy's guaranteed fraction of the optimum.
double theorem2_factor(double alpha);
/// e/(e - 1): the ratio bound when z_xx cannot be improved.
double e_factor();

/// Closed-form r-Greedy ratio on sink-vs-sink with t_b = c, t_c = c+1,
/// t_i = c^2. Both printed polynomials are negative; the quotient is taken
/// as printed.
double rgreedy_ratio(double alpha, double k, double c);
double rgreedy_ratio_numerator(double alpha, double k, double c);
double rgreedy_ratio_denominator(double alpha, double k, double c);

struct RatioReport {
  Family family = Family::cycle_vs_sink;
  double alpha = 0;
  double k = 0;
  double size = 0;   ///< u or c
  double delta = 0;  ///< cycle-vs-sink only
  double ratio_closed_form = 0;
  std::optional<double> ratio_from_explicit_graph;
  double limit_value = 0;
  double bound_value = 0;
};

}  // namespace linkbuild
