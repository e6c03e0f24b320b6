#include "linkbuild/closed_form.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

namespace linkbuild {

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::initial: return "initial";
    case Scenario::algorithm_chosen: return "algorithm_chosen";
    case Scenario::optimal: return "optimal";
  }
  return "unknown";
}

FamilyShape FamilyShape::of(const FamilyParams& p) {
  FamilyShape s;
  s.k = static_cast<double>(p.k);
  s.t_c = static_cast<double>(p.t_c);
  s.t_s = static_cast<double>(p.family == Family::cycle_vs_sink ? p.t_s : p.t_b);
  s.t_i = static_cast<double>(p.t_i);
  return s;
}

double RolePageRanks::total_mass(const FamilyShape& sh) const {
  return sh.k * (sh.t_c + sh.t_s) * pi_t + pi_x + sh.k * (pi_s + pi_c) + sh.t_i * pi_i;
}

namespace {

using Mat5 = std::array<std::array<double, 5>, 5>;
using Vec5 = std::array<double, 5>;

enum Var { T = 0, X = 1, S = 2, C = 3, I = 4 };

Vec5 gauss_solve(Mat5 a, Vec5 b) {
  for (int col = 0; col < 5; ++col) {
    int piv = col;
    for (int r = col + 1; r < 5; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-300) throw ClosedFormError("singular role system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < 5; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < 5; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  Vec5 x{};
  for (int r = 4; r >= 0; --r) {
    double acc = b[r];
    for (int c = r + 1; c < 5; ++c) acc -= a[r][c] * x[c];
    x[r] = acc / a[r][r];
  }
  return x;
}

}  // namespace

RolePageRanks solve_family_system(Family family, Scenario scenario, double alpha,
                                  const FamilyShape& sh, SinkMass sink_mass) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ClosedFormError("alpha must lie in (0, 1)");
  if (!(sh.k > 0) || sh.t_c < 0 || sh.t_s < 0 || sh.t_i < 0) {
    throw ClosedFormError("family shape needs k > 0 and non-negative tails");
  }
  const double a = alpha;
  const double k = sh.k;
  const double n = sh.num_nodes();
  const double spread = sink_mass == SinkMass::exact ? a * k / n : 0.0;

  // Each row encodes  lhs_var - sum(coef * var) = rhs.
  Mat5 m{};
  Vec5 rhs{};
  for (int r = 0; r < 5; ++r) m[r][r] = 1.0;
  rhs[T] = (1.0 - a) / n;
  m[I][T] = -1.0;
  m[I][I] = 1.0 - a;

  if (family == Family::cycle_vs_sink) {
    // Sink row: pi_s = pi_t + alpha (pi_x/k + t_s pi_t)
    m[S][T] = -(1.0 + a * sh.t_s);
    m[S][X] = -a / k;
    m[X][T] = -1.0;
    m[C][T] = -(1.0 + a * sh.t_c);
    switch (scenario) {
      case Scenario::initial:
        m[T][S] = -spread;
        m[C][C] = 1.0 - a;
        break;
      case Scenario::algorithm_chosen:  // k cycle nodes link to x
        m[T][S] = -spread;
        m[X][C] = -a * k / 2.0;
        m[C][C] = 1.0 - a / 2.0;
        break;
      case Scenario::optimal:  // k sinks link to x; no sinks remain
        m[X][S] = -a * k;
        m[C][C] = 1.0 - a;
        break;
    }
  } else {
    // Shaded row (slot S): pi_b = pi_t + alpha (pi_x/k + t_b pi_t)
    m[S][T] = -(1.0 + a * sh.t_s);
    m[S][X] = -a / k;
    m[X][T] = -1.0;
    m[C][T] = -(1.0 + a * sh.t_c);
    switch (scenario) {
      case Scenario::initial:
        m[T][S] = -spread;
        m[T][C] = -spread;
        break;
      case Scenario::algorithm_chosen:  // light nodes link to x
        m[T][S] = -spread;
        m[X][C] = -a * k;
        break;
      case Scenario::optimal:  // shaded nodes link to x
        m[T][C] = -spread;
        m[X][S] = -a * k;
        break;
    }
  }

  const Vec5 p = gauss_solve(m, rhs);
  double residual = 0.0;
  for (int r = 0; r < 5; ++r) {
    double acc = -rhs[r];
    for (int c = 0; c < 5; ++c) acc += m[r][c] * p[c];
    residual = std::max(residual, std::abs(acc));
  }
  if (residual > 1e-12) throw ClosedFormError("role system residual too large");

  RolePageRanks out;
  out.family = family;
  out.scenario = scenario;
  out.pi_t = p[T];
  out.pi_x = p[X];
  out.pi_s = p[S];
  out.pi_c = p[C];
  out.pi_i = p[I];
  out.residual = residual;
  return out;
}

double system_ratio(Family family, double alpha, const FamilyShape& shape, SinkMass sink_mass) {
  const auto opt = solve_family_system(family, Scenario::optimal, alpha, shape, sink_mass);
  const auto alg = solve_family_system(family, Scenario::algorithm_chosen, alpha, shape, sink_mass);
  return opt.pi_x / alg.pi_x;
}

double naive_ratio(double a, double k, double t_s, double t_c) {
  const double num = (a * a * a - 2 * a * a) * k * t_s + (a * a - 2 * a) * k + a - 2;
  const double den = (a * a * a * a - a * a) * k * t_c + (a * a * a - a) * k - a * a * a +
                     2 * a * a + a - 2;
  if (den == 0.0) throw ClosedFormError("naive ratio denominator vanishes");
  return num / den;
}

double naive_limit(double a, double delta) {
  return (2 - a) / ((a * a * a - a * a - a + 1) * delta + 2 * a * a * a - 2 * a * a - 2 * a + 2);
}

double theorem1_bound(double a) { return (2 - a) / (2 * (1 - a) * (1 - a * a)); }

double no_clique_bound(double a) {
  const double a2 = a * a;
  return (2 * a2 * a2 + a2 + a - 6) / (4 * a2 * a - 6 * a2 - 4 * a + 6);
}

double no_clique_bound_magnitude(double a) { return std::abs(no_clique_bound(a)); }

double rgreedy_limit(double a) { return 1.0 / (1.0 - a * a); }

double theorem2_factor(double a) { return (1.0 - a * a) * (1.0 - 1.0 / std::numbers::e); }

double e_factor() { return std::numbers::e / (std::numbers::e - 1.0); }

double rgreedy_ratio_numerator(double a, double k, double c) {
  const double a2 = a * a;
  const double a3 = a2 * a;
  const double a4 = a2 * a2;
  return -((a2 * c * k + a * k + 1) *
           ((1 - a4) * (c + 1) * k + (1 - a2) * c * k + (-a3 - a + 2) * k + c * c - a2 + 1));
}

double rgreedy_ratio_denominator(double a, double k, double c) {
  const double a2 = a * a;
  const double a3 = a2 * a;
  return ((-a3 - a2 + a + 1) * (c + 1) * k + (a + 1) * c * k + (-a2 + a + 2) * k +
          (a + 1) * c * c + a + 1) *
         ((a3 - a2) * (c + 1) * k + (a2 - a) * k + a - 1);
}

double rgreedy_ratio(double a, double k, double c) {
  const double den = rgreedy_ratio_denominator(a, k, c);
  if (den == 0.0) throw ClosedFormError("r-Greedy ratio denominator vanishes");
  return rgreedy_ratio_numerator(a, k, c) / den;
}

}  // namespace linkbuild
