#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "linkbuild/closed_form.hpp"
#include "linkbuild/families.hpp"

namespace lb = linkbuild;

namespace {

constexpr double kAlpha = 0.85;

lb::FamilyShape cycle_shape(double u, double k, double delta, double t_i) {
  return {k, u, lb::sink_tail_length(kAlpha, static_cast<std::size_t>(k),
                                     static_cast<std::size_t>(u), delta),
          t_i};
}

lb::FamilyShape sink_shape(double c, double k) { return {k, c + 1, c, c * c}; }

}  // namespace

TEST(Bounds, ReferenceValues) {
  EXPECT_NEAR(lb::theorem1_bound(kAlpha), 13.8138138138138, 1e-10);
  EXPECT_NEAR(lb::no_clique_bound(kAlpha), -4.68951836452, 1e-10);
  EXPECT_NEAR(lb::no_clique_bound_magnitude(kAlpha), 4.68951836452, 1e-10);
  EXPECT_NEAR(lb::rgreedy_limit(kAlpha), 3.6036036036036, 1e-10);
  EXPECT_NEAR(lb::theorem2_factor(kAlpha), 0.175413455075, 1e-11);
  EXPECT_NEAR(lb::e_factor(), std::numbers::e / (std::numbers::e - 1.0), 1e-15);
}

TEST(Bounds, LimitAtZeroDeltaIsLowerBound) {
  for (double a : {0.5, 0.7, 0.85, 0.95}) {
    EXPECT_NEAR(lb::naive_limit(a, 0.0), lb::theorem1_bound(a), 1e-12);
    EXPECT_LT(lb::naive_limit(a, 0.01), lb::theorem1_bound(a));
  }
}

TEST(Bounds, SmallAlphaLimits) {
  const double a = 1e-9;
  EXPECT_NEAR(lb::theorem1_bound(a), 1.0, 1e-6);
  EXPECT_NEAR(lb::rgreedy_limit(a), 1.0, 1e-6);
  EXPECT_NEAR(lb::theorem2_factor(a), 1.0 - 1.0 / std::numbers::e, 1e-6);
  EXPECT_NEAR(lb::naive_ratio(a, 10, 5, 8), 1.0, 1e-6);
  EXPECT_NEAR(lb::rgreedy_ratio(a, 5, 10), 1.0, 1e-6);
}

TEST(RoleSystem, ExactMassSumsToOne) {
  for (auto fam : {lb::Family::cycle_vs_sink, lb::Family::sink_vs_sink}) {
    for (auto sc : {lb::Scenario::initial, lb::Scenario::algorithm_chosen, lb::Scenario::optimal}) {
      const lb::FamilyShape sh{5, 12, 7, 40};
      const auto r = lb::solve_family_system(fam, sc, kAlpha, sh);
      EXPECT_NEAR(r.total_mass(sh), 1.0, 1e-12);
      EXPECT_NEAR(r.pi_i, r.pi_t / (1.0 - kAlpha), 1e-15);
      EXPECT_LE(r.residual, 1e-12);
    }
  }
}

TEST(RoleSystem, RejectsBadInput) {
  EXPECT_THROW(lb::solve_family_system(lb::Family::cycle_vs_sink, lb::Scenario::initial, 1.0,
                                       lb::FamilyShape{}),
               lb::ClosedFormError);
  EXPECT_THROW(lb::solve_family_system(lb::Family::cycle_vs_sink, lb::Scenario::initial, kAlpha,
                                       lb::FamilyShape{0, 1, 1, 1}),
               lb::ClosedFormError);
}

TEST(NaiveRatio, EqualsVanishingSinkMassSystem) {
  for (auto [u, k] : {std::pair<double, double>{8, 2}, {20, 5}, {200, 50}, {1000, 3}}) {
    for (double t_i : {2.0, u * u}) {
      const auto sh = cycle_shape(u, k, 0.01, t_i);
      EXPECT_NEAR(lb::naive_ratio(kAlpha, k, sh.t_s, sh.t_c),
                  lb::system_ratio(lb::Family::cycle_vs_sink, kAlpha, sh, lb::SinkMass::vanishing),
                  1e-9 * lb::naive_ratio(kAlpha, k, sh.t_s, sh.t_c));
    }
  }
}

TEST(NaiveRatio, ExactSystemApproachesFormulaAsCliqueGrows) {
  const double u = 40;
  const double k = 10;
  const double formula = lb::naive_ratio(kAlpha, k, cycle_shape(u, k, 0.01, 1).t_s, u);
  double prev_gap = INFINITY;
  for (double t_i : {1e3, 1e5, 1e7, 1e9}) {
    const double gap =
        std::abs(lb::system_ratio(lb::Family::cycle_vs_sink, kAlpha, cycle_shape(u, k, 0.01, t_i)) -
                 formula);
    EXPECT_LT(gap, prev_gap);
    prev_gap = gap;
  }
  EXPECT_LT(prev_gap, 1e-4);
}

TEST(NaiveRatio, ApproachesLimitForLargeFamilies) {
  const double u = 1e6;
  const double k = 1e6;
  const double t_s = u / (2.0 * (1.0 - lb::lambda_param(kAlpha, 1000000, 1000000, 0.01) * kAlpha));
  EXPECT_NEAR(lb::naive_ratio(kAlpha, k, t_s, u), lb::naive_limit(kAlpha, 0.01), 1e-3);
}

TEST(NoCliqueBound, IsLimitOfCliqueFreeSystem) {
  const double u = 1e5;
  const double k = 1e5;
  const double delta = 1e-4;
  const auto sh = cycle_shape(u, k, delta, 0.0);
  const double r = lb::system_ratio(lb::Family::cycle_vs_sink, kAlpha, sh);
  EXPECT_NEAR(r, lb::no_clique_bound_magnitude(kAlpha), 1e-3);
}

TEST(RGreedyRatio, EqualsExactSystem) {
  for (double c : {1.0, 5.0, 20.0, 500.0}) {
    for (double k : {1.0, 3.0, 10.0}) {
      const double formula = lb::rgreedy_ratio(kAlpha, k, c);
      const double sys = lb::system_ratio(lb::Family::sink_vs_sink, kAlpha, sink_shape(c, k));
      EXPECT_NEAR(formula, sys, 1e-9 * sys);
    }
  }
}

TEST(RGreedyRatio, PrintedPolynomialsAreNegative) {
  EXPECT_LT(lb::rgreedy_ratio_numerator(kAlpha, 3, 10), 0.0);
  EXPECT_LT(lb::rgreedy_ratio_denominator(kAlpha, 3, 10), 0.0);
}

TEST(RGreedyRatio, IncreasesTowardLimit) {
  double prev = 0.0;
  for (double c : {5.0, 50.0, 500.0, 5000.0, 5e5}) {
    const double r = lb::rgreedy_ratio(kAlpha, 5, c);
    EXPECT_GT(r, prev);
    EXPECT_LT(r, lb::rgreedy_limit(kAlpha));
    prev = r;
  }
  EXPECT_NEAR(prev, lb::rgreedy_limit(kAlpha), 1e-3);
}

TEST(FamilyShape, FromGeneratedParams) {
  const auto inst = lb::sink_vs_sink(6, 2, kAlpha);
  const auto sh = lb::FamilyShape::of(inst.params);
  EXPECT_DOUBLE_EQ(sh.t_s, 6.0);
  EXPECT_DOUBLE_EQ(sh.t_c, 7.0);
  EXPECT_DOUBLE_EQ(sh.num_nodes(), static_cast<double>(inst.graph.num_nodes()));
}
