#include <gtest/gtest.h>

#include <cmath>

#include "fcg.hpp"
#include "isg.hpp"
#include "support.hpp"

namespace fendec {
namespace {

using V = std::vector<double>;
using testing::PortableRng;

double lhs(const V& beta, const V& y) {
  double v = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) v += beta[i] * y[i];
  return v;
}

void expect_sandwich(const FcgResult& r) {
  for (std::size_t t = 0; t < r.trajectory.size(); ++t) {
    EXPECT_LE(r.trajectory[t].l, r.trajectory[t].u + 1e-9);
    if (t > 0) {
      EXPECT_GE(r.trajectory[t].l, r.trajectory[t - 1].l);
      EXPECT_LE(r.trajectory[t].u, r.trajectory[t - 1].u);
    }
  }
  if (r.converged) {
    EXPECT_LE(r.trajectory.back().u - r.trajectory.back().l, 1e-6);
  }
}

TEST(Fcg, Ip3DistanceOnlyBoundsCutOffAFeasiblePoint) {
  const auto in = testing::ip3();
  const auto r = generate_cut(in.yhat, in.W, in.tau, in.u, V{4, 0});
  ASSERT_EQ(r.outcome, FcgOutcome::Cut);
  EXPECT_GT(lhs(r.cut.beta, {2, 5}), r.cut.g + 1e-7);
}

TEST(Fcg, Ip3FullReductionGivesAValidCut) {
  const auto in = testing::ip3();
  const auto ybar = run_isg(in).ybar;
  const auto r = generate_cut(in.yhat, in.W, in.tau, in.u, ybar);
  ASSERT_EQ(r.outcome, FcgOutcome::Cut);
  EXPECT_GT(r.cut.violation, 1e-6);
  const auto all = enumerate_oracle(testing::box_ip(in.W, in.tau, in.u, {1, 1}));
  for (const auto& y : all.points) EXPECT_LE(lhs(r.cut.beta, y), r.cut.g + 1e-7);
  expect_sandwich(r);
  EXPECT_TRUE(r.converged);
}

TEST(Fcg, UnreducedCutsAreAlwaysValid) {
  PortableRng rng(99);
  for (int t = 0; t < 150; ++t) {
    const auto s = testing::random_subproblem(rng);
    const auto lp = solve(testing::box_lp(s.W, s.tau, s.u, s.q));
    if (!testing::is_fractional(lp.x)) continue;
    for (auto domain : {BetaDomain::Box, BetaDomain::L1Ball}) {
      FcgConfig cfg;
      cfg.domain = domain;
      const auto r = generate_cut(lp.x, s.W, s.tau, s.u, V(s.u.size(), 0.0), cfg);
      ASSERT_EQ(r.outcome, FcgOutcome::Cut) << "subproblem " << t;
      expect_sandwich(r);
      EXPECT_NEAR(r.cut.violation, lhs(r.cut.beta, lp.x) - r.cut.g, 1e-9);
      const auto all = enumerate_oracle(testing::box_ip(s.W, s.tau, s.u, s.q));
      for (const auto& y : all.points) ASSERT_LE(lhs(r.cut.beta, y), r.cut.g + 1e-7);
      double norm = 0.0;
      for (double b : r.cut.beta)
        norm = domain == BetaDomain::Box ? std::max(norm, std::abs(b)) : norm + std::abs(b);
      EXPECT_LE(norm, 1.0 + 1e-9);
    }
  }
}

TEST(Fcg, IntegralPointHasNoCut) {
  const auto in = testing::ip1();
  const V y{1, 2};
  const auto r = generate_cut(y, in.W, in.tau, in.u, V{0, 0});
  EXPECT_EQ(r.outcome, FcgOutcome::NoCut);
  expect_sandwich(r);
}

TEST(Fcg, EmptyReducedSet) {
  const auto in = testing::ip1();
  const auto r = generate_cut(in.yhat, in.W, in.tau, in.u, V{3, 3});
  EXPECT_EQ(r.outcome, FcgOutcome::ReducedSetEmpty);
}

TEST(Fcg, ZeroTimeBudget) {
  const auto in = testing::ip1();
  FcgConfig cfg;
  cfg.time_limit_seconds = 0.0;
  EXPECT_EQ(generate_cut(in.yhat, in.W, in.tau, in.u, V{0, 0}, cfg).outcome, FcgOutcome::Budget);
}

TEST(EvalG, MaximizesOverTheReducedSet) {
  const auto in = testing::ip3();
  const auto full = eval_g(V{0, 1}, in.W, in.tau, in.u, V{0, 0});
  ASSERT_TRUE(full.exact && full.feasible);
  EXPECT_DOUBLE_EQ(full.g, 5.0);  // (0, 5) or (1, 5)
  const auto reduced = eval_g(V{0, 1}, in.W, in.tau, in.u, V{4, 0});
  EXPECT_DOUBLE_EQ(reduced.g, 2.0);  // 6*4 + 5*2 = 34 <= 37.4
  const auto empty = eval_g(V{0, 1}, in.W, in.tau, in.u, V{5, 2});
  EXPECT_TRUE(empty.exact);
  EXPECT_FALSE(empty.feasible);
}

TEST(SeparationMaster, SinglePointGivesBoxCorner) {
  // max theta <= (yhat - y)'beta over 0 <= beta <= 1: beta_i = 1 where yhat_i > y_i.
  const std::vector<V> points{{1, 1}};
  const auto m = separation_master(points, V{2.5, 0.5}, BetaDomain::Box);
  EXPECT_NEAR(m.theta, 1.5, 1e-9);
  EXPECT_NEAR(m.beta[0], 1.0, 1e-9);
  EXPECT_NEAR(m.beta[1], 0.0, 1e-9);
  const auto l1 = separation_master(points, V{2.5, 0.5}, BetaDomain::L1Ball);
  EXPECT_NEAR(l1.theta, 1.5, 1e-9);
  EXPECT_THROW(separation_master({}, V{1, 1}, BetaDomain::Box), std::invalid_argument);
}

}  // namespace
}  // namespace fendec
