#include <gtest/gtest.h>

#include "fcg.hpp"
#include "isg.hpp"
#include "support.hpp"

namespace fendec {
namespace {

IsgOptions distance_only() {
  IsgOptions o;
  o.integer_point_check = false;
  return o;
}

using V = std::vector<double>;

TEST(Isg, Ip1) {
  EXPECT_EQ(run_isg(testing::ip1(), distance_only()).ybar, (V{1, 2}));
  EXPECT_EQ(run_isg(testing::ip1()).ybar, (V{1, 2}));
}

TEST(Isg, Ip2DistanceRule) {
  EXPECT_EQ(run_isg(testing::ip2(), distance_only()).ybar, (V{1, 2}));
}

TEST(Isg, Ip2LookaheadAdmitsAnotherPoint) {
  // Lowering y2 to 1 lets (3, 1) in; the resulting cut is still valid.
  const auto in = testing::ip2();
  const auto r = run_isg(in);
  EXPECT_EQ(r.ybar, (V{1, 1}));
  const auto cut = generate_cut(in.yhat, in.W, in.tau, in.u, r.ybar);
  ASSERT_EQ(cut.outcome, FcgOutcome::Cut);
  const auto all = enumerate_oracle(testing::box_ip(in.W, in.tau, in.u, {1, 1}));
  for (const auto& y : all.points)
    EXPECT_LE(cut.cut.beta[0] * y[0] + cut.cut.beta[1] * y[1], cut.cut.g + 1e-7);
}

TEST(Isg, Ip3BothModes) {
  EXPECT_EQ(run_isg(testing::ip3(), distance_only()).ybar, (V{4, 0}));
  const auto full = run_isg(testing::ip3());
  EXPECT_EQ(full.ybar, (V{2, 0}));
  // Reference walk: floor (5,1), distance rule to (4,0), then look-ahead to 3 and 2.
  std::vector<V> refs;
  for (const auto& s : full.trace)
    if (s.action != IsgAction::Keep) refs.push_back(s.ybar);
  EXPECT_EQ(refs, (std::vector<V>{{5, 0}, {4, 0}, {3, 0}, {2, 0}}));
}

TEST(Isg, Ip3WithSmallerBoxEndsElsewhere) {
  EXPECT_EQ(run_isg(testing::ip3(4.0)).ybar, (V{3, 0}));
}

TEST(Isg, LiteralLookaheadBoundStopsAtOne) {
  IsgOptions o;
  o.lookahead_to_zero = false;
  // Same examples, unchanged.
  EXPECT_EQ(run_isg(testing::ip3(), o).ybar, (V{2, 0}));
  EXPECT_EQ(run_isg(testing::ip1(), o).ybar, (V{1, 2}));
}

TEST(Isg, TraceRecordsEveryEvaluation) {
  const auto r = run_isg(testing::ip1(), distance_only());
  EXPECT_EQ(r.trace.size(), r.iterations);
  ASSERT_FALSE(r.trace.empty());
  EXPECT_EQ(r.trace.back().action, IsgAction::Keep);
  EXPECT_EQ(r.binding, (std::vector<std::size_t>{0}));
}

TEST(Isg, DistanceOnIp1) {
  const auto in = testing::ip1();
  const V ybar{3, 2};
  // Axis 2 from (3, 2): (3.4 - 0.4 * 3) / 1 - 2 = 0.2.
  EXPECT_NEAR(distance_dij(0, 1, 0, ybar, in.yhat, in.W, in.tau, in.u), 0.2, 1e-12);
  // Axis 1 is already at its bound.
  EXPECT_NEAR(distance_dij(1, 0, 0, ybar, in.yhat, in.W, in.tau, in.u), 0.0, 1e-12);
  EXPECT_THROW(distance_dij(0, 0, 0, ybar, in.yhat, in.W, in.tau, in.u), std::invalid_argument);
}

TEST(Isg, ShortestDistancesWithoutRowsUseTheBox) {
  const auto in = testing::ip1();
  const V ybar{1, 1};
  const std::vector<std::size_t> none;
  const auto d = shortest_distances(ybar, in.yhat, in.W, in.tau, in.u, none);
  EXPECT_DOUBLE_EQ(d.f[0], 2.0);
  EXPECT_DOUBLE_EQ(d.f_prime[0], 2.0);
}

TEST(Isg, IntegralPointStillRuns) {
  auto in = testing::ip1();
  in.yhat = {1.0, 2.0};
  const auto r = run_isg(in);
  EXPECT_TRUE(r.binding.empty());
  EXPECT_EQ(r.ybar, (V{1, 2}));
}

TEST(Isg, SingleVariable) {
  IsgInput in;
  in.W = Matrix(1, 1, 2.0);
  in.tau = {5.0};
  in.u = {4.0};
  in.yhat = {2.5};
  EXPECT_EQ(run_isg(in).ybar, (V{2}));
}

TEST(Isg, DimensionMismatchThrows) {
  auto in = testing::ip1();
  in.u = {3};
  EXPECT_THROW(run_isg(in), std::invalid_argument);
}

}  // namespace
}  // namespace fendec
