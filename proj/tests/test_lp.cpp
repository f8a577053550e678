#include <gtest/gtest.h>

#include <cmath>

#include "lp.hpp"
#include "support.hpp"

namespace fendec {
namespace {

using testing::PortableRng;

LpProblem ip1_relaxation() {
  const auto in = testing::ip1();
  return testing::box_lp(in.W, in.tau, in.u, {1.0, 1.0});
}

LpProblem ip2_relaxation() {
  const auto in = testing::ip2();
  return testing::box_lp(in.W, in.tau, in.u, {1.0, 1.0});
}

LpProblem random_lp(PortableRng& rng) {
  const int n = rng.integer(1, 8), m = rng.integer(1, 6);
  LpProblem p;
  p.objective.resize(n);
  for (auto& c : p.objective) c = rng.uniform(-5.0, 10.0);
  p.rows = Matrix(m, n);
  p.rhs.resize(m);
  for (int k = 0; k < m; ++k) {
    for (int j = 0; j < n; ++j) p.rows(k, j) = rng.uniform(-2.0, 6.0);
    p.rhs[k] = rng.uniform(-3.0, 20.0);
  }
  p.lower.resize(n);
  p.upper.resize(n);
  for (int j = 0; j < n; ++j) {
    p.lower[j] = rng.integer(-2, 0);
    p.upper[j] = p.lower[j] + rng.integer(0, 5);
  }
  return p;
}

TEST(Lp, Ip1RelaxationOptimum) {
  const auto s = solve(ip1_relaxation());
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_NEAR(s.x[0], 3.0, 1e-9);
  EXPECT_NEAR(s.x[1], 2.2, 1e-9);
  EXPECT_NEAR(s.objective, 5.2, 1e-9);
  EXPECT_NEAR(s.duals[0], 1.0, 1e-9);
  EXPECT_LE(testing::kkt_residual(ip1_relaxation(), s), 1e-9);
}

TEST(Lp, Ip2RelaxationOptimum) {
  const auto s = solve(ip2_relaxation());
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_NEAR(s.x[0], 3.4 / 1.4, 1e-9);
  EXPECT_NEAR(s.x[1], 3.4 / 1.4, 1e-9);
  EXPECT_LE(testing::kkt_residual(ip2_relaxation(), s), 1e-9);
}

TEST(Lp, AddedRowWarmStartMatchesColdSolve) {
  const auto p = ip1_relaxation();
  const auto s = solve(p);
  const std::vector<double> row{1.0, 1.0};
  const auto warm = add_row_resolve(p, s, row, 5.0);
  ASSERT_EQ(warm.status, LpStatus::Optimal);
  EXPECT_NEAR(warm.objective, 5.0, 1e-9);

  LpProblem q = p;
  q.rows = Matrix(2, 2);
  for (std::size_t j = 0; j < 2; ++j) {
    q.rows(0, j) = p.rows(0, j);
    q.rows(1, j) = row[j];
  }
  q.rhs = {3.4, 5.0};
  EXPECT_NEAR(solve(q).objective, warm.objective, 1e-9);
}

TEST(Lp, ContradictoryRowIsInfeasible) {
  const auto p = ip1_relaxation();
  const std::vector<double> zero{0.0, 0.0};
  EXPECT_EQ(add_row_resolve(p, solve(p), zero, -1.0).status, LpStatus::Infeasible);
}

TEST(Lp, InfeasibleBox) {
  LpProblem p;
  p.objective = {1.0};
  p.rows = Matrix(1, 1, 1.0);
  p.rhs = {-1.0};
  p.lower = {0.0};
  p.upper = {2.0};
  EXPECT_EQ(solve(p).status, LpStatus::Infeasible);
}

TEST(Lp, NoRows) {
  LpProblem p;
  p.objective = {2.0, -1.0};
  p.rows = Matrix(0, 2);
  p.lower = {0.0, 0.0};
  p.upper = {4.0, 4.0};
  const auto s = solve(p);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_EQ(s.x, (std::vector<double>{4.0, 0.0}));
  EXPECT_DOUBLE_EQ(s.objective, 8.0);
}

TEST(Lp, RejectsInconsistentDimensions) {
  auto p = ip1_relaxation();
  p.upper = {3.0};
  EXPECT_THROW(solve(p), std::invalid_argument);
}

TEST(Lp, RandomProblemsSatisfyKkt) {
  PortableRng rng(17);
  int optimal = 0;
  for (int t = 0; t < 400; ++t) {
    const auto p = random_lp(rng);
    const auto s = solve(p);
    if (s.status != LpStatus::Optimal) {
      EXPECT_EQ(s.status, LpStatus::Infeasible);
      continue;
    }
    ++optimal;
    EXPECT_LE(testing::kkt_residual(p, s), 1e-6) << "problem " << t;
  }
  EXPECT_GT(optimal, 100);
}

TEST(Lp, RhsAndBoundUpdatesMatchColdSolves) {
  PortableRng rng(5);
  for (int t = 0; t < 100; ++t) {
    auto p = random_lp(rng);
    LpSolver solver(p);
    solver.solve();
    for (int r = 0; r < 3; ++r) {
      const auto k = static_cast<std::size_t>(rng.integer(0, static_cast<int>(p.num_rows()) - 1));
      const auto j = static_cast<std::size_t>(rng.integer(0, static_cast<int>(p.num_cols()) - 1));
      p.rhs[k] = rng.uniform(-3.0, 20.0);
      p.upper[j] = p.lower[j] + rng.integer(0, 5);
      solver.set_rhs(k, p.rhs[k]);
      solver.set_bounds(j, p.lower[j], p.upper[j]);
      const auto warm = solver.solve();
      const auto cold = solve(p);
      ASSERT_EQ(warm.status, cold.status) << "problem " << t;
      if (cold.status == LpStatus::Optimal) {
        EXPECT_NEAR(warm.objective, cold.objective, 1e-7);
        EXPECT_LE(testing::kkt_residual(p, warm), 1e-6);
      }
    }
  }
}

TEST(Lp, IterationLimitIsReported) {
  PortableRng rng(9);
  LpProblem p;
  const int n = 30, m = 20;
  p.objective.resize(n);
  for (auto& c : p.objective) c = rng.uniform(1.0, 10.0);
  p.rows = Matrix(m, n);
  p.rhs.assign(m, 10.0);
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < n; ++j) p.rows(k, j) = rng.uniform(0.5, 3.0);
  p.lower.assign(n, 0.0);
  p.upper.assign(n, 5.0);
  LpSolver solver(p);
  solver.set_iteration_limit(1);
  EXPECT_EQ(solver.solve().status, LpStatus::IterationLimit);
  solver.set_iteration_limit(100000);
  EXPECT_EQ(solver.solve().status, LpStatus::Optimal);
}

}  // namespace
}  // namespace fendec
