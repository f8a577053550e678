#pragma once

// Shared fixtures for the unit and acceptance tests: the IP1 to IP3 ISG instances,
// random subproblems, random toy two-stage instances and a brute-force
// deterministic-equivalent oracle.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "isg.hpp"
#include "lp.hpp"
#include "mip.hpp"
#include "model.hpp"

namespace fendec::testing {

// Draws built only from raw mt19937_64 output, so sequences match across
// standard libraries.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  int integer(int lo, int hi) {
    return lo + std::min(hi - lo, static_cast<int>(unit() * (hi - lo + 1)));
  }

 private:
  std::mt19937_64 engine_;
};

inline IsgInput ip1() {
  IsgInput in;
  in.W = Matrix(1, 2);
  in.W(0, 0) = 0.4;
  in.W(0, 1) = 1.0;
  in.tau = {3.4};
  in.u = {3, 3};
  in.yhat = {3.0, 2.2};
  return in;
}

inline IsgInput ip2() {
  IsgInput in;
  in.W = Matrix(2, 2);
  in.W(0, 0) = 0.4;
  in.W(0, 1) = 1.0;
  in.W(1, 0) = 1.0;
  in.W(1, 1) = 0.4;
  in.tau = {3.4, 3.4};
  in.u = {3, 3};
  in.yhat = {3.4 / 1.4, 3.4 / 1.4};
  return in;
}

// 6 y1 + 5 y2 <= 37.4, 0 <= y <= u. The LP optimum fills y1 first.
inline IsgInput ip3(double u = 5.0) {
  IsgInput in;
  in.W = Matrix(1, 2);
  in.W(0, 0) = 6.0;
  in.W(0, 1) = 5.0;
  in.tau = {37.4};
  in.u = {u, u};
  const double y1 = std::min(u, 37.4 / 6.0);
  in.yhat = {y1, std::min(u, (37.4 - 6.0 * y1) / 5.0)};
  return in;
}

inline LpProblem box_lp(const Matrix& W, const std::vector<double>& tau,
                        const std::vector<double>& u, const std::vector<double>& q) {
  LpProblem p;
  p.objective = q;
  p.rows = W;
  p.rhs = tau;
  p.lower.assign(u.size(), 0.0);
  p.upper = u;
  return p;
}

// Primal feasibility, dual sign, reduced cost signs against the bounds and
// a zero duality gap.
inline double kkt_residual(const LpProblem& p, const LpSolution& s) {
  const auto m = p.num_rows(), n = p.num_cols();
  double worst = 0.0;
  double dual_obj = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < n; ++j) lhs += p.rows(k, j) * s.x[j];
    worst = std::max(worst, lhs - p.rhs[k]);
    worst = std::max(worst, -s.duals[k]);
    worst = std::max(worst, std::abs(s.duals[k] * (p.rhs[k] - lhs)));
    dual_obj += s.duals[k] * p.rhs[k];
  }
  for (std::size_t j = 0; j < n; ++j) {
    double d = p.objective[j];
    for (std::size_t k = 0; k < m; ++k) d -= s.duals[k] * p.rows(k, j);
    worst = std::max(worst, std::abs(d - s.reduced_costs[j]));
    worst = std::max({worst, p.lower[j] - s.x[j], s.x[j] - p.upper[j]});
    // d > 0 only at the upper bound, d < 0 only at the lower bound.
    if (d > 0) worst = std::max(worst, d * (p.upper[j] - s.x[j]));
    if (d < 0) worst = std::max(worst, -d * (s.x[j] - p.lower[j]));
    dual_obj += std::max(d, 0.0) * p.upper[j] + std::min(d, 0.0) * p.lower[j];
  }
  return std::max(worst, std::abs(dual_obj - s.objective));
}

inline MipProblem box_ip(const Matrix& W, const std::vector<double>& tau,
                         const std::vector<double>& u, const std::vector<double>& q) {
  MipProblem p;
  p.lp = box_lp(W, tau, u, q);
  p.integer.assign(u.size(), true);
  return p;
}

// n2 in 2..5, u_i in 1..6, m2 in 1..3, W ~ U(2,8), q ~ U(10,20) and each
// row's tau a U(0.3,0.9) fraction of its capacity at u.
struct Subproblem {
  Matrix W;
  std::vector<double> tau;
  std::vector<double> u;
  std::vector<double> q;
};

inline Subproblem random_subproblem(PortableRng& rng) {
  Subproblem s;
  const int n = rng.integer(2, 5);
  const int m = rng.integer(1, 3);
  s.W = Matrix(m, n);
  s.u.resize(n);
  s.q.resize(n);
  for (auto& v : s.u) v = rng.integer(1, 6);
  for (auto& v : s.q) v = rng.uniform(10.0, 20.0);
  s.tau.resize(m);
  for (int k = 0; k < m; ++k) {
    double cap = 0.0;
    for (int j = 0; j < n; ++j) {
      s.W(k, j) = rng.uniform(2.0, 8.0);
      cap += s.W(k, j) * s.u[j];
    }
    s.tau[k] = rng.uniform(0.3, 0.9) * cap;
  }
  return s;
}

inline bool is_fractional(const std::vector<double>& y) {
  return std::any_of(y.begin(), y.end(),
                     [](double v) { return std::abs(v - std::round(v)) > kIntegralityTol; });
}

// n1 <= 4, n2 <= 3, S <= 3, u <= 3. T has mixed signs; h is large enough that
// y = 0 is feasible for every binary x.
inline TwoStageInstance random_toy(PortableRng& rng) {
  TwoStageInstance t;
  const int n1 = rng.integer(1, 4), n2 = rng.integer(1, 3), m2 = rng.integer(1, 3);
  const int S = rng.integer(1, 3);
  t.name = "toy";
  t.first.c.resize(n1);
  for (auto& v : t.first.c) v = rng.uniform(-5.0, 20.0);
  t.first.A = Matrix(1, n1);
  for (int j = 0; j < n1; ++j) t.first.A(0, j) = rng.uniform(1.0, 4.0);
  t.first.b = {rng.uniform(2.0, 8.0)};
  t.W = Matrix(m2, n2);
  for (int k = 0; k < m2; ++k)
    for (int i = 0; i < n2; ++i) t.W(k, i) = rng.uniform(1.0, 6.0);
  t.u.resize(n2);
  for (auto& v : t.u) v = rng.integer(1, 3);
  t.scenarios.resize(S);
  for (auto& sc : t.scenarios) {
    sc.p = 1.0 / S;
    sc.q.resize(n2);
    for (auto& v : sc.q) v = rng.uniform(-2.0, 15.0);
    sc.T = Matrix(m2, n1);
    sc.h.resize(m2);
    for (int k = 0; k < m2; ++k) {
      double pos = 0.0, cap = 0.0;
      for (int j = 0; j < n1; ++j) {
        sc.T(k, j) = rng.uniform(-6.0, 6.0);
        pos += std::max(0.0, sc.T(k, j));
      }
      for (int i = 0; i < n2; ++i) cap += t.W(k, i) * t.u[i];
      sc.h[k] = pos + rng.uniform(0.0, 0.8 * cap);
    }
  }
  return t;
}

// Optimum of the deterministic equivalent by enumerating every binary x and
// every integer recourse vector. -inf when nothing is feasible.
inline double brute_force_dep(const TwoStageInstance& t) {
  const std::size_t n1 = t.n1();
  double best = -INFINITY;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n1); ++mask) {
    std::vector<double> x(n1);
    for (std::size_t j = 0; j < n1; ++j) x[j] = static_cast<double>((mask >> j) & 1U);
    bool ok = true;
    for (std::size_t r = 0; r < t.m1() && ok; ++r) {
      double lhs = 0.0;
      for (std::size_t j = 0; j < n1; ++j) lhs += t.first.A(r, j) * x[j];
      ok = lhs <= t.first.b[r] + 1e-9;
    }
    if (!ok) continue;
    double v = 0.0;
    for (std::size_t j = 0; j < n1; ++j) v += t.first.c[j] * x[j];
    for (std::size_t s = 0; s < t.scenarios.size() && ok; ++s) {
      const auto o =
          enumerate_oracle(box_ip(t.W, scenario_tau(t, x, s), t.u, t.scenarios[s].q), false);
      ok = o.feasible;
      v += t.scenarios[s].p * o.value;
    }
    if (ok) best = std::max(best, v);
  }
  return best;
}

}  // namespace fendec::testing
