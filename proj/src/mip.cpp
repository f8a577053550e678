#include "mip.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace fendec {

namespace {

constexpr double kRowTol = 1e-9;
constexpr std::size_t kOracleLimit = 10'000'000;

struct BoundChange {
  std::size_t col;
  double lo;
  double hi;
};

struct Node {
  double bound;
  std::size_t depth;
  std::size_t seq;
  std::vector<BoundChange> changes;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.seq > b.seq;
  }
};

double prune_tol(double incumbent) {
  if (!std::isfinite(incumbent)) return 0.0;
  return 1e-9 * std::max(1.0, std::abs(incumbent));
}

double row_activity(const Matrix& rows, std::size_t r, const std::vector<double>& x) {
  const auto row = rows.row(r);
  double s = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * x[j];
  return s;
}

bool rows_satisfied(const LpProblem& lp, const std::vector<double>& x, double tol) {
  for (std::size_t r = 0; r < lp.num_rows(); ++r)
    if (row_activity(lp.rows, r, x) > lp.rhs[r] + tol) return false;
  return true;
}

// Floor the integer columns, then walk violated rows and lower columns with
// positive coefficients (lowest index first) until every row holds.
bool floor_and_repair(const LpProblem& lp, const std::vector<bool>& integer,
                      const std::vector<double>& lo, std::vector<double>& x) {
  for (std::size_t j = 0; j < x.size(); ++j)
    if (integer[j]) x[j] = std::max(lo[j], std::floor(x[j] + kIntegralityTol));
  const std::size_t passes = 3;
  for (std::size_t pass = 0; pass < passes; ++pass) {
    bool clean = true;
    for (std::size_t r = 0; r < lp.num_rows(); ++r) {
      double excess = row_activity(lp.rows, r, x) - lp.rhs[r];
      if (excess <= 1e-7) continue;
      clean = false;
      const auto row = lp.rows.row(r);
      for (std::size_t j = 0; j < row.size() && excess > 1e-7; ++j) {
        if (row[j] <= 0.0 || !integer[j] || x[j] <= lo[j]) continue;
        const double step = std::min(x[j] - lo[j], std::ceil(excess / row[j] - 1e-9));
        x[j] -= step;
        excess -= step * row[j];
      }
      if (excess > 1e-7) return false;
    }
    if (clean) return true;
  }
  return rows_satisfied(lp, x, 1e-7);
}

}  // namespace

const char* to_string(MipStatus s) {
  switch (s) {
    case MipStatus::Optimal: return "optimal";
    case MipStatus::Feasible: return "feasible";
    case MipStatus::Infeasible: return "infeasible";
    case MipStatus::NoSolution: return "no-solution";
  }
  return "unknown";
}

double gap_percent(double lb, double ub) {
  if (!std::isfinite(lb) || !std::isfinite(ub)) return std::numeric_limits<double>::infinity();
  return 100.0 * std::abs(ub - lb) / std::max(std::abs(lb), 1e-12);
}

MipSolution solve_mip(const MipProblem& p) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto n = p.lp.num_cols();
  if (p.integer.size() != n) throw std::invalid_argument("mip: integrality flags size mismatch");
  for (std::size_t j = 0; j < n; ++j) {
    if (p.integer[j] && (p.lp.lower[j] != std::floor(p.lp.lower[j]) ||
                         p.lp.upper[j] != std::floor(p.lp.upper[j])))
      throw std::invalid_argument("mip: integer column with fractional bounds");
  }

  LpSolver solver(p.lp);
  const auto& root_lo = p.lp.lower;
  const auto& root_hi = p.lp.upper;

  MipSolution out;
  double incumbent = -std::numeric_limits<double>::infinity();
  double unresolved = -std::numeric_limits<double>::infinity();
  double best_bound = std::numeric_limits<double>::infinity();

  std::priority_queue<Node, std::vector<Node>, NodeOrder> frontier;
  std::size_t seq = 0;
  frontier.push({std::numeric_limits<double>::infinity(), 0, seq++, {}});

  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };
  auto accept = [&](const std::vector<double>& x, double value) {
    if (value <= incumbent) return;
    incumbent = value;
    out.x = x;
    if (p.on_incumbent) p.on_incumbent(x, value);
  };
  auto objective_of = [&](const std::vector<double>& x) {
    double z = 0.0;
    for (std::size_t j = 0; j < n; ++j) z += p.lp.objective[j] * x[j];
    return z;
  };

  std::vector<double> lo = root_lo, hi = root_hi;
  bool budget_hit = false;
  while (!frontier.empty()) {
    if ((p.node_limit && out.nodes >= p.node_limit) || elapsed() >= p.time_limit_seconds) {
      budget_hit = true;
      break;
    }
    Node node = frontier.top();
    frontier.pop();
    if (node.bound <= incumbent + prune_tol(incumbent)) continue;

    lo = root_lo;
    hi = root_hi;
    for (const auto& ch : node.changes) {
      lo[ch.col] = ch.lo;
      hi[ch.col] = ch.hi;
    }
    for (std::size_t j = 0; j < n; ++j) solver.set_bounds(j, lo[j], hi[j]);
    LpSolution sol = solver.solve();
    if (sol.status == LpStatus::IterationLimit) {
      LpSolver fresh(p.lp);
      for (std::size_t j = 0; j < n; ++j) fresh.set_bounds(j, lo[j], hi[j]);
      sol = fresh.solve();
    }
    ++out.nodes;
    out.lp_iterations += sol.iterations;

    if (sol.status == LpStatus::IterationLimit) {
      unresolved = std::max(unresolved, node.bound);
    } else if (sol.status == LpStatus::Optimal) {
      const double z = std::min(sol.objective, node.bound);
      if (z > incumbent + prune_tol(incumbent)) {
        std::size_t branch = n;
        double best_frac = -1.0;
        for (std::size_t j = 0; j < n; ++j) {
          if (!p.integer[j]) continue;
          const double f = sol.x[j] - std::floor(sol.x[j]);
          if (f <= kIntegralityTol || f >= 1.0 - kIntegralityTol) continue;
          const double closeness = std::min(f, 1.0 - f);
          if (closeness > best_frac + 1e-12) {
            best_frac = closeness;
            branch = j;
          }
        }
        if (branch == n) {
          std::vector<double> x = sol.x;
          for (std::size_t j = 0; j < n; ++j)
            if (p.integer[j]) x[j] = std::round(x[j]);
          accept(x, objective_of(x));
        } else {
          if (p.rounding_heuristic) {
            std::vector<double> x = sol.x;
            if (floor_and_repair(p.lp, p.integer, lo, x)) accept(x, objective_of(x));
          }
          const double v = sol.x[branch];
          Node down{z, node.depth + 1, seq++, node.changes};
          down.changes.push_back({branch, lo[branch], std::floor(v)});
          Node up{z, node.depth + 1, seq++, std::move(node.changes)};
          up.changes.push_back({branch, std::ceil(v), hi[branch]});
          frontier.push(std::move(down));
          frontier.push(std::move(up));
        }
      }
    }

    double global = std::max(incumbent, unresolved);
    if (!frontier.empty()) global = std::max(global, frontier.top().bound);
    best_bound = std::min(best_bound, global);
    out.bound_trace.push_back(best_bound);
  }

  const bool have = std::isfinite(incumbent);
  out.objective = incumbent;
  if (budget_hit) {
    double global = std::max(incumbent, unresolved);
    if (!frontier.empty()) global = std::max(global, frontier.top().bound);
    out.best_bound = std::min(best_bound, global);
    out.status = have ? MipStatus::Feasible : MipStatus::NoSolution;
  } else if (unresolved > incumbent + prune_tol(incumbent)) {
    out.best_bound = unresolved;
    out.status = have ? MipStatus::Feasible : MipStatus::NoSolution;
  } else {
    out.best_bound = have ? incumbent : -std::numeric_limits<double>::infinity();
    out.status = have ? MipStatus::Optimal : MipStatus::Infeasible;
  }
  if (have) out.best_bound = std::max(out.best_bound, incumbent);
  out.gap_pct = have ? gap_percent(incumbent, out.best_bound)
                     : std::numeric_limits<double>::infinity();
  return out;
}

OracleResult enumerate_oracle(const MipProblem& p, bool collect_points) {
  const auto n = p.lp.num_cols();
  double count = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (!p.integer.at(j)) throw std::invalid_argument("oracle: every column must be integral");
    const double range = std::floor(p.lp.upper[j]) - std::ceil(p.lp.lower[j]) + 1.0;
    if (range <= 0.0) return {};
    count *= range;
  }
  if (count > static_cast<double>(kOracleLimit))
    throw std::invalid_argument("oracle: integer box exceeds 1e7 points");

  OracleResult out;
  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = std::ceil(p.lp.lower[j]);
  while (true) {
    if (rows_satisfied(p.lp, x, kRowTol)) {
      double z = 0.0;
      for (std::size_t j = 0; j < n; ++j) z += p.lp.objective[j] * x[j];
      if (!out.feasible || z > out.value) {
        out.value = z;
        out.argmax = x;
      }
      out.feasible = true;
      if (collect_points) out.points.push_back(x);
    }
    std::size_t j = 0;
    while (j < n) {
      if (x[j] + 1.0 <= std::floor(p.lp.upper[j])) {
        x[j] += 1.0;
        break;
      }
      x[j] = std::ceil(p.lp.lower[j]);
      ++j;
    }
    if (j == n) break;
  }
  return out;
}

}  // namespace fendec
