#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "lp.hpp"

namespace fendec {

struct MipProblem {
  LpProblem lp;
  std::vector<bool> integer;  // one flag per column; integral columns need integral bounds
  double time_limit_seconds = std::numeric_limits<double>::infinity();
  std::size_t node_limit = 0;  // 0 means unlimited
  bool rounding_heuristic = true;
  // Called with (point, objective) each time the incumbent improves.
  std::function<void(const std::vector<double>&, double)> on_incumbent;
};

enum class MipStatus {
  Optimal,
  Feasible,      // budget hit with an incumbent
  Infeasible,
  NoSolution,    // budget hit before any incumbent was found
};

const char* to_string(MipStatus s);

struct MipSolution {
  MipStatus status = MipStatus::NoSolution;
  std::vector<double> x;
  double objective = -std::numeric_limits<double>::infinity();  // incumbent (LB)
  double best_bound = std::numeric_limits<double>::infinity();  // UB
  double gap_pct = std::numeric_limits<double>::infinity();
  std::size_t nodes = 0;
  std::size_t lp_iterations = 0;
  // Best bound after each processed node; nonincreasing.
  std::vector<double> bound_trace;
};

constexpr double kIntegralityTol = 1e-6;

double gap_percent(double lb, double ub);

// Best-bound-first branch and bound on the most fractional variable.
MipSolution solve_mip(const MipProblem& p);

struct OracleResult {
  bool feasible = false;
  double value = -std::numeric_limits<double>::infinity();
  std::vector<double> argmax;
  std::vector<std::vector<double>> points;  // every feasible point, when requested
};

// Exhaustive scan of the integer box. Every column must be integral and the
// box may hold at most 1e7 points, otherwise std::invalid_argument.
OracleResult enumerate_oracle(const MipProblem& p, bool collect_points = true);

}  // namespace fendec
