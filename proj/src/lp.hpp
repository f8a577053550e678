#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "model.hpp"

namespace fendec {

// max c'x  s.t.  A x <= b,  lower <= x <= upper (all bounds finite).
struct LpProblem {
  std::vector<double> objective;
  Matrix rows;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t num_cols() const { return objective.size(); }
  std::size_t num_rows() const { return rhs.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(LpStatus s);

enum class VarState : std::uint8_t { Basic, AtLower, AtUpper };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  std::vector<double> duals;          // one per row, >= 0
  std::vector<double> reduced_costs;  // one per column
  double objective = 0.0;
  std::size_t iterations = 0;
  // Variable states, structurals first then one slack per row. Feed back to
  // LpSolver::set_basis to warm-start.
  std::vector<VarState> basis;
};

// Dense bounded-variable dual simplex. Rows carry slacks s >= 0 with
// A x + s = b. The all-slack basis with every structural at its
// objective-preferred bound is dual feasible, so the solver never needs a
// phase one, and bound, rhs and row changes keep the current basis dual
// feasible for a warm restart.
class LpSolver {
 public:
  static constexpr double kFeasibilityTol = 1e-8;
  static constexpr double kOptimalityTol = 1e-9;
  static constexpr double kPivotTol = 1e-9;

  explicit LpSolver(const LpProblem& p);

  std::size_t num_rows() const { return static_cast<std::size_t>(A_.rows()); }
  std::size_t num_cols() const { return static_cast<std::size_t>(A_.cols()); }

  void set_rhs(std::size_t row, double value);
  void set_bounds(std::size_t col, double lower, double upper);
  void set_objective(std::span<const double> c);
  double lower(std::size_t col) const { return lo_[col]; }
  double upper(std::size_t col) const { return hi_[col]; }
  double rhs(std::size_t row) const { return b_[row]; }

  // Appends a row; the new slack enters the basis. Returns the row index.
  std::size_t add_row(std::span<const double> coeffs, double rhs);

  // Falls back to the slack basis if the given states are inconsistent.
  void set_basis(const std::vector<VarState>& states);

  void set_iteration_limit(std::size_t limit) { iteration_limit_ = limit; }

  LpSolution solve();

 private:
  std::size_t total_vars() const { return num_cols() + num_rows(); }
  bool is_slack(std::size_t j) const { return j >= num_cols(); }
  double cost(std::size_t j) const { return is_slack(j) ? 0.0 : c_[j]; }
  double var_lower(std::size_t j) const { return is_slack(j) ? 0.0 : lo_[j]; }
  double var_upper(std::size_t j) const;
  double nonbasic_value(std::size_t j) const;
  Eigen::VectorXd column(std::size_t j) const;

  void cold_start();
  bool refactor();
  void compute_primal();
  void compute_duals();
  bool restore_dual_feasibility();
  void pivot(std::size_t r, std::size_t q, const Eigen::VectorXd& alpha_q);
  double primal_residual() const;
  LpSolution extract(LpStatus status, std::size_t iterations) const;

  Eigen::MatrixXd A_;
  Eigen::VectorXd b_;
  std::vector<double> c_, lo_, hi_;

  std::vector<VarState> state_;
  std::vector<std::size_t> head_;  // basic variable in each basis position
  Eigen::MatrixXd Binv_;
  bool factor_valid_ = false;
  std::size_t pivots_since_refactor_ = 0;

  Eigen::VectorXd xB_;
  Eigen::VectorXd y_;
  Eigen::VectorXd d_;  // reduced costs of structurals; slack j has -y_j

  std::size_t iteration_limit_ = 0;  // 0 selects a size-based default
};

LpSolution solve(const LpProblem& p);

// Solves p plus the extra row, warm-starting from s.
LpSolution add_row_resolve(const LpProblem& p, const LpSolution& s, std::span<const double> row,
                           double rhs);

}  // namespace fendec
