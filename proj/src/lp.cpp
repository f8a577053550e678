#include "lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fendec {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kDegenerateBeforeBland = 50;
constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

LpSolver::LpSolver(const LpProblem& p) {
  const auto n = p.num_cols();
  const auto m = p.num_rows();
  if (p.lower.size() != n || p.upper.size() != n)
    throw std::invalid_argument("lp: bound vectors must match the column count");
  if (p.rows.rows() != m || (m > 0 && p.rows.cols() != n))
    throw std::invalid_argument("lp: row matrix must be rows x cols");
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(p.lower[j]) || !std::isfinite(p.upper[j]))
      throw std::invalid_argument("lp: every variable needs finite bounds");
  }
  A_.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j < n; ++j) A_(r, j) = p.rows(r, j);
  b_ = Eigen::Map<const Eigen::VectorXd>(p.rhs.data(), static_cast<Eigen::Index>(m));
  c_ = p.objective;
  lo_ = p.lower;
  hi_ = p.upper;
  cold_start();
}

double LpSolver::var_upper(std::size_t j) const { return is_slack(j) ? kInfinity : hi_[j]; }

double LpSolver::nonbasic_value(std::size_t j) const {
  if (is_slack(j)) return 0.0;
  return state_[j] == VarState::AtUpper ? hi_[j] : lo_[j];
}

Eigen::VectorXd LpSolver::column(std::size_t j) const {
  if (!is_slack(j)) return A_.col(static_cast<Eigen::Index>(j));
  Eigen::VectorXd e = Eigen::VectorXd::Zero(A_.rows());
  e(static_cast<Eigen::Index>(j - num_cols())) = 1.0;
  return e;
}

void LpSolver::cold_start() {
  const auto n = num_cols(), m = num_rows();
  state_.assign(n + m, VarState::Basic);
  for (std::size_t j = 0; j < n; ++j)
    state_[j] = c_[j] > 0.0 ? VarState::AtUpper : VarState::AtLower;
  head_.resize(m);
  for (std::size_t r = 0; r < m; ++r) head_[r] = n + r;
  Binv_ = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  factor_valid_ = true;
  pivots_since_refactor_ = 0;
}

bool LpSolver::refactor() {
  const auto m = static_cast<Eigen::Index>(num_rows());
  pivots_since_refactor_ = 0;
  if (m == 0) {
    Binv_.resize(0, 0);
    factor_valid_ = true;
    return true;
  }
  Eigen::MatrixXd B(m, m);
  for (Eigen::Index r = 0; r < m; ++r) B.col(r) = column(head_[static_cast<std::size_t>(r)]);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
  const auto diag = lu.matrixLU().diagonal().cwiseAbs();
  if (diag.minCoeff() <= 1e-11 * std::max(1.0, diag.maxCoeff())) {
    factor_valid_ = false;
    return false;
  }
  Binv_ = lu.inverse();
  factor_valid_ = true;
  return true;
}

void LpSolver::set_rhs(std::size_t row, double value) {
  b_(static_cast<Eigen::Index>(row)) = value;
}

void LpSolver::set_bounds(std::size_t col, double lower, double upper) {
  if (!std::isfinite(lower) || !std::isfinite(upper))
    throw std::invalid_argument("lp: bounds must be finite");
  lo_.at(col) = lower;
  hi_.at(col) = upper;
}

void LpSolver::set_objective(std::span<const double> c) {
  if (c.size() != num_cols()) throw std::invalid_argument("lp: objective size mismatch");
  c_.assign(c.begin(), c.end());
}

std::size_t LpSolver::add_row(std::span<const double> coeffs, double rhs) {
  const auto n = num_cols();
  const auto m = num_rows();
  if (coeffs.size() != n) throw std::invalid_argument("lp: row size mismatch");
  const auto mi = static_cast<Eigen::Index>(m);
  A_.conservativeResize(mi + 1, Eigen::NoChange);
  for (std::size_t j = 0; j < n; ++j) A_(mi, static_cast<Eigen::Index>(j)) = coeffs[j];
  b_.conservativeResize(mi + 1);
  b_(mi) = rhs;

  // Inverse of [[B, 0], [a_B', 1]] is [[B^-1, 0], [-a_B' B^-1, 1]].
  Eigen::RowVectorXd aB = Eigen::RowVectorXd::Zero(mi);
  for (std::size_t r = 0; r < m; ++r)
    if (!is_slack(head_[r])) aB(static_cast<Eigen::Index>(r)) = coeffs[head_[r]];
  Eigen::MatrixXd grown = Eigen::MatrixXd::Zero(mi + 1, mi + 1);
  if (factor_valid_) {
    grown.topLeftCorner(mi, mi) = Binv_;
    grown.bottomLeftCorner(1, mi) = -aB * Binv_;
  }
  grown(mi, mi) = 1.0;
  Binv_ = std::move(grown);

  state_.push_back(VarState::Basic);
  head_.push_back(n + m);
  return m;
}

void LpSolver::set_basis(const std::vector<VarState>& states) {
  const auto n = num_cols(), m = num_rows();
  if (states.size() != n + m ||
      static_cast<std::size_t>(std::count(states.begin(), states.end(), VarState::Basic)) != m) {
    cold_start();
    return;
  }
  state_ = states;
  for (std::size_t j = n; j < n + m; ++j)
    if (state_[j] == VarState::AtUpper) state_[j] = VarState::AtLower;
  head_.clear();
  for (std::size_t j = 0; j < n + m; ++j)
    if (state_[j] == VarState::Basic) head_.push_back(j);
  if (!refactor()) cold_start();
}

void LpSolver::compute_primal() {
  Eigen::VectorXd rhs = b_;
  for (std::size_t j = 0; j < num_cols(); ++j) {
    if (state_[j] == VarState::Basic) continue;
    const double v = nonbasic_value(j);
    if (v != 0.0) rhs.noalias() -= v * A_.col(static_cast<Eigen::Index>(j));
  }
  xB_.noalias() = Binv_ * rhs;
}

void LpSolver::compute_duals() {
  const auto m = static_cast<Eigen::Index>(num_rows());
  Eigen::VectorXd cB(m);
  for (Eigen::Index r = 0; r < m; ++r) cB(r) = cost(head_[static_cast<std::size_t>(r)]);
  y_.noalias() = Binv_.transpose() * cB;
  d_ = Eigen::Map<const Eigen::VectorXd>(c_.data(), static_cast<Eigen::Index>(c_.size()));
  d_.noalias() -= A_.transpose() * y_;
}

bool LpSolver::restore_dual_feasibility() {
  compute_duals();
  for (std::size_t j = 0; j < num_cols(); ++j) {
    const double dj = d_(static_cast<Eigen::Index>(j));
    if (state_[j] == VarState::AtLower && dj > kOptimalityTol) state_[j] = VarState::AtUpper;
    else if (state_[j] == VarState::AtUpper && dj < -kOptimalityTol) state_[j] = VarState::AtLower;
  }
  for (std::size_t i = 0; i < num_rows(); ++i) {
    if (state_[num_cols() + i] != VarState::Basic && -y_(static_cast<Eigen::Index>(i)) > kOptimalityTol)
      return false;
  }
  return true;
}

void LpSolver::pivot(std::size_t r, std::size_t q, const Eigen::VectorXd& alpha_q) {
  const auto ri = static_cast<Eigen::Index>(r);
  const Eigen::RowVectorXd pr = Binv_.row(ri) / alpha_q(ri);
  Binv_.noalias() -= alpha_q * pr;
  Binv_.row(ri) = pr;
  head_[r] = q;
  state_[q] = VarState::Basic;
  ++pivots_since_refactor_;
}

double LpSolver::primal_residual() const {
  const auto n = num_cols();
  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j)
    x(static_cast<Eigen::Index>(j)) = state_[j] == VarState::Basic ? 0.0 : nonbasic_value(j);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(A_.rows());
  for (std::size_t r = 0; r < head_.size(); ++r) {
    const auto j = head_[r];
    if (is_slack(j)) s(static_cast<Eigen::Index>(j - n)) = xB_(static_cast<Eigen::Index>(r));
    else x(static_cast<Eigen::Index>(j)) = xB_(static_cast<Eigen::Index>(r));
  }
  if (A_.rows() == 0) return 0.0;
  return (A_ * x + s - b_).cwiseAbs().maxCoeff();
}

LpSolution LpSolver::extract(LpStatus status, std::size_t iterations) const {
  const auto n = num_cols(), m = num_rows();
  LpSolution sol;
  sol.status = status;
  sol.iterations = iterations;
  sol.basis = state_;
  sol.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) sol.x[j] = state_[j] == VarState::Basic ? 0.0 : nonbasic_value(j);
  for (std::size_t r = 0; r < m; ++r) {
    const auto j = head_[r];
    if (!is_slack(j)) {
      // Snap values that sit on a bound within tolerance.
      double v = xB_(static_cast<Eigen::Index>(r));
      if (std::abs(v - lo_[j]) <= kFeasibilityTol) v = lo_[j];
      else if (std::abs(v - hi_[j]) <= kFeasibilityTol) v = hi_[j];
      sol.x[j] = v;
    }
  }
  sol.duals.resize(m);
  for (std::size_t i = 0; i < m; ++i) sol.duals[i] = std::max(0.0, y_(static_cast<Eigen::Index>(i)));
  sol.reduced_costs.assign(d_.data(), d_.data() + d_.size());
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += c_[j] * sol.x[j];
  return sol;
}

LpSolution LpSolver::solve() {
  const auto n = num_cols();
  const auto m = num_rows();
  for (std::size_t j = 0; j < n; ++j) {
    if (lo_[j] > hi_[j] + kFeasibilityTol) {
      compute_duals();
      xB_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
      return extract(LpStatus::Infeasible, 0);
    }
  }
  const std::size_t limit = iteration_limit_ ? iteration_limit_ : 1000 + 50 * (n + m);
  if (!factor_valid_ && !refactor()) cold_start();
  if (!restore_dual_feasibility()) {
    cold_start();
    restore_dual_feasibility();
  }

  std::size_t iterations = 0;
  std::size_t degenerate = 0;
  bool bland = false;
  const std::size_t refactor_every = std::max<std::size_t>(100, m / 2);

  while (true) {
    if (pivots_since_refactor_ >= refactor_every && !refactor()) {
      cold_start();
      restore_dual_feasibility();
    }
    compute_primal();

    // Leaving row: largest bound violation; Bland mode takes the lowest
    // variable index instead.
    std::size_t r = kNone;
    double worst = kFeasibilityTol;
    bool to_lower = true;
    for (std::size_t k = 0; k < m; ++k) {
      const auto j = head_[k];
      const double v = xB_(static_cast<Eigen::Index>(k));
      double viol = 0.0;
      bool low = true;
      if (v < var_lower(j) - kFeasibilityTol) viol = var_lower(j) - v;
      else if (v > var_upper(j) + kFeasibilityTol) { viol = v - var_upper(j); low = false; }
      if (viol <= 0.0) continue;
      const bool better = bland ? (r == kNone || j < head_[r]) : viol > worst;
      if (better) {
        r = k;
        worst = viol;
        to_lower = low;
      }
    }

    if (r == kNone) {
      if (pivots_since_refactor_ > 0 && primal_residual() > 1e-9) {
        if (!refactor()) cold_start();
        restore_dual_feasibility();
        continue;
      }
      if (!restore_dual_feasibility()) {
        cold_start();
        restore_dual_feasibility();
        continue;
      }
      // Bound flips change the primal point; re-check feasibility.
      compute_primal();
      bool feasible = true;
      for (std::size_t k = 0; k < m && feasible; ++k) {
        const auto j = head_[k];
        const double v = xB_(static_cast<Eigen::Index>(k));
        feasible = v >= var_lower(j) - kFeasibilityTol && v <= var_upper(j) + kFeasibilityTol;
      }
      if (!feasible) continue;
      return extract(LpStatus::Optimal, iterations);
    }
    if (iterations >= limit) {
      compute_duals();
      return extract(LpStatus::IterationLimit, iterations);
    }

    compute_duals();
    const auto ri = static_cast<Eigen::Index>(r);
    const Eigen::RowVectorXd row_r = Binv_.row(ri);
    const Eigen::RowVectorXd alpha_struct = row_r * A_;
    auto alpha_of = [&](std::size_t j) {
      return is_slack(j) ? row_r(static_cast<Eigen::Index>(j - n))
                         : alpha_struct(static_cast<Eigen::Index>(j));
    };
    auto slack_d = [&](std::size_t j) {
      return is_slack(j) ? -y_(static_cast<Eigen::Index>(j - n)) : d_(static_cast<Eigen::Index>(j));
    };

    // x_B[r] changes by -alpha_rj per unit increase of x_j. The basic value
    // must rise when it sits below its lower bound and fall otherwise.
    auto eligible = [&](std::size_t j, double a) {
      if (state_[j] == VarState::Basic) return false;
      if (!is_slack(j) && hi_[j] - lo_[j] <= 0.0) return false;
      const bool at_lower = state_[j] == VarState::AtLower;
      if (to_lower) return (at_lower && a < -kPivotTol) || (!at_lower && a > kPivotTol);
      return (at_lower && a > kPivotTol) || (!at_lower && a < -kPivotTol);
    };
    auto dual_slack = [&](std::size_t j) {
      const double dj = slack_d(j);
      return state_[j] == VarState::AtLower ? std::max(0.0, -dj) : std::max(0.0, dj);
    };

    std::size_t q = kNone;
    double step = 0.0;
    if (bland) {
      double best = kInfinity;
      for (std::size_t j = 0; j < n + m; ++j) {
        const double a = alpha_of(j);
        if (!eligible(j, a)) continue;
        const double ratio = dual_slack(j) / std::abs(a);
        if (ratio < best - 1e-12) {
          best = ratio;
          q = j;
        }
      }
      step = best;
    } else {
      // Harris two-pass: bound the step with relaxed dual slacks, then take
      // the largest pivot among candidates within that bound.
      double bound = kInfinity;
      for (std::size_t j = 0; j < n + m; ++j) {
        const double a = alpha_of(j);
        if (!eligible(j, a)) continue;
        bound = std::min(bound, (dual_slack(j) + kOptimalityTol) / std::abs(a));
      }
      double best_pivot = 0.0;
      for (std::size_t j = 0; j < n + m; ++j) {
        const double a = alpha_of(j);
        if (!eligible(j, a)) continue;
        const double ratio = dual_slack(j) / std::abs(a);
        if (ratio <= bound && std::abs(a) > best_pivot) {
          best_pivot = std::abs(a);
          q = j;
          step = ratio;
        }
      }
    }
    if (q == kNone) {
      if (pivots_since_refactor_ > 0) {
        if (!refactor()) cold_start();
        restore_dual_feasibility();
        continue;
      }
      return extract(LpStatus::Infeasible, iterations);
    }

    const Eigen::VectorXd alpha_q = Binv_ * column(q);
    const double arq = alpha_of(q);
    if (std::abs(alpha_q(ri) - arq) > 1e-7 * (1.0 + std::abs(arq)) && pivots_since_refactor_ > 0) {
      if (!refactor()) cold_start();
      restore_dual_feasibility();
      continue;
    }

    const auto leaving = head_[r];
    pivot(r, q, alpha_q);
    state_[leaving] = to_lower ? VarState::AtLower : VarState::AtUpper;
    ++iterations;

    degenerate = step < 1e-12 ? degenerate + 1 : 0;
    if (degenerate > kDegenerateBeforeBland) bland = true;
  }
}

LpSolution solve(const LpProblem& p) {
  LpSolver s(p);
  return s.solve();
}

LpSolution add_row_resolve(const LpProblem& p, const LpSolution& s, std::span<const double> row,
                           double rhs) {
  LpSolver solver(p);
  if (s.basis.size() == p.num_cols() + p.num_rows()) solver.set_basis(s.basis);
  solver.add_row(row, rhs);
  return solver.solve();
}

}  // namespace fendec
