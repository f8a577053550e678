#include "fcg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "lp.hpp"
#include "mip.hpp"

namespace fendec {

namespace {

using Clock = std::chrono::steady_clock;

class MasterLp {
 public:
  MasterLp(std::span<const double> yhat, std::span<const double> u, BetaDomain domain)
      : yhat_(yhat.begin(), yhat.end()), domain_(domain), n_(yhat.size()) {
    const double span = std::accumulate(u.begin(), u.end(), 0.0) + 1.0;
    const std::size_t nb = domain == BetaDomain::Box ? n_ : 2 * n_;
    LpProblem p;
    p.objective.assign(nb + 1, 0.0);
    p.objective[nb] = 1.0;
    p.lower.assign(nb + 1, 0.0);
    p.upper.assign(nb + 1, 1.0);
    p.lower[nb] = -span;
    p.upper[nb] = span;
    if (domain == BetaDomain::L1Ball) {
      p.rows = Matrix(1, nb + 1);
      for (std::size_t j = 0; j < nb; ++j) p.rows(0, j) = 1.0;
      p.rhs = {1.0};
    } else {
      p.rows = Matrix(0, nb + 1);
    }
    solver_ = std::make_unique<LpSolver>(p);
  }

  void add_point(std::span<const double> y) {
    const std::size_t nb = domain_ == BetaDomain::Box ? n_ : 2 * n_;
    std::vector<double> row(nb + 1, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      const double diff = yhat_[i] - y[i];
      row[i] = -diff;
      if (domain_ == BetaDomain::L1Ball) row[n_ + i] = diff;
    }
    row[nb] = 1.0;
    solver_->add_row(row, 0.0);
  }

  SeparationMaster solve() {
    const LpSolution s = solver_->solve();
    if (s.status != LpStatus::Optimal)
      throw std::runtime_error(std::string("fcg: separation master ") + to_string(s.status));
    SeparationMaster out;
    const std::size_t nb = domain_ == BetaDomain::Box ? n_ : 2 * n_;
    out.theta = s.x[nb];
    out.beta.assign(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      out.beta[i] = domain_ == BetaDomain::Box ? s.x[i] : s.x[i] - s.x[n_ + i];
    return out;
  }

 private:
  std::vector<double> yhat_;
  BetaDomain domain_;
  std::size_t n_;
  std::unique_ptr<LpSolver> solver_;
};

std::vector<double> initial_beta(std::span<const double> yhat, BetaDomain domain) {
  std::vector<double> beta(yhat.size());
  for (std::size_t i = 0; i < yhat.size(); ++i) {
    const double f = yhat[i] - std::floor(yhat[i]);
    beta[i] = (f <= kIntegralityTol || f >= 1.0 - kIntegralityTol) ? 0.0 : f;
  }
  double scale = domain == BetaDomain::Box ? *std::max_element(beta.begin(), beta.end())
                                           : std::accumulate(beta.begin(), beta.end(), 0.0);
  if (scale <= 0.0) {
    std::fill(beta.begin(), beta.end(), 1.0);
    scale = domain == BetaDomain::Box ? 1.0 : static_cast<double>(beta.size());
  }
  for (auto& b : beta) b /= scale;
  return beta;
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

const char* to_string(FcgOutcome o) {
  switch (o) {
    case FcgOutcome::Cut: return "cut";
    case FcgOutcome::NoCut: return "no-cut";
    case FcgOutcome::ReducedSetEmpty: return "reduced-set-empty";
    case FcgOutcome::Budget: return "budget";
  }
  return "unknown";
}

GValue eval_g(std::span<const double> beta, const Matrix& W, std::span<const double> tau,
              std::span<const double> u, std::span<const double> ybar, double time_limit_seconds) {
  const auto n = W.cols();
  if (beta.size() != n || u.size() != n || ybar.size() != n || tau.size() != W.rows())
    throw std::invalid_argument("fcg: eval_g dimension mismatch");
  MipProblem p;
  p.lp.objective.assign(beta.begin(), beta.end());
  p.lp.rows = W;
  p.lp.rhs.assign(tau.begin(), tau.end());
  p.lp.lower.assign(ybar.begin(), ybar.end());
  p.lp.upper.assign(u.begin(), u.end());
  p.integer.assign(n, true);
  p.time_limit_seconds = time_limit_seconds;
  const MipSolution s = solve_mip(p);
  GValue out;
  out.exact = s.status == MipStatus::Optimal || s.status == MipStatus::Infeasible;
  out.feasible = s.status == MipStatus::Optimal || s.status == MipStatus::Feasible;
  if (!out.feasible) return out;
  out.g = s.objective;
  out.y = s.x;
  return out;
}

SeparationMaster separation_master(const std::vector<std::vector<double>>& points,
                                   std::span<const double> yhat, BetaDomain domain) {
  if (points.empty()) throw std::invalid_argument("fcg: separation master needs a point");
  std::vector<double> u(yhat.size(), 0.0);
  for (const auto& y : points)
    for (std::size_t i = 0; i < y.size(); ++i)
      u[i] = std::max({u[i], std::abs(y[i]), std::abs(yhat[i])});
  MasterLp master(yhat, u, domain);
  for (const auto& y : points) master.add_point(y);
  return master.solve();
}

FcgResult generate_cut(std::span<const double> yhat, const Matrix& W, std::span<const double> tau,
                       std::span<const double> u, std::span<const double> ybar,
                       const FcgConfig& cfg) {
  const auto start = Clock::now();
  auto remaining = [&] {
    return cfg.time_limit_seconds -
           std::chrono::duration<double>(Clock::now() - start).count();
  };

  FcgResult res;
  MasterLp master(yhat, u, cfg.domain);
  std::vector<double> beta = initial_beta(yhat, cfg.domain);
  double l = -std::numeric_limits<double>::infinity();
  double ub = std::numeric_limits<double>::infinity();
  std::vector<double> best_beta;
  double best_g = 0.0;

  for (std::size_t t = 0; t < cfg.max_iterations; ++t) {
    if (remaining() <= 0.0) {
      res.outcome = FcgOutcome::Budget;
      res.diagnostic = "time budget exhausted during cut generation";
      return res;
    }
    const GValue g = eval_g(beta, W, tau, u, ybar, remaining());
    ++res.mips_solved;
    if (!g.exact) {
      res.outcome = FcgOutcome::Budget;
      res.diagnostic = "inner IP hit the time budget before proving optimality";
      return res;
    }
    if (!g.feasible) {
      res.outcome = FcgOutcome::ReducedSetEmpty;
      res.diagnostic = "no integer point above the reduced lower bounds";
      return res;
    }
    const double delta = dot(beta, yhat) - g.g;
    if (delta > l) {
      l = delta;
      best_beta = beta;
      best_g = g.g;
    }
    master.add_point(g.y);
    const SeparationMaster m = master.solve();
    ub = std::min(ub, m.theta);
    res.trajectory.push_back({l, ub});
    res.iterations = t + 1;
    if (ub - l <= cfg.eps) {
      res.converged = true;
      break;
    }
    beta = m.beta;
  }

  if (l > cfg.eps) {
    res.outcome = FcgOutcome::Cut;
    res.cut.beta = std::move(best_beta);
    res.cut.g = best_g;
    res.cut.violation = l;
    res.cut.iteration = res.iterations;
  } else {
    res.outcome = FcgOutcome::NoCut;
    res.diagnostic = "best violation " + std::to_string(l) + " does not exceed tolerance";
  }
  if (!res.converged) res.diagnostic += res.diagnostic.empty() ? "iteration cap reached"
                                                                : "; iteration cap reached";
  return res;
}

}  // namespace fendec
