#include "sfd.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lp.hpp"
#include "mip.hpp"

namespace fendec {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kActivationTol = 1e-9;
constexpr double kRowTol = 1e-9;
constexpr std::size_t kStallBeforeExact = 10;

class Deadline {
 public:
  explicit Deadline(double seconds) : start_(Clock::now()), limit_(seconds) {}
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }
  double remaining() const { return limit_ - elapsed(); }
  bool expired() const { return remaining() <= 0.0; }

 private:
  Clock::time_point start_;
  double limit_;
};

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

bool is_fractional(std::span<const double> y) {
  return std::any_of(y.begin(), y.end(), [](double v) {
    return std::abs(v - std::round(v)) > kIntegralityTol;
  });
}

// Fenchel cut with the right-hand side at which it was generated. W >= 0 makes
// the cut valid for every tau <= tau_ref; elsewhere its rhs is relaxed to
// G = max over the box, where the row is redundant.
struct StoredCut {
  std::vector<double> beta;
  double g;
  double G;
  std::vector<double> tau_ref;
};

class ScenarioLp {
 public:
  ScenarioLp(const TwoStageInstance& inst, std::size_t s)
      : inst_(inst), s_(s), solver_(base_problem(inst, s)) {}

  void set_point(std::span<const double> x) {
    tau_ = scenario_tau(inst_, x, s_);
    for (std::size_t k = 0; k < tau_.size(); ++k) solver_.set_rhs(k, tau_[k]);
    active_.resize(cuts_.size());
    for (std::size_t j = 0; j < cuts_.size(); ++j) {
      active_[j] = covers(cuts_[j]);
      solver_.set_rhs(inst_.m2() + j, active_[j] ? cuts_[j].g : cuts_[j].G);
    }
  }

  void add_cut(StoredCut cut) {
    const bool on = covers(cut);
    solver_.add_row(cut.beta, on ? cut.g : cut.G);
    cuts_.push_back(std::move(cut));
    active_.push_back(on);
  }

  LpSolution solve() { return solver_.solve(); }

  const std::vector<double>& tau() const { return tau_; }
  const std::vector<StoredCut>& cuts() const { return cuts_; }
  bool active(std::size_t j) const { return active_[j]; }

  ScenarioDuals duals(const LpSolution& sol) const {
    ScenarioDuals d;
    const auto m2 = inst_.m2();
    d.row_duals.assign(sol.duals.begin(), sol.duals.begin() + static_cast<std::ptrdiff_t>(m2));
    d.cut_duals.assign(sol.duals.begin() + static_cast<std::ptrdiff_t>(m2), sol.duals.end());
    d.cut_rhs.resize(cuts_.size());
    for (std::size_t j = 0; j < cuts_.size(); ++j) d.cut_rhs[j] = active_[j] ? cuts_[j].g : cuts_[j].G;
    d.reduced_costs = sol.reduced_costs;
    return d;
  }

 private:
  static LpProblem base_problem(const TwoStageInstance& inst, std::size_t s) {
    LpProblem p;
    p.objective = inst.scenarios[s].q;
    p.rows = inst.W;
    p.rhs = inst.scenarios[s].h;
    p.lower.assign(inst.n2(), 0.0);
    p.upper = inst.u;
    return p;
  }

  bool covers(const StoredCut& c) const {
    for (std::size_t k = 0; k < tau_.size(); ++k)
      if (tau_[k] > c.tau_ref[k] + kActivationTol) return false;
    return true;
  }

  const TwoStageInstance& inst_;
  std::size_t s_;
  LpSolver solver_;
  std::vector<StoredCut> cuts_;
  std::vector<char> active_;
  std::vector<double> tau_;
};

// Adds p * (pi'T, pi'h + pi_cut'rhs + max(d,0)'u) to (eta, gamma).
void accumulate_piece(const TwoStageInstance& inst, std::size_t s, const ScenarioDuals& d,
                      std::vector<double>& eta, double& gamma) {
  const auto& sc = inst.scenarios[s];
  double g = dot(d.row_duals, sc.h) + dot(d.cut_duals, d.cut_rhs);
  for (std::size_t i = 0; i < inst.n2(); ++i) g += std::max(d.reduced_costs[i], 0.0) * inst.u[i];
  gamma += sc.p * g;
  for (std::size_t k = 0; k < inst.m2(); ++k) {
    if (d.row_duals[k] == 0.0) continue;
    const auto row = sc.T.row(k);
    for (std::size_t j = 0; j < inst.n1(); ++j) eta[j] += sc.p * d.row_duals[k] * row[j];
  }
}

// Moving x away from xhat can switch cuts off (tau grows past tau_ref). The
// count of coordinates that can raise some tau_k bounds how far; each active
// cut then loosens by at most G - g.
void add_deactivation_term(const TwoStageInstance& inst, std::size_t s, const ScenarioLp& lp,
                           const ScenarioDuals& d, std::span<const double> xhat,
                           std::vector<double>& eta, double& gamma) {
  double M = 0.0;
  for (std::size_t j = 0; j < lp.cuts().size(); ++j)
    if (lp.active(j)) M += d.cut_duals[j] * (lp.cuts()[j].G - lp.cuts()[j].g);
  if (M <= 0.0) return;
  const auto& T = inst.scenarios[s].T;
  const double pM = inst.scenarios[s].p * M;
  for (std::size_t i = 0; i < inst.n1(); ++i) {
    bool neg = false, pos = false;
    for (std::size_t k = 0; k < inst.m2(); ++k) {
      neg = neg || T(k, i) < 0.0;
      pos = pos || T(k, i) > 0.0;
    }
    if (xhat[i] < 0.5 && neg) {
      eta[i] -= pM;
    } else if (xhat[i] >= 0.5 && pos) {
      eta[i] += pM;
      gamma += pM;
    }
  }
}

double recourse_upper(const TwoStageInstance& inst, std::size_t s) {
  double v = 0.0;
  for (std::size_t i = 0; i < inst.n2(); ++i) v += std::max(inst.scenarios[s].q[i], 0.0) * inst.u[i];
  return v;
}

double recourse_lower(const TwoStageInstance& inst, std::size_t s) {
  double v = 0.0;
  for (std::size_t i = 0; i < inst.n2(); ++i) v += std::min(inst.scenarios[s].q[i], 0.0) * inst.u[i];
  return v;
}

class Master {
 public:
  explicit Master(const TwoStageInstance& inst) : inst_(inst) {
    for (std::size_t s = 0; s < inst.scenarios.size(); ++s) {
      theta_lo_ += inst.scenarios[s].p * recourse_lower(inst, s);
      theta_hi_ += inst.scenarios[s].p * recourse_upper(inst, s);
    }
  }

  void add(const OptimalityCut& cut) { cuts_.push_back(cut); }

  MipSolution solve(double time_limit) const {
    const auto n1 = inst_.n1(), m1 = inst_.m1();
    MipProblem p;
    p.lp.objective = inst_.first.c;
    p.lp.objective.push_back(1.0);
    p.lp.rows = Matrix(m1 + cuts_.size(), n1 + 1);
    p.lp.rhs.resize(m1 + cuts_.size());
    for (std::size_t r = 0; r < m1; ++r) {
      for (std::size_t j = 0; j < n1; ++j) p.lp.rows(r, j) = inst_.first.A(r, j);
      p.lp.rhs[r] = inst_.first.b[r];
    }
    for (std::size_t c = 0; c < cuts_.size(); ++c) {
      for (std::size_t j = 0; j < n1; ++j) p.lp.rows(m1 + c, j) = cuts_[c].eta[j];
      p.lp.rows(m1 + c, n1) = 1.0;
      p.lp.rhs[m1 + c] = cuts_[c].gamma;
    }
    p.lp.lower.assign(n1 + 1, 0.0);
    p.lp.upper.assign(n1 + 1, 1.0);
    p.lp.lower[n1] = theta_lo_;
    p.lp.upper[n1] = theta_hi_;
    p.integer.assign(n1 + 1, true);
    p.integer[n1] = false;
    p.time_limit_seconds = time_limit;
    return solve_mip(p);
  }

 private:
  const TwoStageInstance& inst_;
  std::vector<OptimalityCut> cuts_;
  double theta_lo_ = 0.0;
  double theta_hi_ = 0.0;
};

bool rows_hold(const Matrix& W, std::span<const double> tau, std::span<const double> y) {
  for (std::size_t k = 0; k < W.rows(); ++k)
    if (dot(W.row(k), y) > tau[k] + kRowTol) return false;
  return true;
}

// An integer point of the scenario set near the LP point: the rounded point
// when it is integral within tolerance, else the floor. W >= 0 keeps the floor
// feasible.
bool integer_point(const TwoStageInstance& inst, std::span<const double> tau,
                   std::span<const double> yhat, std::vector<double>& y) {
  y.resize(yhat.size());
  for (std::size_t i = 0; i < yhat.size(); ++i) {
    const double r = std::round(yhat[i]);
    y[i] = std::abs(yhat[i] - r) <= kIntegralityTol ? r : std::floor(yhat[i]);
    y[i] = std::clamp(y[i], 0.0, inst.u[i]);
  }
  if (rows_hold(inst.W, tau, y)) return true;
  for (std::size_t i = 0; i < yhat.size(); ++i) y[i] = std::max(0.0, std::floor(yhat[i] - kIntegralityTol));
  if (rows_hold(inst.W, tau, y)) return true;
  std::fill(y.begin(), y.end(), 0.0);
  return rows_hold(inst.W, tau, y);
}

std::vector<double> first_stage(const MipSolution& ms, std::size_t n1) {
  std::vector<double> x(ms.x.begin(), ms.x.begin() + static_cast<std::ptrdiff_t>(n1));
  for (auto& v : x) v = std::round(v);
  return x;
}

void finish(SolveReport& r, const Deadline& clock) {
  r.wall_seconds = clock.elapsed();
  r.gap_pct = gap_percent(r.lb, r.ub);
}

}  // namespace

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Sfd: return "sfd";
    case Algorithm::SfdR: return "sfd-r";
    case Algorithm::Direct: return "direct";
  }
  return "unknown";
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Budget: return "budget";
    case SolveStatus::Failed: return "failed";
  }
  return "unknown";
}

OptimalityCut optimality_cut_from_duals(const TwoStageInstance& inst,
                                        const std::vector<ScenarioDuals>& duals) {
  if (duals.size() != inst.scenarios.size())
    throw std::invalid_argument("sfd: need duals for every scenario");
  OptimalityCut cut;
  cut.eta.assign(inst.n1(), 0.0);
  for (std::size_t s = 0; s < duals.size(); ++s) accumulate_piece(inst, s, duals[s], cut.eta, cut.gamma);
  return cut;
}

LshapedInit lshaped_init(const TwoStageInstance& inst, const SolveOptions& opt) {
  const Deadline clock(opt.time_limit_seconds);
  const auto S = inst.scenarios.size();
  Master master(inst);
  std::vector<ScenarioLp> lps;
  lps.reserve(S);
  for (std::size_t s = 0; s < S; ++s) lps.emplace_back(inst, s);

  LshapedInit out;
  while (!clock.expired() && (opt.iteration_limit == 0 || out.iterations < opt.iteration_limit)) {
    const MipSolution ms = master.solve(clock.remaining());
    ++out.iterations;
    if (ms.x.empty()) break;
    out.x = first_stage(ms, inst.n1());
    out.master_value = ms.objective;
    const double theta = ms.x[inst.n1()];
    OptimalityCut cut;
    cut.eta.assign(inst.n1(), 0.0);
    out.recourse_lp = 0.0;
    out.y.assign(S, {});
    for (std::size_t s = 0; s < S; ++s) {
      lps[s].set_point(out.x);
      const LpSolution sol = lps[s].solve();
      if (sol.status != LpStatus::Optimal)
        throw std::runtime_error("scenario " + std::to_string(s) +
                                 " LP is infeasible; the instance lacks complete recourse");
      out.recourse_lp += inst.scenarios[s].p * sol.objective;
      out.y[s] = sol.x;
      accumulate_piece(inst, s, lps[s].duals(sol), cut.eta, cut.gamma);
    }
    if (theta <= out.recourse_lp + opt.eps * std::max(1.0, std::abs(out.recourse_lp))) {
      out.converged = true;
      break;
    }
    cut.iteration = out.iterations;
    master.add(cut);
  }
  return out;
}

SolveReport sfd_solve(const TwoStageInstance& inst, bool enable_isg, const SolveOptions& opt) {
  const Deadline clock(opt.time_limit_seconds);
  const auto S = inst.scenarios.size();
  const auto n1 = inst.n1();
  const auto n2 = inst.n2();

  SolveReport rep;
  rep.algorithm = enable_isg ? Algorithm::SfdR : Algorithm::Sfd;
  rep.scenario_cuts.assign(S, 0);
  if (has_errors(validate(inst))) {
    rep.message = "instance failed validation";
    finish(rep, clock);
    return rep;
  }

  Master master(inst);
  std::vector<ScenarioLp> lps;
  lps.reserve(S);
  for (std::size_t s = 0; s < S; ++s) lps.emplace_back(inst, s);

  std::vector<double> xhat;
  double theta_hat = 0.0;
  auto solve_master = [&]() {
    const MipSolution ms = master.solve(clock.remaining());
    ++rep.iterations;
    if (std::isfinite(ms.best_bound)) rep.ub = std::min(rep.ub, ms.best_bound);
    if (ms.x.empty()) return false;
    xhat = first_stage(ms, n1);
    theta_hat = ms.x[n1];
    return true;
  };
  auto converged = [&] {
    // Absolute floor of eps when LB is near zero.
    return std::isfinite(rep.lb) &&
           std::abs(rep.ub - rep.lb) <= opt.eps * std::max(1.0, std::abs(rep.lb));
  };
  auto out_of_budget = [&] {
    return clock.expired() || (opt.iteration_limit && rep.iterations >= opt.iteration_limit);
  };

  const std::vector<double> zeros(n2, 0.0);
  auto record = [&](std::size_t s, const FcgResult& r) {
    rep.mips_solved += r.mips_solved;
    if (opt.keep_fcg_trajectories) rep.fcg_traces.push_back({s, r.trajectory, r.converged});
  };

  // One Fenchel cut for scenario s at the current point, escalating from the
  // reduced box domain to the full set and then the L1 domain. Returns false
  // when nothing separates yhat.
  auto separate = [&](std::size_t s, std::span<const double> yhat) {
    const auto& tau = lps[s].tau();
    std::vector<double> ybar = zeros;
    if (enable_isg) ybar = run_isg({inst.W, tau, inst.u, {yhat.begin(), yhat.end()}}, opt.isg).ybar;

    struct Attempt {
      std::vector<double> ybar;
      BetaDomain domain;
    };
    std::vector<Attempt> attempts{{ybar, opt.fcg.domain}};
    if (ybar != zeros) attempts.push_back({zeros, opt.fcg.domain});
    if (opt.fcg.domain != BetaDomain::L1Ball) attempts.push_back({zeros, BetaDomain::L1Ball});

    for (const auto& a : attempts) {
      if (clock.expired()) return false;
      FcgConfig cfg = opt.fcg;
      cfg.domain = a.domain;
      cfg.time_limit_seconds = std::min(cfg.time_limit_seconds, clock.remaining());
      FcgResult r = generate_cut(yhat, inst.W, tau, inst.u, a.ybar, cfg);
      record(s, r);
      if (r.outcome == FcgOutcome::Budget) return false;
      if (r.outcome != FcgOutcome::Cut) {
        ++rep.no_cut_events;
        continue;
      }
      if (opt.verify_reduced_cuts && a.ybar != zeros) {
        const GValue full = eval_g(r.cut.beta, inst.W, tau, inst.u, zeros, clock.remaining());
        ++rep.mips_solved;
        if (!full.exact) return false;
        if (full.g > r.cut.g + 1e-9) {
          ++rep.lifted_cuts;
          r.cut.g = full.g;
          r.cut.violation = dot(r.cut.beta, yhat) - full.g;
          if (r.cut.violation <= cfg.eps) {
            ++rep.no_cut_events;
            continue;
          }
        }
      }
      double G = 0.0;
      for (std::size_t i = 0; i < n2; ++i) G += std::max(r.cut.beta[i], 0.0) * inst.u[i];
      lps[s].add_cut({r.cut.beta, r.cut.g, std::max(G, r.cut.g), tau});
      ++rep.fenchel_cuts;
      ++rep.scenario_cuts[s];
      return true;
    }
    return false;
  };

  auto exact_value = [&](std::size_t s, double& value) {
    MipProblem p;
    p.lp.objective = inst.scenarios[s].q;
    p.lp.rows = inst.W;
    p.lp.rhs = lps[s].tau();
    p.lp.lower.assign(n2, 0.0);
    p.lp.upper = inst.u;
    p.integer.assign(n2, true);
    p.time_limit_seconds = clock.remaining();
    const MipSolution ms = solve_mip(p);
    ++rep.mips_solved;
    ++rep.exact_fallbacks;
    if (ms.status != MipStatus::Optimal) return false;
    value = ms.objective;
    return true;
  };

  try {
    if (!solve_master()) {
      rep.status = clock.expired() ? SolveStatus::Budget : SolveStatus::Failed;
      rep.message = "master problem has no feasible first-stage point";
      finish(rep, clock);
      return rep;
    }

    bool init_phase = true;
    std::vector<double> previous_x;
    std::vector<std::size_t> stall(S, 0);
    std::vector<LpSolution> sols(S);
    std::vector<double> exact(S);
    std::vector<char> has_exact(S);
    std::vector<double> y;

    while (true) {
      if (converged()) {
        rep.status = SolveStatus::Optimal;
        break;
      }
      if (out_of_budget()) {
        rep.status = SolveStatus::Budget;
        break;
      }

      double recourse = 0.0;
      for (std::size_t s = 0; s < S; ++s) {
        lps[s].set_point(xhat);
        sols[s] = lps[s].solve();
        if (sols[s].status != LpStatus::Optimal)
          throw std::runtime_error("scenario " + std::to_string(s) + " LP is " +
                                   to_string(sols[s].status));
        recourse += inst.scenarios[s].p * sols[s].objective;
      }
      if (init_phase && theta_hat <= recourse + opt.eps * std::max(1.0, std::abs(recourse)))
        init_phase = false;

      const bool same_point = xhat == previous_x;
      std::fill(has_exact.begin(), has_exact.end(), 0);
      if (!init_phase) {
        for (std::size_t s = 0; s < S && !clock.expired(); ++s) {
          if (!is_fractional(sols[s].x)) {
            stall[s] = 0;
            continue;
          }
          stall[s] = same_point ? stall[s] + 1 : 0;
          bool separated = false;
          if (stall[s] < kStallBeforeExact) separated = separate(s, sols[s].x);
          if (separated) {
            sols[s] = lps[s].solve();
            if (sols[s].status != LpStatus::Optimal)
              throw std::runtime_error("scenario LP lost feasibility after a Fenchel cut");
          } else if (!clock.expired()) {
            double v = 0.0;
            if (exact_value(s, v)) {
              exact[s] = v;
              has_exact[s] = 1;
              stall[s] = 0;
            }
          }
        }
      }
      previous_x = xhat;

      // Lower bound from integer recourse points at xhat.
      double value = dot(inst.first.c, xhat);
      bool feasible = true;
      for (std::size_t s = 0; s < S && feasible; ++s) {
        if (has_exact[s]) {
          value += inst.scenarios[s].p * exact[s];
        } else if (integer_point(inst, lps[s].tau(), sols[s].x, y)) {
          value += inst.scenarios[s].p * dot(inst.scenarios[s].q, y);
        } else {
          feasible = false;
        }
      }
      if (feasible && value > rep.lb) {
        rep.lb = value;
        rep.x = xhat;
      }

      OptimalityCut cut;
      cut.eta.assign(n1, 0.0);
      cut.iteration = rep.iterations;
      OptimalityCut mixed = cut;
      bool any_exact = false;
      for (std::size_t s = 0; s < S; ++s) {
        const ScenarioDuals d = lps[s].duals(sols[s]);
        accumulate_piece(inst, s, d, cut.eta, cut.gamma);
        add_deactivation_term(inst, s, lps[s], d, xhat, cut.eta, cut.gamma);
        if (has_exact[s]) {
          // Integer piece: v at xhat, at most U one Hamming step away.
          any_exact = true;
          const double p = inst.scenarios[s].p;
          const double spread = std::max(0.0, recourse_upper(inst, s) - exact[s]);
          mixed.gamma += p * exact[s];
          for (std::size_t i = 0; i < n1; ++i) {
            if (xhat[i] < 0.5) {
              mixed.eta[i] -= p * spread;
            } else {
              mixed.eta[i] += p * spread;
              mixed.gamma += p * spread;
            }
          }
        } else {
          accumulate_piece(inst, s, d, mixed.eta, mixed.gamma);
          add_deactivation_term(inst, s, lps[s], d, xhat, mixed.eta, mixed.gamma);
        }
      }
      master.add(cut);
      if (any_exact) master.add(mixed);

      if (converged()) {
        rep.status = SolveStatus::Optimal;
        break;
      }
      if (out_of_budget()) {
        rep.status = SolveStatus::Budget;
        break;
      }
      if (!solve_master()) {
        rep.status = clock.expired() ? SolveStatus::Budget : SolveStatus::Failed;
        break;
      }
    }
  } catch (const std::exception& e) {
    rep.status = SolveStatus::Failed;
    rep.message = e.what();
  }
  if (converged()) rep.status = SolveStatus::Optimal;
  finish(rep, clock);
  return rep;
}

SolveReport direct_solve(const TwoStageInstance& inst, const SolveOptions& opt) {
  const Deadline clock(opt.time_limit_seconds);
  SolveReport rep;
  rep.algorithm = Algorithm::Direct;
  rep.scenario_cuts.assign(inst.scenarios.size(), 0);
  if (has_errors(validate(inst))) {
    rep.message = "instance failed validation";
    finish(rep, clock);
    return rep;
  }
  const DepModel dep = build_dep(inst);
  MipProblem p;
  p.lp.objective = dep.objective;
  p.lp.rows = dep.rows;
  p.lp.rhs = dep.rhs;
  p.lp.lower = dep.lower;
  p.lp.upper = dep.upper;
  p.integer = dep.integer;
  p.time_limit_seconds = opt.time_limit_seconds;
  p.node_limit = opt.iteration_limit;
  const MipSolution ms = solve_mip(p);
  rep.mips_solved = 1;
  rep.iterations = ms.nodes;
  rep.lb = ms.objective;
  rep.ub = ms.best_bound;
  if (!ms.x.empty()) rep.x.assign(ms.x.begin(), ms.x.begin() + static_cast<std::ptrdiff_t>(inst.n1()));
  switch (ms.status) {
    case MipStatus::Optimal: rep.status = SolveStatus::Optimal; break;
    case MipStatus::Infeasible:
      rep.status = SolveStatus::Failed;
      rep.message = "deterministic equivalent is infeasible";
      break;
    default: rep.status = SolveStatus::Budget; break;
  }
  finish(rep, clock);
  return rep;
}

SolveReport solve(const TwoStageInstance& inst, Algorithm algorithm, const SolveOptions& opt) {
  switch (algorithm) {
    case Algorithm::Sfd: return sfd_solve(inst, false, opt);
    case Algorithm::SfdR: return sfd_solve(inst, true, opt);
    case Algorithm::Direct: return direct_solve(inst, opt);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace fendec
