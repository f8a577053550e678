#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "fcg.hpp"
#include "isg.hpp"
#include "model.hpp"

namespace fendec {

enum class Algorithm { Sfd, SfdR, Direct };

const char* to_string(Algorithm a);

enum class SolveStatus {
  Optimal,  // |UB - LB| <= eps |LB|
  Budget,   // time or iteration budget reached
  Failed,   // no feasible first-stage point or an internal error
};

const char* to_string(SolveStatus s);

struct SolveOptions {
  double eps = 1e-6;
  double time_limit_seconds = std::numeric_limits<double>::infinity();
  std::size_t iteration_limit = 0;  // master solves for SFD, B&B nodes for DIRECT; 0 = none
  FcgConfig fcg;
  IsgOptions isg;
  // When ISG leaves some ybar_i > 0, recompute g over the unreduced set and
  // lift it if the reduction lost the maximizer.
  bool verify_reduced_cuts = true;
  // Keep every FCG (l, u) trajectory in the report.
  bool keep_fcg_trajectories = false;
};

struct OptimalityCut {
  std::vector<double> eta;  // theta + eta'x <= gamma
  double gamma = 0.0;
  std::size_t iteration = 0;
};

struct FcgTrace {
  std::size_t scenario;
  std::vector<FcgBounds> bounds;
  bool converged;
};

struct SolveReport {
  Algorithm algorithm = Algorithm::Sfd;
  SolveStatus status = SolveStatus::Failed;
  std::size_t mips_solved = 0;
  std::size_t fenchel_cuts = 0;
  double lb = -std::numeric_limits<double>::infinity();
  double ub = std::numeric_limits<double>::infinity();
  double gap_pct = std::numeric_limits<double>::infinity();
  double wall_seconds = 0.0;
  std::size_t iterations = 0;
  std::vector<std::size_t> scenario_cuts;
  std::vector<double> x;  // first stage of the LB incumbent
  std::size_t no_cut_events = 0;     // FCG found nothing to separate
  std::size_t lifted_cuts = 0;       // reduced-set g raised by verification
  std::size_t exact_fallbacks = 0;   // scenario solved as an IP
  std::vector<FcgTrace> fcg_traces;
  std::string message;
};

// Master MIP against scenario LP relaxations without Fenchel cuts, until the
// master recourse estimate matches the relaxed recourse at the master point.
struct LshapedInit {
  std::vector<double> x;
  double master_value = 0.0;
  double recourse_lp = 0.0;  // sum_w p_w Phi_LP(x)
  std::vector<std::vector<double>> y;
  std::size_t iterations = 0;
  bool converged = false;
};

LshapedInit lshaped_init(const TwoStageInstance& inst, const SolveOptions& opt = {});

struct ScenarioDuals {
  std::vector<double> row_duals;  // one per W row
  std::vector<double> cut_duals;  // one per Fenchel cut row
  std::vector<double> cut_rhs;    // rhs in force for each cut row
  std::vector<double> reduced_costs;
};

// theta + eta'x <= gamma with eta = sum_w p_w pi_w'T_w and
// gamma = sum_w p_w (pi_w'h_w + pi_cut'g_w + max(d,0)'u).
OptimalityCut optimality_cut_from_duals(const TwoStageInstance& inst,
                                        const std::vector<ScenarioDuals>& duals);

SolveReport sfd_solve(const TwoStageInstance& inst, bool enable_isg, const SolveOptions& opt = {});

SolveReport direct_solve(const TwoStageInstance& inst, const SolveOptions& opt = {});

SolveReport solve(const TwoStageInstance& inst, Algorithm algorithm, const SolveOptions& opt = {});

}  // namespace fendec
