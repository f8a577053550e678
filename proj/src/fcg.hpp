#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "model.hpp"

namespace fendec {

enum class BetaDomain {
  Box,     // 0 <= beta <= 1
  L1Ball,  // |beta|_1 <= 1, split as beta+ - beta-
};

struct FcgConfig {
  BetaDomain domain = BetaDomain::Box;
  double eps = 1e-6;
  std::size_t max_iterations = 200;
  double time_limit_seconds = std::numeric_limits<double>::infinity();
};

struct FenchelCut {
  std::vector<double> beta;
  double g = 0.0;
  double violation = 0.0;  // beta'yhat - g
  std::size_t scenario = 0;
  std::size_t iteration = 0;
};

struct FcgBounds {
  double l;
  double u;
};

enum class FcgOutcome {
  Cut,
  NoCut,            // best violation <= eps
  ReducedSetEmpty,  // no integer point above ybar
  Budget,           // inner IP or wall clock ran out; nothing emitted
};

const char* to_string(FcgOutcome o);

struct FcgResult {
  FcgOutcome outcome = FcgOutcome::NoCut;
  FenchelCut cut;
  std::vector<FcgBounds> trajectory;  // (l, u) after each iteration
  bool converged = false;             // stopped on u - l <= eps
  std::size_t iterations = 0;
  std::size_t mips_solved = 0;
  std::string diagnostic;
};

struct GValue {
  bool feasible = false;
  bool exact = false;  // optimality or emptiness proven; false when the budget ran out
  double g = 0.0;
  std::vector<double> y;
};

// max beta'y over {W y <= tau, ybar <= y <= u, y integer}.
GValue eval_g(std::span<const double> beta, const Matrix& W, std::span<const double> tau,
              std::span<const double> u, std::span<const double> ybar,
              double time_limit_seconds = std::numeric_limits<double>::infinity());

struct SeparationMaster {
  double theta;
  std::vector<double> beta;
};

// max theta s.t. theta <= (yhat - y)'beta for every collected y, beta in the domain.
SeparationMaster separation_master(const std::vector<std::vector<double>>& points,
                                   std::span<const double> yhat, BetaDomain domain);

// Alternates the separation master with eval_g until the bounds meet. A cut
// is returned only when its violation exceeds cfg.eps.
FcgResult generate_cut(std::span<const double> yhat, const Matrix& W, std::span<const double> tau,
                       std::span<const double> u, std::span<const double> ybar,
                       const FcgConfig& cfg = {});

}  // namespace fendec
