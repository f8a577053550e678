#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "model.hpp"

namespace fendec {

// Integer set generation: starting from the floor of an LP point, lower the
// per-variable bounds ybar until the reduced set {y in F : y >= ybar} holds
// enough integer points to separate yhat without losing validity.
struct IsgInput {
  Matrix W;                  // m2 x n2, nonnegative
  std::vector<double> tau;   // m2
  std::vector<double> u;     // n2
  std::vector<double> yhat;  // LP point
};

struct IsgOptions {
  double binding_tol = 1e-6;
  // The integer-point look-ahead that follows the d < 1 test. Turning it off
  // leaves only the distance rule.
  bool integer_point_check = true;
  // Let the look-ahead lower ybar_i all the way to 0. With false it stops at
  // 1, which can drop integer points lying on the ybar_i = 0 face.
  bool lookahead_to_zero = true;
};

enum class IsgAction { Keep, LowerI, LowerJ, IntegerPoint };

const char* to_string(IsgAction a);

struct IsgStep {
  std::size_t i;
  std::size_t j;
  std::size_t k;
  double d;
  IsgAction action;
  std::vector<double> ybar;  // after the action
};

struct IsgResult {
  std::vector<double> ybar;
  std::vector<IsgStep> trace;
  std::vector<std::size_t> binding;     // K'
  std::vector<std::size_t> axis_order;  // order in which axes i were visited
  std::size_t iterations = 0;
};

// Rows with tau_k - (W yhat)_k <= tol.
std::vector<std::size_t> binding_rows(const Matrix& W, std::span<const double> tau,
                                      std::span<const double> yhat, double tol = 1e-6);

// Distance from ybar to row k along axis j, with the other axes held at yhat
// and axis i at ybar_i, capped by the box: min(ratio - ybar_j, u_j - ybar_j).
// A row with w_kj <= 0 never meets the axis and yields u_j - ybar_j.
double distance_dij(std::size_t i, std::size_t j, std::size_t k, std::span<const double> ybar,
                    std::span<const double> yhat, const Matrix& W, std::span<const double> tau,
                    std::span<const double> u);

struct ShortestDistances {
  std::vector<double> f;        // f_i = min_{j != i} d_ij
  std::vector<double> f_prime;  // f'_i = min_{j != i} d_ji
};

// Minimum over the given rows (and the box term when rows is empty). Both
// entries are +inf when there is no second axis.
ShortestDistances shortest_distances(std::span<const double> ybar, std::span<const double> yhat,
                                     const Matrix& W, std::span<const double> tau,
                                     std::span<const double> u,
                                     std::span<const std::size_t> rows);

IsgResult run_isg(const IsgInput& in, const IsgOptions& opt = {});

}  // namespace fendec
