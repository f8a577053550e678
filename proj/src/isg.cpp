#include "isg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fendec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double snap_floor(double v) { return std::floor(v + 1e-9); }

// tau_k minus the contribution of every axis other than i and j at yhat.
double projected_rhs(std::size_t i, std::size_t j, std::size_t k, std::span<const double> yhat,
                     const Matrix& W, std::span<const double> tau) {
  double f = tau[k];
  for (std::size_t t = 0; t < W.cols(); ++t)
    if (t != i && t != j) f -= W(k, t) * yhat[t];
  return f;
}

}  // namespace

const char* to_string(IsgAction a) {
  switch (a) {
    case IsgAction::Keep: return "keep";
    case IsgAction::LowerI: return "lower-i";
    case IsgAction::LowerJ: return "lower-j";
    case IsgAction::IntegerPoint: return "integer-point";
  }
  return "unknown";
}

std::vector<std::size_t> binding_rows(const Matrix& W, std::span<const double> tau,
                                      std::span<const double> yhat, double tol) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < W.rows(); ++k) {
    const auto row = W.row(k);
    const double lhs = std::inner_product(row.begin(), row.end(), yhat.begin(), 0.0);
    if (tau[k] - lhs <= tol) out.push_back(k);
  }
  return out;
}

double distance_dij(std::size_t i, std::size_t j, std::size_t k, std::span<const double> ybar,
                    std::span<const double> yhat, const Matrix& W, std::span<const double> tau,
                    std::span<const double> u) {
  if (i == j) throw std::invalid_argument("isg: distance needs two distinct axes");
  const double box = u[j] - ybar[j];
  const double wkj = W(k, j);
  if (wkj <= 0.0) return box;
  const double r = projected_rhs(i, j, k, yhat, W, tau) - W(k, i) * ybar[i];
  return std::min(r / wkj - ybar[j], box);
}

ShortestDistances shortest_distances(std::span<const double> ybar, std::span<const double> yhat,
                                     const Matrix& W, std::span<const double> tau,
                                     std::span<const double> u,
                                     std::span<const std::size_t> rows) {
  const auto n = ybar.size();
  ShortestDistances out{std::vector<double>(n, kInf), std::vector<double>(n, kInf)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double d = rows.empty() ? u[j] - ybar[j] : kInf;
      for (auto k : rows) d = std::min(d, distance_dij(i, j, k, ybar, yhat, W, tau, u));
      out.f[i] = std::min(out.f[i], d);
      out.f_prime[j] = std::min(out.f_prime[j], d);
    }
  }
  return out;
}

IsgResult run_isg(const IsgInput& in, const IsgOptions& opt) {
  const auto n = in.W.cols();
  if (in.yhat.size() != n || in.u.size() != n || in.tau.size() != in.W.rows())
    throw std::invalid_argument("isg: dimension mismatch");

  IsgResult res;
  res.ybar.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    res.ybar[i] = std::clamp(snap_floor(in.yhat[i]), 0.0, in.u[i]);
  res.binding = binding_rows(in.W, in.tau, in.yhat, opt.binding_tol);

  // Axes with the least total weight on the binding rows go first; ties by
  // index.
  std::vector<double> weight(n, 0.0);
  for (auto k : res.binding)
    for (std::size_t i = 0; i < n; ++i) weight[i] += in.W(k, i);
  res.axis_order.resize(n);
  std::iota(res.axis_order.begin(), res.axis_order.end(), std::size_t{0});
  std::stable_sort(res.axis_order.begin(), res.axis_order.end(),
                   [&](std::size_t a, std::size_t b) { return weight[a] < weight[b]; });

  auto& ybar = res.ybar;
  const double floor_bound = opt.lookahead_to_zero ? 0.0 : 1.0;
  for (auto i : res.axis_order) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (auto k : res.binding) {
        bool changed = true;
        while (changed) {
          changed = false;
          ++res.iterations;
          const double d = distance_dij(i, j, k, ybar, in.yhat, in.W, in.tau, in.u);
          IsgAction action = IsgAction::Keep;
          if (d < 1.0 && ybar[i] >= 1.0) {
            ybar[i] -= 1.0;
            action = IsgAction::LowerI;
          } else if (d < 1.0 && ybar[j] >= 1.0) {
            ybar[j] -= 1.0;
            action = IsgAction::LowerJ;
          } else if (opt.integer_point_check && in.W(k, j) > 0.0) {
            // Lowering ybar_i by b admits a new integer level on axis j
            // that still fits inside the box.
            const double wkj = in.W(k, j);
            const double f = projected_rhs(i, j, k, in.yhat, in.W, in.tau);
            const double base = snap_floor((f - in.W(k, i) * ybar[i]) / wkj);
            for (double b = 1.0; ybar[i] - b >= floor_bound; b += 1.0) {
              const double moved = snap_floor((f - in.W(k, i) * (ybar[i] - b)) / wkj);
              if (moved - base >= 1.0 && moved <= in.u[j]) {
                ybar[i] -= b;
                action = IsgAction::IntegerPoint;
                break;
              }
            }
          }
          changed = action != IsgAction::Keep;
          res.trace.push_back({i, j, k, d, action, ybar});
        }
      }
    }
  }
  return res;
}

}  // namespace fendec
