#include "model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fendec {

namespace {

constexpr double kProbabilityTolerance = 1e-9;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_dimensions(const TwoStageInstance& inst) {
  const auto n1 = inst.n1();
  const auto m1 = inst.m1();
  require(n1 >= 1, "first stage needs at least one variable");
  require(inst.first.A.rows() == m1 && (m1 == 0 || inst.first.A.cols() == n1),
          "first-stage A must be m1 x n1");
  require(inst.u.size() == inst.n2(), "u must have n2 entries");
  for (std::size_t s = 0; s < inst.scenarios.size(); ++s) {
    const auto& sc = inst.scenarios[s];
    const std::string tag = "scenario " + std::to_string(s);
    require(sc.q.size() == inst.n2(), tag + ": q must have n2 entries");
    require(sc.h.size() == inst.m2(), tag + ": h must have m2 entries");
    require(sc.T.rows() == inst.m2() && (inst.m2() == 0 || sc.T.cols() == n1),
            tag + ": T must be m2 x n1");
  }
}

}  // namespace

std::vector<Finding> validate(const TwoStageInstance& inst) {
  std::vector<Finding> out;
  auto error = [&](std::string m) { out.push_back({Severity::Error, std::move(m)}); };
  auto warn = [&](std::string m) { out.push_back({Severity::Warning, std::move(m)}); };

  try {
    check_dimensions(inst);
  } catch (const std::invalid_argument& e) {
    error(std::string("dimension mismatch: ") + e.what());
    return out;
  }

  if (inst.scenarios.empty()) {
    error("scenario list is empty");
  } else {
    double total = 0.0;
    bool positive = true;
    for (const auto& sc : inst.scenarios) {
      total += sc.p;
      positive = positive && sc.p > 0.0 && sc.p <= 1.0;
    }
    if (!positive) error("every scenario probability must lie in (0, 1]");
    if (std::abs(total - 1.0) > kProbabilityTolerance)
      error("scenario probabilities sum to " + std::to_string(total) + ", not 1");
  }

  for (double w : inst.W.data()) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      error("recourse matrix W has a negative or non-finite entry");
      break;
    }
  }

  for (double ui : inst.u) {
    if (!std::isfinite(ui) || ui < 1.0 || ui != std::floor(ui)) {
      error("upper bounds u must be finite integers >= 1");
      break;
    }
  }

  for (double bi : inst.first.b) {
    if (bi < 0.0) {
      warn("x = 0 violates A x <= b; first-stage feasibility not certified");
      break;
    }
  }

  const std::vector<double> zeros(inst.n1(), 0.0);
  const std::vector<double> ones(inst.n1(), 1.0);
  for (std::size_t s = 0; s < inst.scenarios.size(); ++s) {
    for (const auto* x : {&zeros, &ones}) {
      const auto tau = scenario_tau(inst, *x, s);
      if (std::any_of(tau.begin(), tau.end(), [](double t) { return t < 0.0; })) {
        warn("scenario " + std::to_string(s) + " has tau < 0 at x = " +
             (x == &zeros ? "0" : "1") + "; y = 0 is not certified feasible");
        break;
      }
    }
  }
  return out;
}

bool has_errors(const std::vector<Finding>& findings) {
  return std::any_of(findings.begin(), findings.end(),
                     [](const Finding& f) { return f.severity == Severity::Error; });
}

DepModel build_dep(const TwoStageInstance& inst) {
  check_dimensions(inst);
  const auto n1 = inst.n1(), m1 = inst.m1(), n2 = inst.n2(), m2 = inst.m2();
  const auto S = inst.scenarios.size();
  const auto cols = n1 + S * n2;
  const auto rows = m1 + S * m2;

  DepModel dep;
  dep.objective.assign(cols, 0.0);
  dep.rows = Matrix(rows, cols);
  dep.rhs.assign(rows, 0.0);
  dep.lower.assign(cols, 0.0);
  dep.upper.assign(cols, 1.0);
  dep.integer.assign(cols, true);

  for (std::size_t j = 0; j < n1; ++j) dep.objective[j] = inst.first.c[j];
  for (std::size_t r = 0; r < m1; ++r) {
    for (std::size_t j = 0; j < n1; ++j) dep.rows(r, j) = inst.first.A(r, j);
    dep.rhs[r] = inst.first.b[r];
  }

  for (std::size_t s = 0; s < S; ++s) {
    const auto& sc = inst.scenarios[s];
    const auto col0 = n1 + s * n2;
    const auto row0 = m1 + s * m2;
    for (std::size_t j = 0; j < n2; ++j) {
      dep.objective[col0 + j] = sc.p * sc.q[j];
      dep.upper[col0 + j] = inst.u[j];
    }
    for (std::size_t r = 0; r < m2; ++r) {
      for (std::size_t j = 0; j < n1; ++j) dep.rows(row0 + r, j) = sc.T(r, j);
      for (std::size_t j = 0; j < n2; ++j) dep.rows(row0 + r, col0 + j) = inst.W(r, j);
      dep.rhs[row0 + r] = sc.h[r];
    }
  }
  return dep;
}

std::vector<double> scenario_tau(const TwoStageInstance& inst, std::span<const double> x,
                                 std::size_t scenario) {
  const auto& sc = inst.scenarios.at(scenario);
  std::vector<double> tau(sc.h);
  for (std::size_t r = 0; r < tau.size(); ++r) {
    const auto row = sc.T.row(r);
    tau[r] -= std::inner_product(row.begin(), row.end(), x.begin(), 0.0);
  }
  return tau;
}

SubproblemData subproblem_data(const TwoStageInstance& inst, std::span<const double> x,
                               std::size_t scenario) {
  return {inst.scenarios.at(scenario).q, scenario_tau(inst, x, scenario)};
}

}  // namespace fendec
