#include "gen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace fendec {

namespace {

enum Domain : std::uint64_t {
  kObjective1 = 1,
  kFirstRows = 2,
  kRecourseW = 3,
  kCoupling = 4,
  kRecourseQ = 5,
  kRecourseH = 6,
};

// mt19937_64 seeded from a SplitMix64 chain over the stream key. Uniforms
// use the top 53 bits, which is portable across standard libraries, unlike
// std::uniform_real_distribution.
class Stream {
 public:
  Stream(const GenConfig& cfg, Domain domain, std::uint64_t scenario, std::uint64_t row)
      : engine_(key(cfg, domain, scenario, row)) {}

  double uniform(double lo, double hi) {
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
  }

  bool coin() { return uniform(0.0, 1.0) < 0.5; }

 private:
  static std::uint64_t key(const GenConfig& cfg, Domain d, std::uint64_t s, std::uint64_t r) {
    std::uint64_t k = splitmix64(cfg.seed);
    k = splitmix64(k ^ static_cast<std::uint64_t>(static_cast<unsigned char>(cfg.rep)));
    k = splitmix64(k ^ d);
    k = splitmix64(k ^ s);
    return splitmix64(k ^ r);
  }

  std::mt19937_64 engine_;
};

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_config(const GenConfig& cfg) {
  if (cfg.n1 == 0 || cfg.n2 == 0 || cfg.m1 == 0 || cfg.m2 == 0 || cfg.scenarios == 0)
    throw std::invalid_argument("gen: every count must be at least 1");
  if (!(cfg.v_ub >= 1.0) || std::floor(cfg.v_ub) != cfg.v_ub)
    throw std::invalid_argument("gen: v_ub must be an integer >= 1");
  if (!(cfg.m_const > 0.0)) throw std::invalid_argument("gen: m_const must be positive");
}

std::string instance_name(const GenConfig& cfg) {
  return "k." + std::to_string(cfg.n1) + "." + std::to_string(cfg.n2) + "." +
         std::to_string(cfg.scenarios) + cfg.rep;
}

TwoStageInstance generate(const GenConfig& cfg) {
  check_config(cfg);
  const auto n1 = cfg.n1, n2 = cfg.n2, m1 = cfg.m1, m2 = cfg.m2, S = cfg.scenarios;
  TwoStageInstance inst;
  inst.name = instance_name(cfg);

  // First stage: a cardinality row, then knapsack rows over x.
  auto& fs = inst.first;
  {
    Stream rng(cfg, kObjective1, 0, 0);
    fs.c.resize(n1);
    for (auto& v : fs.c) v = rng.uniform(0.0, 1500.0);
  }
  fs.A = Matrix(m1, n1);
  fs.b.resize(m1);
  for (std::size_t j = 0; j < n1; ++j) fs.A(0, j) = 1.0;
  fs.b[0] = std::ceil(static_cast<double>(n1) / 2.0);
  for (std::size_t r = 1; r < m1; ++r) {
    Stream rng(cfg, kFirstRows, 0, r);
    double wmax = 0.0;
    for (std::size_t j = 0; j < n1; ++j) {
      fs.A(r, j) = rng.uniform(2.0, 8.0);
      wmax = std::max(wmax, fs.A(r, j));
    }
    fs.b[r] = rng.uniform(2.0 + 2.0 * wmax, 4.0 * wmax);
  }

  // Fixed recourse matrix; the first ceil(m2/2) rows couple to x.
  const std::size_t coupling = (m2 + 1) / 2;
  inst.W = Matrix(m2, n2);
  std::vector<double> wmax(m2, 0.0);
  for (std::size_t k = 0; k < m2; ++k) {
    Stream rng(cfg, kRecourseW, 0, k);
    for (std::size_t i = 0; i < n2; ++i) {
      inst.W(k, i) = rng.uniform(2.0, 8.0);
      wmax[k] = std::max(wmax[k], inst.W(k, i));
    }
  }
  inst.u.assign(n2, cfg.v_ub);

  // W_k y <= m * t_k'x; t_k is drawn until it has a nonzero entry.
  Matrix T(m2, n1);
  for (std::size_t k = 0; k < coupling; ++k) {
    Stream rng(cfg, kCoupling, 0, k);
    bool any = false;
    while (!any) {
      for (std::size_t j = 0; j < n1; ++j) {
        const bool t = rng.coin();
        T(k, j) = t ? -cfg.m_const : 0.0;
        any = any || t;
      }
    }
  }

  inst.scenarios.resize(S);
  for (std::size_t s = 0; s < S; ++s) {
    auto& sc = inst.scenarios[s];
    sc.p = 1.0 / static_cast<double>(S);
    sc.T = T;
    Stream qrng(cfg, kRecourseQ, s, 0);
    sc.q.resize(n2);
    for (auto& v : sc.q) v = qrng.uniform(10.0, 20.0);
    sc.h.assign(m2, 0.0);
    for (std::size_t k = coupling; k < m2; ++k) {
      Stream hrng(cfg, kRecourseH, s, k);
      sc.h[k] = hrng.uniform(2.0 + 2.0 * wmax[k] * cfg.v_ub, 4.0 * wmax[k] * cfg.v_ub);
    }
  }
  return inst;
}

}  // namespace fendec
