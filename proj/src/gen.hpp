#pragma once

#include <cstdint>
#include <string>

#include "model.hpp"

namespace fendec {

// Two-stage multidimensional knapsack family k.<n1>.<n2>.<S>.
struct GenConfig {
  std::size_t n1 = 10;
  std::size_t n2 = 20;
  std::size_t m1 = 10;
  std::size_t m2 = 20;
  std::size_t scenarios = 50;
  double v_ub = 5.0;      // u_i for every second-stage variable
  double m_const = 10.0;  // coupling multiplier
  std::uint64_t seed = 1;
  char rep = 'a';
};

// Throws std::invalid_argument on a zero count or v_ub < 1.
void check_config(const GenConfig& cfg);

// k.<n1>.<n2>.<S><rep>
std::string instance_name(const GenConfig& cfg);

// Deterministic in cfg. Every draw comes from its own stream keyed by
// (seed, rep, domain, scenario, row), so growing S leaves earlier scenarios
// unchanged.
TwoStageInstance generate(const GenConfig& cfg);

// SplitMix64 finalizer, exposed for the stream-derivation tests.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace fendec
