#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hawkesmf/kernel.hpp"
#include "hawkesmf/rng.hpp"
#include "hawkesmf/transfer.hpp"

namespace hawkesmf {

// Interaction scaling regime. Subcritical divides the field by N, critical
// by sqrt(N); the latter is the balanced case p = 1/2 where excitation and
// inhibition cancel to first order.
enum class Regime { Subcritical, Critical };

struct PopulationConfig {
  std::uint32_t n{1};          // population size
  double p{1.0};               // probability a node is excitatory (sign +1)
  Regime regime{Regime::Subcritical};
  KernelSpec kernel{};
  TransferSpec transfer{};
  double horizon{1.0};         // simulation window [0, horizon]
  std::uint64_t seed{0};       // root seed; every stream derives from it

  // theta_N is derived, never stored.
  double theta() const {
    return regime == Regime::Subcritical
               ? 1.0 / static_cast<double>(n)
               : 1.0 / std::sqrt(static_cast<double>(n));
  }

  void validate() const {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("p must lie in [0, 1]");
    if (!(horizon >= 0.0)) throw std::invalid_argument("horizon must be >= 0");
  }
};

// One sign per node: +1 excitatory, -1 inhibitory.
struct SignAssignment {
  std::vector<int> signs;

  std::size_t size() const { return signs.size(); }
  int operator[](std::size_t j) const { return signs[j]; }
};

// iid signs, P(+1) = p.
inline SignAssignment draw_signs(const PopulationConfig& config,
                                 RngStream& stream) {
  config.validate();
  SignAssignment out;
  out.signs.resize(config.n);
  for (auto& s : out.signs) s = stream.bernoulli(config.p) ? 1 : -1;
  return out;
}

// W_N = N^{-1/2} sum_j (U_j + 1 - 2p): the CLT statistic of the sign draw.
// Zero exactly when p = 1 (or 0); asymptotically N(0, 4p(1-p)).
inline double sign_statistic(const SignAssignment& signs, double p) {
  if (signs.signs.empty())
    throw std::invalid_argument("sign_statistic: empty assignment");
  double sum = 0.0;
  for (int u : signs.signs) sum += static_cast<double>(u) + 1.0 - 2.0 * p;
  return sum / std::sqrt(static_cast<double>(signs.signs.size()));
}

}  // namespace hawkesmf
