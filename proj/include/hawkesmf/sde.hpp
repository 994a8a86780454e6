#pragma once

#include "hawkesmf/grid.hpp"
#include "hawkesmf/kernel.hpp"
#include "hawkesmf/rng.hpp"
#include "hawkesmf/transfer.hpp"

namespace hawkesmf {

// Gaussian grid increments: increments[k] ~ N(0, dt) drives step k -> k+1.
struct BrownianIncrements {
  double dt{0.0};
  std::vector<double> increments;

  static BrownianIncrements generate(double horizon, double dt,
                                     RngStream& stream);
};

// Critical-regime limit equation
//   I(t) = i0 + w int_0^t phi(t-s) h(I(s)) ds + int_0^t phi(t-s) sqrt(h(I(s))) dB(s)
// where w is the realized sign-CLT limit (N(0,1) at p = 1/2).
struct SdeLimitProblem {
  KernelSpec kernel{};
  TransferSpec transfer{};
  double w{0.0};
  double i0{0.0};
  double horizon{1.0};
  double dt{1e-3};

  void validate() const;
};

// Left-point Euler for the stochastic convolution:
//   I[k] = i0 + sum_{m<k} phi((k-m) dt) (w h(I[m]) dt + sqrt(h(I[m])_+) dB_m).
// Deterministic given `noise`; strictly causal in it.
GridPath solve_stochastic_convolution(const SdeLimitProblem& problem,
                                      const BrownianIncrements& noise);

// Euler-Maruyama on the exponential-kernel Markov reduction I = a X,
//   dX = (w h(aX) - rate (X - i0/a)) dt + sqrt(h(aX)_+) dB,  X(0) = i0 / a.
// Independent oracle for the convolution solver; exponential kernels only.
GridPath markov_sde_oracle(const SdeLimitProblem& problem,
                           const BrownianIncrements& noise);

// Subcritical fluctuation pair driven by a realized limit path I:
//   G(t) = int_0^t [w h(I(s)) + (2p-1) h'(I(s)) K(s)] ds + int_0^t sqrt(h(I(s))) dB(s)
//   K(t) = int_0^t phi(t-s) dG(s)
// with w the realized sign statistic (N(0, 4p(1-p)) in the limit).
struct FluctuationProblem {
  KernelSpec kernel{};
  TransferSpec transfer{};
  double p{1.0};
  GridPath limit_path;  // deterministic limit I on the same grid
  double w{0.0};
  double horizon{1.0};
  double dt{1e-3};

  void validate() const;
};

struct FluctuationPaths {
  GridPath k;
  GridPath g;
};

// Coupled Euler / convolution scheme:
//   dG_k = (w h(I[k]) + (2p-1) h'(I[k]) K[k]) dt + sqrt(h(I[k])_+) dB_k
//   K[k] = sum_{m<k} phi((k-m) dt) dG_m
FluctuationPaths solve_fluctuation(const FluctuationProblem& problem,
                                   const BrownianIncrements& noise);

}  // namespace hawkesmf
