#pragma once

#include "hawkesmf/grid.hpp"
#include "hawkesmf/kernel.hpp"
#include "hawkesmf/transfer.hpp"

namespace hawkesmf {

// Deterministic mean-field limit problem
//   I(t) = (2p - 1) int_0^t phi(t - s) h(I(s)) ds,  I(0) = 0.
struct DetLimitProblem {
  KernelSpec kernel{};
  TransferSpec transfer{};
  double p{1.0};
  double horizon{1.0};
  double dt{1e-3};

  void validate() const;
};

// Left-rectangle convolution quadrature, causal:
//   I[k] = (2p - 1) sum_{m < k} dt phi((k - m) dt) h(I[m]),  I[0] = 0.
// First-order accurate; aborts on non-finite intermediates.
GridPath solve_volterra(const DetLimitProblem& problem);

// Classical RK4 on the exponential-kernel ODE reduction
//   dI/dt = -rate * I + (2p - 1) * amplitude * h(I),  I(0) = 0.
// Independent oracle for solve_volterra; rejects non-exponential kernels.
GridPath solve_ode_oracle(const DetLimitProblem& problem);

// Limit compensator int_0^t h(I(s)) ds, trapezoid on the grid of `path`.
GridPath limit_compensator(const GridPath& path, const TransferSpec& transfer);

}  // namespace hawkesmf
