#include "hawkesmf/volterra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hawkesmf {

void DetLimitProblem::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (!(horizon >= 0.0)) throw std::invalid_argument("horizon must be >= 0");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("p must lie in [0, 1]");
}

GridPath solve_volterra(const DetLimitProblem& problem) {
  problem.validate();
  auto path = GridPath::zeros(problem.horizon, problem.dt);
  const double drift = 2.0 * problem.p - 1.0;
  const double dt = problem.dt;

  // The running sum sum_{m <= k} x_m phi((k+1-m) dt) is carried by the
  // kernel lift: push x_k = dt h(I[k]), decay one step, read off I[k+1].
  KernelState conv(problem.kernel);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    conv.add(dt * problem.transfer.value(path.values[k]));
    conv.decay(dt);
    const double next = drift * conv.value();
    if (!std::isfinite(next))
      throw std::runtime_error("solve_volterra: non-finite value at step " +
                               std::to_string(k + 1));
    path.values[k + 1] = next;
  }
  return path;
}

GridPath solve_ode_oracle(const DetLimitProblem& problem) {
  problem.validate();
  if (problem.kernel.family != KernelFamily::Exponential)
    throw std::invalid_argument(
        "solve_ode_oracle: only exponential kernels reduce to an ODE");

  const double rate = problem.kernel.rate;
  const double amp = problem.kernel.amplitude;
  const double drift = 2.0 * problem.p - 1.0;
  const auto f = [&](double x) {
    return -rate * x + drift * amp * problem.transfer.value(x);
  };

  auto path = GridPath::zeros(problem.horizon, problem.dt);
  const double dt = problem.dt;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const double x = path.values[k];
    const double k1 = f(x);
    const double k2 = f(x + 0.5 * dt * k1);
    const double k3 = f(x + 0.5 * dt * k2);
    const double k4 = f(x + dt * k3);
    const double next = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(next))
      throw std::runtime_error("solve_ode_oracle: non-finite value at step " +
                               std::to_string(k + 1));
    path.values[k + 1] = next;
  }
  return path;
}

GridPath limit_compensator(const GridPath& path,
                           const TransferSpec& transfer) {
  return trapezoid_accumulate(path,
                              [&transfer](double x) { return transfer.value(x); });
}

}  // namespace hawkesmf
