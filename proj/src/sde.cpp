#include "hawkesmf/sde.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hawkesmf {

namespace {

void check_noise(const BrownianIncrements& noise, double dt,
                 std::size_t steps, const char* who) {
  if (noise.dt != dt)
    throw std::invalid_argument(std::string(who) +
                                ": noise grid does not match problem dt");
  if (noise.increments.size() < steps)
    throw std::invalid_argument(std::string(who) + ": noise too short");
}

double sqrt_clamped(double x) { return std::sqrt(x > 0.0 ? x : 0.0); }

[[noreturn]] void non_finite(const char* who, std::size_t step) {
  throw std::runtime_error(std::string(who) + ": non-finite value at step " +
                           std::to_string(step));
}

}  // namespace

BrownianIncrements BrownianIncrements::generate(double horizon, double dt,
                                                RngStream& stream) {
  BrownianIncrements out;
  out.dt = dt;
  const std::size_t steps = grid_size(horizon, dt) - 1;
  out.increments.resize(steps);
  const double scale = std::sqrt(dt);
  for (auto& db : out.increments) db = scale * stream.normal();
  return out;
}

void SdeLimitProblem::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (!(horizon >= 0.0)) throw std::invalid_argument("horizon must be >= 0");
}

GridPath solve_stochastic_convolution(const SdeLimitProblem& problem,
                                      const BrownianIncrements& noise) {
  problem.validate();
  auto path = GridPath::zeros(problem.horizon, problem.dt);
  check_noise(noise, problem.dt, path.size() - 1,
              "solve_stochastic_convolution");

  const double dt = problem.dt;
  path.values[0] = problem.i0;
  KernelState conv(problem.kernel);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const double h = problem.transfer.value(path.values[k]);
    conv.add(problem.w * h * dt + sqrt_clamped(h) * noise.increments[k]);
    conv.decay(dt);
    const double next = problem.i0 + conv.value();
    if (!std::isfinite(next)) non_finite("solve_stochastic_convolution", k + 1);
    path.values[k + 1] = next;
  }
  return path;
}

GridPath markov_sde_oracle(const SdeLimitProblem& problem,
                           const BrownianIncrements& noise) {
  problem.validate();
  if (problem.kernel.family != KernelFamily::Exponential)
    throw std::invalid_argument(
        "markov_sde_oracle: only exponential kernels reduce to a Markov SDE");

  auto path = GridPath::zeros(problem.horizon, problem.dt);
  check_noise(noise, problem.dt, path.size() - 1, "markov_sde_oracle");

  const double a = problem.kernel.amplitude;
  if (a == 0.0) {
    for (auto& v : path.values) v = problem.i0;
    return path;
  }

  const double rate = problem.kernel.rate;
  const double dt = problem.dt;
  const double x0 = problem.i0 / a;
  double x = x0;
  path.values[0] = problem.i0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const double h = problem.transfer.value(a * x);
    // The decay pulls X back to x0, not to zero: the convolution form keeps
    // the initial level outside the integral.
    x += (problem.w * h - rate * (x - x0)) * dt +
         sqrt_clamped(h) * noise.increments[k];
    const double next = a * x;
    if (!std::isfinite(next)) non_finite("markov_sde_oracle", k + 1);
    path.values[k + 1] = next;
  }
  return path;
}

void FluctuationProblem::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (!(horizon >= 0.0)) throw std::invalid_argument("horizon must be >= 0");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("p must lie in [0, 1]");
  if (limit_path.dt != dt)
    throw std::invalid_argument("limit path grid does not match problem dt");
  if (limit_path.size() < grid_size(horizon, dt))
    throw std::invalid_argument("limit path shorter than the horizon");
}

FluctuationPaths solve_fluctuation(const FluctuationProblem& problem,
                                   const BrownianIncrements& noise) {
  problem.validate();
  FluctuationPaths out;
  out.k = GridPath::zeros(problem.horizon, problem.dt);
  out.g = GridPath::zeros(problem.horizon, problem.dt);
  check_noise(noise, problem.dt, out.k.size() - 1, "solve_fluctuation");

  const double dt = problem.dt;
  const double drift = 2.0 * problem.p - 1.0;
  KernelState conv(problem.kernel);
  for (std::size_t k = 0; k + 1 < out.k.size(); ++k) {
    const double i_k = problem.limit_path.values[k];
    const double h = problem.transfer.value(i_k);
    const double dg =
        (problem.w * h + drift * problem.transfer.derivative(i_k) *
                             out.k.values[k]) *
            dt +
        sqrt_clamped(h) * noise.increments[k];
    out.g.values[k + 1] = out.g.values[k] + dg;
    conv.add(dg);
    conv.decay(dt);
    const double next = conv.value();
    if (!std::isfinite(next) || !std::isfinite(out.g.values[k + 1]))
      non_finite("solve_fluctuation", k + 1);
    out.k.values[k + 1] = next;
  }
  return out;
}

}  // namespace hawkesmf
