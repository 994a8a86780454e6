#pragma once

#include <cmath>
#include <stdexcept>

namespace hawkesmf {

enum class KernelFamily { Exponential, Erlang, Zero };

// Memory kernel phi of the interaction field. Closed forms for the running
// integral Phi(t) = int_0^t phi and the energy Q(t) = int_0^t phi^2 are part
// of the contract: they feed the variance oracles, so they must be exact.
//
//   Exponential: phi(t) = a * exp(-rate * t)
//   Erlang:      phi(t) = a * t * exp(-rate * t)   (shape fixed at 2)
//   Zero:        phi(t) = 0
struct KernelSpec {
  KernelFamily family{KernelFamily::Zero};
  double rate{0.0};
  double amplitude{0.0};

  static KernelSpec exponential(double rate, double amplitude) {
    if (!(rate > 0.0)) throw std::invalid_argument("kernel rate must be > 0");
    return {KernelFamily::Exponential, rate, amplitude};
  }

  static KernelSpec erlang(double rate, double amplitude) {
    if (!(rate > 0.0)) throw std::invalid_argument("kernel rate must be > 0");
    return {KernelFamily::Erlang, rate, amplitude};
  }

  static KernelSpec zero() { return {KernelFamily::Zero, 0.0, 0.0}; }

  double value(double t) const {
    switch (family) {
      case KernelFamily::Exponential:
        return amplitude * std::exp(-rate * t);
      case KernelFamily::Erlang:
        return amplitude * t * std::exp(-rate * t);
      case KernelFamily::Zero:
        return 0.0;
    }
    return 0.0;
  }

  double derivative(double t) const {
    switch (family) {
      case KernelFamily::Exponential:
        return -amplitude * rate * std::exp(-rate * t);
      case KernelFamily::Erlang:
        return amplitude * std::exp(-rate * t) * (1.0 - rate * t);
      case KernelFamily::Zero:
        return 0.0;
    }
    return 0.0;
  }

  // Phi(t) = int_0^t phi(u) du
  double integral(double t) const {
    switch (family) {
      case KernelFamily::Exponential:
        return amplitude / rate * (1.0 - std::exp(-rate * t));
      case KernelFamily::Erlang:
        return amplitude / (rate * rate) *
               (1.0 - std::exp(-rate * t) * (1.0 + rate * t));
      case KernelFamily::Zero:
        return 0.0;
    }
    return 0.0;
  }

  // Q(t) = int_0^t phi(u)^2 du
  double squared_integral(double t) const {
    const double a2 = amplitude * amplitude;
    switch (family) {
      case KernelFamily::Exponential:
        return a2 / (2.0 * rate) * (1.0 - std::exp(-2.0 * rate * t));
      case KernelFamily::Erlang: {
        const double s = 2.0 * rate;
        return a2 * (2.0 / (s * s * s) -
                     std::exp(-s * t) *
                         (t * t / s + 2.0 * t / (s * s) + 2.0 / (s * s * s)));
      }
      case KernelFamily::Zero:
        return 0.0;
    }
    return 0.0;
  }

  // sup_{t >= 0} |phi(t)|. The erlang hump peaks at t = 1/rate.
  double sup_abs() const {
    switch (family) {
      case KernelFamily::Exponential:
        return std::abs(amplitude);
      case KernelFamily::Erlang:
        return std::abs(amplitude) / (rate * std::exp(1.0));
      case KernelFamily::Zero:
        return 0.0;
    }
    return 0.0;
  }
};

// Running convolution state: maintains S(t) = sum_i w_i * phi(t - s_i) over
// past impulses (s_i, w_i) with O(1) decay/add. Exact for every family here:
// exponential needs one accumulator, erlang two, zero none. This is what
// makes the simulator O(1) per candidate and the grid solvers O(K) total.
class KernelState {
 public:
  explicit KernelState(const KernelSpec& spec) : spec_(spec) {}

  void reset() { plain_ = 0.0; ramp_ = 0.0; }

  // Advance time by delta >= 0 with no impulse.
  void decay(double delta) {
    if (delta == 0.0 || spec_.family == KernelFamily::Zero) return;
    const double d = std::exp(-spec_.rate * delta);
    if (spec_.family == KernelFamily::Exponential) {
      plain_ *= d;
    } else {
      ramp_ = (ramp_ + delta * plain_) * d;
      plain_ *= d;
    }
  }

  // Impulse of weight w at the current time.
  void add(double w) { plain_ += w; }

  // Current S(t); the impulse just added contributes phi(0) * w.
  double value() const {
    switch (spec_.family) {
      case KernelFamily::Exponential:
        return spec_.amplitude * plain_;
      case KernelFamily::Erlang:
        return spec_.amplitude * ramp_;
      case KernelFamily::Zero:
        return 0.0;
    }
    return 0.0;
  }

  const KernelSpec& spec() const { return spec_; }

 private:
  KernelSpec spec_;
  double plain_{0.0};  // sum w_i exp(-rate (t - s_i))
  double ramp_{0.0};   // sum w_i (t - s_i) exp(-rate (t - s_i))
};

}  // namespace hawkesmf
