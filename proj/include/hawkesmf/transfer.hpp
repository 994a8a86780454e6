#pragma once

#include <cmath>
#include <stdexcept>

namespace hawkesmf {

enum class TransferFamily { Constant, Sigmoid };

// Firing-rate transfer h: field value -> intensity. Bounded, Lipschitz,
// nonnegative; bound() is the thinning envelope, so it must dominate h
// everywhere.
struct TransferSpec {
  TransferFamily family{TransferFamily::Constant};
  double hmax{0.0};    // constant: the value c; sigmoid: the plateau
  double slope{0.0};   // sigmoid steepness k
  double center{0.0};  // sigmoid midpoint x0

  static TransferSpec constant(double value) {
    if (!(value >= 0.0))
      throw std::invalid_argument("constant transfer value must be >= 0");
    return {TransferFamily::Constant, value, 0.0, 0.0};
  }

  static TransferSpec sigmoid(double hmax, double slope, double center) {
    if (!(hmax > 0.0)) throw std::invalid_argument("sigmoid hmax must be > 0");
    if (!(slope > 0.0)) throw std::invalid_argument("sigmoid slope must be > 0");
    return {TransferFamily::Sigmoid, hmax, slope, center};
  }

  double value(double x) const {
    if (family == TransferFamily::Constant) return hmax;
    const double z = slope * (x - center);
    // Branch keeps exp() away from overflow for large |z|.
    if (z >= 0.0) return hmax / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return hmax * e / (1.0 + e);
  }

  double derivative(double x) const {
    if (family == TransferFamily::Constant) return 0.0;
    const double h = value(x);
    return slope * h * (1.0 - h / hmax);
  }

  // sup h = thinning envelope.
  double bound() const { return hmax; }
};

}  // namespace hawkesmf
