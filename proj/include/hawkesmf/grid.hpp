#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hawkesmf {

// Number of grid points on [0, horizon] with step dt: floor(horizon/dt) + 1.
// The epsilon guard keeps e.g. 5/0.001 from flooring to 4999.
inline std::size_t grid_size(double horizon, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (horizon < 0.0) throw std::invalid_argument("horizon must be >= 0");
  return static_cast<std::size_t>(std::floor(horizon / dt + 1e-9)) + 1;
}

// Uniform-grid path: values[k] at time k * dt.
struct GridPath {
  double dt{0.0};
  std::vector<double> values;

  static GridPath zeros(double horizon, double dt) {
    GridPath p;
    p.dt = dt;
    p.values.assign(grid_size(horizon, dt), 0.0);
    return p;
  }

  std::size_t size() const { return values.size(); }
  double time(std::size_t k) const { return static_cast<double>(k) * dt; }
  double back() const { return values.back(); }
};

// Running trapezoid integral of f along a path:
// out[k] = int_0^{k dt} f(path(s)) ds.
template <typename F>
GridPath trapezoid_accumulate(const GridPath& path, F&& f) {
  if (path.values.empty()) throw std::invalid_argument("empty grid path");
  GridPath out;
  out.dt = path.dt;
  out.values.resize(path.size());
  out.values[0] = 0.0;
  double prev = f(path.values[0]);
  for (std::size_t k = 1; k < path.size(); ++k) {
    const double cur = f(path.values[k]);
    out.values[k] = out.values[k - 1] + 0.5 * path.dt * (prev + cur);
    prev = cur;
  }
  return out;
}

// Linear interpolation; clamps outside the grid.
inline double evaluate(const GridPath& path, double t) {
  if (path.values.empty()) throw std::invalid_argument("empty grid path");
  if (t <= 0.0) return path.values.front();
  const double pos = t / path.dt;
  const auto k = static_cast<std::size_t>(pos);
  if (k + 1 >= path.values.size()) return path.values.back();
  const double frac = pos - static_cast<double>(k);
  return path.values[k] * (1.0 - frac) + path.values[k + 1] * frac;
}

}  // namespace hawkesmf
