#include "hawkesmf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hawkesmf {

Summary summarize(const std::vector<double>& xs) {
  Summary s;
  s.count = xs.size();
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

double sample_variance(const std::vector<double>& xs) {
  const auto s = summarize(xs);
  return s.sd * s.sd;
}

Interval mean_interval(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("mean_interval: empty sample");
  const auto s = summarize(xs);
  const double half = 1.96 * s.sd / std::sqrt(static_cast<double>(s.count));
  return {s.mean, s.mean - half, s.mean + half};
}

Interval variance_interval(const std::vector<double>& xs) {
  if (xs.size() < 2)
    throw std::invalid_argument("variance_interval: need >= 2 samples");
  const double v = sample_variance(xs);
  const double rel = 1.96 * std::sqrt(2.0 / static_cast<double>(xs.size() - 1));
  return {v, v * (1.0 - rel), v * (1.0 + rel)};
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t ia = 0;
  std::size_t ib = 0;
  double d = 0.0;
  while (ia < a.size() && ib < b.size()) {
    const double x = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] <= x) ++ia;
    while (ib < b.size() && b[ib] <= x) ++ib;
    d = std::max(d, std::abs(static_cast<double>(ia) / na -
                             static_cast<double>(ib) / nb));
  }
  return d;
}

double ks_exponential(std::vector<double> spacings) {
  if (spacings.empty())
    throw std::invalid_argument("ks_exponential: empty sample");
  std::sort(spacings.begin(), spacings.end());
  const double n = static_cast<double>(spacings.size());
  double d = 0.0;
  for (std::size_t i = 0; i < spacings.size(); ++i) {
    const double f = 1.0 - std::exp(-std::max(spacings[i], 0.0));
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, f - lo, hi - f});
  }
  return d;
}

bool ks_exponential_pass(const std::vector<double>& spacings) {
  const double n = static_cast<double>(spacings.size());
  const double d = ks_exponential(spacings);
  const double scaled = d * (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n));
  return scaled < 1.358;
}

LoglogFit fit_loglog_slope(
    const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 3)
    throw std::invalid_argument("fit_loglog_slope: need >= 3 points");
  std::vector<double> lx;
  std::vector<double> ly;
  lx.reserve(pts.size());
  ly.reserve(pts.size());
  for (const auto& [x, y] : pts) {
    if (!(x > 0.0) || !(y > 0.0))
      throw std::invalid_argument("fit_loglog_slope: values must be positive");
    lx.push_back(std::log(x));
    ly.push_back(std::log(y));
  }
  const double n = static_cast<double>(pts.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0)
    throw std::invalid_argument("fit_loglog_slope: degenerate abscissae");
  LoglogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy == 0.0) {
    fit.r2 = 1.0;  // flat data, fitted exactly by slope 0
  } else {
    const double ss_res = syy - sxy * sxy / sxx;
    fit.r2 = 1.0 - ss_res / syy;
  }
  return fit;
}

}  // namespace hawkesmf
