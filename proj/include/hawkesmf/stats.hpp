#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace hawkesmf {

struct Summary {
  std::size_t count{0};
  double mean{0.0};
  double sd{0.0};  // sample standard deviation
};

Summary summarize(const std::vector<double>& xs);

double sample_variance(const std::vector<double>& xs);

// 95% normal interval for the mean.
struct Interval {
  double value{0.0};
  double lo{0.0};
  double hi{0.0};
};

Interval mean_interval(const std::vector<double>& xs);

// 95% large-sample interval for the variance (normal approximation,
// relative half-width 1.96 sqrt(2/(n-1))).
Interval variance_interval(const std::vector<double>& xs);

// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// One-sample KS statistic against the unit exponential CDF 1 - e^{-x}.
double ks_exponential(std::vector<double> spacings);

// Two-sided 5%-level KS test against Exp(1) with the finite-sample
// critical-value correction D (sqrt(n) + 0.12 + 0.11/sqrt(n)) < 1.358.
bool ks_exponential_pass(const std::vector<double>& spacings);

struct LoglogFit {
  double slope{0.0};
  double intercept{0.0};
  double r2{0.0};
};

// OLS fit of log y against log x. Requires >= 3 points, all positive;
// r2 is 1 for an exact fit (including the flat case).
LoglogFit fit_loglog_slope(const std::vector<std::pair<double, double>>& pts);

}  // namespace hawkesmf
