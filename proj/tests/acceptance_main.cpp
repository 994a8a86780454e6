// Acceptance suite: the toolkit's core guarantees, one pass/fail line each.
// Every configuration, seed, and tolerance is pinned in this file; the run
// is deterministic, and the exit code is the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "hawkesmf/cli.hpp"
#include "hawkesmf/io.hpp"
#include "hawkesmf/lab.hpp"
#include "hawkesmf/sde.hpp"
#include "hawkesmf/sim.hpp"
#include "hawkesmf/stats.hpp"
#include "hawkesmf/volterra.hpp"
#include "support/naive_sim.hpp"

namespace {

using namespace hawkesmf;
namespace fs = std::filesystem;

struct Outcome {
  bool pass{false};
  std::string detail;
};

std::string fmt(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

EventData run_replica(const PopulationConfig& config, std::uint32_t replica) {
  auto sign_stream =
      make_stream(config.seed, config.n, replica, StreamPurpose::Signs);
  auto signs = draw_signs(config, sign_stream);
  auto cand =
      make_stream(config.seed, config.n, replica, StreamPurpose::Candidates);
  auto acc = make_stream(config.seed, config.n, replica, StreamPurpose::Accept);
  return simulate(config, signs, cand, acc);
}

// Frozen oracle constants, derived from the closed forms
//   Phi(t) = integral of the kernel, Q(t) = integral of its square,
// evaluated independently at high precision for the unit exponential kernel.
constexpr double kPhi5 = 0.9932620530009145;       // Phi(5)
constexpr double kQ5 = 0.49997730003511875;        // Q(5)
constexpr double kFluctVar5 = 1.2399044294838124;  // 4p(1-p)Phi(5)^2+Q(5), p=3/4
constexpr double kCriticalVar5 = 1.4865468059667104;  // Phi(5)^2+Q(5)

// 1. Constant transfer makes every node an independent Poisson(h T) count:
// state-independent intensity, any kernel.
Outcome c1_poisson_reduction() {
  PopulationConfig config;
  config.n = 100;
  config.p = 0.7;
  config.regime = Regime::Subcritical;
  config.kernel = KernelSpec::exponential(1.0, 1.0);
  config.transfer = TransferSpec::constant(1.0);
  config.horizon = 10.0;
  config.seed = 101;

  std::vector<double> counts;
  counts.reserve(100 * 200);
  for (std::uint32_t r = 0; r < 200; ++r) {
    const auto events = run_replica(config, r);
    for (const auto& times : events.times_by_node)
      counts.push_back(static_cast<double>(times.size()));
  }
  const auto s = summarize(counts);
  const double se3 = 3.0 * std::sqrt(10.0 / static_cast<double>(s.count));
  const double dispersion = s.sd * s.sd / s.mean;
  const bool pass = std::abs(s.mean - 10.0) < se3 && dispersion >= 0.85 &&
                    dispersion <= 1.15;
  return {pass, fmt("mean=%.4f (10 +- %.4f), dispersion=%.4f in [0.85,1.15]",
                    s.mean, se3, dispersion)};
}

// 2. The streaming simulator and a naive quadratic-time reference that sums
// the kernel over the whole history produce identical event lists.
Outcome c2_simulator_oracle() {
  std::uint32_t mismatches = 0;
  for (std::uint32_t n = 1; n <= 3; ++n) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      PopulationConfig config;
      config.n = n;
      config.p = 0.6;
      config.regime = Regime::Subcritical;
      config.kernel = KernelSpec::exponential(1.0, 1.0);
      config.transfer = TransferSpec::sigmoid(1.0, 1.0, 0.0);
      config.horizon = 5.0;
      config.seed = seed;

      const auto fast = run_replica(config, 0);
      auto sign_stream =
          make_stream(config.seed, config.n, 0, StreamPurpose::Signs);
      auto signs = draw_signs(config, sign_stream);
      auto cand =
          make_stream(config.seed, config.n, 0, StreamPurpose::Candidates);
      auto acc = make_stream(config.seed, config.n, 0, StreamPurpose::Accept);
      const auto naive = testing::naive_simulate(config, signs, cand, acc);
      if (fast.times_by_node != naive.times_by_node ||
          fast.signs.signs != naive.signs.signs)
        ++mismatches;
    }
  }
  return {mismatches == 0,
          fmt("150 runs (N in {1,2,3} x 50 seeds), %u mismatches", mismatches)};
}

// 3. Compensator-rescaled spacings, pooled over the population, pass a 5%
// unit-exponential KS test in at least 90 of 100 replicas.
Outcome c3_time_rescaling() {
  PopulationConfig base;
  base.n = 5;
  base.p = 0.8;
  base.regime = Regime::Subcritical;
  base.kernel = KernelSpec::exponential(1.0, 1.0);
  base.transfer = TransferSpec::sigmoid(1.0, 1.0, 0.0);
  base.horizon = 60.0;
  base.seed = 303;

  const auto s = collect_rescaling_passes(base, base.n, 100, 1e-3, 0, true);
  return {s.total == 100 && s.pass >= 90,
          fmt("KS pass %u/%u, need >= 90", s.pass, s.total)};
}

// 4. Deterministic limit against the closed form I(t) = 2(1 - e^{-t})
// (all-excitatory population, h = 2, unit exponential kernel).
Outcome c4_limit_closed_form() {
  const double dt = 1e-3;
  DetLimitProblem problem{KernelSpec::exponential(1.0, 1.0),
                          TransferSpec::constant(2.0), 1.0, 5.0, dt};
  const auto path = solve_volterra(problem);
  double sup = 0.0;
  for (std::size_t k = 0; k < path.size(); ++k)
    sup = std::max(sup,
                   std::abs(path.values[k] -
                            2.0 * (1.0 - std::exp(-path.time(k)))));
  return {sup < 5.0 * dt, fmt("sup error %.3g, need < %.0e", sup, 5.0 * dt)};
}

// 5. Volterra quadrature agrees with the RK4 reduction of the limit ODE and
// converges at first order in dt.
Outcome c5_volterra_vs_ode() {
  DetLimitProblem problem{KernelSpec::exponential(1.0, 1.0),
                          TransferSpec::sigmoid(1.0, 1.0, 0.0), 1.0, 5.0,
                          1e-3};
  auto sup_err = [](const DetLimitProblem& p) {
    const auto quad = solve_volterra(p);
    const auto ode = solve_ode_oracle(p);
    double sup = 0.0;
    for (std::size_t k = 0; k < quad.size(); ++k)
      sup = std::max(sup, std::abs(quad.values[k] - ode.values[k]));
    return sup;
  };
  const double e1 = sup_err(problem);
  DetLimitProblem half = problem;
  half.dt = 5e-4;
  const double e2 = sup_err(half);
  const double ratio = e1 / e2;
  const bool pass = e1 <= 1e-2 && ratio >= 1.7 && ratio <= 2.3;
  return {pass, fmt("sup=%.3g (<= 1e-2), halving ratio=%.3f in [1.7,2.3]", e1,
                    ratio)};
}

// 6. Mean-squared sup-norm error against the deterministic limit decays like
// 1/N across N = 64..1024.
Outcome c6_lln_rate() {
  PopulationConfig base;
  base.n = 64;
  base.p = 1.0;
  base.regime = Regime::Subcritical;
  base.kernel = KernelSpec::exponential(1.0, 1.0);
  base.transfer = TransferSpec::sigmoid(1.0, 1.0, 0.0);
  base.horizon = 5.0;
  base.seed = 606;

  DetLimitProblem det{base.kernel, base.transfer, base.p, base.horizon, 1e-3};
  const auto limit = solve_volterra(det);
  std::vector<std::pair<double, double>> ladder;
  bool monotone = true;
  double prev = 1e300;
  for (std::uint32_t n : {64u, 128u, 256u, 512u, 1024u}) {
    const auto sup_sq = collect_sup_sq_errors(base, n, 200, limit, 0);
    const double mse = mean_interval(sup_sq).value;
    monotone = monotone && mse < prev;
    prev = mse;
    ladder.emplace_back(static_cast<double>(n), mse);
  }
  const auto fit = fit_loglog_slope(ladder);
  const bool pass = monotone && fit.slope >= -1.3 && fit.slope <= -0.7;
  return {pass, fmt("slope=%.3f in [-1.3,-0.7], r2=%.3f, monotone=%s",
                    fit.slope, fit.r2, monotone ? "yes" : "no")};
}

// 7. sqrt(N)-scaled terminal error matches the Gaussian fluctuation limit:
// variance 4p(1-p) Phi(T)^2 + Q(T) for a constant transfer.
Outcome c7_clt_fluctuation() {
  const double p = 0.75;
  const auto kernel = KernelSpec::exponential(1.0, 1.0);
  const double formula =
      4.0 * p * (1.0 - p) * kernel.integral(5.0) * kernel.integral(5.0) +
      kernel.squared_integral(5.0);
  if (std::abs(formula - kFluctVar5) > 1e-12)
    return {false, fmt("oracle drift: formula %.17g != frozen %.17g", formula,
                       kFluctVar5)};

  PopulationConfig base;
  base.n = 1024;
  base.p = p;
  base.regime = Regime::Subcritical;
  base.kernel = kernel;
  base.transfer = TransferSpec::constant(1.0);
  base.horizon = 5.0;
  base.seed = 707;

  DetLimitProblem det{base.kernel, base.transfer, base.p, base.horizon, 1e-3};
  const auto limit = solve_volterra(det);
  const auto finite = collect_fluctuation_samples(base, base.n, 2000, limit, 0);

  auto stream = make_stream(base.seed, 0, 0, StreamPurpose::Oracle);
  std::vector<double> oracle(2000);
  for (auto& x : oracle) x = std::sqrt(kFluctVar5) * stream.normal();

  const double ks = ks_two_sample(finite.scaled_error, oracle);
  return {ks < 0.08, fmt("two-sample KS=%.4f (2000/side), need < 0.08", ks)};
}

// 8. Critical regime: terminal variance matches Phi(T)^2 + Q(T) exactly for
// a constant transfer, and the sigmoid marginal matches limit-SDE samples.
Outcome c8_critical_regime() {
  const auto kernel = KernelSpec::exponential(1.0, 1.0);
  const double formula = kernel.integral(5.0) * kernel.integral(5.0) +
                         kernel.squared_integral(5.0);
  if (std::abs(formula - kCriticalVar5) > 1e-12)
    return {false, fmt("oracle drift: formula %.17g != frozen %.17g", formula,
                       kCriticalVar5)};

  PopulationConfig base;
  base.n = 1024;
  base.p = 0.5;
  base.regime = Regime::Critical;
  base.kernel = kernel;
  base.transfer = TransferSpec::constant(1.0);
  base.horizon = 5.0;
  base.seed = 808;

  const auto flat = collect_critical_samples(base, base.n, 2000, 1e-2, 0, false);
  const double var = sample_variance(flat.in_t);
  const double rel = std::abs(var - kCriticalVar5) / kCriticalVar5;

  base.transfer = TransferSpec::sigmoid(1.0, 1.0, 0.0);
  base.seed = 818;
  const auto finite =
      collect_critical_samples(base, base.n, 2000, 1e-2, 0, false);
  const auto oracle = collect_critical_limit_samples(base, 2000, 1e-3, 0);
  const double ks = ks_two_sample(finite.in_t, oracle);

  const bool pass = rel <= 0.10 && ks < 0.08;
  return {pass, fmt("flat var=%.4f (oracle %.4f, rel %.1f%%), sigmoid KS=%.4f",
                    var, kCriticalVar5, 100.0 * rel, ks)};
}

// 9. Exponential-kernel Markov reduction: the convolution solver and the
// Markov oracle converge to each other pathwise at first order, and the
// OU special case reaches stationary variance c/2.
Outcome c9_markov_reduction() {
  SdeLimitProblem fine{KernelSpec::exponential(1.0, 1.0),
                       TransferSpec::sigmoid(1.0, 1.0, 0.0), 1.0, 0.0, 2.0,
                       1e-3};
  SdeLimitProblem half = fine;
  half.dt = 5e-4;

  auto sup = [](const GridPath& a, const GridPath& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
      s = std::max(s, std::abs(a.values[k] - b.values[k]));
    return s;
  };

  double e_fine = 0.0;
  double e_half = 0.0;
  for (std::uint32_t r = 0; r < 8; ++r) {
    auto stream = make_stream(909, 0, r, StreamPurpose::Noise);
    const auto noise_half = BrownianIncrements::generate(2.0, 5e-4, stream);
    BrownianIncrements noise_fine;
    noise_fine.dt = 1e-3;
    noise_fine.increments.resize(noise_half.increments.size() / 2);
    for (std::size_t k = 0; k < noise_fine.increments.size(); ++k)
      noise_fine.increments[k] =
          noise_half.increments[2 * k] + noise_half.increments[2 * k + 1];
    e_fine += sup(solve_stochastic_convolution(fine, noise_fine),
                  markov_sde_oracle(fine, noise_fine));
    e_half += sup(solve_stochastic_convolution(half, noise_half),
                  markov_sde_oracle(half, noise_half));
  }
  const double ratio = e_fine / e_half;

  SdeLimitProblem ou{KernelSpec::exponential(1.0, 1.0),
                     TransferSpec::constant(1.0), 0.0, 0.0, 10.0, 1e-2};
  std::vector<double> ends(4000);
  for (std::size_t r = 0; r < ends.size(); ++r) {
    auto stream = make_stream(919, 0, static_cast<std::uint32_t>(r),
                              StreamPurpose::Noise);
    const auto noise = BrownianIncrements::generate(10.0, 1e-2, stream);
    ends[r] = markov_sde_oracle(ou, noise).back();
  }
  const double ou_var = sample_variance(ends);
  const double rel = std::abs(ou_var - 0.5) / 0.5;

  const bool pass = ratio >= 1.3 && rel <= 0.10;
  return {pass, fmt("halving ratio=%.3f (>= 1.3), OU var=%.4f (0.5 +- 10%%)",
                    ratio, ou_var)};
}

// 10. Compensated count averages: Var(sqrt(N) D_N(T)) matches the limit
// compensator Lambda(T) = T for h = 1, and mean |D_N| shrinks with N.
Outcome c10_corollary_counts() {
  PopulationConfig base;
  base.n = 64;
  base.p = 0.7;
  base.regime = Regime::Subcritical;
  base.kernel = KernelSpec::exponential(1.0, 1.0);
  base.transfer = TransferSpec::constant(1.0);
  base.horizon = 5.0;
  base.seed = 1010;

  bool monotone = true;
  double prev = 1e300;
  double var512 = 0.0;
  for (std::uint32_t n : {64u, 128u, 256u, 512u, 1024u}) {
    const auto s = collect_corollary_samples(base, n, 2000, 1e-2, 0);
    double mean_abs = 0.0;
    for (double d : s.dn) mean_abs += std::abs(d);
    mean_abs /= static_cast<double>(s.dn.size());
    monotone = monotone && mean_abs < prev;
    prev = mean_abs;
    if (n == 512) var512 = sample_variance(s.sn);
  }
  const double rel = std::abs(var512 - 5.0) / 5.0;
  const bool pass = monotone && rel <= 0.10;
  return {pass,
          fmt("var(sqrtN D) at N=512: %.4f (5 +- 10%%), mean|D| monotone=%s",
              var512, monotone ? "yes" : "no")};
}

// 11. A unit-rate Poisson path stays within 5% of its mean uniformly over
// [0, N] at N = 10^4, in at least 95 of 100 seeds.
Outcome c11_poisson_sup() {
  std::uint32_t pass_count = 0;
  for (std::uint32_t r = 0; r < 100; ++r) {
    auto stream = make_stream(1111, 10000, r, StreamPurpose::Oracle);
    if (poisson_sup_deviation(10000, stream) < 0.05) ++pass_count;
  }
  return {pass_count >= 95, fmt("%u/100 below 0.05, need >= 95", pass_count)};
}

// 12. A verify run repeated with the same root seed produces a byte-identical
// report.csv, end to end through the CLI.
Outcome c12_determinism() {
  const fs::path dir = fs::temp_directory_path() / "hawkesmf_acceptance_c12";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path plan = dir / "plan.json";
  write_text_file(plan, R"({
    "base": {
      "n": 6, "p": 0.8, "regime": "subcritical",
      "kernel": {"family": "exponential", "rate": 1.0, "amplitude": 1.0},
      "transfer": {"family": "sigmoid", "hmax": 1.0, "slope": 1.0, "center": 0.0},
      "horizon": 2.0, "seed": 11
    },
    "replicas": 4,
    "dt": 0.01,
    "threads": 2,
    "checks": ["corollary_counts", "time_rescaling"]
  })");

  const auto out_a = dir / "a";
  const auto out_b = dir / "b";
  const int code_a =
      run_cli({"verify", "--config", plan.string(), "--out", out_a.string()});
  const int code_b =
      run_cli({"verify", "--config", plan.string(), "--out", out_b.string()});
  if (code_a != 0 || code_b != 0)
    return {false, fmt("verify exit codes %d, %d", code_a, code_b)};
  const auto csv_a = read_text_file(out_a / "report.csv");
  const auto csv_b = read_text_file(out_b / "report.csv");
  return {csv_a == csv_b && !csv_a.empty(),
          fmt("report.csv %zu bytes, reruns %s", csv_a.size(),
              csv_a == csv_b ? "identical" : "DIFFER")};
}

int run_criterion(int index, const char* name, Outcome (*fn)()) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = fn();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;
  std::printf("[%s] C%-2d %-46s %s (%.1f s)\n", outcome.pass ? "ok" : "FAIL",
              index, name, outcome.detail.c_str(), elapsed.count());
  std::fflush(stdout);
  return outcome.pass ? 0 : 1;
}

}  // namespace

int main() {
  int failures = 0;
  failures += run_criterion(1, "constant-transfer Poisson reduction",
                            c1_poisson_reduction);
  failures += run_criterion(2, "simulator matches quadratic-time reference",
                            c2_simulator_oracle);
  failures += run_criterion(3, "rescaled spacings are unit exponential",
                            c3_time_rescaling);
  failures += run_criterion(4, "deterministic limit closed form",
                            c4_limit_closed_form);
  failures += run_criterion(5, "volterra solver vs ODE reduction",
                            c5_volterra_vs_ode);
  failures += run_criterion(6, "mean-field convergence rate 1/N", c6_lln_rate);
  failures += run_criterion(7, "gaussian fluctuation limit", c7_clt_fluctuation);
  failures += run_criterion(8, "critical-regime limit law", c8_critical_regime);
  failures += run_criterion(9, "markov reduction of the limit SDE",
                            c9_markov_reduction);
  failures += run_criterion(10, "compensated count averages",
                            c10_corollary_counts);
  failures += run_criterion(11, "uniform Poisson deviation bound",
                            c11_poisson_sup);
  failures += run_criterion(12, "byte-identical verify reruns",
                            c12_determinism);

  if (failures == 0)
    std::printf("acceptance: all 12 criteria passed\n");
  else
    std::printf("acceptance: %d criteria FAILED\n", failures);
  return failures;
}
