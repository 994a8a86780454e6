#include "hawkesmf/lab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "hawkesmf/sde.hpp"
#include "hawkesmf/sim.hpp"
#include "hawkesmf/volterra.hpp"

namespace hawkesmf {

namespace {

std::uint32_t resolve_threads(std::uint32_t requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Replicas are independent tasks; results land in per-replica slots, so the
// aggregate is identical whatever the thread count.
void parallel_for(std::uint32_t count, std::uint32_t threads,
                  const std::function<void(std::uint32_t)>& fn) {
  threads = std::min(resolve_threads(threads), std::max(count, 1u));
  if (threads <= 1) {
    for (std::uint32_t r = 0; r < count; ++r) fn(r);
    return;
  }
  std::atomic<std::uint32_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::uint32_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const std::uint32_t r = next.fetch_add(1);
        if (r >= count) return;
        try {
          fn(r);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

EventData simulate_replica(const PopulationConfig& config, std::uint32_t n,
                           std::uint32_t replica) {
  auto sign_stream =
      make_stream(config.seed, n, replica, StreamPurpose::Signs);
  auto signs = draw_signs(config, sign_stream);
  auto cand = make_stream(config.seed, n, replica, StreamPurpose::Candidates);
  auto acc = make_stream(config.seed, n, replica, StreamPurpose::Accept);
  return simulate(config, signs, cand, acc);
}

double last_grid_time(double horizon, double dt) {
  return static_cast<double>(grid_size(horizon, dt) - 1) * dt;
}

std::size_t count_up_to(const EventData& events, double t) {
  std::size_t c = 0;
  for (const auto& v : events.times_by_node)
    c += static_cast<std::size_t>(
        std::upper_bound(v.begin(), v.end(), t) - v.begin());
  return c;
}

ReportRow make_row(const ExperimentPlan& plan, std::uint32_t n,
                   const std::string& statistic, double value, double lo,
                   double hi, double wall) {
  ReportRow row;
  row.regime = regime_name(plan.base.regime);
  row.n = n;
  row.replicas = plan.replicas;
  row.statistic = statistic;
  row.value = value;
  row.ci_lo = lo;
  row.ci_hi = hi;
  row.seed = plan.base.seed;
  row.wall_clock_seconds = wall;
  return row;
}

ReportRow interval_row(const ExperimentPlan& plan, std::uint32_t n,
                       const std::string& statistic, const Interval& iv,
                       double wall) {
  return make_row(plan, n, statistic, iv.value, iv.lo, iv.hi, wall);
}

Interval binomial_rate(std::uint32_t pass, std::uint32_t total) {
  if (total == 0) return {0.0, 0.0, 0.0};
  const double rate =
      static_cast<double>(pass) / static_cast<double>(total);
  const double half =
      1.96 * std::sqrt(rate * (1.0 - rate) / static_cast<double>(total));
  return {rate, rate - half, rate + half};
}

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const std::chrono::duration<double> d = now - start_;
    start_ = now;
    return d.count();
  }

 private:
  std::chrono::steady_clock::time_point start_{
      std::chrono::steady_clock::now()};
};

}  // namespace

const char* check_name(CheckKind kind) {
  switch (kind) {
    case CheckKind::Lln: return "lln";
    case CheckKind::CltFluctuation: return "clt_fluctuation";
    case CheckKind::CriticalLimit: return "critical_limit";
    case CheckKind::CorollaryCounts: return "corollary_counts";
    case CheckKind::TimeRescaling: return "time_rescaling";
  }
  return "unknown";
}

const char* regime_name(Regime regime) {
  return regime == Regime::Subcritical ? "subcritical" : "critical";
}

void ExperimentPlan::validate() const {
  base.validate();
  if (replicas < 2) throw std::invalid_argument("replicas must be >= 2");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  std::uint32_t prev = 0;
  for (std::uint32_t n : n_values) {
    if (n < 1) throw std::invalid_argument("n_values entries must be >= 1");
    if (n <= prev)
      throw std::invalid_argument("n_values must be strictly increasing");
    prev = n;
  }
}

std::vector<std::uint32_t> ExperimentPlan::resolved_n() const {
  if (!n_values.empty()) return n_values;
  return {base.n};
}

std::vector<double> collect_sup_sq_errors(const PopulationConfig& base,
                                          std::uint32_t n,
                                          std::uint32_t replicas,
                                          const GridPath& limit,
                                          std::uint32_t threads) {
  PopulationConfig config = base;
  config.n = n;
  std::vector<double> out(replicas, 0.0);
  parallel_for(replicas, threads, [&](std::uint32_t r) {
    const auto events = simulate_replica(config, n, r);
    const auto path = compute_in(events, limit.dt);
    const std::size_t m = std::min(path.size(), limit.size());
    double sup = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double d = path.values[k] - limit.values[k];
      sup = std::max(sup, d * d);
    }
    out[r] = sup;
  });
  return out;
}

FluctuationSamples collect_fluctuation_samples(const PopulationConfig& base,
                                               std::uint32_t n,
                                               std::uint32_t replicas,
                                               const GridPath& limit,
                                               std::uint32_t threads) {
  PopulationConfig config = base;
  config.n = n;
  const double t_last = limit.time(limit.size() - 1);
  const double i_last = limit.back();
  const double root_n = std::sqrt(static_cast<double>(n));

  FluctuationSamples out;
  out.scaled_error.assign(replicas, 0.0);
  out.wn.assign(replicas, 0.0);
  parallel_for(replicas, threads, [&](std::uint32_t r) {
    auto sign_stream =
        make_stream(config.seed, n, r, StreamPurpose::Signs);
    auto signs = draw_signs(config, sign_stream);
    auto cand = make_stream(config.seed, n, r, StreamPurpose::Candidates);
    auto acc = make_stream(config.seed, n, r, StreamPurpose::Accept);
    const auto events = simulate(config, signs, cand, acc);
    out.scaled_error[r] = root_n * (compute_in_at(events, t_last) - i_last);
    out.wn[r] = sign_statistic(signs, config.p);
  });
  return out;
}

std::vector<double> collect_fluctuation_limit_samples(
    const PopulationConfig& base, std::uint32_t replicas,
    const GridPath& limit, double dt, std::uint32_t threads) {
  const double horizon = limit.time(limit.size() - 1);
  const double w_sd = std::sqrt(4.0 * base.p * (1.0 - base.p));
  std::vector<double> out(replicas, 0.0);
  parallel_for(replicas, threads, [&](std::uint32_t r) {
    auto w_stream = make_stream(base.seed, 0, r, StreamPurpose::WDraw);
    auto noise_stream = make_stream(base.seed, 0, r, StreamPurpose::Noise);
    const auto noise = BrownianIncrements::generate(horizon, dt, noise_stream);
    FluctuationProblem problem;
    problem.kernel = base.kernel;
    problem.transfer = base.transfer;
    problem.p = base.p;
    problem.limit_path = limit;
    problem.w = w_sd * w_stream.normal();
    problem.horizon = horizon;
    problem.dt = dt;
    out[r] = solve_fluctuation(problem, noise).k.back();
  });
  return out;
}

CriticalSamples collect_critical_samples(const PopulationConfig& base,
                                         std::uint32_t n,
                                         std::uint32_t replicas, double dt,
                                         std::uint32_t threads,
                                         bool rescaling_check) {
  PopulationConfig config = base;
  config.n = n;
  const double t_last = last_grid_time(config.horizon, dt);

  CriticalSamples out;
  out.in_t.assign(replicas, 0.0);
  std::vector<std::uint8_t> pass(replicas, 0);
  std::vector<std::uint8_t> total(replicas, 0);
  parallel_for(replicas, threads, [&](std::uint32_t r) {
    const auto events = simulate_replica(config, n, r);
    out.in_t[r] = compute_in_at(events, t_last);
    if (rescaling_check && !events.times_by_node[0].empty()) {
      const auto path = compute_in(events, dt);
      const auto comp = compensator_path(events, path);
      const auto spacings = rescaled_spacings(events, 0, comp);
      total[r] = 1;
      pass[r] = ks_exponential_pass(spacings) ? 1 : 0;
    }
  });
  for (std::uint32_t r = 0; r < replicas; ++r) {
    out.rescaling_pass += pass[r];
    out.rescaling_total += total[r];
  }
  return out;
}

std::vector<double> collect_critical_limit_samples(
    const PopulationConfig& base, std::uint32_t replicas, double dt,
    std::uint32_t threads) {
  std::vector<double> out(replicas, 0.0);
  parallel_for(replicas, threads, [&](std::uint32_t r) {
    auto w_stream = make_stream(base.seed, 0, r, StreamPurpose::WDraw);
    auto noise_stream = make_stream(base.seed, 0, r, StreamPurpose::Noise);
    const auto noise =
        BrownianIncrements::generate(base.horizon, dt, noise_stream);
    SdeLimitProblem problem;
    problem.kernel = base.kernel;
    problem.transfer = base.transfer;
    problem.w = w_stream.normal();
    problem.i0 = 0.0;
    problem.horizon = base.horizon;
    problem.dt = dt;
    out[r] = solve_stochastic_convolution(problem, noise).back();
  });
  return out;
}

CorollarySamples collect_corollary_samples(const PopulationConfig& base,
                                           std::uint32_t n,
                                           std::uint32_t replicas, double dt,
                                           std::uint32_t threads) {
  PopulationConfig config = base;
  config.n = n;
  const double t_last = last_grid_time(config.horizon, dt);
  const double root_n = std::sqrt(static_cast<double>(n));

  CorollarySamples out;
  out.dn.assign(replicas, 0.0);
  out.sn.assign(replicas, 0.0);
  parallel_for(replicas, threads, [&](std::uint32_t r) {
    const auto events = simulate_replica(config, n, r);
    const auto path = compute_in(events, dt);
    const auto comp = compensator_path(events, path);
    const double d =
        static_cast<double>(count_up_to(events, t_last)) /
            static_cast<double>(n) -
        comp.back();
    out.dn[r] = d;
    out.sn[r] = root_n * d;
  });
  return out;
}

RescalingSummary collect_rescaling_passes(const PopulationConfig& base,
                                          std::uint32_t n,
                                          std::uint32_t replicas, double dt,
                                          std::uint32_t threads,
                                          bool pool_nodes) {
  PopulationConfig config = base;
  config.n = n;
  std::vector<std::uint8_t> pass(replicas, 0);
  std::vector<std::uint8_t> total(replicas, 0);
  parallel_for(replicas, threads, [&](std::uint32_t r) {
    const auto events = simulate_replica(config, n, r);
    const auto path = compute_in(events, dt);
    const auto comp = compensator_path(events, path);
    std::vector<double> spacings;
    if (pool_nodes) {
      for (std::uint32_t j = 0; j < n; ++j) {
        const auto s = rescaled_spacings(events, j, comp);
        spacings.insert(spacings.end(), s.begin(), s.end());
      }
    } else {
      spacings = rescaled_spacings(events, 0, comp);
    }
    if (!spacings.empty()) {
      total[r] = 1;
      pass[r] = ks_exponential_pass(spacings) ? 1 : 0;
    }
  });
  RescalingSummary out;
  for (std::uint32_t r = 0; r < replicas; ++r) {
    out.pass += pass[r];
    out.total += total[r];
  }
  return out;
}

ConvergenceReport run_lln_experiment(const ExperimentPlan& plan) {
  plan.validate();
  if (plan.base.regime != Regime::Subcritical)
    throw std::invalid_argument("lln experiment requires the subcritical regime");
  if (plan.base.p == 0.5)
    throw std::invalid_argument(
        "lln experiment requires p != 1/2: the limit drift vanishes and the "
        "subcritical scaling carries no signal");

  DetLimitProblem det{plan.base.kernel, plan.base.transfer, plan.base.p,
                      plan.base.horizon, plan.dt};
  const auto limit = solve_volterra(det);

  ConvergenceReport report;
  std::vector<std::pair<double, double>> ladder;
  for (std::uint32_t n : plan.resolved_n()) {
    Stopwatch watch;
    const auto sup_sq =
        collect_sup_sq_errors(plan.base, n, plan.replicas, limit, plan.threads);
    const double wall = watch.lap();
    const auto iv = mean_interval(sup_sq);
    report.rows.push_back(interval_row(plan, n, "mse_sup", iv, wall));
    ladder.emplace_back(static_cast<double>(n), iv.value);
  }

  const bool fittable =
      ladder.size() >= 3 &&
      std::all_of(ladder.begin(), ladder.end(),
                  [](const auto& pt) { return pt.second > 0.0; });
  if (fittable) {
    const auto fit = fit_loglog_slope(ladder);
    report.rows.push_back(
        make_row(plan, 0, "loglog_slope", fit.slope, fit.slope, fit.slope, 0.0));
    report.rows.push_back(
        make_row(plan, 0, "loglog_r2", fit.r2, fit.r2, fit.r2, 0.0));
  }
  return report;
}

ConvergenceReport run_fluctuation_experiment(const ExperimentPlan& plan) {
  plan.validate();
  if (plan.base.regime != Regime::Subcritical)
    throw std::invalid_argument(
        "fluctuation experiment requires the subcritical regime");

  DetLimitProblem det{plan.base.kernel, plan.base.transfer, plan.base.p,
                      plan.base.horizon, plan.dt};
  const auto limit = solve_volterra(det);

  ConvergenceReport report;
  for (std::uint32_t n : plan.resolved_n()) {
    Stopwatch watch;
    const auto finite = collect_fluctuation_samples(plan.base, n,
                                                    plan.replicas, limit,
                                                    plan.threads);
    const auto oracle = collect_fluctuation_limit_samples(
        plan.base, plan.replicas, limit, plan.dt, plan.threads);
    const double ks = ks_two_sample(finite.scaled_error, oracle);
    const double wall = watch.lap();
    report.rows.push_back(make_row(plan, n, "ks_fluctuation", ks, ks, ks, wall));
    report.rows.push_back(interval_row(plan, n, "sqrtn_err_mean",
                                       mean_interval(finite.scaled_error), 0.0));
    report.rows.push_back(interval_row(plan, n, "sqrtn_err_var",
                                       variance_interval(finite.scaled_error),
                                       0.0));
    report.rows.push_back(
        interval_row(plan, n, "kt_var", variance_interval(oracle), 0.0));
    report.rows.push_back(
        interval_row(plan, n, "wn_var", variance_interval(finite.wn), 0.0));
  }
  return report;
}

ConvergenceReport run_critical_experiment(const ExperimentPlan& plan) {
  plan.validate();
  if (plan.base.regime != Regime::Critical)
    throw std::invalid_argument(
        "critical experiment requires the critical regime");
  if (plan.base.p != 0.5)
    throw std::invalid_argument("critical experiment requires p = 1/2");

  ConvergenceReport report;
  for (std::uint32_t n : plan.resolved_n()) {
    Stopwatch watch;
    const auto finite = collect_critical_samples(plan.base, n, plan.replicas,
                                                 plan.dt, plan.threads, true);
    const auto oracle = collect_critical_limit_samples(plan.base, plan.replicas,
                                                       plan.dt, plan.threads);
    const double ks = ks_two_sample(finite.in_t, oracle);
    const double wall = watch.lap();
    report.rows.push_back(make_row(plan, n, "ks_critical", ks, ks, ks, wall));
    report.rows.push_back(
        interval_row(plan, n, "in_t_var", variance_interval(finite.in_t), 0.0));
    report.rows.push_back(
        interval_row(plan, n, "sde_t_var", variance_interval(oracle), 0.0));
    report.rows.push_back(interval_row(
        plan, n, "rescaling_pass_rate",
        binomial_rate(finite.rescaling_pass, finite.rescaling_total), 0.0));
  }
  return report;
}

ConvergenceReport run_corollary_counts(const ExperimentPlan& plan) {
  plan.validate();

  ConvergenceReport report;
  for (std::uint32_t n : plan.resolved_n()) {
    Stopwatch watch;
    const auto samples = collect_corollary_samples(plan.base, n, plan.replicas,
                                                   plan.dt, plan.threads);
    std::vector<double> abs_dn(samples.dn.size());
    std::transform(samples.dn.begin(), samples.dn.end(), abs_dn.begin(),
                   [](double d) { return std::abs(d); });
    const double wall = watch.lap();
    report.rows.push_back(
        interval_row(plan, n, "var_sn", variance_interval(samples.sn), wall));
    report.rows.push_back(
        interval_row(plan, n, "mean_abs_dn", mean_interval(abs_dn), 0.0));
  }

  if (plan.base.regime == Regime::Subcritical) {
    // Limit of Var(sqrt(N) D_N(T)): the limit compensator at T.
    DetLimitProblem det{plan.base.kernel, plan.base.transfer, plan.base.p,
                        plan.base.horizon, plan.dt};
    const double limit =
        limit_compensator(solve_volterra(det), plan.base.transfer).back();
    report.rows.push_back(
        make_row(plan, 0, "var_sn_limit", limit, limit, limit, 0.0));
  }
  return report;
}

ConvergenceReport run_time_rescaling(const ExperimentPlan& plan) {
  plan.validate();

  ConvergenceReport report;
  for (std::uint32_t n : plan.resolved_n()) {
    Stopwatch watch;
    const auto summary = collect_rescaling_passes(plan.base, n, plan.replicas,
                                                  plan.dt, plan.threads, true);
    const double wall = watch.lap();
    report.rows.push_back(
        interval_row(plan, n, "rescaling_pass_rate",
                     binomial_rate(summary.pass, summary.total), wall));
  }
  return report;
}

ConvergenceReport run_verify(const ExperimentPlan& plan) {
  plan.validate();
  if (plan.checks.empty())
    throw std::invalid_argument("verify plan names no checks");

  std::vector<CheckKind> checks = plan.checks;
  std::sort(checks.begin(), checks.end());
  checks.erase(std::unique(checks.begin(), checks.end()), checks.end());

  ConvergenceReport report;
  for (CheckKind kind : checks) {
    ConvergenceReport part;
    switch (kind) {
      case CheckKind::Lln: part = run_lln_experiment(plan); break;
      case CheckKind::CltFluctuation:
        part = run_fluctuation_experiment(plan);
        break;
      case CheckKind::CriticalLimit: part = run_critical_experiment(plan); break;
      case CheckKind::CorollaryCounts: part = run_corollary_counts(plan); break;
      case CheckKind::TimeRescaling: part = run_time_rescaling(plan); break;
    }
    report.rows.insert(report.rows.end(), part.rows.begin(), part.rows.end());
  }
  return report;
}

}  // namespace hawkesmf
