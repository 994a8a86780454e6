#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hawkesmf/grid.hpp"
#include "hawkesmf/population.hpp"
#include "hawkesmf/stats.hpp"

namespace hawkesmf {

// Verification checks the harness can run. Each is a Monte Carlo experiment
// comparing finite-N simulation against the matching limit object.
enum class CheckKind {
  Lln,              // sup-norm L2 convergence to the deterministic limit
  CltFluctuation,   // sqrt(N) fluctuations against the Gaussian limit pair
  CriticalLimit,    // critical-regime marginal against the limit SDE
  CorollaryCounts,  // compensated count averages and their variance
  TimeRescaling,    // compensator-rescaled spacings are unit exponential
};

struct ExperimentPlan {
  PopulationConfig base;
  std::vector<std::uint32_t> n_values;  // empty means {base.n}
  std::uint32_t replicas{2};
  double dt{1e-3};
  std::vector<CheckKind> checks;
  std::uint32_t threads{0};  // 0 = hardware concurrency

  void validate() const;
  std::vector<std::uint32_t> resolved_n() const;
};

// One reported statistic. Aggregate rows (e.g. a slope over the whole N
// ladder) carry n = 0. Statistics without a meaningful interval repeat the
// value in both bounds. wall_clock_seconds is reporting metadata and is
// excluded from the CSV so reruns are byte-identical.
struct ReportRow {
  std::string regime;
  std::uint32_t n{0};
  std::uint32_t replicas{0};
  std::string statistic;
  double value{0.0};
  double ci_lo{0.0};
  double ci_hi{0.0};
  std::uint64_t seed{0};
  double wall_clock_seconds{0.0};
};

struct ConvergenceReport {
  std::vector<ReportRow> rows;
};

// --- replica-level sample collectors (reused by the acceptance suite) ---

// sup_k (I_N[k] - I[k])^2 per replica; `limit` is the deterministic limit
// on the experiment grid.
std::vector<double> collect_sup_sq_errors(const PopulationConfig& base,
                                          std::uint32_t n,
                                          std::uint32_t replicas,
                                          const GridPath& limit,
                                          std::uint32_t threads);

struct FluctuationSamples {
  std::vector<double> scaled_error;  // sqrt(N) (I_N(T) - I(T))
  std::vector<double> wn;            // realized sign statistic per replica
};

FluctuationSamples collect_fluctuation_samples(const PopulationConfig& base,
                                               std::uint32_t n,
                                               std::uint32_t replicas,
                                               const GridPath& limit,
                                               std::uint32_t threads);

// K(T) samples from the fluctuation pair, W ~ N(0, 4p(1-p)) per path.
std::vector<double> collect_fluctuation_limit_samples(
    const PopulationConfig& base, std::uint32_t replicas,
    const GridPath& limit, double dt, std::uint32_t threads);

struct CriticalSamples {
  std::vector<double> in_t;          // I_N(T) per replica
  std::uint32_t rescaling_pass{0};   // first-node spacing KS passes
  std::uint32_t rescaling_total{0};  // replicas with at least one spacing
};

CriticalSamples collect_critical_samples(const PopulationConfig& base,
                                         std::uint32_t n,
                                         std::uint32_t replicas, double dt,
                                         std::uint32_t threads,
                                         bool rescaling_check);

// I(T) samples from the critical limit SDE, W ~ N(0,1) per path.
std::vector<double> collect_critical_limit_samples(
    const PopulationConfig& base, std::uint32_t replicas, double dt,
    std::uint32_t threads);

struct CorollarySamples {
  std::vector<double> dn;  // compensated count average D_N(T)
  std::vector<double> sn;  // sqrt(N) D_N(T)
};

CorollarySamples collect_corollary_samples(const PopulationConfig& base,
                                           std::uint32_t n,
                                           std::uint32_t replicas, double dt,
                                           std::uint32_t threads);

struct RescalingSummary {
  std::uint32_t pass{0};
  std::uint32_t total{0};
};

// KS pass counts for compensator-rescaled spacings at the 5% level;
// pool_nodes pools spacings across the population, otherwise only the
// first node is tested.
RescalingSummary collect_rescaling_passes(const PopulationConfig& base,
                                          std::uint32_t n,
                                          std::uint32_t replicas, double dt,
                                          std::uint32_t threads,
                                          bool pool_nodes);

// --- experiments (rows of a ConvergenceReport) ---

ConvergenceReport run_lln_experiment(const ExperimentPlan& plan);
ConvergenceReport run_fluctuation_experiment(const ExperimentPlan& plan);
ConvergenceReport run_critical_experiment(const ExperimentPlan& plan);
ConvergenceReport run_corollary_counts(const ExperimentPlan& plan);
ConvergenceReport run_time_rescaling(const ExperimentPlan& plan);

// Runs every check named in the plan, in declaration order of CheckKind.
ConvergenceReport run_verify(const ExperimentPlan& plan);

const char* check_name(CheckKind kind);
const char* regime_name(Regime regime);

}  // namespace hawkesmf
