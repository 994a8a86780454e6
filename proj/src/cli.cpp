#include "hawkesmf/cli.hpp"

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "hawkesmf/io.hpp"
#include "hawkesmf/lab.hpp"
#include "hawkesmf/rng.hpp"
#include "hawkesmf/sde.hpp"
#include "hawkesmf/sim.hpp"
#include "hawkesmf/volterra.hpp"

namespace hawkesmf {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliOptions {
  std::string config_path;
  std::string out_dir{"./out"};
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
  std::optional<std::uint32_t> replicas;
  std::optional<std::uint32_t> threads;

  double grid_dt() const { return dt.value_or(1e-3); }
};

void add_common_options(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--config", opt.config_path, "configuration JSON file")
      ->required();
  cmd->add_option("--out", opt.out_dir, "output directory (default ./out)");
  cmd->add_option("--seed", opt.seed, "override the root seed");
  cmd->add_option("--dt", opt.dt, "override the grid step (default 1e-3)");
  cmd->add_option("--replicas", opt.replicas, "override the replica count");
  cmd->add_option("--threads", opt.threads, "worker threads (0 = hardware)");
}

PopulationConfig load_population_config(const CliOptions& opt) {
  const auto j = parse_json_strict(read_text_file(opt.config_path));
  auto config = config_from_json(j);
  if (opt.seed) config.seed = *opt.seed;
  return config;
}

ExperimentPlan load_plan(const CliOptions& opt) {
  const auto j = parse_json_strict(read_text_file(opt.config_path));
  auto plan = plan_from_json(j);
  if (opt.seed) plan.base.seed = *opt.seed;
  if (opt.dt) plan.dt = *opt.dt;
  if (opt.replicas) plan.replicas = *opt.replicas;
  if (opt.threads) plan.threads = *opt.threads;
  return plan;
}

fs::path prepare_out_dir(const CliOptions& opt) {
  fs::path dir(opt.out_dir);
  fs::create_directories(dir);
  return dir;
}

int cmd_simulate(const CliOptions& opt) {
  const auto config = load_population_config(opt);
  config.validate();
  const auto events = simulate(config);
  const auto dir = prepare_out_dir(opt);
  write_text_file(dir / "events.csv", events_to_csv(events));
  write_manifest(dir, "simulate", config_to_json(config), config.seed,
                 {"events.csv"});
  return 0;
}

int cmd_limit_det(const CliOptions& opt) {
  const auto config = load_population_config(opt);
  DetLimitProblem problem{config.kernel, config.transfer, config.p,
                          config.horizon, opt.grid_dt()};
  const auto path = solve_volterra(problem);
  const auto dir = prepare_out_dir(opt);
  write_text_file(dir / "path.csv", grid_to_csv(path));
  write_manifest(dir, "limit-det", config_to_json(config), config.seed,
                 {"path.csv"}, {{"dt", opt.grid_dt()}});
  return 0;
}

int cmd_limit_sde(const CliOptions& opt) {
  const auto config = load_population_config(opt);
  auto w_stream = make_stream(config.seed, 0, 0, StreamPurpose::WDraw);
  auto noise_stream = make_stream(config.seed, 0, 0, StreamPurpose::Noise);
  SdeLimitProblem problem;
  problem.kernel = config.kernel;
  problem.transfer = config.transfer;
  problem.w = w_stream.normal();
  problem.i0 = 0.0;
  problem.horizon = config.horizon;
  problem.dt = opt.grid_dt();
  const auto noise =
      BrownianIncrements::generate(config.horizon, problem.dt, noise_stream);
  const auto path = solve_stochastic_convolution(problem, noise);
  const auto dir = prepare_out_dir(opt);
  write_text_file(dir / "path.csv", grid_to_csv(path));
  write_manifest(dir, "limit-sde", config_to_json(config), config.seed,
                 {"path.csv"}, {{"dt", problem.dt}});
  return 0;
}

int cmd_fluctuation(const CliOptions& opt) {
  const auto config = load_population_config(opt);
  DetLimitProblem det{config.kernel, config.transfer, config.p, config.horizon,
                      opt.grid_dt()};
  const auto limit = solve_volterra(det);

  auto w_stream = make_stream(config.seed, 0, 0, StreamPurpose::WDraw);
  auto noise_stream = make_stream(config.seed, 0, 0, StreamPurpose::Noise);
  FluctuationProblem problem;
  problem.kernel = config.kernel;
  problem.transfer = config.transfer;
  problem.p = config.p;
  problem.limit_path = limit;
  problem.w =
      std::sqrt(4.0 * config.p * (1.0 - config.p)) * w_stream.normal();
  problem.horizon = config.horizon;
  problem.dt = opt.grid_dt();
  const auto noise =
      BrownianIncrements::generate(config.horizon, problem.dt, noise_stream);
  const auto paths = solve_fluctuation(problem, noise);
  const auto dir = prepare_out_dir(opt);
  write_text_file(dir / "fluctuation.csv",
                  paired_grid_to_csv(paths.k, paths.g));
  write_manifest(dir, "fluctuation", config_to_json(config), config.seed,
                 {"fluctuation.csv"}, {{"dt", problem.dt}});
  return 0;
}

int cmd_verify(const CliOptions& opt) {
  const auto plan = load_plan(opt);
  const auto report = run_verify(plan);
  const auto dir = prepare_out_dir(opt);
  write_text_file(dir / "report.csv", report_to_csv(report));
  write_text_file(dir / "report.json", report_to_json(report).dump(2) + "\n");
  write_manifest(dir, "verify", plan_to_json(plan), plan.base.seed,
                 {"report.csv", "report.json"});
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"finite-population simulation and limit verification for "
               "signed mean-field point processes"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  CliOptions opt;
  auto* simulate_cmd =
      app.add_subcommand("simulate", "exact finite-population simulation");
  auto* limit_det_cmd =
      app.add_subcommand("limit-det", "deterministic limit path");
  auto* limit_sde_cmd =
      app.add_subcommand("limit-sde", "critical-regime limit SDE path");
  auto* fluctuation_cmd =
      app.add_subcommand("fluctuation", "fluctuation pair (K, G)");
  auto* verify_cmd =
      app.add_subcommand("verify", "Monte Carlo limit verification report");
  for (auto* cmd : {simulate_cmd, limit_det_cmd, limit_sde_cmd,
                    fluctuation_cmd, verify_cmd})
    add_common_options(cmd, opt);

  // CLI11 wants argv-style reversed arguments.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (simulate_cmd->parsed()) return cmd_simulate(opt);
    if (limit_det_cmd->parsed()) return cmd_limit_det(opt);
    if (limit_sde_cmd->parsed()) return cmd_limit_sde(opt);
    if (fluctuation_cmd->parsed()) return cmd_fluctuation(opt);
    if (verify_cmd->parsed()) return cmd_verify(opt);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace hawkesmf
