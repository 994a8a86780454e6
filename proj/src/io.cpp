#include "hawkesmf/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace hawkesmf {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config error at " + (path.empty() ? "/" : path) + ": " +
                    what);
}

// Every object in our schemas has a fixed key set; anything else is a typo
// the user should hear about.
void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& required,
                const std::set<std::string>& optional) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!required.count(key) && !optional.count(key))
      fail(path + "/" + key, "unknown field");
  }
  for (const auto& key : required) {
    if (!obj.contains(key)) fail(path + "/" + key, "missing required field");
  }
}

double get_number(const json& obj, const std::string& path,
                  const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_number()) fail(path + "/" + key, "expected a number");
  return v.get<double>();
}

std::uint64_t get_unsigned(const json& obj, const std::string& path,
                           const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_number_unsigned()) fail(path + "/" + key, "expected an unsigned integer");
  return v.get<std::uint64_t>();
}

std::string get_string(const json& obj, const std::string& path,
                       const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_string()) fail(path + "/" + key, "expected a string");
  return v.get<std::string>();
}

KernelSpec kernel_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  if (!j.contains("family")) fail(path + "/family", "missing required field");
  const std::string family = get_string(j, path, "family");
  if (family == "zero") {
    check_keys(j, path, {"family"}, {});
    return KernelSpec::zero();
  }
  if (family == "exponential" || family == "erlang") {
    check_keys(j, path, {"family", "rate", "amplitude"}, {});
    const double rate = get_number(j, path, "rate");
    if (!(rate > 0.0)) fail(path + "/rate", "must be > 0");
    const double amplitude = get_number(j, path, "amplitude");
    return family == "exponential" ? KernelSpec::exponential(rate, amplitude)
                                   : KernelSpec::erlang(rate, amplitude);
  }
  fail(path + "/family",
       "unknown kernel family '" + family +
           "' (allowed: exponential, erlang, zero)");
}

json kernel_to_json(const KernelSpec& kernel) {
  switch (kernel.family) {
    case KernelFamily::Exponential:
      return {{"family", "exponential"},
              {"rate", kernel.rate},
              {"amplitude", kernel.amplitude}};
    case KernelFamily::Erlang:
      return {{"family", "erlang"},
              {"rate", kernel.rate},
              {"amplitude", kernel.amplitude}};
    case KernelFamily::Zero:
      return {{"family", "zero"}};
  }
  return {};
}

TransferSpec transfer_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  if (!j.contains("family")) fail(path + "/family", "missing required field");
  const std::string family = get_string(j, path, "family");
  if (family == "constant") {
    check_keys(j, path, {"family", "value"}, {});
    const double value = get_number(j, path, "value");
    if (!(value >= 0.0)) fail(path + "/value", "must be >= 0");
    return TransferSpec::constant(value);
  }
  if (family == "sigmoid") {
    check_keys(j, path, {"family", "hmax", "slope", "center"}, {});
    const double hmax = get_number(j, path, "hmax");
    if (!(hmax > 0.0)) fail(path + "/hmax", "must be > 0");
    const double slope = get_number(j, path, "slope");
    if (!(slope > 0.0)) fail(path + "/slope", "must be > 0");
    return TransferSpec::sigmoid(hmax, slope, get_number(j, path, "center"));
  }
  fail(path + "/family",
       "unknown transfer family '" + family + "' (allowed: constant, sigmoid)");
}

json transfer_to_json(const TransferSpec& transfer) {
  if (transfer.family == TransferFamily::Constant)
    return {{"family", "constant"}, {"value", transfer.hmax}};
  return {{"family", "sigmoid"},
          {"hmax", transfer.hmax},
          {"slope", transfer.slope},
          {"center", transfer.center}};
}

CheckKind check_from_name(const std::string& name, const std::string& path) {
  for (CheckKind kind :
       {CheckKind::Lln, CheckKind::CltFluctuation, CheckKind::CriticalLimit,
        CheckKind::CorollaryCounts, CheckKind::TimeRescaling}) {
    if (name == check_name(kind)) return kind;
  }
  fail(path, "unknown check '" + name +
                 "' (allowed: lln, clt_fluctuation, critical_limit, "
                 "corollary_counts, time_rescaling)");
}

}  // namespace

json parse_json_strict(const std::string& text) {
  // Track open objects and reject a key already seen at the same level.
  std::vector<std::set<std::string>> object_stack;
  const auto callback = [&object_stack](int /*depth*/,
                                        json::parse_event_t event,
                                        json& parsed) -> bool {
    switch (event) {
      case json::parse_event_t::object_start:
        object_stack.emplace_back();
        break;
      case json::parse_event_t::object_end:
        object_stack.pop_back();
        break;
      case json::parse_event_t::key: {
        const auto key = parsed.get<std::string>();
        if (!object_stack.back().insert(key).second)
          throw ConfigError("config error: duplicate key '" + key + "'");
        break;
      }
      default:
        break;
    }
    return true;
  };
  try {
    return json::parse(text, callback);
  } catch (const ConfigError&) {
    throw;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config error: invalid JSON: ") + e.what());
  }
}

PopulationConfig config_from_json(const json& j) {
  check_keys(j, "", {"n", "p", "regime", "kernel", "transfer", "horizon"},
             {"seed"});

  PopulationConfig config;
  const std::uint64_t n = get_unsigned(j, "", "n");
  if (n < 1) fail("/n", "must be >= 1");
  if (n > 0xFFFFFFFFULL) fail("/n", "too large");
  config.n = static_cast<std::uint32_t>(n);

  config.p = get_number(j, "", "p");
  if (!(config.p >= 0.0 && config.p <= 1.0))
    fail("/p", "must lie in [0, 1]");

  const std::string regime = get_string(j, "", "regime");
  if (regime == "subcritical") {
    config.regime = Regime::Subcritical;
  } else if (regime == "critical") {
    config.regime = Regime::Critical;
  } else {
    fail("/regime", "unknown regime '" + regime +
                        "' (allowed: subcritical, critical)");
  }

  config.kernel = kernel_from_json(j.at("kernel"), "/kernel");
  config.transfer = transfer_from_json(j.at("transfer"), "/transfer");

  config.horizon = get_number(j, "", "horizon");
  if (!(config.horizon >= 0.0)) fail("/horizon", "must be >= 0");

  config.seed = j.contains("seed") ? get_unsigned(j, "", "seed") : 0;
  return config;
}

json config_to_json(const PopulationConfig& config) {
  return {{"n", config.n},
          {"p", config.p},
          {"regime", regime_name(config.regime)},
          {"kernel", kernel_to_json(config.kernel)},
          {"transfer", transfer_to_json(config.transfer)},
          {"horizon", config.horizon},
          {"seed", config.seed}};
}

ExperimentPlan plan_from_json(const json& j) {
  check_keys(j, "", {"base", "checks"},
             {"n_values", "replicas", "dt", "threads"});

  ExperimentPlan plan;
  plan.base = config_from_json(j.at("base"));

  if (j.contains("n_values")) {
    const auto& arr = j.at("n_values");
    if (!arr.is_array()) fail("/n_values", "expected an array");
    std::uint64_t prev = 0;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& v = arr[i];
      const std::string path = "/n_values/" + std::to_string(i);
      if (!v.is_number_unsigned()) fail(path, "expected an unsigned integer");
      const auto n = v.get<std::uint64_t>();
      if (n < 1) fail(path, "must be >= 1");
      if (n <= prev) fail(path, "must be strictly increasing");
      if (n > 0xFFFFFFFFULL) fail(path, "too large");
      plan.n_values.push_back(static_cast<std::uint32_t>(n));
      prev = n;
    }
  }

  if (j.contains("replicas")) {
    const auto r = get_unsigned(j, "", "replicas");
    if (r < 2) fail("/replicas", "must be >= 2");
    if (r > 0xFFFFFFFFULL) fail("/replicas", "too large");
    plan.replicas = static_cast<std::uint32_t>(r);
  }

  if (j.contains("dt")) {
    plan.dt = get_number(j, "", "dt");
    if (!(plan.dt > 0.0)) fail("/dt", "must be > 0");
  }

  if (j.contains("threads")) {
    const auto t = get_unsigned(j, "", "threads");
    if (t > 0xFFFFFFFFULL) fail("/threads", "too large");
    plan.threads = static_cast<std::uint32_t>(t);
  }

  const auto& checks = j.at("checks");
  if (!checks.is_array() || checks.empty())
    fail("/checks", "expected a non-empty array");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string path = "/checks/" + std::to_string(i);
    if (!checks[i].is_string()) fail(path, "expected a string");
    plan.checks.push_back(
        check_from_name(checks[i].get<std::string>(), path));
  }
  return plan;
}

json plan_to_json(const ExperimentPlan& plan) {
  json checks = json::array();
  for (CheckKind kind : plan.checks) checks.push_back(check_name(kind));
  json j{{"base", config_to_json(plan.base)},
         {"replicas", plan.replicas},
         {"dt", plan.dt},
         {"threads", plan.threads},
         {"checks", checks}};
  if (!plan.n_values.empty()) j["n_values"] = plan.n_values;
  return j;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string events_to_csv(const EventData& events) {
  std::string out = "node_id,time,sign\n";
  for (const auto& [time, node] : flatten_sorted(events)) {
    out += std::to_string(node);
    out += ',';
    out += fmt17(time);
    out += ',';
    out += std::to_string(events.signs[node]);
    out += '\n';
  }
  return out;
}

std::string grid_to_csv(const GridPath& path) {
  std::string out = "t,value\n";
  for (std::size_t k = 0; k < path.size(); ++k) {
    out += fmt17(path.time(k));
    out += ',';
    out += fmt17(path.values[k]);
    out += '\n';
  }
  return out;
}

std::string paired_grid_to_csv(const GridPath& k, const GridPath& g) {
  if (k.size() != g.size() || k.dt != g.dt)
    throw std::invalid_argument("paired_grid_to_csv: grid mismatch");
  std::string out = "t,k,g\n";
  for (std::size_t i = 0; i < k.size(); ++i) {
    out += fmt17(k.time(i));
    out += ',';
    out += fmt17(k.values[i]);
    out += ',';
    out += fmt17(g.values[i]);
    out += '\n';
  }
  return out;
}

std::string report_to_csv(const ConvergenceReport& report) {
  std::string out = "regime,n,replicas,statistic,value,ci_lo,ci_hi,seed\n";
  for (const auto& row : report.rows) {
    out += row.regime;
    out += ',';
    out += std::to_string(row.n);
    out += ',';
    out += std::to_string(row.replicas);
    out += ',';
    out += row.statistic;
    out += ',';
    out += fmt17(row.value);
    out += ',';
    out += fmt17(row.ci_lo);
    out += ',';
    out += fmt17(row.ci_hi);
    out += ',';
    out += std::to_string(row.seed);
    out += '\n';
  }
  return out;
}

json report_to_json(const ConvergenceReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"regime", row.regime},
                    {"n", row.n},
                    {"replicas", row.replicas},
                    {"statistic", row.statistic},
                    {"value", row.value},
                    {"ci_lo", row.ci_lo},
                    {"ci_hi", row.ci_hi},
                    {"seed", row.seed},
                    {"wall_clock_seconds", row.wall_clock_seconds}});
  }
  return json{{"rows", rows}};
}

std::string fnv1a64_hex(const std::filesystem::path& path) {
  const std::string bytes = read_text_file(path);
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, hash);
  return buf;
}

void write_manifest(const std::filesystem::path& out_dir,
                    const std::string& subcommand,
                    const json& resolved_config, std::uint64_t root_seed,
                    const std::vector<std::string>& data_files,
                    const json& extras) {
  json files = json::array();
  for (const auto& name : data_files)
    files.push_back({{"file", name}, {"fnv1a64", fnv1a64_hex(out_dir / name)}});
  json manifest{{"tool_version", kToolVersion},
                {"subcommand", subcommand},
                {"root_seed", root_seed},
                {"config", resolved_config},
                {"outputs", files}};
  for (const auto& [key, value] : extras.items()) manifest[key] = value;
  write_text_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace hawkesmf
