#include "hawkesmf/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hawkesmf {

std::size_t EventData::total_count() const {
  std::size_t n = 0;
  for (const auto& v : times_by_node) n += v.size();
  return n;
}

void EventData::validate() const {
  if (times_by_node.size() != config.n || signs.size() != config.n)
    throw std::invalid_argument("event data does not match config.n");
  for (const auto& v : times_by_node) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!(v[i] >= 0.0 && v[i] <= config.horizon))
        throw std::invalid_argument("jump time outside [0, horizon]");
      if (i > 0 && !(v[i] > v[i - 1]))
        throw std::invalid_argument("jump times must be strictly increasing");
    }
  }
}

std::vector<std::pair<double, std::uint32_t>> flatten_sorted(
    const EventData& events) {
  std::vector<std::pair<double, std::uint32_t>> flat;
  flat.reserve(events.total_count());
  for (std::uint32_t j = 0; j < events.times_by_node.size(); ++j)
    for (double t : events.times_by_node[j]) flat.emplace_back(t, j);
  std::sort(flat.begin(), flat.end());
  return flat;
}

EventData simulate(const PopulationConfig& config, const SignAssignment& signs,
                   RngStream& candidates, RngStream& accept) {
  config.validate();
  if (signs.size() != config.n)
    throw std::invalid_argument("sign assignment does not match config.n");

  EventData out;
  out.config = config;
  out.signs = signs;
  out.times_by_node.resize(config.n);

  const double hbound = config.transfer.bound();
  const double horizon = config.horizon;
  if (hbound == 0.0 || horizon <= 0.0) return out;

  const double total_rate = static_cast<double>(config.n) * hbound;
  const double theta = config.theta();

  KernelState field(config.kernel);
  double t = 0.0;
  double field_time = 0.0;
  while (true) {
    t += candidates.exponential() / total_rate;
    if (t > horizon) break;
    field.decay(t - field_time);
    field_time = t;
    const double intensity = config.transfer.value(field.value());
    if (accept.uniform01() < intensity / hbound) {
      const auto node =
          static_cast<std::uint32_t>(accept.pick_index(config.n));
      out.times_by_node[node].push_back(t);
      field.add(theta * static_cast<double>(signs[node]));
    }
  }
  return out;
}

EventData simulate(const PopulationConfig& config) {
  auto sign_stream =
      make_stream(config.seed, config.n, 0, StreamPurpose::Signs);
  auto signs = draw_signs(config, sign_stream);
  auto cand = make_stream(config.seed, config.n, 0, StreamPurpose::Candidates);
  auto acc = make_stream(config.seed, config.n, 0, StreamPurpose::Accept);
  return simulate(config, signs, cand, acc);
}

GridPath compute_in(const EventData& events, double dt) {
  const auto flat = flatten_sorted(events);
  auto path = GridPath::zeros(events.config.horizon, dt);
  const double theta = events.config.theta();

  KernelState field(events.config.kernel);
  double field_time = 0.0;
  std::size_t next = 0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const double t = path.time(k);
    // Fold in jumps strictly before t (left limit).
    while (next < flat.size() && flat[next].first < t) {
      field.decay(flat[next].first - field_time);
      field_time = flat[next].first;
      field.add(theta * static_cast<double>(events.signs[flat[next].second]));
      ++next;
    }
    field.decay(t - field_time);
    field_time = t;
    path.values[k] = field.value();
  }
  return path;
}

double compute_in_at(const EventData& events, double t) {
  const auto flat = flatten_sorted(events);
  const double theta = events.config.theta();
  KernelState field(events.config.kernel);
  double field_time = 0.0;
  for (const auto& [s, node] : flat) {
    if (!(s < t)) break;
    field.decay(s - field_time);
    field_time = s;
    field.add(theta * static_cast<double>(events.signs[node]));
  }
  field.decay(t - field_time);
  return field.value();
}

GridPath compute_jn(const EventData& events, double dt) {
  const auto flat = flatten_sorted(events);
  auto path = GridPath::zeros(events.config.horizon, dt);
  const double theta = events.config.theta();

  double running = 0.0;
  std::size_t next = 0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const double t = path.time(k);
    while (next < flat.size() && flat[next].first <= t) {
      running += theta * static_cast<double>(events.signs[flat[next].second]);
      ++next;
    }
    path.values[k] = running;
  }
  return path;
}

GridPath compensator_path(const EventData& events, const GridPath& in_path) {
  const auto& h = events.config.transfer;
  return trapezoid_accumulate(in_path, [&h](double x) { return h.value(x); });
}

std::vector<double> rescaled_spacings(const EventData& events,
                                      std::uint32_t node,
                                      const GridPath& compensator) {
  if (node >= events.times_by_node.size())
    throw std::invalid_argument("rescaled_spacings: node out of range");
  const auto& times = events.times_by_node[node];
  std::vector<double> out;
  out.reserve(times.size());
  double prev = 0.0;
  for (double t : times) {
    const double lam = evaluate(compensator, t);
    out.push_back(lam - prev);
    prev = lam;
  }
  return out;
}

double poisson_sup_deviation(std::uint64_t n, RngStream& stream) {
  if (n == 0) throw std::invalid_argument("poisson_sup_deviation: n >= 1");
  const double nn = static_cast<double>(n);
  double arrival = 0.0;
  double sup = 0.0;
  std::uint64_t count = 0;
  while (true) {
    arrival += stream.exponential();
    if (arrival > nn) break;
    // Just before the jump Y = count, just after Y = count + 1.
    sup = std::max(sup, std::abs(static_cast<double>(count) - arrival));
    ++count;
    sup = std::max(sup, std::abs(static_cast<double>(count) - arrival));
  }
  sup = std::max(sup, std::abs(static_cast<double>(count) - nn));
  return sup / nn;
}

}  // namespace hawkesmf
