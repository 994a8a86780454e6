#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hawkesmf/grid.hpp"
#include "hawkesmf/population.hpp"
#include "hawkesmf/rng.hpp"

namespace hawkesmf {

// Realized point configuration of one finite-N run: per-node strictly
// increasing jump times, the sign draw, and the config that produced it.
struct EventData {
  PopulationConfig config;
  SignAssignment signs;
  std::vector<std::vector<double>> times_by_node;

  std::size_t total_count() const;
  void validate() const;
};

// (time, node) pairs merged across nodes, ascending in time.
std::vector<std::pair<double, std::uint32_t>> flatten_sorted(
    const EventData& events);

// Exact thinning simulation on [0, horizon]: candidates arrive at rate
// n * sup h, a candidate at t is accepted with probability h(I(t-)) / sup h
// and assigned a uniform node. Candidate spacings come from `candidates`;
// the acceptance uniform and (on acceptance) the node pick come from
// `accept`, in that order, so an independent implementation consuming the
// same two streams reproduces the event list exactly.
EventData simulate(const PopulationConfig& config, const SignAssignment& signs,
                   RngStream& candidates, RngStream& accept);

// Convenience: derives signs and both streams from config.seed, replica 0.
EventData simulate(const PopulationConfig& config);

// Interaction field I(t) = theta_N sum_j U_j sum_{s_j < t} phi(t - s_j) on
// the grid {k dt}. Left limits: a jump exactly at a grid time does not
// contribute at that time. Evaluation is exact in the jump times.
GridPath compute_in(const EventData& events, double dt);

// Field value at a single time, same left-limit convention.
double compute_in_at(const EventData& events, double t);

// Rescaled signed counting path J(t) = theta_N sum_j U_j Z_j(t) sampled at
// grid times (jumps at k dt included: cadlag sampling).
GridPath compute_jn(const EventData& events, double dt);

// Compensator Lambda(t) = int_0^t h(I(s)) ds by trapezoid on the grid of
// in_path (which must be compute_in output for the same events).
GridPath compensator_path(const EventData& events, const GridPath& in_path);

// Compensator-rescaled jump spacings of one node: successive differences of
// Lambda(t_k) over that node's jumps, Lambda linearly interpolated. Unit
// exponential iid when the simulator is correct.
std::vector<double> rescaled_spacings(const EventData& events,
                                      std::uint32_t node,
                                      const GridPath& compensator);

// sup_{s <= 1} |Y(n s) - n s| / n for one unit-rate Poisson path Y drawn
// from `stream`: the normalized compensated-count deviation.
double poisson_sup_deviation(std::uint64_t n, RngStream& stream);

}  // namespace hawkesmf
