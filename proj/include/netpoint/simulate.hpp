#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netpoint/events.hpp"
#include "netpoint/graph.hpp"

namespace netpoint {

struct SimulationSpec {
  double rate = 0.0;  ///< events per unit length
  std::uint64_t seed = 0;
  /// Category -> probability; must sum to one.
  std::vector<std::pair<std::string, double>> marks;
  /// Times drawn uniformly from [first, second).
  std::optional<std::pair<double, double>> time_range;
};

/// Throws BadSpec on a negative or non-finite rate, bad mark probabilities
/// or an empty time range.
void validate(const SimulationSpec& spec);

/// Homogeneous Poisson process on the network: per edge a Poisson(rate *
/// length) count with uniform offsets, i.i.d. marks and uniform times. Edge
/// e draws from its own stream keyed by (seed, e), and events are listed by
/// edge, so the output does not depend on the thread count.
EventSet simulate_poisson(const NetworkGraph& g, const SimulationSpec& spec);

}  // namespace netpoint
