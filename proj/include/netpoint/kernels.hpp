#pragma once

// Hot loops behind the statistics. Each kernel has an OpenMP version used by
// the library and a plain serial reference kept for tests and benchmarks.
// Both produce bit-identical results for any thread count.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "netpoint/graph.hpp"
#include "netpoint/kernel.hpp"
#include "netpoint/metric.hpp"

namespace netpoint::kernels {

/// Ordered event pairs by line-graph hop distance; index = distance.
struct PairHistogram {
  std::vector<std::uint64_t> by_distance;
  std::uint64_t unreachable = 0;

  /// Pairs at distance <= xi.
  std::uint64_t at_most(std::uint32_t xi) const noexcept;
  friend bool operator==(const PairHistogram&, const PairHistogram&) = default;
};

/// Per-pixel kernel smoothing inputs: vertex sites and one value column per
/// channel (values[channel][site]).
struct SmoothingProblem {
  std::span<const Point2> sites;
  const std::vector<std::vector<double>>* values = nullptr;
  std::span<const Point2> queries;
  KernelSpec kernel;
};

struct PcfSums {
  std::vector<double> sums;  ///< one per radius, before the prefactor
  std::size_t skipped_pairs = 0;
};

namespace serial {

/// One BFS per event, then every ordered pair inspected individually.
PairHistogram graph_pair_histogram(const NetworkGraph& g, std::span<const EdgeId> hosts,
                                   Direction direction, std::span<const bool> admissible);

/// Pairs within each radius, via a separate shortest-path query per pair.
std::vector<std::uint64_t> linear_pair_counts(const NetworkGraph& g,
                                              std::span<const NetPoint> points,
                                              std::span<const double> rs);

PcfSums pcf_sums(const NetworkGraph& g, std::span<const NetPoint> points,
                 std::span<const double> lambda, std::span<const double> rs,
                 const KernelSpec& kernel);

/// values_out[channel][query]; returns the number of queries with no kernel
/// support (filled from the nearest site).
std::size_t smooth(const SmoothingProblem& problem, std::vector<std::vector<double>>& values_out);

}  // namespace serial

namespace parallel {

/// Events grouped by host edge; one BFS per distinct host edge.
PairHistogram graph_pair_histogram(const NetworkGraph& g, std::span<const EdgeId> hosts,
                                   Direction direction, std::span<const bool> admissible);

/// One single-source search per event.
std::vector<std::uint64_t> linear_pair_counts(const NetworkGraph& g,
                                              std::span<const NetPoint> points,
                                              std::span<const double> rs);

PcfSums pcf_sums(const NetworkGraph& g, std::span<const NetPoint> points,
                 std::span<const double> lambda, std::span<const double> rs,
                 const KernelSpec& kernel);

std::size_t smooth(const SmoothingProblem& problem, std::vector<std::vector<double>>& values_out);

}  // namespace parallel

}  // namespace netpoint::kernels
