#include <algorithm>
#include <cmath>

#include "kernels_common.hpp"
#include "netpoint/kernels.hpp"
#include "netpoint/second_order.hpp"

namespace netpoint::kernels {

std::uint64_t PairHistogram::at_most(std::uint32_t xi) const noexcept {
  std::uint64_t total = 0;
  for (std::size_t d = 0; d < by_distance.size() && d <= xi; ++d) total += by_distance[d];
  return total;
}

namespace serial {

PairHistogram graph_pair_histogram(const NetworkGraph& g, std::span<const EdgeId> hosts,
                                   Direction direction, std::span<const bool> admissible) {
  PairHistogram out;
  out.by_distance.assign(g.edge_count() + 1, 0);
  for (std::size_t i = 0; i < hosts.size(); ++i) {
    const auto dist = edge_hop_distances(g, hosts[i], direction, admissible);
    for (std::size_t j = 0; j < hosts.size(); ++j) {
      if (i == j) continue;
      const std::uint32_t d = dist[hosts[j]];
      if (d == kUnreachable) {
        ++out.unreachable;
      } else {
        ++out.by_distance[d];
      }
    }
  }
  detail::trim(out);
  return out;
}

std::vector<std::uint64_t> linear_pair_counts(const NetworkGraph& g,
                                              std::span<const NetPoint> points,
                                              std::span<const double> rs) {
  std::vector<std::uint64_t> counts(rs.size(), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      const double d = net_distance(g, points[i], points[j]);
      for (std::size_t k = 0; k < rs.size(); ++k) {
        if (d <= rs[k]) ++counts[k];
      }
    }
  }
  return counts;
}

PcfSums pcf_sums(const NetworkGraph& g, std::span<const NetPoint> points,
                 std::span<const double> lambda, std::span<const double> rs,
                 const KernelSpec& kernel) {
  PcfSums out;
  out.sums.assign(rs.size(), 0.0);
  std::vector<double> row(rs.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j) continue;
      const double d = net_distance(g, points[i], points[j]);
      if (!std::isfinite(d) || !detail::any_weight(kernel, d, rs)) continue;
      const std::size_t m = circumference(g, points[i], vertex_distances(g, points[i]), d);
      if (m == 0) {
        ++out.skipped_pairs;
        continue;
      }
      const double denom = lambda[i] * lambda[j] * static_cast<double>(m);
      for (std::size_t k = 0; k < rs.size(); ++k) row[k] += evaluate(kernel, d - rs[k]) / denom;
    }
    for (std::size_t k = 0; k < rs.size(); ++k) out.sums[k] += row[k];
  }
  return out;
}

std::size_t smooth(const SmoothingProblem& problem, std::vector<std::vector<double>>& values_out) {
  const auto& values = *problem.values;
  values_out.assign(values.size(), std::vector<double>(problem.queries.size(), 0.0));
  std::size_t unsupported = 0;
  std::vector<double> weights(problem.sites.size());
  for (std::size_t q = 0; q < problem.queries.size(); ++q) {
    if (!detail::smooth_point(problem, q, weights, values_out)) ++unsupported;
  }
  return unsupported;
}

}  // namespace serial

}  // namespace netpoint::kernels
