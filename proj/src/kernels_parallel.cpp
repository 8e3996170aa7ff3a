#include <algorithm>
#include <cmath>
#include <cstdint>

#include "kernels_common.hpp"
#include "netpoint/kernels.hpp"
#include "netpoint/parallel.hpp"
#include "netpoint/second_order.hpp"

namespace netpoint::kernels::parallel {

PairHistogram graph_pair_histogram(const NetworkGraph& g, std::span<const EdgeId> hosts,
                                   Direction direction, std::span<const bool> admissible) {
  std::vector<std::uint64_t> multiplicity(g.edge_count(), 0);
  for (EdgeId e : hosts) ++multiplicity[e];
  std::vector<EdgeId> occupied;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (multiplicity[e] > 0) occupied.push_back(e);
  }

  PairHistogram out;
  out.by_distance.assign(g.edge_count() + 1, 0);
  const auto sources = static_cast<std::int64_t>(occupied.size());

#pragma omp parallel num_threads(thread_count())
  {
    std::vector<std::uint64_t> local(g.edge_count() + 1, 0);
    std::uint64_t local_unreachable = 0;
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t s = 0; s < sources; ++s) {
      const EdgeId a = occupied[s];
      const std::uint64_t ca = multiplicity[a];
      local[0] += ca * (ca - 1);
      const auto dist = edge_hop_distances(g, a, direction, admissible);
      for (EdgeId b : occupied) {
        if (b == a) continue;
        const std::uint64_t pairs = ca * multiplicity[b];
        if (dist[b] == kUnreachable) {
          local_unreachable += pairs;
        } else {
          local[dist[b]] += pairs;
        }
      }
    }
    // Integer sums, so the merge order does not matter.
#pragma omp critical(netpoint_pair_histogram)
    {
      for (std::size_t d = 0; d < local.size(); ++d) out.by_distance[d] += local[d];
      out.unreachable += local_unreachable;
    }
  }
  detail::trim(out);
  return out;
}

std::vector<std::uint64_t> linear_pair_counts(const NetworkGraph& g,
                                              std::span<const NetPoint> points,
                                              std::span<const double> rs) {
  const std::size_t n = points.size();
  const std::size_t R = rs.size();
  std::vector<std::uint64_t> per_source(n * R, 0);

#pragma omp parallel num_threads(thread_count())
  {
    std::vector<double> d;
    d.reserve(n);
#pragma omp for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      const auto from = vertex_distances(g, points[i]);
      d.clear();
      for (std::size_t j = 0; j < n; ++j) {
        if (j != static_cast<std::size_t>(i)) d.push_back(distance_to(g, points[i], from, points[j]));
      }
      std::sort(d.begin(), d.end());
      for (std::size_t k = 0; k < R; ++k) {
        per_source[i * R + k] = static_cast<std::uint64_t>(
            std::upper_bound(d.begin(), d.end(), rs[k]) - d.begin());
      }
    }
  }

  std::vector<std::uint64_t> counts(R, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < R; ++k) counts[k] += per_source[i * R + k];
  }
  return counts;
}

PcfSums pcf_sums(const NetworkGraph& g, std::span<const NetPoint> points,
                 std::span<const double> lambda, std::span<const double> rs,
                 const KernelSpec& kernel) {
  const std::size_t n = points.size();
  const std::size_t R = rs.size();
  std::vector<double> rows(n * R, 0.0);
  std::vector<std::size_t> skipped(n, 0);

#pragma omp parallel for schedule(dynamic, 2) num_threads(thread_count())
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    const auto from = vertex_distances(g, points[i]);
    double* row = rows.data() + i * R;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == static_cast<std::size_t>(i)) continue;
      const double d = distance_to(g, points[i], from, points[j]);
      if (!std::isfinite(d) || !detail::any_weight(kernel, d, rs)) continue;
      const std::size_t m = circumference(g, points[i], from, d);
      if (m == 0) {
        ++skipped[i];
        continue;
      }
      const double denom = lambda[i] * lambda[j] * static_cast<double>(m);
      for (std::size_t k = 0; k < R; ++k) row[k] += evaluate(kernel, d - rs[k]) / denom;
    }
  }

  // Rows are reduced in source order for bit-stable totals.
  PcfSums out;
  out.sums.assign(R, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < R; ++k) out.sums[k] += rows[i * R + k];
    out.skipped_pairs += skipped[i];
  }
  return out;
}

std::size_t smooth(const SmoothingProblem& problem, std::vector<std::vector<double>>& values_out) {
  const auto& values = *problem.values;
  const auto queries = static_cast<std::int64_t>(problem.queries.size());
  values_out.assign(values.size(), std::vector<double>(problem.queries.size(), 0.0));
  std::size_t unsupported = 0;

#pragma omp parallel num_threads(thread_count()) reduction(+ : unsupported)
  {
    std::vector<double> weights(problem.sites.size());
#pragma omp for schedule(static)
    for (std::int64_t q = 0; q < queries; ++q) {
      if (!detail::smooth_point(problem, static_cast<std::size_t>(q), weights, values_out)) {
        ++unsupported;
      }
    }
  }
  return unsupported;
}

}  // namespace netpoint::kernels::parallel
