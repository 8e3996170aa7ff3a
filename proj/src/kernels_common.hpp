#pragma once

// Pieces shared verbatim by the serial and parallel kernels, so both paths
// perform identical floating-point operations per item.

#include <cmath>
#include <span>
#include <vector>

#include "netpoint/kernels.hpp"

namespace netpoint::kernels::detail {

inline void trim(PairHistogram& h) {
  while (!h.by_distance.empty() && h.by_distance.back() == 0) h.by_distance.pop_back();
}

inline bool any_weight(const KernelSpec& kernel, double d, std::span<const double> rs) {
  for (double r : rs) {
    if (evaluate(kernel, d - r) != 0.0) return true;
  }
  return false;
}

/// Smooths query q into out[channel][q]; false when no site has weight and
/// the nearest site's value was used instead.
inline bool smooth_point(const SmoothingProblem& p, std::size_t q, std::vector<double>& weights,
                         std::vector<std::vector<double>>& out) {
  const auto& values = *p.values;
  const Point2 at = p.queries[q];
  const double h = p.kernel.bandwidth;

  std::size_t nearest = 0;
  double nearest_sq = kInfinity;
  for (std::size_t s = 0; s < p.sites.size(); ++s) {
    const double dx = p.sites[s].x - at.x;
    const double dy = p.sites[s].y - at.y;
    const double sq = dx * dx + dy * dy;
    weights[s] = sq;
    if (sq < nearest_sq) {
      nearest_sq = sq;
      nearest = s;
    }
  }

  double total = 0.0;
  for (std::size_t s = 0; s < p.sites.size(); ++s) {
    double w;
    if (p.kernel.family == KernelFamily::Gaussian) {
      // Shifted by the nearest distance: the normalized average is unchanged
      // and the largest weight is exactly one, so it never underflows.
      w = std::exp(-(weights[s] - nearest_sq) / (2.0 * h * h));
    } else {
      w = evaluate(p.kernel, std::sqrt(weights[s]));
    }
    weights[s] = w;
    total += w;
  }

  if (!(total > 0.0)) {
    for (std::size_t c = 0; c < values.size(); ++c) out[c][q] = values[c][nearest];
    return false;
  }
  for (std::size_t c = 0; c < values.size(); ++c) {
    double acc = 0.0;
    for (std::size_t s = 0; s < p.sites.size(); ++s) acc += weights[s] * values[c][s];
    out[c][q] = acc / total;
  }
  return true;
}

}  // namespace netpoint::kernels::detail
