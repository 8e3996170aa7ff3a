#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "netpoint/events.hpp"
#include "netpoint/graph.hpp"
#include "netpoint/kernel.hpp"

namespace netpoint {

enum class KVariant { GraphUndirected, GraphForward, GraphBackward, GraphPartial, LinearNetwork };

std::string_view to_string(KVariant variant) noexcept;

/// Admissible edges and routes for the partially directed K-function.
enum class EdgeSelector { UndirectedOnly, Forward, Backward };

struct KCurve {
  KVariant variant = KVariant::GraphUndirected;
  std::vector<double> abscissa;  ///< xi (graph variants) or r (linear)
  std::vector<double> values;
  std::size_t n = 0;             ///< events used
  double normalizer = 0.0;       ///< |E|, |E^sel| or |L|
};

// Graph K-functions. The distance between two events is the line-graph hop
// distance between their host edges: 0 on the same edge, 1 when the host
// edges share a vertex, and so on. Directed variants only follow
// direction-preserving routes; undirected edges are usable both ways.
//
//   K(xi) = normalizer / (n (n - 1)) * #{ordered pairs i != j : d(i, j) <= xi}
//
// All throw TooFewEvents when n < 2 and InvalidArgument unless the
// abscissa is strictly increasing.

KCurve k_graph(const NetworkGraph& g, const EventSet& events, std::span<const std::uint32_t> xis);

/// Forward counts pair (i, j) when a route runs from i's host edge to j's;
/// backward when it runs from j's host edge to i's.
KCurve k_graph_directed(const NetworkGraph& g, const EventSet& events,
                        std::span<const std::uint32_t> xis, Direction direction);

/// Normalized by the number of admissible edges; routes use admissible edges
/// only and events hosted by other edges are left out of the pattern.
/// Throws EmptyEdgeSelection when no edge is admissible.
KCurve k_graph_partial(const NetworkGraph& g, const EventSet& events,
                       std::span<const std::uint32_t> xis, EdgeSelector selector);

/// Network K-function with shortest-path distances, normalized by |L|.
/// Radii must be positive and strictly increasing.
KCurve k_linear(const NetworkGraph& g, const EventSet& events, std::span<const double> rs);

struct PcfResult {
  std::vector<double> r;
  std::vector<double> values;
  KernelSpec kernel;
  std::size_t n = 0;
  /// Ordered pairs dropped because no boundary point was found at their
  /// distance (circumference zero).
  std::size_t skipped_pairs = 0;
};

/// Pair correlation function on the network:
///   g(r) = 1 / sum_i(1/lambda_i) * sum_i sum_{j != i}
///          kappa(d_ij - r) / (lambda_i lambda_j m(x_i, d_ij))
/// with m the circumference. `intensity` holds one value per event; when
/// absent every event gets n / |L|. Without a kernel, Epanechnikov with
/// bandwidth 0.15 * max(r) is used.
PcfResult pcf_linear(const NetworkGraph& g, const EventSet& events, std::span<const double> rs,
                     std::optional<KernelSpec> kernel = std::nullopt,
                     std::optional<std::vector<double>> intensity = std::nullopt);

/// Line-graph hop distances from `source` to every edge. Only edges with
/// admissible[e] set take part (empty span: all edges). kUnreachable marks
/// edges with no route.
std::vector<std::uint32_t> edge_hop_distances(const NetworkGraph& g, EdgeId source,
                                              Direction direction,
                                              std::span<const bool> admissible = {});

}  // namespace netpoint
