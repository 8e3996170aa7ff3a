#include "netpoint/second_order.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "netpoint/error.hpp"
#include "netpoint/kernels.hpp"

namespace netpoint {

std::string_view to_string(KVariant variant) noexcept {
  switch (variant) {
    case KVariant::GraphUndirected: return "graph";
    case KVariant::GraphForward: return "graph-forward";
    case KVariant::GraphBackward: return "graph-backward";
    case KVariant::GraphPartial: return "graph-partial";
    case KVariant::LinearNetwork: return "linear";
  }
  return "unknown";
}

namespace {

bool admitted(std::span<const bool> admissible, EdgeId e) {
  return admissible.empty() || admissible[e];
}

std::vector<std::uint32_t> masked_bfs(const NetworkGraph& g, const std::vector<VertexId>& sources,
                                      Direction direction, std::span<const bool> admissible) {
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreachable);
  std::vector<VertexId> frontier;
  for (VertexId s : sources) {
    if (dist[s] != 0) {
      dist[s] = 0;
      frontier.push_back(s);
    }
  }
  const auto& edges = g.edges();
  std::vector<VertexId> next;
  for (std::uint32_t level = 1; !frontier.empty(); ++level) {
    next.clear();
    for (VertexId u : frontier) {
      auto relax = [&](EdgeId id) {
        if (!admitted(admissible, id)) return;
        const Edge& e = edges[id];
        if (!traversable_from(e, u, direction)) return;
        const VertexId w = e.other(u);
        if (dist[w] == kUnreachable) {
          dist[w] = level;
          next.push_back(w);
        }
      };
      for (EdgeId id : g.undirected_edges(u)) relax(id);
      for (EdgeId id : g.out_arcs(u)) relax(id);
      for (EdgeId id : g.in_arcs(u)) relax(id);
    }
    frontier.swap(next);
  }
  return dist;
}

template <typename T>
void require_increasing(std::span<const T> values, const char* what) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) {
      fail(ErrorCode::InvalidArgument, std::string(what) + " must be strictly increasing");
    }
  }
}

void require_pairs(std::size_t n) {
  if (n < 2) {
    fail(ErrorCode::TooFewEvents,
         "at least two events are needed, got " + std::to_string(n));
  }
}

KCurve graph_curve(const NetworkGraph& g, const EventSet& events,
                   std::span<const std::uint32_t> xis, Direction direction,
                   std::span<const bool> admissible, double normalizer, KVariant variant) {
  require_increasing(xis, "xi values");
  std::vector<EdgeId> hosts;
  hosts.reserve(events.size());
  for (const auto& r : events.records()) {
    if (admitted(admissible, r.position.edge)) hosts.push_back(r.position.edge);
  }
  require_pairs(hosts.size());

  const auto histogram = kernels::parallel::graph_pair_histogram(g, hosts, direction, admissible);
  KCurve curve;
  curve.variant = variant;
  curve.n = hosts.size();
  curve.normalizer = normalizer;
  const double n = static_cast<double>(curve.n);
  const double pairs = n * (n - 1.0);
  for (std::uint32_t xi : xis) {
    curve.abscissa.push_back(static_cast<double>(xi));
    curve.values.push_back(normalizer * static_cast<double>(histogram.at_most(xi)) / pairs);
  }
  return curve;
}

}  // namespace

std::vector<std::uint32_t> edge_hop_distances(const NetworkGraph& g, EdgeId source,
                                              Direction direction,
                                              std::span<const bool> admissible) {
  const Edge& src = g.edge(source);
  if (!admissible.empty() && admissible.size() != g.edge_count()) {
    fail(ErrorCode::InvalidArgument, "admissible mask must cover every edge");
  }

  // Vertices reachable by traversing the source edge itself.
  std::vector<VertexId> exits;
  if (traversable_from(src, src.tail, direction)) exits.push_back(src.head);
  if (traversable_from(src, src.head, direction)) exits.push_back(src.tail);

  const auto dist = masked_bfs(g, exits, direction, admissible);
  std::vector<std::uint32_t> out(g.edge_count(), kUnreachable);
  for (const auto& f : g.edges()) {
    if (f.id == source) {
      out[f.id] = 0;
      continue;
    }
    if (!admitted(admissible, f.id)) continue;
    std::uint32_t best = kUnreachable;
    if (traversable_from(f, f.tail, direction)) best = std::min(best, dist[f.tail]);
    if (traversable_from(f, f.head, direction)) best = std::min(best, dist[f.head]);
    if (best != kUnreachable) out[f.id] = best + 1;
  }
  return out;
}

KCurve k_graph(const NetworkGraph& g, const EventSet& events, std::span<const std::uint32_t> xis) {
  return graph_curve(g, events, xis, Direction::Any, {}, static_cast<double>(g.edge_count()),
                     KVariant::GraphUndirected);
}

KCurve k_graph_directed(const NetworkGraph& g, const EventSet& events,
                        std::span<const std::uint32_t> xis, Direction direction) {
  if (direction == Direction::Any) {
    fail(ErrorCode::InvalidArgument, "directed K-function needs forward or backward");
  }
  return graph_curve(g, events, xis, direction, {}, static_cast<double>(g.edge_count()),
                     direction == Direction::Forward ? KVariant::GraphForward
                                                     : KVariant::GraphBackward);
}

KCurve k_graph_partial(const NetworkGraph& g, const EventSet& events,
                       std::span<const std::uint32_t> xis, EdgeSelector selector) {
  // std::vector<bool> is not contiguous, so the mask lives in a plain array.
  const std::size_t m = g.edge_count();
  auto mask = std::make_unique<bool[]>(m);
  Direction direction = Direction::Any;
  std::size_t admissible_count = 0;
  for (const auto& e : g.edges()) {
    mask[e.id] = selector != EdgeSelector::UndirectedOnly || !e.directed();
    admissible_count += mask[e.id] ? 1 : 0;
  }
  if (selector == EdgeSelector::Forward) direction = Direction::Forward;
  if (selector == EdgeSelector::Backward) direction = Direction::Backward;
  if (admissible_count == 0) {
    fail(ErrorCode::EmptyEdgeSelection, "no edge is admissible under the selector");
  }
  return graph_curve(g, events, xis, direction, std::span<const bool>(mask.get(), m),
                     static_cast<double>(admissible_count), KVariant::GraphPartial);
}

KCurve k_linear(const NetworkGraph& g, const EventSet& events, std::span<const double> rs) {
  require_increasing(rs, "radii");
  for (double r : rs) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      fail(ErrorCode::InvalidArgument, "radii must be positive and finite");
    }
  }
  require_pairs(events.size());
  std::vector<NetPoint> points;
  points.reserve(events.size());
  for (const auto& rec : events.records()) points.push_back(rec.position);

  const auto counts = kernels::parallel::linear_pair_counts(g, points, rs);
  KCurve curve;
  curve.variant = KVariant::LinearNetwork;
  curve.n = points.size();
  curve.normalizer = g.total_length();
  const double n = static_cast<double>(curve.n);
  const double pairs = n * (n - 1.0);
  for (std::size_t k = 0; k < rs.size(); ++k) {
    curve.abscissa.push_back(rs[k]);
    curve.values.push_back(curve.normalizer * static_cast<double>(counts[k]) / pairs);
  }
  return curve;
}

PcfResult pcf_linear(const NetworkGraph& g, const EventSet& events, std::span<const double> rs,
                     std::optional<KernelSpec> kernel, std::optional<std::vector<double>> intensity) {
  require_increasing(rs, "radii");
  for (double r : rs) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      fail(ErrorCode::InvalidArgument, "radii must be finite and non-negative");
    }
  }
  require_pairs(events.size());

  PcfResult out;
  out.n = events.size();
  if (kernel) {
    out.kernel = *kernel;
  } else {
    const double max_r = rs.empty() ? 0.0 : rs.back();
    out.kernel = {KernelFamily::Epanechnikov, 0.15 * max_r};
  }
  validate(out.kernel);

  std::vector<double> lambda;
  if (intensity) {
    lambda = std::move(*intensity);
    if (lambda.size() != events.size()) {
      fail(ErrorCode::InvalidArgument, "intensity needs one value per event");
    }
    for (double l : lambda) {
      if (!(l > 0.0) || !std::isfinite(l)) {
        fail(ErrorCode::InvalidArgument, "intensity values must be positive and finite");
      }
    }
  } else {
    lambda.assign(events.size(), static_cast<double>(events.size()) / g.total_length());
  }

  std::vector<NetPoint> points;
  points.reserve(events.size());
  for (const auto& rec : events.records()) points.push_back(rec.position);

  const auto sums = kernels::parallel::pcf_sums(g, points, lambda, rs, out.kernel);
  double inverse_total = 0.0;
  for (double l : lambda) inverse_total += 1.0 / l;
  out.skipped_pairs = sums.skipped_pairs;
  out.r.assign(rs.begin(), rs.end());
  out.values.reserve(rs.size());
  for (double s : sums.sums) out.values.push_back(s / inverse_total);
  return out;
}

}  // namespace netpoint
