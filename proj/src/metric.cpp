#include "netpoint/metric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <string>
#include <utility>

#include "netpoint/error.hpp"

namespace netpoint {

namespace {

double tolerance(double scale) { return 1e-12 * std::max(1.0, std::abs(scale)); }

}  // namespace

void validate(const NetworkGraph& g, const NetPoint& p) {
  if (!g.has_edge(p.edge)) {
    fail(ErrorCode::InvalidNetPoint, "network point references unknown edge " +
                                         std::to_string(p.edge));
  }
  const double length = g.edges()[p.edge].length;
  if (!(p.offset >= 0.0 && p.offset <= length)) {
    fail(ErrorCode::InvalidNetPoint, "offset " + std::to_string(p.offset) +
                                         " outside [0, " + std::to_string(length) +
                                         "] on edge " + std::to_string(p.edge));
  }
}

Point2 planar_position(const NetworkGraph& g, const NetPoint& p) {
  validate(g, p);
  const Edge& e = g.edges()[p.edge];
  double remaining = p.offset / e.length * e.planar_length;
  for (std::size_t k = 1; k < e.geometry.size(); ++k) {
    const Point2 a = e.geometry[k - 1];
    const Point2 b = e.geometry[k];
    const double seg = distance(a, b);
    if (remaining <= seg || k + 1 == e.geometry.size()) {
      const double t = seg > 0.0 ? std::clamp(remaining / seg, 0.0, 1.0) : 0.0;
      return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
    }
    remaining -= seg;
  }
  return e.geometry.back();
}

std::vector<double> vertex_distances(const NetworkGraph& g, const NetPoint& p) {
  validate(g, p);
  const auto& edges = g.edges();
  std::vector<double> dist(g.vertex_count(), kInfinity);

  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  const Edge& host = edges[p.edge];
  dist[host.tail] = p.offset;
  dist[host.head] = std::min(dist[host.head], host.length - p.offset);
  queue.emplace(dist[host.tail], host.tail);
  queue.emplace(dist[host.head], host.head);

  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    auto relax = [&](EdgeId id) {
      const Edge& e = edges[id];
      const VertexId w = e.other(u);
      const double candidate = d + e.length;
      if (candidate < dist[w]) {
        dist[w] = candidate;
        queue.emplace(candidate, w);
      }
    };
    for (EdgeId id : g.undirected_edges(u)) relax(id);
    for (EdgeId id : g.out_arcs(u)) relax(id);
    for (EdgeId id : g.in_arcs(u)) relax(id);
  }
  return dist;
}

double distance_to(const NetworkGraph& g, const NetPoint& p, const std::vector<double>& from_source,
                   const NetPoint& q) {
  validate(g, q);
  const Edge& e = g.edges()[q.edge];
  double best = std::min(from_source[e.tail] + q.offset,
                         from_source[e.head] + (e.length - q.offset));
  if (q.edge == p.edge) best = std::min(best, std::abs(q.offset - p.offset));
  return best;
}

double net_distance(const NetworkGraph& g, const NetPoint& p, const NetPoint& q) {
  validate(g, q);
  return distance_to(g, p, vertex_distances(g, p), q);
}

SubIntervalSet disc(const NetworkGraph& g, const NetPoint& u, double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    fail(ErrorCode::InvalidArgument, "disc radius must be finite and non-negative");
  }
  const auto dist = vertex_distances(g, u);

  SubIntervalSet out;
  std::vector<std::pair<double, double>> pieces;
  for (const auto& e : g.edges()) {
    pieces.clear();
    const double L = e.length;
    const double from_tail = r - dist[e.tail];
    const double from_head = r - dist[e.head];
    if (from_tail > 0.0) pieces.emplace_back(0.0, std::min(L, from_tail));
    if (from_head > 0.0) pieces.emplace_back(std::max(0.0, L - from_head), L);
    if (e.id == u.edge && r > 0.0) {
      pieces.emplace_back(std::max(0.0, u.offset - r), std::min(L, u.offset + r));
    }
    std::sort(pieces.begin(), pieces.end());
    std::size_t first = out.intervals.size();
    for (auto [lo, hi] : pieces) {
      if (!(hi > lo)) continue;
      if (out.intervals.size() > first && lo <= out.intervals.back().hi) {
        out.intervals.back().hi = std::max(out.intervals.back().hi, hi);
      } else {
        out.intervals.push_back({e.id, lo, hi});
      }
    }
  }
  for (const auto& iv : out.intervals) out.measure += iv.hi - iv.lo;
  return out;
}

std::size_t circumference(const NetworkGraph& g, const NetPoint& u,
                          const std::vector<double>& from_source, double r) {
  if (r == 0.0) return 1;
  const double eps = tolerance(r);
  std::size_t count = 0;
  for (double d : from_source) {
    if (std::abs(d - r) <= eps) ++count;
  }

  std::vector<double> hits;
  for (const auto& e : g.edges()) {
    const double L = e.length;
    const double da = from_source[e.tail];
    const double db = from_source[e.head];
    const bool host = e.id == u.edge;
    auto envelope = [&](double t) {
      double f = std::min(da + t, db + (L - t));
      if (host) f = std::min(f, std::abs(t - u.offset));
      return f;
    };

    // Solve each linear piece for f == r and keep solutions where that piece
    // is the minimum; vertices (t == 0 or L) were counted above.
    double candidates[4] = {r - da, L - (r - db), u.offset - r, u.offset + r};
    const int used = host ? 4 : 2;
    hits.clear();
    const double edge_eps = tolerance(L);
    for (int k = 0; k < used; ++k) {
      const double t = candidates[k];
      if (!(t > edge_eps && t < L - edge_eps)) continue;
      if (envelope(t) >= r - eps) hits.push_back(t);
    }
    std::sort(hits.begin(), hits.end());
    for (std::size_t k = 0; k < hits.size(); ++k) {
      if (k == 0 || hits[k] - hits[k - 1] > edge_eps) ++count;
    }
  }
  return count;
}

std::size_t circumference(const NetworkGraph& g, const NetPoint& u, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    fail(ErrorCode::InvalidArgument, "circumference radius must be positive and finite");
  }
  return circumference(g, u, vertex_distances(g, u), r);
}

}  // namespace netpoint
