#pragma once

// Brute-force reference implementations used only by the tests. They share
// no code paths with the library beyond the graph container itself.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "netpoint/geostat.hpp"
#include "netpoint/graph.hpp"
#include "netpoint/metric.hpp"

namespace oracle {

using namespace netpoint;

inline constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

// ---------------------------------------------------------------------------
// Random instances

/// Random valid chain graph: vertices are put in blocks, undirected edges
/// stay inside a block and arcs run from a lower block to a higher one.
/// Coordinates are random, so lengths are Euclidean.
inline std::vector<EdgeSpec> random_chain_edges(std::mt19937_64& rng, std::size_t n,
                                                std::size_t max_edges, double arc_share,
                                                std::size_t blocks) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<std::size_t> block_of(0, blocks - 1);
  std::bernoulli_distribution arc(arc_share);
  std::vector<std::size_t> block(n);
  for (auto& b : block) b = block_of(rng);
  std::set<std::pair<std::size_t, std::size_t>> used;
  std::vector<EdgeSpec> edges;
  for (std::size_t attempt = 0; attempt < 20 * max_edges && edges.size() < max_edges; ++attempt) {
    std::size_t a = pick(rng), b = pick(rng);
    if (a == b || used.count(std::minmax(a, b))) continue;
    EdgeSpec e;
    if (block[a] == block[b]) {
      if (arc(rng)) continue;  // would need an arc inside a block
      e.kind = EdgeKind::Undirected;
    } else {
      e.kind = EdgeKind::Directed;
      if (block[a] > block[b]) std::swap(a, b);
    }
    e.id = static_cast<EdgeId>(edges.size());
    e.tail = static_cast<VertexId>(a);
    e.head = static_cast<VertexId>(b);
    used.insert(std::minmax(a, b));
    edges.push_back(e);
  }
  return edges;
}

inline std::vector<SpatialVertex> random_vertices(std::mt19937_64& rng, std::size_t n,
                                                  double extent = 10.0) {
  std::uniform_real_distribution<double> coord(0.0, extent);
  std::vector<SpatialVertex> vs(n);
  for (std::size_t i = 0; i < n; ++i) vs[i] = {static_cast<VertexId>(i), {coord(rng), coord(rng)}};
  return vs;
}

inline NetworkGraph random_chain_graph(std::mt19937_64& rng, std::size_t n, std::size_t max_edges,
                                       double arc_share = 0.4, std::size_t blocks = 3) {
  return build_graph(random_vertices(rng, n), random_chain_edges(rng, n, max_edges, arc_share, blocks));
}

/// Arbitrary mixed edges (may contain semi-directed cycles).
inline std::vector<EdgeSpec> random_mixed_edges(std::mt19937_64& rng, std::size_t n,
                                                std::size_t max_edges, double arc_share) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::bernoulli_distribution arc(arc_share);
  std::set<std::pair<std::size_t, std::size_t>> used;
  std::vector<EdgeSpec> edges;
  for (std::size_t attempt = 0; attempt < 20 * max_edges && edges.size() < max_edges; ++attempt) {
    const std::size_t a = pick(rng), b = pick(rng);
    if (a == b || used.count(std::minmax(a, b))) continue;
    used.insert(std::minmax(a, b));
    EdgeSpec e;
    e.id = static_cast<EdgeId>(edges.size());
    e.tail = static_cast<VertexId>(a);
    e.head = static_cast<VertexId>(b);
    e.kind = arc(rng) ? EdgeKind::Directed : EdgeKind::Undirected;
    edges.push_back(e);
  }
  return edges;
}

// ---------------------------------------------------------------------------
// Hop distances

/// All-pairs hop counts by Floyd-Warshall over the admissible moves.
inline std::vector<std::vector<std::uint32_t>> floyd_warshall(const NetworkGraph& g,
                                                              Direction dir) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::uint32_t>> d(n, std::vector<std::uint32_t>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : g.edges()) {
    const bool fwd = !e.directed() || dir != Direction::Backward;
    const bool bwd = !e.directed() || dir != Direction::Forward;
    if (fwd) d[e.tail][e.head] = std::min<std::uint32_t>(d[e.tail][e.head], 1);
    if (bwd) d[e.head][e.tail] = std::min<std::uint32_t>(d[e.head][e.tail], 1);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] != kInf && d[k][j] != kInf) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

/// Exhaustive search for a simple cycle that uses at least one arc, with
/// undirected edges walkable both ways and arcs tail to head.
inline bool has_semi_directed_cycle(std::size_t n, const std::vector<EdgeSpec>& edges) {
  struct Move {
    std::size_t to;
    bool arc;
  };
  std::vector<std::vector<Move>> adj(n);
  for (const auto& e : edges) {
    adj[e.tail].push_back({e.head, e.kind == EdgeKind::Directed});
    if (e.kind == EdgeKind::Undirected) adj[e.head].push_back({e.tail, false});
  }
  std::vector<bool> on_path(n, false);
  std::function<bool(std::size_t, std::size_t, std::size_t, bool)> dfs =
      [&](std::size_t start, std::size_t u, std::size_t len, bool used_arc) -> bool {
    for (const auto& m : adj[u]) {
      if (m.to == start && len + 1 >= 3 && (used_arc || m.arc)) return true;
      if (on_path[m.to]) continue;
      on_path[m.to] = true;
      const bool hit = dfs(start, m.to, len + 1, used_arc || m.arc);
      on_path[m.to] = false;
      if (hit) return true;
    }
    return false;
  };
  for (std::size_t s = 0; s < n; ++s) {
    on_path[s] = true;
    const bool hit = dfs(s, s, 0, false);
    on_path[s] = false;
    if (hit) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Metric distances

/// Shortest distance between two network points by enumerating every
/// simple vertex path between the endpoints of their host edges.
inline double simple_path_distance(const NetworkGraph& g, const NetPoint& p, const NetPoint& q) {
  const Edge& ep = g.edge(p.edge);
  const Edge& eq = g.edge(q.edge);
  double best = std::numeric_limits<double>::infinity();
  if (p.edge == q.edge) best = std::abs(p.offset - q.offset);

  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::pair<VertexId, double>>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.tail].push_back({e.head, e.length});
    adj[e.head].push_back({e.tail, e.length});
  }
  std::vector<bool> seen(n, false);
  std::function<void(VertexId, VertexId, double, double&)> walk =
      [&](VertexId u, VertexId target, double acc, double& out) {
        if (u == target) {
          out = std::min(out, acc);
          return;
        }
        for (auto [w, len] : adj[u]) {
          if (seen[w]) continue;
          seen[w] = true;
          walk(w, target, acc + len, out);
          seen[w] = false;
        }
      };
  const std::pair<VertexId, double> starts[2] = {{ep.tail, p.offset}, {ep.head, ep.length - p.offset}};
  const std::pair<VertexId, double> ends[2] = {{eq.tail, q.offset}, {eq.head, eq.length - q.offset}};
  for (auto [s, ds] : starts) {
    for (auto [t, dt] : ends) {
      double path = std::numeric_limits<double>::infinity();
      std::fill(seen.begin(), seen.end(), false);
      seen[s] = true;
      walk(s, t, 0.0, path);
      best = std::min(best, ds + path + dt);
    }
  }
  return best;
}

/// Vertex distances from a network point by Floyd-Warshall on lengths.
inline std::vector<double> vertex_distances_fw(const NetworkGraph& g, const NetPoint& p) {
  const std::size_t n = g.vertex_count();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const auto& e : g.edges()) {
    d[e.tail][e.head] = std::min(d[e.tail][e.head], e.length);
    d[e.head][e.tail] = std::min(d[e.head][e.tail], e.length);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  const Edge& e = g.edge(p.edge);
  std::vector<double> out(n);
  for (std::size_t v = 0; v < n; ++v) {
    out[v] = std::min(p.offset + d[e.tail][v], e.length - p.offset + d[e.head][v]);
  }
  return out;
}

/// Disc measure from `samples` midpoint samples per edge.
inline double sampled_disc_measure(const NetworkGraph& g, const NetPoint& u, double r,
                                   std::size_t samples = 10000) {
  const auto dv = vertex_distances_fw(g, u);
  double measure = 0.0;
  for (const auto& e : g.edges()) {
    const double step = e.length / static_cast<double>(samples);
    std::size_t inside = 0;
    for (std::size_t k = 0; k < samples; ++k) {
      const double t = (static_cast<double>(k) + 0.5) * step;
      double d = std::min(dv[e.tail] + t, dv[e.head] + e.length - t);
      if (e.id == u.edge) d = std::min(d, std::abs(t - u.offset));
      if (d <= r) ++inside;
    }
    measure += step * static_cast<double>(inside);
  }
  return measure;
}

// ---------------------------------------------------------------------------
// Graph K-functions

/// Line-graph hop distances between all edges by Floyd-Warshall. Edge i
/// steps to edge j when they share a vertex x that i can be left through
/// and j can be entered from. Non-admissible edges are dropped.
inline std::vector<std::vector<std::uint32_t>> line_graph_distances(
    const NetworkGraph& g, Direction dir, const std::vector<bool>& admissible = {}) {
  const std::size_t m = g.edge_count();
  auto ok = [&](EdgeId e) { return admissible.empty() || admissible[e]; };
  auto can_leave_at = [&](const Edge& e, VertexId x) {
    if (!e.directed() || dir == Direction::Any) return x == e.tail || x == e.head;
    return dir == Direction::Forward ? x == e.head : x == e.tail;
  };
  auto can_enter_from = [&](const Edge& e, VertexId x) {
    if (!e.directed() || dir == Direction::Any) return x == e.tail || x == e.head;
    return dir == Direction::Forward ? x == e.tail : x == e.head;
  };
  std::vector<std::vector<std::uint32_t>> d(m, std::vector<std::uint32_t>(m, kInf));
  for (std::size_t i = 0; i < m; ++i) {
    d[i][i] = 0;
    if (!ok(static_cast<EdgeId>(i))) continue;
    const Edge& a = g.edges()[i];
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j || !ok(static_cast<EdgeId>(j))) continue;
      const Edge& b = g.edges()[j];
      for (VertexId x : {a.tail, a.head}) {
        if (can_leave_at(a, x) && can_enter_from(b, x)) d[i][j] = 1;
      }
    }
  }
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (d[i][k] != kInf && d[k][j] != kInf) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

/// Exhaustive ordered-pair K over host edges. `backward` counts (i, j) when
/// a forward route runs from j's host to i's.
inline double k_graph_pairs(const std::vector<std::vector<std::uint32_t>>& d,
                            const std::vector<EdgeId>& hosts, std::uint32_t xi, double normalizer,
                            bool backward = false) {
  const std::size_t n = hosts.size();
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto dist = backward ? d[hosts[j]][hosts[i]] : d[hosts[i]][hosts[j]];
      if (dist <= xi) ++count;
    }
  const double nn = static_cast<double>(n);
  return normalizer * static_cast<double>(count) / (nn * (nn - 1.0));
}

// ---------------------------------------------------------------------------
// Ward

struct WardStep {
  std::size_t a, b;
  double height;
};

/// Recomputes every inter-cluster Ward cost from the raw rows at each step.
inline std::vector<WardStep> naive_ward(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  const std::size_t p = rows.empty() ? 0 : rows[0].size();
  std::vector<std::vector<std::size_t>> members(n);
  std::vector<std::size_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) {
    members[i] = {i};
    ids[i] = i;
  }
  auto centroid = [&](const std::vector<std::size_t>& m) {
    std::vector<double> c(p, 0.0);
    for (auto r : m)
      for (std::size_t k = 0; k < p; ++k) c[k] += rows[r][k];
    for (auto& x : c) x /= static_cast<double>(m.size());
    return c;
  };
  std::vector<WardStep> steps;
  for (std::size_t step = 0; step + 1 < n; ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::pair<std::size_t, std::size_t> best_ids{0, 0};
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const auto ci = centroid(members[i]);
        const auto cj = centroid(members[j]);
        double sq = 0.0;
        for (std::size_t k = 0; k < p; ++k) sq += (ci[k] - cj[k]) * (ci[k] - cj[k]);
        const double na = static_cast<double>(members[i].size());
        const double nb = static_cast<double>(members[j].size());
        const double cost = std::sqrt(2.0 * na * nb / (na + nb) * sq);
        const std::pair<std::size_t, std::size_t> key{std::min(ids[i], ids[j]), std::max(ids[i], ids[j])};
        if (cost < best - 1e-12 || (std::abs(cost - best) <= 1e-12 && key < best_ids)) {
          best = cost;
          best_ids = key;
          bi = i;
          bj = j;
        }
      }
    steps.push_back({best_ids.first, best_ids.second, best});
    auto merged = members[bi];
    merged.insert(merged.end(), members[bj].begin(), members[bj].end());
    members.erase(members.begin() + static_cast<std::ptrdiff_t>(bj));
    ids.erase(ids.begin() + static_cast<std::ptrdiff_t>(bj));
    members[bi] = std::move(merged);
    ids[bi] = n + step;
  }
  return steps;
}

}  // namespace oracle
