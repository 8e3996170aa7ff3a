#include "netpoint/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>

#include "netpoint/error.hpp"

namespace netpoint {

namespace {

void require_vertex(const NetworkGraph& g, VertexId v) {
  if (!g.has_vertex(v)) {
    fail(ErrorCode::UnknownVertex, "unknown vertex " + std::to_string(v));
  }
}

void sort_unique(std::vector<VertexId>& ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

bool finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

bool same_point(Point2 a, Point2 b) {
  double scale = std::max({1.0, std::abs(a.x), std::abs(a.y)});
  return distance(a, b) <= 1e-9 * scale;
}

std::uint64_t pair_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

struct DisjointSets {
  std::vector<std::size_t> parent;

  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// A partially directed cycle exists iff some arc joins two vertices of the
// same undirected component, or the arcs between components form a directed
// cycle. Returns an offending arc.
std::optional<EdgeId> find_semi_directed_cycle(std::size_t vertex_count,
                                               const std::vector<Edge>& edges) {
  DisjointSets components(vertex_count);
  for (const auto& e : edges) {
    if (!e.directed()) components.unite(e.tail, e.head);
  }

  std::vector<std::size_t> comp(vertex_count);
  for (std::size_t v = 0; v < vertex_count; ++v) comp[v] = components.find(v);

  std::vector<std::vector<EdgeId>> out(vertex_count);
  std::vector<std::size_t> indegree(vertex_count, 0);
  for (const auto& e : edges) {
    if (!e.directed()) continue;
    if (comp[e.tail] == comp[e.head]) return e.id;
    out[comp[e.tail]].push_back(e.id);
    ++indegree[comp[e.head]];
  }

  std::deque<std::size_t> ready;
  for (std::size_t c = 0; c < vertex_count; ++c) {
    if (comp[c] == c && indegree[c] == 0) ready.push_back(c);
  }
  std::vector<bool> done(vertex_count, false);
  while (!ready.empty()) {
    std::size_t c = ready.front();
    ready.pop_front();
    done[c] = true;
    for (EdgeId id : out[c]) {
      std::size_t target = comp[edges[id].head];
      if (--indegree[target] == 0) ready.push_back(target);
    }
  }
  for (const auto& e : edges) {
    if (e.directed() && !done[comp[e.tail]] && !done[comp[e.head]]) return e.id;
  }
  return std::nullopt;
}

std::string edge_label(const Edge& e) {
  return "edge " + std::to_string(e.id) + " (" + std::to_string(e.tail) +
         (e.directed() ? " -> " : " ~ ") + std::to_string(e.head) + ")";
}

}  // namespace

// ---------------------------------------------------------------------------
// NetworkGraph

const SpatialVertex& NetworkGraph::vertex(VertexId v) const {
  require_vertex(*this, v);
  return vertices_[v];
}

const Edge& NetworkGraph::edge(EdgeId e) const {
  if (!has_edge(e)) fail(ErrorCode::UnknownEdge, "unknown edge " + std::to_string(e));
  return edges_[e];
}

std::span<const EdgeId> NetworkGraph::undirected_edges(VertexId v) const {
  require_vertex(*this, v);
  return undirected_[v];
}

std::span<const EdgeId> NetworkGraph::in_arcs(VertexId v) const {
  require_vertex(*this, v);
  return incoming_[v];
}

std::span<const EdgeId> NetworkGraph::out_arcs(VertexId v) const {
  require_vertex(*this, v);
  return outgoing_[v];
}

std::optional<EdgeId> NetworkGraph::find_edge(VertexId u, VertexId v) const {
  require_vertex(*this, u);
  require_vertex(*this, v);
  for (const auto* list : {&undirected_[u], &incoming_[u], &outgoing_[u]}) {
    for (EdgeId id : *list) {
      if (edges_[id].other(u) == v) return id;
    }
  }
  return std::nullopt;
}

NetworkGraph NetworkGraph::reversed() const {
  NetworkGraph r = *this;
  for (auto& e : r.edges_) {
    if (!e.directed()) continue;
    std::swap(e.tail, e.head);
    std::reverse(e.geometry.begin(), e.geometry.end());
  }
  std::swap(r.incoming_, r.outgoing_);
  return r;
}

NetworkGraph build_graph(std::vector<SpatialVertex> vertices, std::vector<EdgeSpec> edges,
                         const GraphOptions& options) {
  const std::size_t n = vertices.size();
  const std::size_t m = edges.size();

  std::sort(vertices.begin(), vertices.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < n; ++i) {
    if (vertices[i].id != i) {
      fail(ErrorCode::InvalidArgument,
           "vertex ids must be unique and contiguous from 0 (missing or repeated id near " +
               std::to_string(i) + ")");
    }
    if (!finite(vertices[i].coords)) {
      fail(ErrorCode::InvalidGeometry,
           "vertex " + std::to_string(i) + " has non-finite coordinates");
    }
  }

  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < m; ++i) {
    if (edges[i].id != i) {
      fail(ErrorCode::InvalidArgument,
           "edge ids must be unique and contiguous from 0 (missing or repeated id near " +
               std::to_string(i) + ")");
    }
  }

  NetworkGraph g;
  g.edges_.reserve(m);
  std::unordered_map<std::uint64_t, EdgeId> seen;
  seen.reserve(m * 2);

  for (auto& spec : edges) {
    const std::string label = "edge " + std::to_string(spec.id);
    if (spec.tail >= n || spec.head >= n) {
      fail(ErrorCode::DanglingReference,
           label + " references unknown vertex " +
               std::to_string(spec.tail >= n ? spec.tail : spec.head));
    }
    if (spec.tail == spec.head) {
      fail(ErrorCode::SelfLoop, label + " is a loop at vertex " + std::to_string(spec.tail));
    }
    auto [it, inserted] = seen.emplace(pair_key(spec.tail, spec.head), spec.id);
    if (!inserted) {
      fail(ErrorCode::DuplicateEdge, label + " repeats the vertex pair of edge " +
                                         std::to_string(it->second));
    }

    Edge e;
    e.id = spec.id;
    e.tail = spec.tail;
    e.head = spec.head;
    e.kind = spec.kind;
    const Point2 a = vertices[spec.tail].coords;
    const Point2 b = vertices[spec.head].coords;
    if (spec.geometry.empty()) {
      e.geometry = {a, b};
    } else {
      if (spec.geometry.size() < 2) {
        fail(ErrorCode::InvalidGeometry, label + " polyline needs at least two points");
      }
      if (!std::all_of(spec.geometry.begin(), spec.geometry.end(), finite)) {
        fail(ErrorCode::InvalidGeometry, label + " polyline has non-finite coordinates");
      }
      if (!same_point(spec.geometry.front(), a) || !same_point(spec.geometry.back(), b)) {
        fail(ErrorCode::InvalidGeometry,
             label + " polyline endpoints do not match its tail/head coordinates");
      }
      e.geometry = std::move(spec.geometry);
      e.geometry.front() = a;
      e.geometry.back() = b;
      e.explicit_geometry = true;
    }
    for (std::size_t k = 1; k < e.geometry.size(); ++k) {
      e.planar_length += distance(e.geometry[k - 1], e.geometry[k]);
    }
    const double derived = options.lengths == LengthConvention::SquaredEuclidean
                               ? e.planar_length * e.planar_length
                               : e.planar_length;
    if (spec.length) {
      const double given = *spec.length;
      if (!std::isfinite(given) || given <= 0.0) {
        fail(ErrorCode::InvalidLength, label + " has non-positive length");
      }
      if (e.explicit_geometry &&
          std::abs(given - derived) > options.length_tolerance * std::max(1.0, derived)) {
        fail(ErrorCode::InvalidLength, label + " length disagrees with its polyline");
      }
      e.length = given;
    } else {
      e.length = derived;
    }
    if (!(e.length > 0.0)) {
      fail(ErrorCode::InvalidLength, label + " has zero length (coincident endpoints)");
    }
    g.edges_.push_back(std::move(e));
  }

  if (auto arc = find_semi_directed_cycle(n, g.edges_)) {
    fail(ErrorCode::PartiallyDirectedCycle,
         "graph contains a partially directed cycle (detected at " + edge_label(g.edges_[*arc]) + ")");
  }

  g.vertices_ = std::move(vertices);
  g.undirected_.resize(n);
  g.incoming_.resize(n);
  g.outgoing_.resize(n);
  for (const auto& e : g.edges_) {
    if (e.directed()) {
      g.outgoing_[e.tail].push_back(e.id);
      g.incoming_[e.head].push_back(e.id);
      ++g.directed_count_;
    } else {
      g.undirected_[e.tail].push_back(e.id);
      g.undirected_[e.head].push_back(e.id);
    }
    g.total_length_ += e.length;
  }
  return g;
}

// ---------------------------------------------------------------------------
// Adjacency sets

std::vector<VertexId> neighbors(const NetworkGraph& g, VertexId v) {
  std::vector<VertexId> out;
  for (EdgeId id : g.undirected_edges(v)) out.push_back(g.edges()[id].other(v));
  sort_unique(out);
  return out;
}

std::vector<VertexId> parents(const NetworkGraph& g, VertexId v) {
  std::vector<VertexId> out;
  for (EdgeId id : g.in_arcs(v)) out.push_back(g.edges()[id].tail);
  sort_unique(out);
  return out;
}

std::vector<VertexId> children(const NetworkGraph& g, VertexId v) {
  std::vector<VertexId> out;
  for (EdgeId id : g.out_arcs(v)) out.push_back(g.edges()[id].head);
  sort_unique(out);
  return out;
}

std::vector<VertexId> coparents(const NetworkGraph& g, VertexId v) {
  std::vector<VertexId> out;
  for (EdgeId id : g.out_arcs(v)) {
    for (EdgeId in : g.in_arcs(g.edges()[id].head)) {
      VertexId p = g.edges()[in].tail;
      if (p != v) out.push_back(p);
    }
  }
  sort_unique(out);
  return out;
}

std::vector<VertexId> family(const NetworkGraph& g, VertexId v) {
  std::vector<VertexId> out = parents(g, v);
  auto ch = children(g, v);
  out.insert(out.end(), ch.begin(), ch.end());
  sort_unique(out);
  return out;
}

std::size_t degree(const NetworkGraph& g, VertexId v, DegreeMode mode) {
  switch (mode) {
    case DegreeMode::Undirected: return neighbors(g, v).size();
    case DegreeMode::In: return parents(g, v).size();
    case DegreeMode::Out: return children(g, v).size();
    case DegreeMode::Complete: {
      auto all = neighbors(g, v);
      auto fam = family(g, v);
      all.insert(all.end(), fam.begin(), fam.end());
      sort_unique(all);
      return all.size();
    }
  }
  return 0;
}

std::size_t deg_min(const NetworkGraph& g, DegreeMode mode) {
  if (g.vertex_count() == 0) return 0;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (VertexId v = 0; v < g.vertex_count(); ++v) best = std::min(best, degree(g, v, mode));
  return best;
}

std::size_t deg_max(const NetworkGraph& g, DegreeMode mode) {
  std::size_t best = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) best = std::max(best, degree(g, v, mode));
  return best;
}

// ---------------------------------------------------------------------------
// Sequences

SequenceClass classify_sequence(std::span<const EdgeEnds> edges, const VertexEdgeSequence& seq,
                                bool respect_direction) {
  const auto& vs = seq.vertices;
  const auto& es = seq.edges;
  if (vs.empty() || vs.size() != es.size() + 1) return SequenceClass::Invalid;

  for (std::size_t i = 0; i < es.size(); ++i) {
    if (es[i] >= edges.size()) return SequenceClass::Invalid;
    const EdgeEnds& e = edges[es[i]];
    const VertexId from = vs[i];
    const VertexId to = vs[i + 1];
    const bool forward = e.tail == from && e.head == to;
    const bool backward = e.head == from && e.tail == to;
    if (!forward && !backward) return SequenceClass::Invalid;
    if (respect_direction && e.kind == EdgeKind::Directed && !forward) {
      return SequenceClass::Invalid;
    }
  }

  std::vector<EdgeId> sorted_edges = es;
  std::sort(sorted_edges.begin(), sorted_edges.end());
  if (std::adjacent_find(sorted_edges.begin(), sorted_edges.end()) != sorted_edges.end()) {
    return SequenceClass::Walk;
  }

  auto distinct = [](std::vector<VertexId> ids) {
    std::sort(ids.begin(), ids.end());
    return std::adjacent_find(ids.begin(), ids.end()) == ids.end();
  };
  if (distinct(vs)) return SequenceClass::Path;
  if (es.size() >= 2 && vs.front() == vs.back() &&
      distinct(std::vector<VertexId>(vs.begin(), vs.end() - 1))) {
    return SequenceClass::Cycle;
  }
  return SequenceClass::Trail;
}

SequenceClass classify_sequence(const NetworkGraph& g, const VertexEdgeSequence& seq,
                                bool respect_direction) {
  std::vector<EdgeEnds> table;
  table.reserve(g.edge_count());
  for (const auto& e : g.edges()) table.push_back({e.tail, e.head, e.kind});
  for (VertexId v : seq.vertices) {
    if (!g.has_vertex(v)) return SequenceClass::Invalid;
  }
  return classify_sequence(std::span<const EdgeEnds>(table), seq, respect_direction);
}

// ---------------------------------------------------------------------------
// Hop distances

bool traversable_from(const Edge& e, VertexId from, Direction direction) noexcept {
  if (!e.directed() || direction == Direction::Any) return true;
  return direction == Direction::Forward ? e.tail == from : e.head == from;
}

std::vector<std::uint32_t> hop_distances(const NetworkGraph& g, std::span<const VertexId> sources,
                                         Direction direction) {
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreachable);
  std::vector<VertexId> frontier;
  for (VertexId s : sources) {
    require_vertex(g, s);
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
        const Edge& e = edges[id];
        if (!traversable_from(e, u, direction)) return;
        VertexId w = e.other(u);
        if (dist[w] == kUnreachable) {
          dist[w] = level;
          next.push_back(w);
        }
      };
      for (EdgeId id : g.undirected_edges(u)) relax(id);
      if (direction != Direction::Backward) {
        for (EdgeId id : g.out_arcs(u)) relax(id);
      }
      if (direction != Direction::Forward) {
        for (EdgeId id : g.in_arcs(u)) relax(id);
      }
    }
    frontier.swap(next);
  }
  return dist;
}

std::optional<std::uint32_t> hop_distance(const NetworkGraph& g, VertexId u, VertexId v,
                                          Direction direction) {
  require_vertex(g, v);
  const VertexId source[] = {u};
  auto dist = hop_distances(g, source, direction);
  if (dist[v] == kUnreachable) return std::nullopt;
  return dist[v];
}

std::vector<EdgeId> khop_neighborhood(const NetworkGraph& g, VertexId v, std::uint32_t xi,
                                      Direction direction) {
  require_vertex(g, v);
  std::vector<EdgeId> out;
  if (xi == 0) return out;
  const VertexId source[] = {v};
  auto dist = hop_distances(g, source, direction);
  for (const auto& e : g.edges()) {
    bool from_tail = dist[e.tail] < xi && traversable_from(e, e.tail, direction);
    bool from_head = dist[e.head] < xi && traversable_from(e, e.head, direction);
    if (from_tail || from_head) out.push_back(e.id);
  }
  return out;
}

}  // namespace netpoint
