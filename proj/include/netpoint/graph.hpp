#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "netpoint/types.hpp"

namespace netpoint {

enum class EdgeKind { Undirected, Directed };

struct SpatialVertex {
  VertexId id = 0;
  Point2 coords;
};

/// How edge lengths are derived when no explicit length is supplied.
enum class LengthConvention {
  Euclidean,         ///< polyline (or straight) planar length
  SquaredEuclidean,  ///< square of the planar length
};

/// Raw edge as read from input, before validation.
struct EdgeSpec {
  EdgeId id = 0;
  VertexId tail = 0;
  VertexId head = 0;
  EdgeKind kind = EdgeKind::Undirected;
  std::optional<double> length;
  /// Optional polyline from tail to head (including both endpoints).
  std::vector<Point2> geometry;
};

struct Edge {
  EdgeId id = 0;
  VertexId tail = 0;
  VertexId head = 0;
  EdgeKind kind = EdgeKind::Undirected;
  /// Always holds at least the two endpoint coordinates.
  std::vector<Point2> geometry;
  /// Network length of the edge; offsets along the edge run over [0, length].
  double length = 0.0;
  /// Planar arc length of `geometry`.
  double planar_length = 0.0;
  bool explicit_geometry = false;

  bool directed() const noexcept { return kind == EdgeKind::Directed; }
  VertexId other(VertexId v) const noexcept { return v == tail ? head : tail; }
};

struct GraphOptions {
  LengthConvention lengths = LengthConvention::Euclidean;
  /// Relative tolerance when an explicit length is checked against geometry.
  double length_tolerance = 1e-9;
};

/// Orientation rule for traversals.
///   Any      - every edge both ways
///   Forward  - undirected edges both ways, arcs tail to head only
///   Backward - undirected edges both ways, arcs head to tail only
enum class Direction { Any, Forward, Backward };

enum class DegreeMode { Undirected, In, Out, Complete };

/// Immutable, validated spatial network. Vertices and edges are dense
/// indices; the adjacency index splits incidences by role.
class NetworkGraph {
public:
  NetworkGraph() = default;

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  /// Graph size |E|.
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::vector<SpatialVertex>& vertices() const noexcept { return vertices_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const SpatialVertex& vertex(VertexId v) const;
  const Edge& edge(EdgeId e) const;

  bool has_vertex(VertexId v) const noexcept { return v < vertices_.size(); }
  bool has_edge(EdgeId e) const noexcept { return e < edges_.size(); }

  /// Undirected edges incident to v.
  std::span<const EdgeId> undirected_edges(VertexId v) const;
  /// Arcs whose head is v.
  std::span<const EdgeId> in_arcs(VertexId v) const;
  /// Arcs whose tail is v.
  std::span<const EdgeId> out_arcs(VertexId v) const;

  /// Total network length |L|.
  double total_length() const noexcept { return total_length_; }
  std::size_t directed_edge_count() const noexcept { return directed_count_; }
  std::size_t undirected_edge_count() const noexcept {
    return edges_.size() - directed_count_;
  }

  /// Edge joining u and v in either orientation, if any.
  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const;

  /// Copy of this graph with every arc reversed.
  NetworkGraph reversed() const;

private:
  friend NetworkGraph build_graph(std::vector<SpatialVertex>, std::vector<EdgeSpec>,
                                  const GraphOptions&);

  std::vector<SpatialVertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> undirected_;
  std::vector<std::vector<EdgeId>> incoming_;
  std::vector<std::vector<EdgeId>> outgoing_;
  double total_length_ = 0.0;
  std::size_t directed_count_ = 0;
};

/// Validates the raw description and builds the adjacency index.
/// Vertex ids must be 0..n-1 and edge ids 0..m-1 (any order).
/// Throws Error with DanglingReference, SelfLoop, DuplicateEdge,
/// InvalidLength, InvalidGeometry or PartiallyDirectedCycle.
NetworkGraph build_graph(std::vector<SpatialVertex> vertices, std::vector<EdgeSpec> edges,
                         const GraphOptions& options = {});

// Adjacency sets. All return sorted vertex ids without duplicates.
std::vector<VertexId> neighbors(const NetworkGraph& g, VertexId v);
std::vector<VertexId> parents(const NetworkGraph& g, VertexId v);
std::vector<VertexId> children(const NetworkGraph& g, VertexId v);
/// Vertices sharing at least one child with v, excluding v.
std::vector<VertexId> coparents(const NetworkGraph& g, VertexId v);
/// children(v) united with parents(v).
std::vector<VertexId> family(const NetworkGraph& g, VertexId v);

std::size_t degree(const NetworkGraph& g, VertexId v, DegreeMode mode);
std::size_t deg_min(const NetworkGraph& g, DegreeMode mode);
std::size_t deg_max(const NetworkGraph& g, DegreeMode mode);

// ---------------------------------------------------------------------------
// Vertex-edge sequences

/// (v_0, e_1, v_1, ..., e_k, v_k) stored as k+1 vertices and k edges.
struct VertexEdgeSequence {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  std::size_t length() const noexcept { return edges.size(); }
};

enum class SequenceClass { Invalid, Walk, Trail, Path, Cycle };

/// Endpoints of one edge of a (multi)graph, indexed by edge id.
struct EdgeEnds {
  VertexId tail = 0;
  VertexId head = 0;
  EdgeKind kind = EdgeKind::Undirected;
};

/// Classifies a sequence against an arbitrary incidence table. Parallel
/// edges are allowed here, so multigraph sequences can be classified too.
/// With `respect_direction`, arcs may only be traversed tail to head.
SequenceClass classify_sequence(std::span<const EdgeEnds> edges, const VertexEdgeSequence& seq,
                                bool respect_direction = false);
SequenceClass classify_sequence(const NetworkGraph& g, const VertexEdgeSequence& seq,
                                bool respect_direction = false);

// ---------------------------------------------------------------------------
// Hop distances

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// BFS hop counts from every source in `sources` (multi-source) under the
/// direction rule. Unreached vertices hold kUnreachable.
std::vector<std::uint32_t> hop_distances(const NetworkGraph& g, std::span<const VertexId> sources,
                                         Direction direction);

/// Shortest path length in edges; nullopt when v cannot be reached.
std::optional<std::uint32_t> hop_distance(const NetworkGraph& g, VertexId u, VertexId v,
                                          Direction direction);

/// Edges lying on an admissible walk from v with at most xi edges.
/// Sorted by id.
std::vector<EdgeId> khop_neighborhood(const NetworkGraph& g, VertexId v, std::uint32_t xi,
                                      Direction direction);

/// Whether the edge can be traversed starting at `from` under the rule.
bool traversable_from(const Edge& e, VertexId from, Direction direction) noexcept;

}  // namespace netpoint
