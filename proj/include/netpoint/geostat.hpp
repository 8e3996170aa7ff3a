#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "netpoint/graph.hpp"
#include "netpoint/intensity.hpp"
#include "netpoint/kernel.hpp"

namespace netpoint {

/// Vertex attributes: one row per vertex, one column per channel,
/// row-major.
class VertexAttributeMatrix {
public:
  VertexAttributeMatrix() = default;
  VertexAttributeMatrix(std::size_t rows, std::vector<std::string> channels);
  /// Throws InvalidArgument on a size mismatch or non-finite value.
  VertexAttributeMatrix(std::size_t rows, std::vector<std::string> channels,
                        std::vector<double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return channels_.size(); }
  const std::vector<std::string>& channels() const noexcept { return channels_; }

  double operator()(std::size_t row, std::size_t col) const { return values_[row * cols() + col]; }
  double& operator()(std::size_t row, std::size_t col) { return values_[row * cols() + col]; }

  std::vector<double> column(std::size_t col) const;
  const std::vector<double>& data() const noexcept { return values_; }

  /// Vertex intensities of a table, one column per channel; vertices where
  /// the measure is undefined carry zeros.
  static VertexAttributeMatrix from_table(const IntensityTable& table);

private:
  std::size_t rows_ = 0;
  std::vector<std::string> channels_;
  std::vector<double> values_;
};

struct ConditionalSummary {
  double mean = 0.0;
  double variance = 0.0;  ///< population variance over the neighbors
  std::size_t neighbors = 0;
};

/// Mean of a channel over ne(v). Throws IsolatedVertex when ne(v) is empty.
double neighborhood_conditional_mean(const NetworkGraph& g, const VertexAttributeMatrix& attrs,
                                     VertexId v, std::size_t channel);

ConditionalSummary neighborhood_conditional_summary(const NetworkGraph& g,
                                                    const VertexAttributeMatrix& attrs,
                                                    VertexId v, std::size_t channel);

// ---------------------------------------------------------------------------
// Planar smoothing

struct GridSpec {
  std::size_t nx = 200;
  std::size_t ny = 200;
  /// Bounding box to cover; defaults to the vertex bounding box.
  std::optional<Point2> lower;
  std::optional<Point2> upper;
};

struct SmoothedField {
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<double> xs;  ///< nx grid abscissae
  std::vector<double> ys;  ///< ny grid ordinates
  std::vector<std::string> channels;
  /// values[channel][iy * nx + ix]
  std::vector<std::vector<double>> values;
  KernelSpec kernel;
  /// Grid points with no kernel support, filled from the nearest vertex.
  std::size_t unsupported = 0;

  double at(std::size_t channel, std::size_t ix, std::size_t iy) const {
    return values[channel][iy * nx + ix];
  }
};

/// Default bandwidth: 0.1 times the diagonal of the vertex bounding box
/// (1 when the box is degenerate).
double default_smoothing_bandwidth(const NetworkGraph& g);

/// Normalized kernel average of vertex values at every grid point, using
/// planar distance to the vertex coordinates. Throws BadBandwidth or
/// EmptyAttributeMatrix.
SmoothedField smooth_field(const NetworkGraph& g, const VertexAttributeMatrix& attrs,
                           const GridSpec& grid, const KernelSpec& kernel);

// ---------------------------------------------------------------------------
// Ward clustering

struct Merge {
  std::size_t a = 0;  ///< smaller cluster id
  std::size_t b = 0;  ///< larger cluster id
  double height = 0.0;
  std::size_t size = 0;  ///< rows in the merged cluster
};

/// Agglomerative hierarchy over n rows. Leaves are clusters 0..n-1 and the
/// cluster formed by merge s gets id n + s.
class Dendrogram {
public:
  Dendrogram() = default;
  Dendrogram(std::size_t leaves, std::vector<Merge> merges);

  std::size_t leaves() const noexcept { return leaves_; }
  const std::vector<Merge>& merges() const noexcept { return merges_; }

  /// Labels 0..k-1 per row after undoing the last k-1 merges. Labels are
  /// numbered in order of first appearance by row.
  std::vector<std::size_t> cut(std::size_t k) const;

private:
  std::size_t leaves_ = 0;
  std::vector<Merge> merges_;
};

/// Ward's minimum-variance hierarchy. Heights are
/// sqrt(2 |A||B| / (|A| + |B|)) * ||centroid(A) - centroid(B)||, the
/// Lance-Williams recurrence run on squared Euclidean distances. Ties go to
/// the lowest (a, b) cluster-id pair. Throws TooFewRows for fewer than 2 rows.
Dendrogram ward_cluster(const VertexAttributeMatrix& attrs);

}  // namespace netpoint
