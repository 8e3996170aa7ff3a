#include "netpoint/geostat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

#include "netpoint/error.hpp"
#include "netpoint/kernels.hpp"

namespace netpoint {

// ---------------------------------------------------------------------------
// VertexAttributeMatrix

VertexAttributeMatrix::VertexAttributeMatrix(std::size_t rows, std::vector<std::string> channels)
    : rows_(rows), channels_(std::move(channels)), values_(rows_ * channels_.size(), 0.0) {}

VertexAttributeMatrix::VertexAttributeMatrix(std::size_t rows, std::vector<std::string> channels,
                                             std::vector<double> values)
    : rows_(rows), channels_(std::move(channels)), values_(std::move(values)) {
  if (values_.size() != rows_ * channels_.size()) {
    fail(ErrorCode::InvalidArgument, "attribute matrix holds " + std::to_string(values_.size()) +
                                         " values, expected " +
                                         std::to_string(rows_ * channels_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "attribute values must be finite");
  }
}

std::vector<double> VertexAttributeMatrix::column(std::size_t col) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, col);
  return out;
}

VertexAttributeMatrix VertexAttributeMatrix::from_table(const IntensityTable& table) {
  const std::size_t rows = table.undefined.size();
  VertexAttributeMatrix m(rows, table.channels);
  for (std::size_t c = 0; c < table.channels.size(); ++c) {
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = table.vertex_values[c][r];
  }
  return m;
}

// ---------------------------------------------------------------------------
// Neighborhood conditioning

ConditionalSummary neighborhood_conditional_summary(const NetworkGraph& g,
                                                    const VertexAttributeMatrix& attrs,
                                                    VertexId v, std::size_t channel) {
  if (attrs.rows() != g.vertex_count()) {
    fail(ErrorCode::InvalidArgument, "attribute matrix needs one row per vertex");
  }
  if (channel >= attrs.cols()) {
    fail(ErrorCode::InvalidArgument, "unknown channel " + std::to_string(channel));
  }
  const auto ne = neighbors(g, v);
  if (ne.empty()) {
    fail(ErrorCode::IsolatedVertex, "vertex " + std::to_string(v) + " has no neighbors");
  }
  ConditionalSummary s;
  s.neighbors = ne.size();
  for (VertexId u : ne) s.mean += attrs(u, channel);
  s.mean /= static_cast<double>(ne.size());
  for (VertexId u : ne) {
    const double d = attrs(u, channel) - s.mean;
    s.variance += d * d;
  }
  s.variance /= static_cast<double>(ne.size());
  return s;
}

double neighborhood_conditional_mean(const NetworkGraph& g, const VertexAttributeMatrix& attrs,
                                     VertexId v, std::size_t channel) {
  return neighborhood_conditional_summary(g, attrs, v, channel).mean;
}

// ---------------------------------------------------------------------------
// Smoothing

namespace {

std::pair<Point2, Point2> bounding_box(const NetworkGraph& g) {
  Point2 lo{kInfinity, kInfinity};
  Point2 hi{-kInfinity, -kInfinity};
  for (const auto& v : g.vertices()) {
    lo.x = std::min(lo.x, v.coords.x);
    lo.y = std::min(lo.y, v.coords.y);
    hi.x = std::max(hi.x, v.coords.x);
    hi.y = std::max(hi.y, v.coords.y);
  }
  return {lo, hi};
}

std::vector<double> axis(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = 0.5 * (lo + hi);
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

}  // namespace

double default_smoothing_bandwidth(const NetworkGraph& g) {
  if (g.vertex_count() == 0) return 1.0;
  auto [lo, hi] = bounding_box(g);
  const double diagonal = distance(lo, hi);
  return diagonal > 0.0 ? 0.1 * diagonal : 1.0;
}

SmoothedField smooth_field(const NetworkGraph& g, const VertexAttributeMatrix& attrs,
                           const GridSpec& grid, const KernelSpec& kernel) {
  validate(kernel);
  if (g.vertex_count() == 0 || attrs.rows() == 0 || attrs.cols() == 0) {
    fail(ErrorCode::EmptyAttributeMatrix, "nothing to smooth");
  }
  if (attrs.rows() != g.vertex_count()) {
    fail(ErrorCode::InvalidArgument, "attribute matrix needs one row per vertex");
  }
  if (grid.nx == 0 || grid.ny == 0) {
    fail(ErrorCode::InvalidArgument, "grid resolution must be positive");
  }

  auto [lo, hi] = bounding_box(g);
  if (grid.lower) lo = *grid.lower;
  if (grid.upper) hi = *grid.upper;

  SmoothedField field;
  field.nx = grid.nx;
  field.ny = grid.ny;
  field.xs = axis(lo.x, hi.x, grid.nx);
  field.ys = axis(lo.y, hi.y, grid.ny);
  field.channels = attrs.channels();
  field.kernel = kernel;

  std::vector<Point2> sites;
  sites.reserve(g.vertex_count());
  for (const auto& v : g.vertices()) sites.push_back(v.coords);
  std::vector<Point2> queries;
  queries.reserve(grid.nx * grid.ny);
  for (double y : field.ys) {
    for (double x : field.xs) queries.push_back({x, y});
  }
  std::vector<std::vector<double>> columns;
  columns.reserve(attrs.cols());
  for (std::size_t c = 0; c < attrs.cols(); ++c) columns.push_back(attrs.column(c));

  kernels::SmoothingProblem problem{sites, &columns, queries, kernel};
  field.unsupported = kernels::parallel::smooth(problem, field.values);
  return field;
}

// ---------------------------------------------------------------------------
// Ward clustering

Dendrogram::Dendrogram(std::size_t leaves, std::vector<Merge> merges)
    : leaves_(leaves), merges_(std::move(merges)) {
  if (leaves_ > 0 && merges_.size() + 1 != leaves_) {
    fail(ErrorCode::InvalidArgument, "a full hierarchy over n leaves has n - 1 merges");
  }
}

std::vector<std::size_t> Dendrogram::cut(std::size_t k) const {
  if (k < 1 || k > leaves_) {
    fail(ErrorCode::InvalidArgument,
         "cut needs 1 <= k <= " + std::to_string(leaves_) + ", got " + std::to_string(k));
  }
  const std::size_t total = 2 * leaves_ - 1;
  std::vector<std::size_t> parent(total);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t s = 0; s + k < leaves_; ++s) {
    const std::size_t id = leaves_ + s;
    parent[find(merges_[s].a)] = id;
    parent[find(merges_[s].b)] = id;
  }

  std::vector<std::size_t> labels(leaves_);
  std::vector<std::size_t> label_of(total, std::numeric_limits<std::size_t>::max());
  std::size_t next = 0;
  for (std::size_t r = 0; r < leaves_; ++r) {
    const std::size_t root = find(r);
    if (label_of[root] == std::numeric_limits<std::size_t>::max()) label_of[root] = next++;
    labels[r] = label_of[root];
  }
  return labels;
}

namespace {

/// Condensed symmetric matrix without the diagonal.
class Condensed {
public:
  explicit Condensed(std::size_t n) : n_(n), data_(n * (n - 1) / 2) {}
  double& operator()(std::size_t i, std::size_t j) { return data_[index(i, j)]; }

private:
  std::size_t index(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
  }
  std::size_t n_;
  std::vector<double> data_;
};

}  // namespace

Dendrogram ward_cluster(const VertexAttributeMatrix& attrs) {
  const std::size_t n = attrs.rows();
  if (n < 2) fail(ErrorCode::TooFewRows, "Ward clustering needs at least two rows");
  const std::size_t p = attrs.cols();

  Condensed dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sq = 0.0;
      for (std::size_t c = 0; c < p; ++c) {
        const double d = attrs(i, c) - attrs(j, c);
        sq += d * d;
      }
      dist(i, j) = sq;
    }
  }

  std::vector<std::size_t> id(n);
  std::iota(id.begin(), id.end(), std::size_t{0});
  std::vector<std::size_t> size(n, 1);
  std::vector<bool> active(n, true);
  std::vector<std::size_t> nn(n, 0);
  std::vector<double> nn_dist(n, kInfinity);

  // Nearest active partner of slot s; ties go to the lower cluster id.
  auto refresh = [&](std::size_t s) {
    nn_dist[s] = kInfinity;
    for (std::size_t t = 0; t < n; ++t) {
      if (t == s || !active[t]) continue;
      const double d = dist(s, t);
      if (d < nn_dist[s] || (d == nn_dist[s] && id[t] < id[nn[s]])) {
        nn_dist[s] = d;
        nn[s] = t;
      }
    }
  };
  for (std::size_t s = 0; s < n; ++s) refresh(s);

  std::vector<Merge> merges;
  merges.reserve(n - 1);
  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t best = n;
    auto key = [&](std::size_t s) {
      return std::make_tuple(nn_dist[s], std::min(id[s], id[nn[s]]), std::max(id[s], id[nn[s]]));
    };
    for (std::size_t s = 0; s < n; ++s) {
      if (active[s] && (best == n || key(s) < key(best))) best = s;
    }
    const std::size_t i = best;
    const std::size_t j = nn[best];
    const double dij = dist(i, j);
    const double ni = static_cast<double>(size[i]);
    const double nj = static_cast<double>(size[j]);

    merges.push_back({std::min(id[i], id[j]), std::max(id[i], id[j]), std::sqrt(std::max(0.0, dij)),
                      size[i] + size[j]});

    active[j] = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == i) continue;
      const double nk = static_cast<double>(size[k]);
      dist(i, k) = ((ni + nk) * dist(i, k) + (nj + nk) * dist(j, k) - nk * dij) / (ni + nj + nk);
    }
    id[i] = n + step;
    size[i] += size[j];

    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k]) continue;
      if (k == i || nn[k] == i || nn[k] == j) {
        refresh(k);
      } else if (dist(i, k) < nn_dist[k]) {
        nn_dist[k] = dist(i, k);
        nn[k] = i;
      }
    }
  }
  return Dendrogram(n, std::move(merges));
}

}  // namespace netpoint
