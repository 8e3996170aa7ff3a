#pragma once

// Result serialization: tidy tables (CSV or JSON), metadata sidecars and
// SVG renderings.

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "netpoint/geostat.hpp"
#include "netpoint/graph.hpp"

namespace netpoint::report {

using Json = nlohmann::ordered_json;

/// Column-oriented tidy table; each cell is a JSON scalar.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;

  void add(std::vector<Json> row);
  /// Numeric values of one column, skipping non-numbers.
  std::vector<double> numeric(const std::string& column) const;
};

/// RFC 4180 output; doubles use the shortest round-trip form.
void write_csv(std::ostream& out, const Table& table);
/// {"meta": ..., "columns": [...], "rows": [[...], ...]}
void write_json(std::ostream& out, const Table& table, const Json& meta);

/// Linear-interpolation sample quantile (R type 7). Throws InvalidArgument
/// on empty input or p outside [0, 1].
double quantile(std::vector<double> values, double p);
/// {"count", "min", "q25", "median", "q75", "max"}; count only when empty.
Json summary(const std::vector<double>& values);

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Line chart of one or more curves.
std::string svg_curves(const std::vector<Series>& series, const std::string& title,
                       const std::string& x_label, const std::string& y_label);

/// Heatmap of one channel of a smoothed field.
std::string svg_heatmap(const SmoothedField& field, std::size_t channel);

/// Network drawing. Edges are shaded by `edge_values` (when given) and
/// vertices colored by `vertex_labels` (when given); arcs get arrowheads.
std::string svg_network(const NetworkGraph& g,
                        const std::optional<std::vector<double>>& edge_values,
                        const std::optional<std::vector<std::size_t>>& vertex_labels,
                        const std::string& title);

}  // namespace netpoint::report
