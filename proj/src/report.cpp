#include "netpoint/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "netpoint/error.hpp"
#include "netpoint/io.hpp"

namespace netpoint::report {

void Table::add(std::vector<Json> row) {
  if (row.size() != columns.size()) {
    fail(ErrorCode::InvalidArgument, "table row width does not match the header");
  }
  rows.push_back(std::move(row));
}

std::vector<double> Table::numeric(const std::string& column) const {
  const auto it = std::find(columns.begin(), columns.end(), column);
  std::vector<double> out;
  if (it == columns.end()) return out;
  const auto c = static_cast<std::size_t>(it - columns.begin());
  for (const auto& row : rows) {
    if (row[c].is_number()) out.push_back(row[c].get<double>());
  }
  return out;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string cell_text(const Json& cell) {
  if (cell.is_null()) return "";
  if (cell.is_string()) return cell.get<std::string>();
  if (cell.is_boolean()) return cell.get<bool>() ? "true" : "false";
  if (cell.is_number_integer()) return cell.dump();
  if (cell.is_number_float()) return format_number(cell.get<double>());
  return cell.dump();
}

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << csv_field(table.columns[c]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_field(cell_text(row[c]));
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table, const Json& meta) {
  Json doc;
  doc["meta"] = meta;
  doc["columns"] = table.columns;
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json r = Json::array();
    for (const auto& cell : row) {
      // JSON has no infinity; unreachable values become null.
      r.push_back(cell.is_number_float() && !std::isfinite(cell.get<double>()) ? Json() : cell);
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) fail(ErrorCode::InvalidArgument, "quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) fail(ErrorCode::InvalidArgument, "quantile level outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

Json summary(const std::vector<double>& values) {
  Json s;
  std::vector<double> finite;
  for (double v : values) {
    if (std::isfinite(v)) finite.push_back(v);
  }
  s["count"] = finite.size();
  if (finite.empty()) return s;
  s["min"] = quantile(finite, 0.0);
  s["q25"] = quantile(finite, 0.25);
  s["median"] = quantile(finite, 0.5);
  s["q75"] = quantile(finite, 0.75);
  s["max"] = quantile(finite, 1.0);
  return s;
}

// ---------------------------------------------------------------------------
// SVG

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 56.0;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Rgb {
  double r, g, b;
};

/// Sequential colormap sampled from viridis.
std::string ramp(double t) {
  static constexpr std::array<Rgb, 5> stops{{{68, 1, 84},
                                              {59, 82, 139},
                                              {33, 145, 140},
                                              {94, 201, 98},
                                              {253, 231, 37}}};
  if (!std::isfinite(t)) return "#bbbbbb";
  t = std::clamp(t, 0.0, 1.0) * static_cast<double>(stops.size() - 1);
  const auto i = std::min(static_cast<std::size_t>(t), stops.size() - 2);
  const double f = t - static_cast<double>(i);
  auto mix = [&](double a, double b) { return static_cast<int>(std::lround(a + f * (b - a))); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(stops[i].r, stops[i + 1].r),
                mix(stops[i].g, stops[i + 1].g), mix(stops[i].b, stops[i + 1].b));
  return buf;
}

std::string category_color(std::size_t k) {
  static constexpr std::array<const char*, 10> palette{
      "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
      "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return palette[k % palette.size()];
}

struct Frame {
  double x0, x1, y0, y1;

  double sx(double x) const {
    return x1 > x0 ? kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin) : kWidth / 2;
  }
  double sy(double y) const {
    return y1 > y0 ? kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin)
                   : kHeight / 2;
  }
};

void open_svg(std::ostringstream& s, const std::string& title) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" "
    << "font-family=\"sans-serif\" font-size=\"16\">" << escape(title) << "</text>\n";
}

std::pair<double, double> finite_range(const std::vector<double>& v) {
  double lo = kInfinity, hi = -kInfinity;
  for (double x : v) {
    if (std::isfinite(x)) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  }
  if (lo > hi) return {0.0, 1.0};
  return {lo, hi};
}

}  // namespace

std::string svg_curves(const std::vector<Series>& series, const std::string& title,
                       const std::string& x_label, const std::string& y_label) {
  std::vector<double> xs, ys;
  for (const auto& s : series) {
    xs.insert(xs.end(), s.x.begin(), s.x.end());
    ys.insert(ys.end(), s.y.begin(), s.y.end());
  }
  auto [x0, x1] = finite_range(xs);
  auto [y0, y1] = finite_range(ys);
  y0 = std::min(y0, 0.0);
  const Frame f{x0, x1, y0, y1};

  std::ostringstream s;
  open_svg(s, title);
  const double left = kMargin, right = kWidth - kMargin;
  const double top = kMargin, bottom = kHeight - kMargin;
  s << "<g stroke=\"black\" fill=\"none\"><line x1=\"" << left << "\" y1=\"" << bottom
    << "\" x2=\"" << right << "\" y2=\"" << bottom << "\"/><line x1=\"" << left << "\" y1=\""
    << top << "\" x2=\"" << left << "\" y2=\"" << bottom << "\"/></g>\n";
  s << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + (x1 - x0) * k / 4.0;
    const double yv = y0 + (y1 - y0) * k / 4.0;
    s << "<text x=\"" << num(f.sx(xv)) << "\" y=\"" << num(bottom + 16)
      << "\" text-anchor=\"middle\">" << label_num(xv) << "</text>\n";
    s << "<text x=\"" << num(left - 6) << "\" y=\"" << num(f.sy(yv) + 4)
      << "\" text-anchor=\"end\">" << label_num(yv) << "</text>\n";
  }
  s << "<text x=\"" << num(kWidth / 2) << "\" y=\"" << num(kHeight - 12)
    << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n"
    << "<text x=\"14\" y=\"" << num(kHeight / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
    << num(kHeight / 2) << ")\">" << escape(y_label) << "</text>\n</g>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& c = series[k];
    s << "<polyline fill=\"none\" stroke=\"" << category_color(k) << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < c.x.size() && i < c.y.size(); ++i) {
      if (!std::isfinite(c.y[i])) continue;
      s << num(f.sx(c.x[i])) << ',' << num(f.sy(c.y[i])) << ' ';
    }
    s << "\"/>\n";
    s << "<text x=\"" << num(right - 4) << "\" y=\"" << num(top + 14 * (k + 1))
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
      << category_color(k) << "\">" << escape(c.name) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string svg_heatmap(const SmoothedField& field, std::size_t channel) {
  if (channel >= field.values.size()) fail(ErrorCode::InvalidArgument, "unknown channel");
  const auto& v = field.values[channel];
  auto [lo, hi] = finite_range(v);
  const double span = hi > lo ? hi - lo : 1.0;
  const Frame f{field.xs.front(), field.xs.back(), field.ys.front(), field.ys.back()};
  const double cw = (kWidth - 2 * kMargin) / static_cast<double>(field.nx);
  const double ch = (kHeight - 2 * kMargin) / static_cast<double>(field.ny);

  std::ostringstream s;
  open_svg(s, "smoothed " + field.channels[channel]);
  s << "<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t iy = 0; iy < field.ny; ++iy) {
    for (std::size_t ix = 0; ix < field.nx; ++ix) {
      const double x = kMargin + cw * static_cast<double>(ix);
      const double y = kHeight - kMargin - ch * static_cast<double>(iy + 1);
      s << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(cw + 0.05)
        << "\" height=\"" << num(ch + 0.05) << "\" fill=\"" << ramp((field.at(channel, ix, iy) - lo) / span)
        << "\"/>\n";
    }
  }
  s << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n"
    << "<text x=\"" << num(kMargin) << "\" y=\"" << num(kHeight - 20) << "\">x " << label_num(f.x0)
    << " .. " << label_num(f.x1) << ", y " << label_num(f.y0) << " .. " << label_num(f.y1)
    << "</text>\n<text x=\"" << num(kWidth - kMargin) << "\" y=\"" << num(kHeight - 20)
    << "\" text-anchor=\"end\">value " << label_num(lo) << " .. " << label_num(hi)
    << "</text>\n</g>\n</svg>\n";
  return s.str();
}

std::string svg_network(const NetworkGraph& g,
                        const std::optional<std::vector<double>>& edge_values,
                        const std::optional<std::vector<std::size_t>>& vertex_labels,
                        const std::string& title) {
  std::vector<double> xs, ys;
  for (const auto& e : g.edges()) {
    for (const auto& p : e.geometry) {
      xs.push_back(p.x);
      ys.push_back(p.y);
    }
  }
  for (const auto& v : g.vertices()) {
    xs.push_back(v.coords.x);
    ys.push_back(v.coords.y);
  }
  auto [x0, x1] = finite_range(xs);
  auto [y0, y1] = finite_range(ys);
  // Equal scale on both axes.
  const double span = std::max(x1 - x0, y1 - y0);
  const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
  const double half = span > 0 ? 0.5 * span * 1.3333 : 1.0;
  const Frame f{cx - half, cx + half, cy - 0.75 * half, cy + 0.75 * half};

  std::pair<double, double> range{0.0, 1.0};
  if (edge_values) range = finite_range(*edge_values);
  const double vspan = range.second > range.first ? range.second - range.first : 1.0;

  std::ostringstream s;
  open_svg(s, title);
  s << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" "
       "markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#333\"/>"
       "</marker></defs>\n<g fill=\"none\" stroke-width=\"2.5\">\n";
  for (const auto& e : g.edges()) {
    const std::string color =
        edge_values ? ramp(((*edge_values)[e.id] - range.first) / vspan) : std::string("#555555");
    s << "<polyline stroke=\"" << color << "\" points=\"";
    for (const auto& p : e.geometry) s << num(f.sx(p.x)) << ',' << num(f.sy(p.y)) << ' ';
    s << '"' << (e.directed() ? " marker-end=\"url(#arrow)\"" : "") << "/>\n";
  }
  s << "</g>\n<g stroke=\"black\" stroke-width=\"0.5\">\n";
  for (const auto& v : g.vertices()) {
    const std::string color =
        vertex_labels ? category_color((*vertex_labels)[v.id]) : std::string("#222222");
    s << "<circle cx=\"" << num(f.sx(v.coords.x)) << "\" cy=\"" << num(f.sy(v.coords.y))
      << "\" r=\"4\" fill=\"" << color << "\"/>\n";
  }
  s << "</g>\n</svg>\n";
  return s.str();
}

}  // namespace netpoint::report
