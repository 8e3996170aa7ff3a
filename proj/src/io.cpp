#include "netpoint/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "csv.hpp"
#include "netpoint/error.hpp"
#include "netpoint/parallel.hpp"

namespace netpoint {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + path.string());
  return out;
}

std::string upper(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

double parse_double(std::string_view text, bool& ok) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  ok = ec == std::errc() && std::isfinite(value);
  return ok ? value : 0.0;
}

/// LINESTRING (x y, x y, ...); extra ordinates (Z, M) are ignored.
std::vector<Point2> parse_wkt(const std::string& text, const csv::Reader& reader) {
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open ||
      upper(std::string_view(text).substr(0, open)).rfind("LINESTRING", 0) != 0) {
    reader.error("wkt", "expected LINESTRING (x y, ...)");
  }
  std::vector<Point2> points;
  std::stringstream body(text.substr(open + 1, close - open - 1));
  std::string vertex;
  while (std::getline(body, vertex, ',')) {
    std::istringstream coords(vertex);
    std::string xs, ys;
    coords >> xs >> ys;
    bool okx = false, oky = false;
    const double x = parse_double(xs, okx);
    const double y = parse_double(ys, oky);
    if (!okx || !oky) reader.error("wkt", "bad coordinate pair '" + vertex + "'");
    points.push_back({x, y});
  }
  if (points.size() < 2) reader.error("wkt", "a LINESTRING needs at least two points");
  return points;
}

EdgeKind parse_kind(const std::string& text, const csv::Reader& reader) {
  const std::string k = upper(text);
  if (k == "U" || k == "UNDIRECTED") return EdgeKind::Undirected;
  if (k == "D" || k == "DIRECTED") return EdgeKind::Directed;
  reader.error("kind", "expected U or D, got '" + text + "'");
}

std::uint32_t checked_id(long long value, const csv::Reader& reader, std::string_view column) {
  if (value < 0 || value >= static_cast<long long>(kUnreachable)) {
    reader.error(column, "id out of range");
  }
  return static_cast<std::uint32_t>(value);
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

// ---------------------------------------------------------------------------
// Network files

LoadedNetwork load_network(std::istream& vertex_in, std::istream& edge_in,
                           const GraphOptions& options) {
  std::vector<SpatialVertex> vertices;
  std::unordered_map<VertexId, std::size_t> vertex_row;
  {
    csv::Reader reader(vertex_in, "vertices");
    const auto c_id = reader.require_column("id");
    const auto c_x = reader.require_column("x");
    const auto c_y = reader.require_column("y");
    std::vector<std::string> f;
    while (reader.next(f)) {
      SpatialVertex v;
      v.id = checked_id(reader.integer(f, c_id), reader, "id");
      v.coords = {reader.number(f, c_x), reader.number(f, c_y)};
      auto [it, fresh] = vertex_row.emplace(v.id, reader.row());
      if (!fresh) {
        reader.error("id", "vertex id " + std::to_string(v.id) + " already defined on row " +
                               std::to_string(it->second));
      }
      vertices.push_back(v);
    }
  }

  std::vector<EdgeSpec> edges;
  {
    csv::Reader reader(edge_in, "edges");
    const auto c_id = reader.require_column("id");
    const auto c_tail = reader.require_column("tail");
    const auto c_head = reader.require_column("head");
    const auto c_kind = reader.require_column("kind");
    const auto c_length = reader.column("length");
    const auto c_wkt = reader.column("wkt");
    std::unordered_map<EdgeId, std::size_t> edge_row;
    std::map<std::pair<VertexId, VertexId>, std::size_t> pair_row;
    std::vector<std::string> f;
    while (reader.next(f)) {
      EdgeSpec e;
      e.id = checked_id(reader.integer(f, c_id), reader, "id");
      e.tail = checked_id(reader.integer(f, c_tail), reader, "tail");
      e.head = checked_id(reader.integer(f, c_head), reader, "head");
      e.kind = parse_kind(f[c_kind], reader);
      if (c_length && !blank(f[*c_length])) e.length = reader.number(f, *c_length);
      if (c_wkt && !blank(f[*c_wkt])) e.geometry = parse_wkt(f[*c_wkt], reader);

      const std::string where = "edges: row " + std::to_string(reader.row());
      auto [it, fresh] = edge_row.emplace(e.id, reader.row());
      if (!fresh) {
        fail(ErrorCode::ParseError, where + ": edge id " + std::to_string(e.id) +
                                        " already defined on row " + std::to_string(it->second));
      }
      for (VertexId v : {e.tail, e.head}) {
        if (!vertex_row.count(v)) {
          fail(ErrorCode::DanglingReference,
               where + ": edge " + std::to_string(e.id) + " references unknown vertex " +
                   std::to_string(v));
        }
      }
      if (e.tail == e.head) {
        fail(ErrorCode::SelfLoop, where + ": edge " + std::to_string(e.id) + " is a self-loop");
      }
      const auto key = std::minmax(e.tail, e.head);
      auto [pit, pfresh] = pair_row.emplace(key, reader.row());
      if (!pfresh) {
        fail(ErrorCode::DuplicateEdge,
             "edges: rows " + std::to_string(pit->second) + " and " +
                 std::to_string(reader.row()) + " both join vertices " +
                 std::to_string(key.first) + " and " + std::to_string(key.second));
      }
      edges.push_back(std::move(e));
    }
  }

  LoadedNetwork out{build_graph(std::move(vertices), std::move(edges), options), {}};
  out.report.vertices = out.graph.vertex_count();
  out.report.edges = out.graph.edge_count();
  for (VertexId v = 0; v < out.graph.vertex_count(); ++v) {
    if (out.graph.undirected_edges(v).empty() && out.graph.in_arcs(v).empty() &&
        out.graph.out_arcs(v).empty()) {
      out.report.isolated.push_back(v);
    }
  }
  return out;
}

LoadedNetwork load_network(const std::filesystem::path& vertices,
                           const std::filesystem::path& edges, const GraphOptions& options) {
  auto vin = open_input(vertices);
  auto ein = open_input(edges);
  return load_network(vin, ein, options);
}

void save_network(const NetworkGraph& g, std::ostream& vertices, std::ostream& edges) {
  vertices << "id,x,y\n";
  for (const auto& v : g.vertices()) {
    vertices << v.id << ',' << format_number(v.coords.x) << ',' << format_number(v.coords.y)
             << '\n';
  }
  edges << "id,tail,head,kind,length,wkt\n";
  for (const auto& e : g.edges()) {
    edges << e.id << ',' << e.tail << ',' << e.head << ',' << (e.directed() ? 'D' : 'U') << ','
          << format_number(e.length) << ',';
    if (e.explicit_geometry) {
      edges << "\"LINESTRING (";
      for (std::size_t k = 0; k < e.geometry.size(); ++k) {
        if (k) edges << ", ";
        edges << format_number(e.geometry[k].x) << ' ' << format_number(e.geometry[k].y);
      }
      edges << ")\"";
    }
    edges << '\n';
  }
}

void save_network(const NetworkGraph& g, const std::filesystem::path& vertices,
                  const std::filesystem::path& edges) {
  auto vout = open_output(vertices);
  auto eout = open_output(edges);
  save_network(g, vout, eout);
}

// ---------------------------------------------------------------------------
// Event files

std::vector<RawEvent> read_events_csv(std::istream& in, const std::string& name) {
  csv::Reader reader(in, name);
  const auto c_x = reader.require_column("x");
  const auto c_y = reader.require_column("y");
  const auto c_mark = reader.column("mark");
  const auto c_time = reader.column("time");
  std::vector<RawEvent> out;
  std::vector<std::string> f;
  while (reader.next(f)) {
    RawEvent e;
    e.row = reader.row();
    e.location = {reader.number(f, c_x), reader.number(f, c_y)};
    if (c_mark && !blank(f[*c_mark])) e.mark = f[*c_mark];
    if (c_time && !blank(f[*c_time])) e.time = reader.number(f, *c_time);
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<RawEvent> read_events_geojson(std::istream& in, const std::string& name) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& ex) {
    fail(ErrorCode::ParseError, name + ": " + ex.what());
  }
  auto bad = [&](std::size_t row, const std::string& msg) {
    fail(ErrorCode::ParseError, name + ": feature " + std::to_string(row) + ": " + msg);
  };
  if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
      !doc.contains("features") || !doc["features"].is_array()) {
    fail(ErrorCode::ParseError, name + ": expected a FeatureCollection");
  }
  std::vector<RawEvent> out;
  std::size_t row = 0;
  for (const auto& feature : doc["features"]) {
    ++row;
    if (!feature.is_object() || !feature.contains("geometry")) bad(row, "missing geometry");
    const auto& geom = feature["geometry"];
    if (!geom.is_object() || geom.value("type", "") != "Point") bad(row, "geometry is not a Point");
    const auto& coords = geom["coordinates"];
    if (!coords.is_array() || coords.size() < 2 || !coords[0].is_number() ||
        !coords[1].is_number()) {
      bad(row, "bad Point coordinates");
    }
    RawEvent e;
    e.row = row;
    e.location = {coords[0].get<double>(), coords[1].get<double>()};
    if (!std::isfinite(e.location.x) || !std::isfinite(e.location.y)) bad(row, "non-finite coordinate");
    if (feature.contains("properties") && feature["properties"].is_object()) {
      const auto& props = feature["properties"];
      if (props.contains("mark") && !props["mark"].is_null()) {
        e.mark = props["mark"].is_string() ? props["mark"].get<std::string>() : props["mark"].dump();
      }
      if (props.contains("time") && !props["time"].is_null()) {
        if (!props["time"].is_number()) bad(row, "time must be numeric");
        e.time = props["time"].get<double>();
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<RawEvent> read_events(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".geojson" || ext == ".json") return read_events_geojson(in, path.string());
  return read_events_csv(in, path.string());
}

// ---------------------------------------------------------------------------
// Snapping

std::optional<Projection> nearest_edge(const NetworkGraph& g, Point2 q) {
  std::optional<Projection> best;
  for (const auto& e : g.edges()) {
    double edge_best = kInfinity;
    double edge_arc = 0.0;
    double walked = 0.0;
    for (std::size_t k = 1; k < e.geometry.size(); ++k) {
      const Point2 a = e.geometry[k - 1];
      const Point2 b = e.geometry[k];
      const double dx = b.x - a.x;
      const double dy = b.y - a.y;
      const double seg2 = dx * dx + dy * dy;
      const double seg = std::sqrt(seg2);
      double t = seg2 > 0.0 ? ((q.x - a.x) * dx + (q.y - a.y) * dy) / seg2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      const double d = distance(q, {a.x + t * dx, a.y + t * dy});
      if (d < edge_best) {
        edge_best = d;
        edge_arc = walked + t * seg;
      }
      walked += seg;
    }
    // Later edges must be strictly closer, so near-ties keep the lower id.
    if (best && !(edge_best < best->distance - 1e-12 * std::max(1.0, best->distance))) continue;
    const double fraction = e.planar_length > 0.0 ? edge_arc / e.planar_length : 0.0;
    best = Projection{{e.id, std::clamp(fraction * e.length, 0.0, e.length)}, edge_best};
  }
  return best;
}

SnappedEvents snap_events(const NetworkGraph& g, const std::vector<RawEvent>& raw,
                          double tolerance) {
  if (!(tolerance > 0.0)) fail(ErrorCode::InvalidArgument, "snap tolerance must be positive");
  std::vector<std::optional<Projection>> projections(raw.size());
  const auto count = static_cast<std::ptrdiff_t>(raw.size());
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (std::ptrdiff_t i = 0; i < count; ++i) projections[i] = nearest_edge(g, raw[i].location);

  SnappedEvents out;
  out.report.vertices = g.vertex_count();
  out.report.edges = g.edge_count();
  out.report.events_read = raw.size();
  std::vector<EventRecord> records;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto& p = projections[i];
    if (!p) {
      out.report.rejected.push_back({raw[i].row, raw[i].location, "network has no edges"});
      continue;
    }
    if (p->distance > tolerance) {
      out.report.rejected.push_back(
          {raw[i].row, raw[i].location,
           "nearest edge " + std::to_string(p->position.edge) + " is " +
               format_number(p->distance) + " away, beyond tolerance " + format_number(tolerance)});
      continue;
    }
    records.push_back({p->position, raw[i].mark, raw[i].time});
    out.snap_distances.push_back(p->distance);
  }
  out.report.events_snapped = records.size();
  out.events = EventSet(g, std::move(records));
  return out;
}

SnappedEvents snap_events(const NetworkGraph& g, const std::filesystem::path& events,
                          double tolerance) {
  return snap_events(g, read_events(events), tolerance);
}

}  // namespace netpoint
