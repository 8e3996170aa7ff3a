#include "netpoint/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "netpoint/error.hpp"
#include "netpoint/geostat.hpp"
#include "netpoint/intensity.hpp"
#include "netpoint/io.hpp"
#include "netpoint/parallel.hpp"
#include "netpoint/report.hpp"
#include "netpoint/second_order.hpp"
#include "netpoint/simulate.hpp"

namespace netpoint {

namespace {

namespace fs = std::filesystem;
using report::Json;
using report::Table;

constexpr const char* kVersion = "1.0.0";

struct Options {
  std::string graph;
  std::string events;
  std::string out;
  std::string format = "csv";
  std::string lengths = "euclidean";
  std::uint64_t seed = 0;
  std::string xi = "0:10";
  std::string r;
  std::string variant = "graph";
  std::string selector = "undirected";
  std::string mark;
  std::string grid;
  std::size_t k = 4;
  std::optional<double> bandwidth;
  std::string kernel;
  double tolerance = 0.5;
  std::string measure = "neighborhood";
  std::string degree_mode = "complete";
  bool by_mark = false;
  std::string resolution = "200";
  std::string channel;
  double rate = 1.0;
  std::string marks;
  std::string time_range;
  int threads = 0;
};

/// Bad option values detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Option parsing

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) parts.push_back(part);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double to_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad number '" + text + "' in " + what);
  }
}

std::uint32_t to_count(const std::string& text, const std::string& what) {
  const double v = to_double(text, what);
  if (v < 0 || v != std::floor(v) || v > 1e9) {
    throw UsageError(what + " needs non-negative integers, got '" + text + "'");
  }
  return static_cast<std::uint32_t>(v);
}

/// "a:b" (inclusive) or a single value b meaning 0:b.
std::vector<std::uint32_t> parse_xi(const std::string& text) {
  const auto parts = split(text, ':');
  std::uint32_t a = 0, b = 0;
  if (parts.size() == 1) {
    b = to_count(parts[0], "--xi");
  } else if (parts.size() == 2) {
    a = to_count(parts[0], "--xi");
    b = to_count(parts[1], "--xi");
  } else {
    throw UsageError("--xi expects a:b");
  }
  if (b < a) throw UsageError("--xi needs a <= b");
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = a; x <= b; ++x) out.push_back(x);
  return out;
}

/// "a:b:step", inclusive of b up to rounding.
std::vector<double> parse_r(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("--r expects a:b:step");
  const double a = to_double(parts[0], "--r");
  const double b = to_double(parts[1], "--r");
  const double step = to_double(parts[2], "--r");
  if (!(step > 0.0) || b < a) throw UsageError("--r needs a <= b and step > 0");
  const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
  if (count > 1000000) throw UsageError("--r describes too many radii");
  std::vector<double> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(a + static_cast<double>(k) * step);
  return out;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(to_double(p, what));
  return out;
}

std::vector<std::pair<std::string, double>> parse_marks(const std::string& text) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--marks expects name=p,...");
    out.emplace_back(item.substr(0, eq), to_double(item.substr(eq + 1), "--marks"));
  }
  return out;
}

std::pair<std::size_t, std::size_t> parse_resolution(const std::string& text) {
  const auto x = text.find('x');
  if (x == std::string::npos) {
    const auto n = to_count(text, "--resolution");
    if (n == 0) throw UsageError("--resolution must be positive");
    return {n, n};
  }
  const auto nx = to_count(text.substr(0, x), "--resolution");
  const auto ny = to_count(text.substr(x + 1), "--resolution");
  if (nx == 0 || ny == 0) throw UsageError("--resolution must be positive");
  return {nx, ny};
}

VertexMeasure parse_measure(const std::string& s) {
  if (s == "neighborhood") return VertexMeasure::Neighborhood;
  if (s == "in") return VertexMeasure::In;
  if (s == "out") return VertexMeasure::Out;
  if (s == "complete") return VertexMeasure::Complete;
  throw UsageError("unknown measure '" + s + "'");
}

const char* measure_name(VertexMeasure m) {
  switch (m) {
    case VertexMeasure::Neighborhood: return "neighborhood";
    case VertexMeasure::In: return "in";
    case VertexMeasure::Out: return "out";
    case VertexMeasure::Complete: return "complete";
  }
  return "";
}

DegreeMode parse_degree_mode(const std::string& s) {
  if (s == "undirected") return DegreeMode::Undirected;
  if (s == "in") return DegreeMode::In;
  if (s == "out") return DegreeMode::Out;
  if (s == "complete") return DegreeMode::Complete;
  throw UsageError("unknown degree mode '" + s + "'");
}

// ---------------------------------------------------------------------------
// Inputs

std::pair<fs::path, fs::path> graph_files(const std::string& spec) {
  if (spec.empty()) throw UsageError("--graph is required");
  const auto comma = spec.find(',');
  if (comma != std::string::npos) return {spec.substr(0, comma), spec.substr(comma + 1)};
  const fs::path dir(spec);
  return {dir / "vertices.csv", dir / "edges.csv"};
}

LoadedNetwork load(const Options& o) {
  GraphOptions go;
  if (o.lengths == "squared") {
    go.lengths = LengthConvention::SquaredEuclidean;
  } else if (o.lengths != "euclidean") {
    throw UsageError("--lengths must be euclidean or squared");
  }
  const auto [v, e] = graph_files(o.graph);
  return load_network(v, e, go);
}

SnappedEvents load_events(const Options& o, const NetworkGraph& g) {
  if (o.events.empty()) throw UsageError("--events is required");
  auto snapped = snap_events(g, fs::path(o.events), o.tolerance);
  if (!o.mark.empty()) snapped.events = snapped.events.filtered(g, o.mark);
  return snapped;
}

// ---------------------------------------------------------------------------
// Output

struct Result {
  Table table;
  Json meta;
  std::function<std::string()> svg;
};

Json base_meta(const std::string& command, const Options& o) {
  Json m;
  m["tool"] = "netpoint";
  m["version"] = kVersion;
  m["command"] = command;
  m["units"] = "lengths in network length units; intensities in events per unit length";
  if (!o.mark.empty()) m["mark"] = o.mark;
  return m;
}

void add_event_report(Json& meta, const SnappedEvents& s) {
  meta["events_read"] = s.report.events_read;
  meta["events_snapped"] = s.report.events_snapped;
  meta["events_rejected"] = s.report.rejected.size();
  meta["events_used"] = s.events.size();
}

void emit(const Options& o, const Result& result, std::ostream& out) {
  std::ostringstream body;
  if (o.format == "csv") {
    report::write_csv(body, result.table);
  } else if (o.format == "json") {
    report::write_json(body, result.table, result.meta);
  } else if (o.format == "svg") {
    if (!result.svg) throw UsageError("this command has no SVG rendering");
    body << result.svg();
  } else {
    throw UsageError("--format must be csv, json or svg");
  }
  if (o.out.empty()) {
    out << body.str();
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) fail(ErrorCode::InvalidArgument, "cannot write " + o.out);
  file << body.str();
  if (o.format != "json") {
    std::ofstream meta(o.out + ".meta.json", std::ios::binary);
    if (!meta) fail(ErrorCode::InvalidArgument, "cannot write " + o.out + ".meta.json");
    meta << result.meta.dump(2) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Commands

int cmd_validate(const Options& o, std::ostream& out) {
  const auto net = load(o);
  const auto& g = net.graph;
  out << "vertices: " << g.vertex_count() << '\n'
      << "edges: " << g.edge_count() << " (" << g.undirected_edge_count() << " undirected, "
      << g.directed_edge_count() << " directed)\n"
      << "total length: " << format_number(g.total_length()) << '\n'
      << "isolated vertices: " << net.report.isolated.size();
  for (std::size_t i = 0; i < net.report.isolated.size(); ++i) {
    out << (i ? ", " : " [") << net.report.isolated[i];
  }
  out << (net.report.isolated.empty() ? "" : "]") << '\n';
  if (!o.events.empty()) {
    const auto s = snap_events(g, fs::path(o.events), o.tolerance);
    out << "events read: " << s.report.events_read << '\n'
        << "events snapped: " << s.report.events_snapped << '\n'
        << "events rejected: " << s.report.rejected.size() << '\n';
    for (const auto& r : s.report.rejected) {
      out << "  row " << r.row << " (" << format_number(r.location.x) << ", "
          << format_number(r.location.y) << "): " << r.reason << '\n';
    }
  }
  out << "status: ok\n";
  return kExitOk;
}

Result cmd_summary(const Options& o) {
  const auto net = load(o);
  const auto& g = net.graph;
  const DegreeMode mode = parse_degree_mode(o.degree_mode);
  std::map<std::size_t, std::size_t> histogram;
  double total = 0.0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto d = degree(g, v, mode);
    ++histogram[d];
    total += static_cast<double>(d);
  }
  Result r;
  r.table.columns = {"degree", "count"};
  for (const auto& [d, c] : histogram) r.table.add({d, c});
  r.meta = base_meta("summary", o);
  r.meta["degree_mode"] = o.degree_mode;
  r.meta["vertices"] = g.vertex_count();
  r.meta["edges"] = g.edge_count();
  r.meta["directed_edges"] = g.directed_edge_count();
  r.meta["total_length"] = g.total_length();
  r.meta["mean_degree"] = g.vertex_count() ? total / static_cast<double>(g.vertex_count()) : 0.0;
  r.meta["min_degree"] = g.vertex_count() ? deg_min(g, mode) : 0;
  r.meta["max_degree"] = g.vertex_count() ? deg_max(g, mode) : 0;
  r.meta["isolated_vertices"] = net.report.isolated;
  std::vector<double> xs, ys;
  for (const auto& [d, c] : histogram) {
    xs.push_back(static_cast<double>(d));
    ys.push_back(static_cast<double>(c));
  }
  r.svg = [xs, ys] {
    return report::svg_curves({{"vertices", xs, ys}}, "degree distribution", "degree", "count");
  };
  return r;
}

Result cmd_intensity(const Options& o) {
  auto net = load(o);
  const auto snapped = load_events(o, net.graph);
  const auto measure = parse_measure(o.measure);
  const auto table = intensity_table(net.graph, snapped.events, measure, o.by_mark);

  Result r;
  r.table.columns = {"level", "id", "channel", "intensity"};
  for (std::size_t c = 0; c < table.channels.size(); ++c) {
    for (EdgeId e = 0; e < net.graph.edge_count(); ++e) {
      r.table.add({"edge", e, table.channels[c], table.edge_values[c][e]});
    }
  }
  for (std::size_t c = 0; c < table.channels.size(); ++c) {
    for (VertexId v = 0; v < net.graph.vertex_count(); ++v) {
      r.table.add({"vertex", v, table.channels[c],
                   table.undefined[v] ? Json() : Json(table.vertex_values[c][v])});
    }
  }
  r.meta = base_meta("intensity", o);
  r.meta["vertex_measure"] = measure_name(measure);
  r.meta["channels"] = table.channels;
  add_event_report(r.meta, snapped);
  std::size_t undefined = 0;
  for (bool u : table.undefined) undefined += u ? 1 : 0;
  r.meta["undefined_vertices"] = undefined;
  r.meta["edge_intensity_summary"] = report::summary(table.edge_values.front());
  auto graph = std::make_shared<NetworkGraph>(std::move(net.graph));
  auto values = table.edge_values.front();
  r.svg = [graph, values] {
    return report::svg_network(*graph, values, std::nullopt, "edgewise intensity");
  };
  return r;
}

Result cmd_kfun(const Options& o) {
  const auto net = load(o);
  const auto snapped = load_events(o, net.graph);
  const auto& g = net.graph;
  const auto& ev = snapped.events;

  KCurve curve;
  std::string distance = "line-graph hop distance between host edges";
  if (o.variant == "linear") {
    if (o.r.empty()) throw UsageError("--variant linear needs --r a:b:step");
    const auto rs = parse_r(o.r);
    curve = k_linear(g, ev, rs);
    distance = "shortest-path distance along the network";
  } else {
    const auto xis = parse_xi(o.xi);
    if (o.variant == "graph") {
      curve = k_graph(g, ev, xis);
    } else if (o.variant == "graph-forward") {
      curve = k_graph_directed(g, ev, xis, Direction::Forward);
    } else if (o.variant == "graph-backward") {
      curve = k_graph_directed(g, ev, xis, Direction::Backward);
    } else if (o.variant == "graph-partial") {
      EdgeSelector sel;
      if (o.selector == "undirected") {
        sel = EdgeSelector::UndirectedOnly;
      } else if (o.selector == "forward") {
        sel = EdgeSelector::Forward;
      } else if (o.selector == "backward") {
        sel = EdgeSelector::Backward;
      } else {
        throw UsageError("--selector must be undirected, forward or backward");
      }
      curve = k_graph_partial(g, ev, xis, sel);
    } else {
      throw UsageError("unknown --variant '" + o.variant + "'");
    }
  }

  const bool linear = curve.variant == KVariant::LinearNetwork;
  Result r;
  r.table.columns = {"variant", linear ? "r" : "xi", "k"};
  for (std::size_t i = 0; i < curve.values.size(); ++i) {
    r.table.add({std::string(to_string(curve.variant)),
                 linear ? Json(curve.abscissa[i])
                        : Json(static_cast<std::uint64_t>(curve.abscissa[i])),
                 curve.values[i]});
  }
  r.meta = base_meta("kfun", o);
  r.meta["variant"] = std::string(to_string(curve.variant));
  if (o.variant == "graph-partial") r.meta["selector"] = o.selector;
  r.meta["distance"] = distance;
  r.meta["normalizer"] = curve.normalizer;
  r.meta["n"] = curve.n;
  add_event_report(r.meta, snapped);
  r.meta["k_summary"] = report::summary(curve.values);
  const std::string name(to_string(curve.variant));
  r.svg = [curve, name, linear] {
    return report::svg_curves({{name, curve.abscissa, curve.values}}, "K-function",
                              linear ? "r" : "xi", "K");
  };
  return r;
}

Result cmd_pcf(const Options& o) {
  const auto net = load(o);
  const auto snapped = load_events(o, net.graph);
  if (o.r.empty()) throw UsageError("pcf needs --r a:b:step");
  const auto rs = parse_r(o.r);
  std::optional<KernelSpec> kernel;
  if (o.bandwidth || !o.kernel.empty()) {
    KernelSpec k;
    if (!o.kernel.empty()) k.family = parse_kernel_family(o.kernel);
    k.bandwidth = o.bandwidth ? *o.bandwidth : 0.15 * rs.back();
    kernel = k;
  }
  const auto res = pcf_linear(net.graph, snapped.events, rs, kernel);

  Result r;
  r.table.columns = {"r", "g"};
  for (std::size_t i = 0; i < res.r.size(); ++i) r.table.add({res.r[i], res.values[i]});
  r.meta = base_meta("pcf", o);
  r.meta["distance"] = "shortest-path distance along the network";
  r.meta["kernel"] = std::string(to_string(res.kernel.family));
  r.meta["bandwidth"] = res.kernel.bandwidth;
  r.meta["intensity"] = "homogeneous, n / total length";
  r.meta["n"] = res.n;
  r.meta["skipped_pairs"] = res.skipped_pairs;
  add_event_report(r.meta, snapped);
  r.meta["g_summary"] = report::summary(res.values);
  r.svg = [res] {
    return report::svg_curves({{"g", res.r, res.values}}, "pair correlation function", "r", "g");
  };
  return r;
}

Result cmd_slices(const Options& o) {
  const auto net = load(o);
  const auto snapped = load_events(o, net.graph);
  if (o.grid.empty()) throw UsageError("slices needs --grid t0,t1,...");
  const TimeGrid grid(parse_list(o.grid, "--grid"));
  const auto& g = net.graph;

  Result r;
  r.table.columns = {"edge", "slice", "start", "end", "count", "intensity"};
  std::vector<double> totals(grid.slice_count(), 0.0);
  std::size_t excluded = 0;
  std::size_t in_window = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto sc = slice_counts(snapped.events, grid, e);
    excluded += sc.excluded;
    for (std::size_t s = 0; s < sc.counts.size(); ++s) {
      const double len = g.edge(e).length;
      r.table.add({e, s, grid.breakpoints()[s], grid.breakpoints()[s + 1], sc.counts[s],
                   static_cast<double>(sc.counts[s]) / len});
      totals[s] += static_cast<double>(sc.counts[s]);
      in_window += sc.counts[s];
    }
  }
  r.meta = base_meta("slices", o);
  r.meta["breakpoints"] = grid.breakpoints();
  r.meta["slice_rule"] = "left-closed [t_i, t_{i+1})";
  r.meta["slice_totals"] = totals;
  r.meta["events_in_window"] = in_window;
  r.meta["events_outside_window"] = excluded;
  add_event_report(r.meta, snapped);
  std::vector<double> idx;
  for (std::size_t s = 0; s < totals.size(); ++s) idx.push_back(static_cast<double>(s));
  r.svg = [idx, totals] {
    return report::svg_curves({{"events", idx, totals}}, "events per slice", "slice", "count");
  };
  return r;
}

/// Vertex attributes for cluster/smooth: per-slice intensities with
/// --grid, per-mark with --by-mark, otherwise the overall intensity.
VertexAttributeMatrix attributes(const Options& o, const NetworkGraph& g, const EventSet& ev,
                                 Json& meta) {
  const auto measure = parse_measure(o.measure);
  IntensityTable table;
  if (!o.grid.empty()) {
    table = slice_intensity_table(g, ev, TimeGrid(parse_list(o.grid, "--grid")), measure);
    meta["channels_from"] = "time slices";
  } else {
    table = intensity_table(g, ev, measure, o.by_mark);
    meta["channels_from"] = o.by_mark ? "mark categories" : "all events";
  }
  meta["vertex_measure"] = measure_name(measure);
  meta["channels"] = table.channels;
  return VertexAttributeMatrix::from_table(table);
}

Result cmd_cluster(const Options& o) {
  auto net = load(o);
  const auto snapped = load_events(o, net.graph);
  Result r;
  r.meta = base_meta("cluster", o);
  const auto attrs = attributes(o, net.graph, snapped.events, r.meta);
  const auto tree = ward_cluster(attrs);
  const auto labels = tree.cut(o.k);

  r.table.columns = {"vertex", "cluster"};
  for (std::size_t v = 0; v < labels.size(); ++v) r.table.add({v, labels[v]});
  r.meta["method"] = "Ward, squared Euclidean Lance-Williams; height = sqrt of merge cost";
  r.meta["k"] = o.k;
  std::vector<std::size_t> sizes(o.k, 0);
  for (auto l : labels) ++sizes[l];
  r.meta["cluster_sizes"] = sizes;
  Json merges = Json::array();
  for (const auto& m : tree.merges()) merges.push_back({m.a, m.b, m.height, m.size});
  r.meta["merges"] = std::move(merges);
  add_event_report(r.meta, snapped);
  auto graph = std::make_shared<NetworkGraph>(std::move(net.graph));
  r.svg = [graph, labels] {
    return report::svg_network(*graph, std::nullopt, labels, "Ward clusters");
  };
  return r;
}

Result cmd_smooth(const Options& o) {
  const auto net = load(o);
  const auto snapped = load_events(o, net.graph);
  Result r;
  r.meta = base_meta("smooth", o);
  const auto attrs = attributes(o, net.graph, snapped.events, r.meta);
  KernelSpec kernel;
  kernel.family = o.kernel.empty() ? KernelFamily::Gaussian : parse_kernel_family(o.kernel);
  kernel.bandwidth = o.bandwidth ? *o.bandwidth : default_smoothing_bandwidth(net.graph);
  GridSpec grid;
  std::tie(grid.nx, grid.ny) = parse_resolution(o.resolution);
  const auto field = smooth_field(net.graph, attrs, grid, kernel);

  std::size_t channel = 0;
  if (!o.channel.empty()) {
    const auto it = std::find(field.channels.begin(), field.channels.end(), o.channel);
    if (it == field.channels.end()) throw UsageError("unknown --channel '" + o.channel + "'");
    channel = static_cast<std::size_t>(it - field.channels.begin());
  }

  r.table.columns = {"channel", "ix", "iy", "x", "y", "value"};
  for (std::size_t c = 0; c < field.channels.size(); ++c) {
    for (std::size_t iy = 0; iy < field.ny; ++iy) {
      for (std::size_t ix = 0; ix < field.nx; ++ix) {
        r.table.add({field.channels[c], ix, iy, field.xs[ix], field.ys[iy], field.at(c, ix, iy)});
      }
    }
  }
  r.meta["kernel"] = std::string(to_string(kernel.family));
  r.meta["bandwidth"] = kernel.bandwidth;
  r.meta["distance"] = "planar Euclidean distance to vertex coordinates";
  r.meta["resolution"] = {field.nx, field.ny};
  r.meta["unsupported_points"] = field.unsupported;
  add_event_report(r.meta, snapped);
  r.meta["value_summary"] = report::summary(field.values[channel]);
  r.svg = [field, channel] { return report::svg_heatmap(field, channel); };
  return r;
}

Result cmd_simulate(const Options& o) {
  const auto net = load(o);
  SimulationSpec spec;
  spec.rate = o.rate;
  spec.seed = o.seed;
  if (!o.marks.empty()) spec.marks = parse_marks(o.marks);
  if (!o.time_range.empty()) {
    const auto parts = split(o.time_range, ':');
    if (parts.size() != 2) throw UsageError("--time-range expects t0:t1");
    spec.time_range = {to_double(parts[0], "--time-range"), to_double(parts[1], "--time-range")};
  }
  const auto ev = simulate_poisson(net.graph, spec);

  Result r;
  r.table.columns = {"x", "y", "edge", "offset"};
  if (!spec.marks.empty()) r.table.columns.push_back("mark");
  if (spec.time_range) r.table.columns.push_back("time");
  for (const auto& rec : ev.records()) {
    const Point2 p = planar_position(net.graph, rec.position);
    std::vector<Json> row{p.x, p.y, rec.position.edge, rec.position.offset};
    if (!spec.marks.empty()) row.emplace_back(*rec.mark);
    if (spec.time_range) row.emplace_back(*rec.time);
    r.table.add(std::move(row));
  }
  r.meta = base_meta("simulate", o);
  r.meta["process"] = "homogeneous Poisson on the network";
  r.meta["rate"] = spec.rate;
  r.meta["seed"] = spec.seed;
  r.meta["rng"] = "Philox4x32-10, one stream per edge";
  r.meta["events"] = ev.size();
  r.meta["total_length"] = net.graph.total_length();
  return r;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::IsolatedVertex:
    case ErrorCode::NotAPath:
    case ErrorCode::EmptyIncidenceSet:
    case ErrorCode::EmptyEdgeSelection:
    case ErrorCode::MissingTimes:
    case ErrorCode::TooFewEvents:
    case ErrorCode::TooFewRows:
    case ErrorCode::EmptyAttributeMatrix:
      return kExitInfeasible;
    default:
      return kExitInput;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Point pattern statistics on spatial networks", "netpoint"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto add_graph = [&](CLI::App* c) {
    c->add_option("--graph", o.graph,
                  "Directory holding vertices.csv and edges.csv, or 'vertices.csv,edges.csv'")
        ->required();
    c->add_option("--lengths", o.lengths, "Derived edge lengths: euclidean or squared");
    c->add_option("--threads", o.threads, "Worker threads (default NETPOINT_THREADS or all)");
  };
  auto add_output = [&](CLI::App* c) {
    c->add_option("--out", o.out, "Output file (default stdout); writes <out>.meta.json too");
    c->add_option("--format", o.format, "csv, json or svg");
  };
  auto add_events = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--events", o.events, "Events CSV (x,y[,mark][,time]) or GeoJSON");
    if (required) opt->required();
    c->add_option("--tolerance", o.tolerance, "Snap tolerance in coordinate units");
    c->add_option("--mark", o.mark, "Restrict to one mark category");
    c->add_option("--seed", o.seed, "Seed (unused by deterministic estimators)");
  };
  auto add_channels = [&](CLI::App* c) {
    c->add_option("--measure", o.measure, "Vertex measure: neighborhood, in, out or complete");
    c->add_flag("--by-mark", o.by_mark, "One channel per mark category");
    c->add_option("--grid", o.grid, "Time breakpoints t0,t1,...; one channel per slice");
  };

  auto* validate = app.add_subcommand("validate", "Load and check a network (and events)");
  add_graph(validate);
  add_events(validate, false);

  auto* summary = app.add_subcommand("summary", "Degree distribution");
  add_graph(summary);
  add_output(summary);
  summary->add_option("--degree-mode", o.degree_mode, "undirected, in, out or complete");

  auto* intensity = app.add_subcommand("intensity", "Edgewise and vertex intensities");
  add_graph(intensity);
  add_events(intensity, true);
  add_output(intensity);
  intensity->add_option("--measure", o.measure, "neighborhood, in, out or complete");
  intensity->add_flag("--by-mark", o.by_mark, "One channel per mark category");

  auto* kfun = app.add_subcommand("kfun", "K-function");
  add_graph(kfun);
  add_events(kfun, true);
  add_output(kfun);
  kfun->add_option("--variant", o.variant,
                   "graph, graph-forward, graph-backward, graph-partial or linear");
  kfun->add_option("--xi", o.xi, "Hop range a:b for graph variants");
  kfun->add_option("--r", o.r, "Radii a:b:step for the linear variant");
  kfun->add_option("--selector", o.selector, "graph-partial edges: undirected, forward, backward");

  auto* pcf = app.add_subcommand("pcf", "Pair correlation function");
  add_graph(pcf);
  add_events(pcf, true);
  add_output(pcf);
  pcf->add_option("--r", o.r, "Radii a:b:step")->required();
  pcf->add_option("--kernel", o.kernel, "epanechnikov, gaussian or box");
  pcf->add_option("--bandwidth", o.bandwidth, "Kernel bandwidth (default 0.15 max r)");

  auto* slices = app.add_subcommand("slices", "Per-edge counts in time slices");
  add_graph(slices);
  add_events(slices, true);
  add_output(slices);
  slices->add_option("--grid", o.grid, "Time breakpoints t0,t1,...")->required();

  auto* cluster = app.add_subcommand("cluster", "Ward clustering of vertex intensities");
  add_graph(cluster);
  add_events(cluster, true);
  add_output(cluster);
  add_channels(cluster);
  cluster->add_option("--k", o.k, "Number of clusters");

  auto* smooth = app.add_subcommand("smooth", "Kernel smoothing of vertex intensities");
  add_graph(smooth);
  add_events(smooth, true);
  add_output(smooth);
  add_channels(smooth);
  smooth->add_option("--kernel", o.kernel, "gaussian (default), epanechnikov or box");
  smooth->add_option("--bandwidth", o.bandwidth, "Bandwidth (default 0.1 bbox diagonal)");
  smooth->add_option("--resolution", o.resolution, "Grid size N or NxM");
  smooth->add_option("--channel", o.channel, "Channel drawn by --format svg");

  auto* simulate = app.add_subcommand("simulate", "Homogeneous Poisson events on the network");
  add_graph(simulate);
  add_output(simulate);
  simulate->add_option("--rate", o.rate, "Events per unit length");
  simulate->add_option("--seed", o.seed, "Seed");
  simulate->add_option("--marks", o.marks, "Mark distribution name=p,...");
  simulate->add_option("--time-range", o.time_range, "Uniform times on t0:t1");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "usage error: " << ex.what() << '\n';
    return kExitUsage;
  }

  std::optional<ThreadLimit> limit;
  if (o.threads < 0) {
    err << "usage error: --threads must be non-negative\n";
    return kExitUsage;
  }
  if (o.threads > 0) limit.emplace(o.threads);

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    Result result;
    if (summary->parsed()) result = cmd_summary(o);
    if (intensity->parsed()) result = cmd_intensity(o);
    if (kfun->parsed()) result = cmd_kfun(o);
    if (pcf->parsed()) result = cmd_pcf(o);
    if (slices->parsed()) result = cmd_slices(o);
    if (cluster->parsed()) result = cmd_cluster(o);
    if (smooth->parsed()) result = cmd_smooth(o);
    if (simulate->parsed()) result = cmd_simulate(o);
    emit(o, result, out);
    return kExitOk;
  } catch (const UsageError& ex) {
    err << "usage error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_code_for(ex.code());
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitInput;
  }
}

}  // namespace netpoint
