#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include <unistd.h>

#include "netpoint/cli.hpp"
#include "netpoint/io.hpp"
#include "netpoint/rng.hpp"
#include "netpoint/simulate.hpp"
#include "support/check.hpp"
#include "support/fixtures.hpp"

using namespace netpoint;
namespace fs = std::filesystem;

namespace {

const fs::path kData = NETPOINT_TEST_DATA;

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

LoadedNetwork load_text(const std::string& vertices, const std::string& edges) {
  std::istringstream v(vertices), e(edges);
  return load_network(v, e);
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

/// Scratch directory removed on scope exit.
struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("netpoint_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return path / name;
  }
};

const std::string kSquareVertices = "id,x,y\n0,0,0\n1,1,0\n2,1,1\n3,0,1\n";

}  // namespace

TEST_SUITE("network files") {
  TEST_CASE("square fixture from disk") {
    const auto net = load_network(kData / "square/vertices.csv", kData / "square/edges.csv");
    CHECK(net.graph.vertex_count() == 4);
    CHECK(net.graph.edge_count() == 4);
    CHECK(net.graph.total_length() == 4.0);
    CHECK(net.report.isolated.empty());
  }

  TEST_CASE("header order, case, CRLF and optional columns") {
    const auto net = load_text("Y,X,ID\r\n0,0,0\r\n0,3,1\r\n4,3,2\r\n",
                               "kind,head,tail,id,length\n"
                               "U,1,0,0,\n"
                               "directed,2,1,1,7.5\n");
    CHECK(net.graph.edge(0).length == 3.0);
    CHECK(net.graph.edge(1).length == 7.5);
    CHECK(net.graph.edge(1).directed());
    CHECK(net.graph.vertex(2).coords == Point2{3, 4});
  }

  TEST_CASE("isolated vertices are reported") {
    const auto net = load_text("id,x,y\n0,0,0\n1,1,0\n2,5,5\n", "id,tail,head,kind\n0,0,1,U\n");
    CHECK(net.report.isolated == std::vector<VertexId>{2});
  }

  TEST_CASE("dangling reference names the row") {
    const auto msg = message_of([] {
      load_text(kSquareVertices, "id,tail,head,kind\n0,0,1,U\n1,1,9,U\n");
    });
    CHECK(msg.find("DanglingReference") != std::string::npos);
    CHECK(msg.find("row 2") != std::string::npos);
    CHECK(msg.find("unknown vertex 9") != std::string::npos);
    CHECK_CODE(load_text(kSquareVertices, "id,tail,head,kind\n0,0,7,U\n"),
               ErrorCode::DanglingReference);
  }

  TEST_CASE("duplicate edge names both rows") {
    const auto msg = message_of([] {
      load_text(kSquareVertices, "id,tail,head,kind\n0,0,1,U\n1,1,2,U\n2,1,0,U\n");
    });
    CHECK(msg.find("DuplicateEdge") != std::string::npos);
    CHECK(msg.find("rows 1 and 3") != std::string::npos);
  }

  TEST_CASE("parse errors name row and column") {
    const auto msg = message_of([] { load_text("id,x,y\n0,0,0\n1,abc,0\n", "id,tail,head,kind\n"); });
    CHECK(msg.find("ParseError") != std::string::npos);
    CHECK(msg.find("row 2") != std::string::npos);
    CHECK(msg.find("'x'") != std::string::npos);
    CHECK_CODE(load_text("id,x\n0,0\n", "id,tail,head,kind\n"), ErrorCode::ParseError);
    CHECK_CODE(load_text(kSquareVertices, "id,tail,head,kind\n0,0,1,Q\n"), ErrorCode::ParseError);
    CHECK_CODE(load_text("id,x,y\n0,0,0\n0,1,1\n", "id,tail,head,kind\n"), ErrorCode::ParseError);
    CHECK_CODE(load_text(kSquareVertices, "id,tail,head,kind\n0,1,1,U\n"), ErrorCode::SelfLoop);
    CHECK_CODE(load_text(kSquareVertices, "id,tail,head,kind\n0,0,1,U\n1,1,2\n"),
               ErrorCode::ParseError);
  }

  TEST_CASE("save then load reproduces every number exactly") {
    std::vector<SpatialVertex> vs{{0, {0.1, 0.2}}, {1, {1.0 / 3.0, 2.0 / 7.0}}, {2, {5.5, -1e-7}},
                                  {3, {-4.25, 9.0}}};
    std::vector<EdgeSpec> es{
        {0, 0, 1, EdgeKind::Undirected, std::nullopt, {}},
        {1, 1, 2, EdgeKind::Directed, 12.345678901234567, {}},
        {2, 2, 3, EdgeKind::Undirected, std::nullopt, {{5.5, -1e-7}, {3.0, 2.0 / 3.0}, {-4.25, 9.0}}}};
    const auto g = build_graph(vs, es);
    std::ostringstream vo, eo;
    save_network(g, vo, eo);
    const auto back = load_text(vo.str(), eo.str()).graph;
    REQUIRE(back.vertex_count() == g.vertex_count());
    REQUIRE(back.edge_count() == g.edge_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) CHECK(back.vertex(v).coords == g.vertex(v).coords);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      CHECK(back.edge(e).tail == g.edge(e).tail);
      CHECK(back.edge(e).head == g.edge(e).head);
      CHECK(back.edge(e).kind == g.edge(e).kind);
      CHECK(back.edge(e).length == g.edge(e).length);
      CHECK(back.edge(e).geometry == g.edge(e).geometry);
    }
    std::ostringstream vo2, eo2;
    save_network(back, vo2, eo2);
    CHECK(vo2.str() == vo.str());
    CHECK(eo2.str() == eo.str());
  }

  TEST_CASE("shortest round-trip number text") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(2.0) == "2");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  }
}

TEST_SUITE("event snapping") {
  TEST_CASE("projection onto the nearest edge") {
    const auto g = fixture::square();
    const auto p = nearest_edge(g, {0.5, 0.1});
    REQUIRE(p);
    CHECK(p->position.edge == 0);
    CHECK(p->position.offset == doctest::Approx(0.5));
    CHECK(p->distance == doctest::Approx(0.1));
  }

  TEST_CASE("equidistant edges resolve to the lowest id") {
    const auto p = nearest_edge(fixture::square(), {0.5, 0.5});
    REQUIRE(p);
    CHECK(p->position.edge == 0);
    const auto corner = nearest_edge(fixture::square(), {1.0, 0.0});
    CHECK(corner->position.edge == 0);
    CHECK(corner->position.offset == 1.0);
  }

  TEST_CASE("events beyond the tolerance are rejected, not raised") {
    const auto g = fixture::square();
    const auto snapped = snap_events(g, kData / "square/events.csv", 0.5);
    CHECK(snapped.events.size() == 5);
    CHECK(snapped.report.events_read == 6);
    CHECK(snapped.report.events_snapped == 5);
    REQUIRE(snapped.report.rejected.size() == 1);
    CHECK(snapped.report.rejected[0].row == 6);
    CHECK(snapped.report.rejected[0].reason.find("beyond tolerance") != std::string::npos);
    CHECK(snapped.events[0].mark == std::optional<std::string>("a"));
    CHECK(snapped.events[1].time == std::optional<double>(2.0));
    CHECK(snapped.events.categories() == std::vector<std::string>{"a", "b"});
    CHECK_CODE(snap_events(g, std::vector<RawEvent>{}, 0.0), ErrorCode::InvalidArgument);
  }

  TEST_CASE("snapping a snapped point is a fixed point") {
    const auto g = fixture::grid(4);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> coord(-0.2, 3.2);
    std::vector<RawEvent> raw;
    for (std::size_t i = 0; i < 200; ++i) raw.push_back({i + 1, {coord(rng), coord(rng)}, {}, {}});
    const auto once = snap_events(g, raw, 10.0);
    std::vector<RawEvent> again;
    for (const auto& r : once.events.records())
      again.push_back({0, planar_position(g, r.position), {}, {}});
    const auto twice = snap_events(g, again, 10.0);
    REQUIRE(twice.events.size() == once.events.size());
    for (std::size_t i = 0; i < once.events.size(); ++i) {
      CHECK(twice.events[i].position.edge == once.events[i].position.edge);
      CHECK(std::abs(twice.events[i].position.offset - once.events[i].position.offset) < 1e-12);
      CHECK(twice.snap_distances[i] < 1e-12);
    }
  }

  TEST_CASE("GeoJSON points with properties") {
    std::istringstream in(R"({"type":"FeatureCollection","features":[
      {"type":"Feature","geometry":{"type":"Point","coordinates":[0.5,0.1]},
       "properties":{"mark":"a","time":3.5}},
      {"type":"Feature","geometry":{"type":"Point","coordinates":[1.0,0.5]},"properties":null}]})");
    const auto raw = read_events_geojson(in);
    REQUIRE(raw.size() == 2);
    CHECK(raw[0].location == Point2{0.5, 0.1});
    CHECK(raw[0].mark == std::optional<std::string>("a"));
    CHECK(raw[0].time == std::optional<double>(3.5));
    CHECK(!raw[1].mark);
    std::istringstream bad(R"({"type":"FeatureCollection","features":[{"geometry":{"type":"LineString"}}]})");
    CHECK_CODE(read_events_geojson(bad), ErrorCode::ParseError);
  }

  TEST_CASE("CSV events with blanks") {
    std::istringstream in("x,y,mark,time\n1,2,,\n3,4,b,7\n");
    const auto raw = read_events_csv(in);
    REQUIRE(raw.size() == 2);
    CHECK(!raw[0].mark);
    CHECK(!raw[0].time);
    CHECK(raw[1].time == std::optional<double>(7.0));
    std::istringstream bad("x,y\n1,nan\n");
    CHECK_CODE(read_events_csv(bad), ErrorCode::ParseError);
  }
}

TEST_SUITE("simulation") {
  TEST_CASE("Philox known-answer vectors") {
    using Block = std::array<std::uint32_t, 4>;
    CHECK(Philox::block({0, 0, 0, 0}, {0, 0}) ==
          Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                        {0xffffffff, 0xffffffff}) ==
          Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                        {0xa4093822, 0x299f31d0}) ==
          Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
    Philox gen(0, 0);
    CHECK(gen() == 0x6627e8d5);
  }

  TEST_CASE("rate zero, validation and reproducibility") {
    const auto g = fixture::grid(3);
    CHECK(simulate_poisson(g, {0.0, 1, {}, {}}).empty());
    CHECK_CODE(simulate_poisson(g, {-1.0, 1, {}, {}}), ErrorCode::BadSpec);
    CHECK_CODE(simulate_poisson(g, {1.0, 1, {{"a", 0.5}}, {}}), ErrorCode::BadSpec);
    CHECK_CODE(simulate_poisson(g, {1.0, 1, {}, std::pair{2.0, 2.0}}), ErrorCode::BadSpec);
    const SimulationSpec spec{3.0, 17, {{"a", 0.25}, {"b", 0.75}}, std::pair{0.0, 10.0}};
    const auto a = simulate_poisson(g, spec);
    const auto b = simulate_poisson(g, spec);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].position == b[i].position);
      CHECK(a[i].mark == b[i].mark);
      CHECK(a[i].time == b[i].time);
      CHECK(*a[i].time >= 0.0);
      CHECK(*a[i].time < 10.0);
    }
    CHECK(a.all_timed());
    auto other = spec;
    other.seed = 18;
    const auto c = simulate_poisson(g, other);
    CHECK((c.size() != a.size() || c[0].position != a[0].position));
  }

  TEST_CASE("counts and offsets pass chi-square checks") {
    using boost::math::chi_squared;
    using boost::math::quantile;
    const auto g = fixture::grid(4);  // 24 unit edges
    const double rate = 2.0;
    const double mean = rate * g.total_length();
    constexpr int kReplicates = 500;
    std::vector<double> totals;
    std::vector<double> offset_bins(10, 0.0);
    double offsets = 0.0;
    for (int rep = 0; rep < kReplicates; ++rep) {
      const auto ev = simulate_poisson(g, {rate, static_cast<std::uint64_t>(1000 + rep), {}, {}});
      totals.push_back(static_cast<double>(ev.size()));
      for (const auto& r : ev.records()) {
        offset_bins[std::min<std::size_t>(9, static_cast<std::size_t>(r.position.offset * 10))] += 1;
        offsets += 1;
      }
    }
    // Index of dispersion: sum (n - mean)^2 / mean is chi-square with R - 1 df.
    double dispersion = 0.0;
    for (double t : totals) dispersion += (t - mean) * (t - mean) / mean;
    const chi_squared replicates(kReplicates - 1);
    CHECK(dispersion > quantile(replicates, 0.001));
    CHECK(dispersion < quantile(replicates, 0.999));

    const double expected = offsets / 10.0;
    double uniform = 0.0;
    for (double o : offset_bins) uniform += (o - expected) * (o - expected) / expected;
    CHECK(uniform < quantile(chi_squared(9), 0.999));

    const double avg = std::accumulate(totals.begin(), totals.end(), 0.0) / kReplicates;
    CHECK(std::abs(avg - mean) < 4.0 * std::sqrt(mean / kReplicates));
  }

  TEST_CASE("mark frequencies follow the distribution") {
    const auto g = fixture::grid(6);
    const auto ev = simulate_poisson(g, {50.0, 5, {{"a", 0.2}, {"b", 0.8}}, {}});
    double a = 0;
    for (const auto& r : ev.records()) a += *r.mark == "a" ? 1 : 0;
    const double n = static_cast<double>(ev.size());
    CHECK(std::abs(a / n - 0.2) < 4.0 * std::sqrt(0.16 / n));
  }
}

TEST_SUITE("command line") {
  const std::string square = (kData / "square").string();
  const std::string square_events = (kData / "square/events.csv").string();
  const std::string path3 = (kData / "path3").string();
  const std::string path3_events = (kData / "path3/events.csv").string();

  TEST_CASE("validate reports rejections and succeeds") {
    const auto r = cli({"validate", "--graph", square, "--events", square_events});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("status: ok") != std::string::npos);
    CHECK(r.out.find("row 6") != std::string::npos);
  }

  TEST_CASE("summary of the square") {
    const auto r = cli({"summary", "--graph", square});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "degree,count\n2,4\n");
  }

  TEST_CASE("graph K on the path fixture") {
    const auto r = cli({"kfun", "--graph", path3, "--events", path3_events, "--xi", "0:2"});
    CHECK(r.code == kExitOk);
    CHECK(r.out == "variant,xi,k\ngraph,0,1\ngraph,1,1\ngraph,2,3\n");
  }

  TEST_CASE("graph and vertex files given as a pair") {
    const auto pair = (kData / "square/vertices.csv").string() + "," +
                      (kData / "square/edges.csv").string();
    CHECK(cli({"summary", "--graph", pair}).code == kExitOk);
  }

  TEST_CASE("json output carries metadata") {
    const auto r = cli({"intensity", "--graph", square, "--events", square_events, "--format",
                        "json"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("\"meta\"") != std::string::npos);
    CHECK(r.out.find("\"rows\"") != std::string::npos);
  }

  TEST_CASE("exit codes") {
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"kfun", "--graph", square}).code == kExitUsage);
    CHECK(cli({"kfun", "--graph", square, "--events", square_events, "--variant", "nope"}).code ==
          kExitUsage);
    CHECK(cli({"summary", "--graph", "/nonexistent/graph"}).code == kExitInput);

    TempDir tmp;
    const auto bad = tmp.write("bad.csv", "x,y\n1,oops\n");
    CHECK(cli({"kfun", "--graph", square, "--events", bad.string()}).code == kExitInput);
    const auto one = tmp.write("one.csv", "x,y\n0.5,0\n");
    const auto r = cli({"kfun", "--graph", square, "--events", one.string()});
    CHECK(r.code == kExitInfeasible);
    CHECK(r.err.find("TooFewEvents") != std::string::npos);
  }

  TEST_CASE("out writes the table and a metadata sidecar") {
    TempDir tmp;
    const auto out = (tmp.path / "k.csv").string();
    const auto r = cli({"kfun", "--graph", path3, "--events", path3_events, "--out", out});
    REQUIRE(r.code == kExitOk);
    CHECK(fs::exists(out));
    CHECK(fs::exists(out + ".meta.json"));
  }

  TEST_CASE("output is byte-identical for one and several threads") {
    TempDir tmp;
    const auto g = fixture::grid(8);
    std::ostringstream vo, eo;
    save_network(g, vo, eo);
    tmp.write("vertices.csv", vo.str());
    tmp.write("edges.csv", eo.str());
    const auto graph = tmp.path.string();
    const auto sim = cli({"simulate", "--graph", graph, "--rate", "3", "--seed", "42"});
    REQUIRE(sim.code == kExitOk);
    const auto events = tmp.write("events.csv", sim.out).string();

    const std::vector<std::vector<std::string>> commands{
        {"simulate", "--graph", graph, "--rate", "3", "--seed", "42", "--marks", "a=0.5,b=0.5"},
        {"intensity", "--graph", graph, "--events", events, "--measure", "complete"},
        {"kfun", "--graph", graph, "--events", events, "--xi", "0:6"},
        {"kfun", "--graph", graph, "--events", events, "--variant", "linear", "--r", "0.5:4:0.5"},
        {"pcf", "--graph", graph, "--events", events, "--r", "0.25:3:0.25"},
        {"cluster", "--graph", graph, "--events", events, "--k", "3"},
        {"smooth", "--graph", graph, "--events", events, "--resolution", "30"}};
    for (const auto& base : commands) {
      auto one = base;
      one.insert(one.end(), {"--threads", "1"});
      auto many = base;
      many.insert(many.end(), {"--threads", "4"});
      const auto a = cli(one);
      const auto b = cli(many);
      CHECK_MESSAGE(a.code == kExitOk, base[0] << ": " << a.err);
      CHECK_MESSAGE(a.out == b.out, base[0]);
      CHECK(!a.out.empty());
    }
  }
}
