// Times the serial reference kernels against the OpenMP kernels.
//
//   bench_kernels [grid_side] [events] [threads]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "netpoint/kernels.hpp"
#include "netpoint/parallel.hpp"

using namespace netpoint;

namespace {

NetworkGraph lattice(std::size_t side) {
  std::vector<SpatialVertex> vs;
  std::vector<EdgeSpec> es;
  auto id = [side](std::size_t x, std::size_t y) { return static_cast<VertexId>(y * side + x); };
  for (std::size_t y = 0; y < side; ++y)
    for (std::size_t x = 0; x < side; ++x)
      vs.push_back({id(x, y), {static_cast<double>(x), static_cast<double>(y)}});
  auto add = [&](VertexId a, VertexId b) {
    es.push_back({static_cast<EdgeId>(es.size()), a, b, EdgeKind::Undirected, std::nullopt, {}});
  };
  for (std::size_t y = 0; y < side; ++y)
    for (std::size_t x = 0; x < side; ++x) {
      if (x + 1 < side) add(id(x, y), id(x + 1, y));
      if (y + 1 < side) add(id(x, y), id(x, y + 1));
    }
  return build_graph(std::move(vs), std::move(es));
}

double best_of(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-22s %12.4f %12.4f %9.2fx\n", name, serial * 1e3, parallel * 1e3, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t side = argc > 1 ? std::stoul(argv[1]) : 30;
  const std::size_t n = argc > 2 ? std::stoul(argv[2]) : 600;
  const int threads = argc > 3 ? std::stoi(argv[3]) : thread_count();
  ThreadLimit limit(threads);

  const auto g = lattice(side);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<EdgeId> pick(0, static_cast<EdgeId>(g.edge_count() - 1));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<EdgeId> hosts;
  std::vector<NetPoint> points;
  for (std::size_t i = 0; i < n; ++i) {
    const EdgeId e = pick(rng);
    hosts.push_back(e);
    points.push_back({e, unit(rng) * g.edge(e).length});
  }
  const std::vector<double> lambda(n, static_cast<double>(n) / g.total_length());
  std::vector<double> rs;
  for (int k = 1; k <= 20; ++k) rs.push_back(0.25 * k);
  const KernelSpec kernel{KernelFamily::Epanechnikov, 0.75};

  std::vector<Point2> sites;
  for (const auto& v : g.vertices()) sites.push_back(v.coords);
  const std::vector<std::vector<double>> values(1, std::vector<double>(sites.size(), 1.0));
  std::vector<Point2> queries;
  const double extent = static_cast<double>(side - 1);
  for (std::size_t iy = 0; iy < 200; ++iy)
    for (std::size_t ix = 0; ix < 200; ++ix)
      queries.push_back({extent * ix / 199.0, extent * iy / 199.0});
  const kernels::SmoothingProblem smoothing{sites, &values, queries, {KernelFamily::Gaussian, 1.5}};

  std::printf("lattice %zux%zu (%zu edges), %zu events, %d threads\n", side, side, g.edge_count(), n,
              threads);
  std::printf("%-22s %12s %12s %10s\n", "kernel", "serial ms", "openmp ms", "speedup");
  constexpr int kReps = 3;
  row("graph pair histogram",
      best_of(kReps, [&] { kernels::serial::graph_pair_histogram(g, hosts, Direction::Any, {}); }),
      best_of(kReps, [&] { kernels::parallel::graph_pair_histogram(g, hosts, Direction::Any, {}); }));
  row("linear pair counts",
      best_of(kReps, [&] { kernels::serial::linear_pair_counts(g, points, rs); }),
      best_of(kReps, [&] { kernels::parallel::linear_pair_counts(g, points, rs); }));
  row("pcf sums",
      best_of(kReps, [&] { kernels::serial::pcf_sums(g, points, lambda, rs, kernel); }),
      best_of(kReps, [&] { kernels::parallel::pcf_sums(g, points, lambda, rs, kernel); }));
  std::vector<std::vector<double>> out;
  row("smoothing 200x200",
      best_of(kReps, [&] { kernels::serial::smooth(smoothing, out); }),
      best_of(kReps, [&] { kernels::parallel::smooth(smoothing, out); }));
  return 0;
}
