#include <doctest.h>

#include <numeric>
#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "netpoint/geostat.hpp"
#include "support/check.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace netpoint;

namespace {

VertexAttributeMatrix column(std::vector<double> values) {
  const std::size_t n = values.size();
  return VertexAttributeMatrix(n, {"v"}, std::move(values));
}

VertexAttributeMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> v(rows * cols);
  for (auto& x : v) x = z(rng);
  std::vector<std::string> names(cols);
  for (std::size_t c = 0; c < cols; ++c) names[c] = "c" + std::to_string(c);
  return VertexAttributeMatrix(rows, names, v);
}

/// Labels equal up to renaming.
bool same_partition(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
  return true;
}

}  // namespace

TEST_SUITE("conditional mean") {
  TEST_CASE("examples") {
    // Vertex 1 sits between 0 and 2.
    const auto g = fixture::graph({{0, 0}, {1, 0}, {2, 0}, {5, 5}}, {{0, 1}, {1, 2}});
    const auto attrs = column({2, 100, 4, 9});
    CHECK(neighborhood_conditional_mean(g, attrs, 1, 0) == 3.0);
    CHECK(neighborhood_conditional_mean(g, column({7, 1, 7, 0}), 0, 0) == 1.0);
    const auto s = neighborhood_conditional_summary(g, attrs, 1, 0);
    CHECK(s.variance == 1.0);
    CHECK(s.neighbors == 2);
    CHECK_CODE(neighborhood_conditional_mean(g, attrs, 3, 0), ErrorCode::IsolatedVertex);
  }

  TEST_CASE("constant field") {
    const auto g = fixture::grid(4);
    const auto attrs = column(std::vector<double>(16, 2.5));
    for (VertexId v = 0; v < 16; ++v) CHECK(neighborhood_conditional_mean(g, attrs, v, 0) == 2.5);
  }
}

TEST_SUITE("smoothing") {
  TEST_CASE("constant field is reproduced") {
    const auto g = fixture::grid(5);
    for (auto family : {KernelFamily::Gaussian, KernelFamily::Epanechnikov, KernelFamily::Box}) {
      const auto f = smooth_field(g, column(std::vector<double>(25, 5.0)), {40, 30},
                                  {family, 0.7});
      double worst = 0.0;
      for (double v : f.values[0]) worst = std::max(worst, std::abs(v - 5.0));
      CHECK(worst < 1e-12);
    }
  }

  TEST_CASE("midpoint of two vertices") {
    const auto g = fixture::segment(4.0);
    GridSpec grid{1, 1, Point2{2.0, 0.0}, Point2{2.0, 0.0}};
    for (auto family : {KernelFamily::Gaussian, KernelFamily::Epanechnikov, KernelFamily::Box}) {
      const auto f = smooth_field(g, column({0.0, 10.0}), grid, {family, 3.0});
      CHECK(std::abs(f.at(0, 0, 0) - 5.0) < 1e-12);
    }
  }

  TEST_CASE("three vertices, Gaussian h = 1, hand-computed weighted mean") {
    const auto g = fixture::graph({{0, 0}, {2, 0}, {0, 3}}, {{0, 1}, {1, 2}});
    GridSpec grid{1, 1, Point2{0.5, 0.5}, Point2{0.5, 0.5}};
    const auto f = smooth_field(g, column({1.0, 4.0, -2.0}), grid, {KernelFamily::Gaussian, 1.0});
    // Evaluated independently: sum w_i v_i / sum w_i with w_i = exp(-d_i^2 / 2).
    CHECK(f.at(0, 0, 0) == doctest::Approx(1.6731323001492382).epsilon(1e-13));
  }

  TEST_CASE("values stay within the input range") {
    std::mt19937_64 rng(4);
    const auto g = oracle::random_chain_graph(rng, 20, 25);
    const auto attrs = random_matrix(rng, 20, 2);
    const auto f = smooth_field(g, attrs, {25, 25}, {KernelFamily::Gaussian, 1.5});
    for (std::size_t c = 0; c < 2; ++c) {
      const auto col = attrs.column(c);
      const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
      for (double v : f.values[c]) {
        CHECK(v >= *lo - 1e-12);
        CHECK(v <= *hi + 1e-12);
      }
    }
  }

  TEST_CASE("translation equivariance and permutation invariance") {
    const std::vector<Point2> cs{{0, 0}, {3, 1}, {1, 4}, {5, 5}};
    const std::vector<fixture::E> es{{0, 1}, {1, 2}, {2, 3}};
    const auto g = fixture::graph(cs, es);
    std::vector<Point2> moved;
    for (auto p : cs) moved.push_back({p.x + 10, p.y - 3});
    const auto h = fixture::graph(moved, es);
    const auto attrs = column({1, 2, 3, 4});
    const KernelSpec k{KernelFamily::Gaussian, 1.2};
    const auto a = smooth_field(g, attrs, {9, 7}, k);
    const auto b = smooth_field(h, attrs, {9, 7}, k);
    for (std::size_t i = 0; i < a.values[0].size(); ++i) {
      CHECK(a.values[0][i] == doctest::Approx(b.values[0][i]).epsilon(1e-12));
    }
    CHECK(b.xs.front() == doctest::Approx(a.xs.front() + 10));

    // Same vertices listed in another order, with the edges relabeled.
    const std::vector<Point2> perm{cs[2], cs[0], cs[3], cs[1]};
    const auto p = fixture::graph(perm, {{1, 3}, {3, 0}, {0, 2}});
    const auto c = smooth_field(p, column({3, 1, 4, 2}), {9, 7}, k);
    for (std::size_t i = 0; i < a.values[0].size(); ++i) {
      CHECK(a.values[0][i] == doctest::Approx(c.values[0][i]).epsilon(1e-12));
    }
  }

  TEST_CASE("errors and defaults") {
    const auto g = fixture::square();
    CHECK_CODE(smooth_field(g, column({1, 2, 3, 4}), {}, {KernelFamily::Gaussian, 0.0}),
               ErrorCode::BadBandwidth);
    CHECK_CODE(smooth_field(g, VertexAttributeMatrix(4, {}), {}, {KernelFamily::Gaussian, 1.0}),
               ErrorCode::EmptyAttributeMatrix);
    CHECK(default_smoothing_bandwidth(g) == doctest::Approx(0.1 * std::sqrt(2.0)));
    const auto f = smooth_field(g, column({1, 2, 3, 4}), {}, {KernelFamily::Gaussian, 0.2});
    CHECK(f.nx == 200);
    CHECK(f.ny == 200);
    CHECK(f.xs.front() == 0.0);
    CHECK(f.xs.back() == 1.0);
  }

  TEST_CASE("compact kernel far from every vertex falls back to the nearest vertex") {
    const auto g = fixture::segment(10.0);
    GridSpec grid{1, 1, Point2{8.0, 0.0}, Point2{8.0, 0.0}};
    const auto f = smooth_field(g, column({1.0, 7.0}), grid, {KernelFamily::Box, 0.5});
    CHECK(f.at(0, 0, 0) == 7.0);
    CHECK(f.unsupported == 1);
  }
}

TEST_SUITE("ward") {
  TEST_CASE("two obvious pairs") {
    const auto tree = ward_cluster(column({0, 0.1, 10, 10.1}));
    const auto labels = tree.cut(2);
    CHECK(labels == std::vector<std::size_t>{0, 0, 1, 1});
    CHECK(tree.cut(4) == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(tree.cut(1) == std::vector<std::size_t>{0, 0, 0, 0});
    CHECK(tree.merges()[0].height == doctest::Approx(0.1));
    CHECK(tree.merges().back().size == 4);
    CHECK_THROWS_AS(tree.cut(5), Error);
    CHECK_THROWS_AS(tree.cut(0), Error);
  }

  TEST_CASE("too few rows") {
    CHECK_CODE(ward_cluster(column({1.0})), ErrorCode::TooFewRows);
  }

  TEST_CASE("matches the naive recompute-from-scratch oracle") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 50; ++trial) {
      const auto attrs = random_matrix(rng, 20, 3);
      std::vector<std::vector<double>> rows(20, std::vector<double>(3));
      for (std::size_t r = 0; r < 20; ++r)
        for (std::size_t c = 0; c < 3; ++c) rows[r][c] = attrs(r, c);
      const auto ref = oracle::naive_ward(rows);
      const auto tree = ward_cluster(attrs);
      REQUIRE(tree.merges().size() == ref.size());
      for (std::size_t s = 0; s < ref.size(); ++s) {
        CHECK(tree.merges()[s].a == ref[s].a);
        CHECK(tree.merges()[s].b == ref[s].b);
        CHECK(std::abs(tree.merges()[s].height - ref[s].height) <= 1e-9);
      }
      for (std::size_t s = 1; s < ref.size(); ++s) {
        CHECK(tree.merges()[s].height >= tree.merges()[s - 1].height - 1e-12);
      }
    }
  }

  TEST_CASE("cut is invariant under row permutation up to relabeling") {
    std::mt19937_64 rng(21);
    const auto attrs = random_matrix(rng, 15, 2);
    std::vector<std::size_t> order(15);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<double> values;
    for (auto r : order) {
      values.push_back(attrs(r, 0));
      values.push_back(attrs(r, 1));
    }
    const VertexAttributeMatrix permuted(15, attrs.channels(), values);
    for (std::size_t k = 1; k <= 15; ++k) {
      const auto a = ward_cluster(attrs).cut(k);
      const auto b = ward_cluster(permuted).cut(k);
      std::vector<std::size_t> back(15);
      for (std::size_t i = 0; i < 15; ++i) back[order[i]] = b[i];
      CHECK(same_partition(a, back));
      std::set<std::size_t> distinct(a.begin(), a.end());
      CHECK(distinct.size() == k);
    }
  }
}
