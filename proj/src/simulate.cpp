#include "netpoint/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "netpoint/error.hpp"
#include "netpoint/parallel.hpp"
#include "netpoint/rng.hpp"

namespace netpoint {

void validate(const SimulationSpec& spec) {
  if (!(spec.rate >= 0.0) || !std::isfinite(spec.rate)) {
    fail(ErrorCode::BadSpec, "rate must be finite and non-negative");
  }
  if (!spec.marks.empty()) {
    double total = 0.0;
    for (const auto& [name, p] : spec.marks) {
      if (!(p >= 0.0) || !std::isfinite(p)) {
        fail(ErrorCode::BadSpec, "mark probability for '" + name + "' must be in [0, 1]");
      }
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
      fail(ErrorCode::BadSpec, "mark probabilities must sum to 1");
    }
  }
  if (spec.time_range) {
    const auto [lo, hi] = *spec.time_range;
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo < 0.0 || !(hi > lo)) {
      fail(ErrorCode::BadSpec, "time range must satisfy 0 <= start < end");
    }
  }
}

EventSet simulate_poisson(const NetworkGraph& g, const SimulationSpec& spec) {
  validate(spec);
  const auto m = static_cast<std::int64_t>(g.edge_count());
  std::vector<std::vector<EventRecord>> per_edge(g.edge_count());

  std::vector<double> cumulative;
  for (const auto& [name, p] : spec.marks) {
    cumulative.push_back((cumulative.empty() ? 0.0 : cumulative.back()) + p);
  }

#pragma omp parallel for schedule(dynamic, 16) num_threads(thread_count())
  for (std::int64_t e = 0; e < m; ++e) {
    const Edge& edge = g.edges()[e];
    Philox rng(spec.seed, static_cast<std::uint64_t>(e));
    const double mean = spec.rate * edge.length;
    if (mean <= 0.0) continue;
    std::poisson_distribution<std::uint64_t> count(mean);
    const std::uint64_t k = count(rng);
    auto& out = per_edge[e];
    out.reserve(k);
    for (std::uint64_t i = 0; i < k; ++i) {
      EventRecord r;
      r.position = {static_cast<EdgeId>(e), rng.uniform() * edge.length};
      if (!spec.marks.empty()) {
        const double u = rng.uniform() * cumulative.back();
        std::size_t c = 0;
        while (c + 1 < cumulative.size() && u >= cumulative[c]) ++c;
        r.mark = spec.marks[c].first;
      }
      if (spec.time_range) {
        const auto [lo, hi] = *spec.time_range;
        r.time = std::min(lo + rng.uniform() * (hi - lo), std::nextafter(hi, lo));
      }
      out.push_back(std::move(r));
    }
  }

  std::vector<EventRecord> records;
  for (auto& list : per_edge) {
    for (auto& r : list) records.push_back(std::move(r));
  }
  std::optional<std::vector<std::string>> categories;
  if (!spec.marks.empty()) {
    categories.emplace();
    for (const auto& [name, p] : spec.marks) categories->push_back(name);
  }
  return EventSet(g, std::move(records), std::move(categories));
}

}  // namespace netpoint
