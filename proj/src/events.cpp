#include "netpoint/events.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netpoint/error.hpp"

namespace netpoint {

EventSet::EventSet(const NetworkGraph& g, std::vector<EventRecord> records,
                   std::optional<std::vector<std::string>> categories)
    : records_(std::move(records)), by_edge_(g.edge_count()) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    validate(g, r.position);
    if (r.time) {
      if (!std::isfinite(*r.time)) {
        fail(ErrorCode::InvalidArgument, "event " + std::to_string(i) + " has a non-finite time");
      }
    } else {
      all_timed_ = false;
    }
    if (r.mark) any_marked_ = true;
    by_edge_[r.position.edge].push_back(i);
  }

  if (categories) {
    categories_ = std::move(*categories);
    std::sort(categories_.begin(), categories_.end());
    categories_.erase(std::unique(categories_.begin(), categories_.end()), categories_.end());
    for (std::size_t i = 0; i < records_.size(); ++i) {
      const auto& mark = records_[i].mark;
      if (mark && !std::binary_search(categories_.begin(), categories_.end(), *mark)) {
        fail(ErrorCode::UnknownMark,
             "event " + std::to_string(i) + " has undeclared mark '" + *mark + "'");
      }
    }
  } else {
    for (const auto& r : records_) {
      if (r.mark) categories_.push_back(*r.mark);
    }
    std::sort(categories_.begin(), categories_.end());
    categories_.erase(std::unique(categories_.begin(), categories_.end()), categories_.end());
  }
}

std::span<const std::size_t> EventSet::on_edge(EdgeId e) const {
  if (e >= by_edge_.size()) fail(ErrorCode::UnknownEdge, "unknown edge " + std::to_string(e));
  return by_edge_[e];
}

EventSet EventSet::filtered(const NetworkGraph& g, std::string_view mark) const {
  std::vector<EventRecord> kept;
  for (const auto& r : records_) {
    if (r.mark && *r.mark == mark) kept.push_back(r);
  }
  return EventSet(g, std::move(kept), categories_);
}

TimeGrid::TimeGrid(std::vector<double> breakpoints) : breaks_(std::move(breakpoints)) {
  if (breaks_.size() < 2) {
    fail(ErrorCode::InvalidArgument, "time grid needs at least two breakpoints");
  }
  for (std::size_t i = 0; i < breaks_.size(); ++i) {
    if (!std::isfinite(breaks_[i]) || breaks_[i] < 0.0) {
      fail(ErrorCode::InvalidArgument, "time grid breakpoints must be finite and non-negative");
    }
    if (i > 0 && !(breaks_[i] > breaks_[i - 1])) {
      fail(ErrorCode::InvalidArgument, "time grid breakpoints must be strictly increasing");
    }
  }
}

std::optional<std::size_t> TimeGrid::slice_of(double tau) const noexcept {
  if (!(tau >= breaks_.front()) || !(tau < breaks_.back())) return std::nullopt;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), tau);
  return static_cast<std::size_t>(it - breaks_.begin()) - 1;
}

}  // namespace netpoint
