#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netpoint/metric.hpp"

namespace netpoint {

struct EventRecord {
  NetPoint position;
  std::optional<std::string> mark;
  std::optional<double> time;
};

/// Immutable event pattern bound to one graph, indexed by host edge and by
/// mark category. Duplicate locations are allowed.
class EventSet {
public:
  EventSet() = default;

  /// Validates every position against g. When `categories` is given, every
  /// mark must belong to it (UnknownMark otherwise); else the category set
  /// is the sorted set of marks present.
  EventSet(const NetworkGraph& g, std::vector<EventRecord> records,
           std::optional<std::vector<std::string>> categories = std::nullopt);

  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  const std::vector<EventRecord>& records() const noexcept { return records_; }
  const EventRecord& operator[](std::size_t i) const { return records_[i]; }

  std::size_t edge_count() const noexcept { return by_edge_.size(); }
  /// Indices (into records()) of the events hosted by edge e.
  std::span<const std::size_t> on_edge(EdgeId e) const;

  const std::vector<std::string>& categories() const noexcept { return categories_; }
  bool all_timed() const noexcept { return all_timed_; }
  bool any_marked() const noexcept { return any_marked_; }

  /// Sub-pattern restricted to one mark category.
  EventSet filtered(const NetworkGraph& g, std::string_view mark) const;

private:
  std::vector<EventRecord> records_;
  std::vector<std::vector<std::size_t>> by_edge_;
  std::vector<std::string> categories_;
  bool all_timed_ = true;
  bool any_marked_ = false;
};

/// Ordered breakpoints t_0 < t_1 < ... < t_n defining n slices.
/// Slice i collects times with t_i <= tau < t_{i+1}.
class TimeGrid {
public:
  explicit TimeGrid(std::vector<double> breakpoints);

  std::size_t slice_count() const noexcept { return breaks_.size() - 1; }
  const std::vector<double>& breakpoints() const noexcept { return breaks_; }
  double start() const noexcept { return breaks_.front(); }
  double end() const noexcept { return breaks_.back(); }

  /// Slice index for a time, or nullopt when outside [t_0, t_n).
  std::optional<std::size_t> slice_of(double tau) const noexcept;

private:
  std::vector<double> breaks_;
};

}  // namespace netpoint
