#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "aggregation/window.hpp"

namespace spscagg::agg {

// Last aggregation stage. Sums per-source partials per window, tracking which sources
// contributed (the contribution list) and which sources are still active.
//
// Readiness: a window [s, s + size) is released once every active source has a
// watermark >= s + size. A source's watermark is the largest window end it has
// reported; since its input is sorted and it reports in ascending start order, it
// will never report a window ending at or before that point again.
class FinalAggregator {
 public:
  FinalAggregator(std::size_t sources, WindowSpec spec);

  // Throws AggregationError with UnknownSource, InactiveSource, DuplicateContribution,
  // or LateContribution (window already released, or the source already reported a
  // later window).
  std::vector<WindowTotal> accept(const WindowPartial& partial);

  // Throws AggregationError{AlreadyInactive} or {UnknownSource}.
  std::vector<WindowTotal> mark_inactive(std::uint32_t source);

  // Releases every pending window regardless of readiness, ascending.
  std::vector<WindowTotal> flush();

  bool all_inactive() const { return active_count_ == 0; }
  bool is_active(std::uint32_t source) const { return active_.at(source); }
  Timestamp source_watermark(std::uint32_t source) const { return watermarks_.at(source); }
  std::size_t pending_windows() const { return partials_.size(); }
  const std::set<Timestamp>& reported() const { return reported_; }
  std::size_t source_count() const { return active_.size(); }

 private:
  struct Pending {
    Watts sum = 0;
    std::vector<bool> contributed;
  };

  void check_source(std::uint32_t source) const;
  std::vector<WindowTotal> release_ready();

  WindowSpec spec_;
  std::map<Timestamp, Pending> partials_;
  std::vector<Timestamp> watermarks_;
  std::vector<bool> active_;
  std::size_t active_count_;
  std::set<Timestamp> reported_;
};

}  // namespace spscagg::agg
