#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "aggregation/window.hpp"

namespace spscagg::agg {

// Second-stage aggregator: keeps a running sum per open window over a timestamp-sorted
// tuple stream and emits each window once it can no longer receive tuples.
class Aggregator {
 public:
  explicit Aggregator(WindowSpec spec, std::uint32_t source = 0);

  // Adds the tuple to every window covering its timestamp, then returns the windows
  // that expired (start + size <= timestamp), ascending by start.
  // Throws AggregationError{OutOfOrderTuple} if timestamp < watermark().
  std::vector<WindowPartial> update(const Tuple& tuple);

  // Same as update() but hands expired windows to `emit` instead of allocating.
  template <class Emit>
  void update(const Tuple& tuple, Emit&& emit) {
    add(tuple);
    const Timestamp t = tuple.timestamp;
    while (!open_.empty() && open_.front().first + spec_.size <= t) {
      emit(WindowPartial{open_.front().first, open_.front().second, source_});
      open_.pop_front();
      ++emitted_;
    }
  }

  // Reports every window still open, ascending. The state is empty afterwards.
  std::vector<WindowPartial> finalize();

  template <class Emit>
  void finalize(Emit&& emit) {
    while (!open_.empty()) {
      emit(WindowPartial{open_.front().first, open_.front().second, source_});
      open_.pop_front();
      ++emitted_;
    }
  }

  std::optional<Timestamp> watermark() const { return watermark_; }
  const std::deque<std::pair<Timestamp, Watts>>& open_windows() const { return open_; }
  std::uint64_t emitted_count() const { return emitted_; }
  std::uint32_t source() const { return source_; }
  const WindowSpec& spec() const { return spec_; }

 private:
  void add(const Tuple& tuple);

  WindowSpec spec_;
  std::uint32_t source_;
  // Ascending by start; only windows that received at least one tuple.
  std::deque<std::pair<Timestamp, Watts>> open_;
  std::optional<Timestamp> watermark_;
  std::uint64_t emitted_ = 0;
};

}  // namespace spscagg::agg
