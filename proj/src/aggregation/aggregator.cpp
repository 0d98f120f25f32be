#include "aggregation/aggregator.hpp"

#include <algorithm>
#include <string>

namespace spscagg::agg {

Aggregator::Aggregator(WindowSpec spec, std::uint32_t source) : spec_(spec), source_(source) {
  validate(spec_);
}

void Aggregator::add(const Tuple& tuple) {
  const Timestamp t = tuple.timestamp;
  if (t < 0) {
    throw AggregationError(AggregationError::Code::OutOfOrderTuple,
                           "negative timestamp " + std::to_string(t));
  }
  if (watermark_ && t < *watermark_) {
    throw AggregationError(AggregationError::Code::OutOfOrderTuple,
                           "tuple timestamp " + std::to_string(t) + " is behind watermark " +
                               std::to_string(*watermark_));
  }
  watermark_ = t;

  const Timestamp first = first_window_start(t, spec_);
  const Timestamp last = last_window_start(t, spec_);
  // Windows already open for this tuple form a suffix of open_, because every open
  // window started at or after the first window of an earlier (smaller) timestamp.
  auto it = std::lower_bound(open_.begin(), open_.end(), first,
                             [](const auto& w, Timestamp s) { return w.first < s; });
  for (Timestamp s = first; s <= last; s += spec_.advance) {
    if (it != open_.end() && it->first == s) {
      it->second += tuple.value;
      ++it;
    } else {
      it = std::next(open_.insert(it, {s, tuple.value}));
    }
  }
}

std::vector<WindowPartial> Aggregator::update(const Tuple& tuple) {
  std::vector<WindowPartial> out;
  update(tuple, [&](const WindowPartial& p) { out.push_back(p); });
  return out;
}

std::vector<WindowPartial> Aggregator::finalize() {
  std::vector<WindowPartial> out;
  finalize([&](const WindowPartial& p) { out.push_back(p); });
  return out;
}

}  // namespace spscagg::agg
