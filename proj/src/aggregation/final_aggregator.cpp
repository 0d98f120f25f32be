#include "aggregation/final_aggregator.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace spscagg::agg {

using Code = AggregationError::Code;

FinalAggregator::FinalAggregator(std::size_t sources, WindowSpec spec)
    : spec_(spec),
      watermarks_(sources, 0),
      active_(sources, true),
      active_count_(sources) {
  validate(spec_);
}

void FinalAggregator::check_source(std::uint32_t source) const {
  if (source >= active_.size()) {
    throw AggregationError(Code::UnknownSource, "unknown source " + std::to_string(source));
  }
}

std::vector<WindowTotal> FinalAggregator::accept(const WindowPartial& partial) {
  check_source(partial.source);
  if (!active_[partial.source]) {
    throw AggregationError(Code::InactiveSource,
                           "source " + std::to_string(partial.source) + " is inactive");
  }
  if (partial.start + spec_.size < watermarks_[partial.source]) {
    throw AggregationError(Code::LateContribution,
                           "source " + std::to_string(partial.source) + " reported window " +
                               std::to_string(partial.start) + " after a later one");
  }
  if (reported_.contains(partial.start)) {
    throw AggregationError(Code::LateContribution,
                           "window " + std::to_string(partial.start) + " was already reported");
  }
  auto [it, inserted] = partials_.try_emplace(partial.start);
  Pending& pending = it->second;
  if (inserted) pending.contributed.assign(active_.size(), false);
  if (pending.contributed[partial.source]) {
    throw AggregationError(Code::DuplicateContribution,
                           "source " + std::to_string(partial.source) +
                               " already contributed to window " +
                               std::to_string(partial.start));
  }
  pending.contributed[partial.source] = true;
  pending.sum += partial.sum;
  Timestamp& wm = watermarks_[partial.source];
  wm = std::max(wm, partial.start + spec_.size);
  return release_ready();
}

std::vector<WindowTotal> FinalAggregator::mark_inactive(std::uint32_t source) {
  check_source(source);
  if (!active_[source]) {
    throw AggregationError(Code::AlreadyInactive,
                           "source " + std::to_string(source) + " is already inactive");
  }
  active_[source] = false;
  --active_count_;
  return release_ready();
}

std::vector<WindowTotal> FinalAggregator::release_ready() {
  Timestamp horizon = std::numeric_limits<Timestamp>::max();
  for (std::size_t s = 0; s < active_.size(); ++s) {
    if (active_[s]) horizon = std::min(horizon, watermarks_[s]);
  }
  std::vector<WindowTotal> ready;
  while (!partials_.empty() && partials_.begin()->first <= horizon - spec_.size) {
    auto node = partials_.extract(partials_.begin());
    ready.push_back({node.key(), node.mapped().sum});
    reported_.insert(node.key());
  }
  return ready;
}

std::vector<WindowTotal> FinalAggregator::flush() {
  std::vector<WindowTotal> out;
  out.reserve(partials_.size());
  for (const auto& [start, pending] : partials_) {
    out.push_back({start, pending.sum});
    reported_.insert(start);
  }
  partials_.clear();
  return out;
}

}  // namespace spscagg::agg
