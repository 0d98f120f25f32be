#include "aggregation/window.hpp"

#include <numeric>

namespace spscagg::agg {

namespace {

Timestamp floor_div(Timestamp a, Timestamp b) {
  Timestamp q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

void validate(const WindowSpec& spec) {
  if (spec.size <= 0 || spec.advance <= 0 || spec.advance > spec.size) {
    throw AggregationError(AggregationError::Code::InvalidSpec,
                           "window spec needs 0 < advance <= size, got size=" +
                               std::to_string(spec.size) +
                               " advance=" + std::to_string(spec.advance));
  }
}

Timestamp first_window_start(Timestamp t, const WindowSpec& spec) {
  // Smallest multiple of advance strictly greater than t - size, clamped at 0.
  const Timestamp k = floor_div(t - spec.size, spec.advance) + 1;
  return k < 0 ? 0 : k * spec.advance;
}

Timestamp last_window_start(Timestamp t, const WindowSpec& spec) {
  return floor_div(t, spec.advance) * spec.advance;
}

std::vector<Timestamp> window_starts(Timestamp t, const WindowSpec& spec) {
  std::vector<Timestamp> starts;
  if (t < 0) return starts;
  const Timestamp last = last_window_start(t, spec);
  for (Timestamp s = first_window_start(t, spec); s <= last; s += spec.advance) {
    starts.push_back(s);
  }
  return starts;
}

Watts weighted_value_sum(const std::vector<Tuple>& tuples, const WindowSpec& spec) {
  Watts sum = 0;
  for (const Tuple& t : tuples) {
    const Timestamp count =
        (last_window_start(t.timestamp, spec) - first_window_start(t.timestamp, spec)) /
            spec.advance +
        1;
    sum += static_cast<Watts>(t.value) * count;
  }
  return sum;
}

Watts total_sum(const WindowTotals& totals) {
  return std::accumulate(totals.begin(), totals.end(), Watts{0},
                         [](Watts acc, const auto& kv) { return acc + kv.second; });
}

}  // namespace spscagg::agg
