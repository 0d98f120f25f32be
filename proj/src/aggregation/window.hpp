#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace spscagg::agg {

using Timestamp = std::int64_t;
using Watts = std::int64_t;

#pragma pack(push, 4)
// One stream element: 12 bytes on the wire, matching the element size used by the
// queue micro-benchmarks.
struct Tuple {
  Timestamp timestamp = 0;
  std::int32_t value = 0;

  friend bool operator==(const Tuple&, const Tuple&) = default;
};
#pragma pack(pop)
static_assert(sizeof(Tuple) == 12);

// Windows are half-open intervals [k * advance, k * advance + size), k >= 0.
struct WindowSpec {
  Timestamp size = 4;
  Timestamp advance = 2;

  friend bool operator==(const WindowSpec&, const WindowSpec&) = default;
};

struct WindowPartial {
  Timestamp start = 0;
  Watts sum = 0;
  std::uint32_t source = 0;

  friend bool operator==(const WindowPartial&, const WindowPartial&) = default;
};

struct WindowTotal {
  Timestamp start = 0;
  Watts total = 0;

  friend bool operator==(const WindowTotal&, const WindowTotal&) = default;
};

// start -> total over every window that received at least one tuple.
using WindowTotals = std::map<Timestamp, Watts>;

class AggregationError : public std::runtime_error {
 public:
  enum class Code {
    InvalidSpec,
    OutOfOrderTuple,
    UnsortedInput,
    DuplicateContribution,
    InactiveSource,
    AlreadyInactive,
    UnknownSource,
    LateContribution,
  };

  AggregationError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

// Throws AggregationError{InvalidSpec} unless 0 < advance <= size.
void validate(const WindowSpec& spec);

// Smallest and largest window start covering `t` (inclusive). Requires t >= 0.
Timestamp first_window_start(Timestamp t, const WindowSpec& spec);
Timestamp last_window_start(Timestamp t, const WindowSpec& spec);

// All starts s >= 0 with s % advance == 0 and s <= t < s + size, ascending.
std::vector<Timestamp> window_starts(Timestamp t, const WindowSpec& spec);

// Sum over tuples of value * |window_starts(timestamp)|. Equals the sum of all window
// totals produced from the same tuples.
Watts weighted_value_sum(const std::vector<Tuple>& tuples, const WindowSpec& spec);

Watts total_sum(const WindowTotals& totals);

}  // namespace spscagg::agg
