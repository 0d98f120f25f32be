#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "aggregation/window.hpp"

namespace spscagg::bench {

struct ValueRange {
  std::int32_t min = 0;
  std::int32_t max = 1000;
};

// Deterministic for a given (n, seed, range). Timestamps start at 0 and advance by one
// per tuple except for occasional repeats, so the list is sorted.
std::vector<agg::Tuple> generate_workload(std::size_t n, std::uint64_t seed,
                                          ValueRange range = {});

// Deals a sorted stream to `producers` round-robin; each share stays sorted and the
// shares merge back into the original stream.
std::vector<std::vector<agg::Tuple>> split_round_robin(const std::vector<agg::Tuple>& tuples,
                                                       std::size_t producers);

}  // namespace spscagg::bench
