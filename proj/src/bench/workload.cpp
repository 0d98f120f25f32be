#include "bench/workload.hpp"

#include <random>
#include <stdexcept>

namespace spscagg::bench {

std::vector<agg::Tuple> generate_workload(std::size_t n, std::uint64_t seed, ValueRange range) {
  if (range.min > range.max) throw std::invalid_argument("value range is empty");
  // Reduce raw engine output ourselves: distribution objects are not specified
  // bit-for-bit across standard libraries, and reports must be reproducible.
  std::mt19937_64 rng(seed);
  const auto span = static_cast<std::uint64_t>(std::int64_t{range.max} - range.min) + 1;
  std::vector<agg::Tuple> tuples;
  tuples.reserve(n);
  agg::Timestamp t = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && rng() % 8 != 0) ++t;
    const auto value = static_cast<std::int32_t>(range.min + static_cast<std::int64_t>(rng() % span));
    tuples.push_back({t, value});
  }
  return tuples;
}

std::vector<std::vector<agg::Tuple>> split_round_robin(const std::vector<agg::Tuple>& tuples,
                                                       std::size_t producers) {
  if (producers == 0) throw std::invalid_argument("need at least one producer");
  std::vector<std::vector<agg::Tuple>> shares(producers);
  for (auto& share : shares) share.reserve(tuples.size() / producers + 1);
  for (std::size_t i = 0; i < tuples.size(); ++i) shares[i % producers].push_back(tuples[i]);
  return shares;
}

}  // namespace spscagg::bench
