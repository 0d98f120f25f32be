#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "aggregation/window.hpp"
#include "spsc/queue_config.hpp"

namespace spscagg::agg {

struct PipelineConfig {
  std::size_t producers = 1;
  std::size_t aggregators = 10;
  spsc::QueueKind queue_kind = spsc::QueueKind::Lamport;
  spsc::QueueConfig queue_config{};
  WindowSpec spec{};
  // One timestamp-sorted workload per producer.
  std::vector<std::vector<Tuple>> workloads;
  // When set, every agent yields at random points (seeded per agent). Used by tests to
  // shake out interleaving-dependent results.
  std::optional<std::uint64_t> pacing_seed;
  // Invoked on the calling thread right before the agents are released and right after
  // the last one is joined; the timed region sits between the two.
  std::function<void()> on_start;
  std::function<void()> on_stop;
};

struct RunMetrics {
  double elapsed_ms = 0.0;
  // Tuples processed by the second stage.
  std::uint64_t messages = 0;
  // Window partials sent from the second stage to the final aggregator.
  std::uint64_t partial_messages = 0;
  double throughput_per_ms = 0.0;
};

struct PipelineResult {
  WindowTotals totals;
  RunMetrics metrics;
};

// Contiguous even partition of aggregators over producers: producer p feeds
// aggregators [first, last).
struct AggregatorRange {
  std::size_t first = 0;
  std::size_t last = 0;
};
AggregatorRange assigned_aggregators(std::size_t producer, std::size_t producers,
                                     std::size_t aggregators);

// Throws spsc::ConfigError for an invalid topology or queue configuration,
// AggregationError for an invalid window spec or unsorted workload.
void validate(const PipelineConfig& config);

// Runs producers -> aggregators -> final aggregator as concurrent agents connected by
// SPSC queues of config.queue_kind and returns every non-empty window's total.
PipelineResult run_pipeline(const PipelineConfig& config);

}  // namespace spscagg::agg
