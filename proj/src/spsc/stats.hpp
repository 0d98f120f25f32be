#pragma once

#include <cstdint>

namespace spscagg::spsc {

// Counters kept in the owning endpoint's private cache-line region. A snapshot is
// only coherent when taken by the owning agent or after that agent has been joined.
struct EndpointStats {
  std::uint64_t enq_attempts = 0;
  std::uint64_t enq_successes = 0;
  std::uint64_t deq_attempts = 0;
  std::uint64_t deq_successes = 0;
  // Release writes to a shared index, cell tag, or hand-off flag that make element
  // writes or slot reuse visible to the peer. The termination flag is not counted.
  std::uint64_t publication_events = 0;
  // MCRingBuffer: publications forced on a Full/Empty stall (subset of publication_events).
  std::uint64_t stall_publications = 0;
  // MCRingBuffer: heartbeat dummies inserted (producer) or discarded (consumer).
  std::uint64_t heartbeat_dummies = 0;
  // BatchQueue: elements the consumer drained through the leftover path.
  std::uint64_t leftover_drained = 0;
  // BatchQueue with debug_checks: producer writes that hit the half being copied.
  std::uint64_t ownership_violations = 0;

  friend bool operator==(const EndpointStats&, const EndpointStats&) = default;
};

}  // namespace spscagg::spsc
