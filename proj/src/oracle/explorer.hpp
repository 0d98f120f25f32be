#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "spsc/queue_config.hpp"

namespace spscagg::oracle {

inline constexpr std::size_t kMaxExploreCapacity = 4;
inline constexpr std::size_t kMaxExploreOps = 6;

class BoundsExceeded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExploreBounds {
  std::size_t capacity = 2;
  // Producer enqueues values 1..enqueues, then finishes.
  std::size_t enqueues = 3;
  // Consumer stops after this many dequeues, or once it sees the producer finished
  // and the queue empty.
  std::size_t dequeues = 3;
  std::size_t mcr_batch = 1;
};

enum class Mutation {
  None,
  // The producer performs its publishing store (index, tag, or flag) before writing
  // the payload it is meant to publish.
  PublishBeforeWrite,
};

struct ExploreResult {
  bool ok = true;
  std::string violation;
  // Steps from the initial state to the violation, one line per atomic action.
  std::vector<std::string> trace;
  std::size_t states = 0;

  explicit operator bool() const { return ok; }
};

// Exhaustively enumerates every interleaving of the producer's and consumer's atomic
// steps for `kind` under sequential consistency. Checks FIFO order of dequeued values,
// conservation at termination, per-kind structural invariants (Lamport occupancy,
// BatchQueue half ownership, MCRingBuffer publication lag), and that a terminal state
// stays reachable from every reachable state when dequeues >= enqueues.
//
// Throws BoundsExceeded above capacity 4 or 6 operations per side, and
// spsc::ConfigError for configurations the queue itself rejects.
ExploreResult explore_interleavings(spsc::QueueKind kind, const ExploreBounds& bounds,
                                    Mutation mutation = Mutation::None);

}  // namespace spscagg::oracle
