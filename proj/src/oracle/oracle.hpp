#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aggregation/window.hpp"

namespace spscagg::oracle {

// Single-threaded reference: adds every tuple's value to each window covering it.
// Throws agg::AggregationError{UnsortedInput} if timestamps decrease or are negative.
agg::WindowTotals oracle_aggregate(const std::vector<agg::Tuple>& tuples,
                                   const agg::WindowSpec& spec);

enum class Agent : std::uint8_t { Producer, Consumer };
enum class Op : std::uint8_t { Enqueue, Dequeue, Finish, DrainComplete };
enum class OpResult : std::uint8_t { Ok, Full, Empty };

struct OpLogEntry {
  Agent agent;
  Op op;
  std::uint64_t seq;
  OpResult result;
};

// Operations of one SPSC run in a single observation order. Producer entries must
// appear before the consumer entries that depend on them.
struct OpLog {
  std::vector<OpLogEntry> entries;

  void enqueue(std::uint64_t seq, OpResult r = OpResult::Ok) {
    entries.push_back({Agent::Producer, Op::Enqueue, seq, r});
  }
  void dequeue(std::uint64_t seq, OpResult r = OpResult::Ok) {
    entries.push_back({Agent::Consumer, Op::Dequeue, seq, r});
  }
  void finish() { entries.push_back({Agent::Producer, Op::Finish, 0, OpResult::Ok}); }
  // The consumer observed the producer finished and then found the queue empty.
  void drain_complete() {
    entries.push_back({Agent::Consumer, Op::DrainComplete, 0, OpResult::Ok});
  }
};

struct FifoVerdict {
  bool ok = true;
  std::string description;

  explicit operator bool() const { return ok; }
  static FifoVerdict pass() { return {}; }
  static FifoVerdict violation(std::string why) { return {false, std::move(why)}; }
};

// Incremental form of check_fifo for runs too long to log.
class FifoChecker {
 public:
  void on_enqueue(std::uint64_t seq);
  void on_dequeue(std::uint64_t seq);
  void on_finish();
  void on_drain_complete();

  const FifoVerdict& verdict() const { return verdict_; }
  std::uint64_t enqueued() const { return enqueued_.size(); }
  std::uint64_t dequeued() const { return dequeued_; }

 private:
  void fail(std::string why);

  std::vector<std::uint64_t> enqueued_;
  std::uint64_t dequeued_ = 0;
  bool finished_ = false;
  FifoVerdict verdict_;
};

// Ok iff successful dequeues return exactly the successful enqueues in order (strictly
// increasing, no duplicates, no gaps) and, when a DrainComplete entry is present,
// nothing committed before Finish is missing.
FifoVerdict check_fifo(const OpLog& log);

}  // namespace spscagg::oracle
