#include "oracle/oracle.hpp"

#include <string>

namespace spscagg::oracle {

using agg::AggregationError;

agg::WindowTotals oracle_aggregate(const std::vector<agg::Tuple>& tuples,
                                   const agg::WindowSpec& spec) {
  agg::validate(spec);
  agg::WindowTotals totals;
  agg::Timestamp previous = 0;
  for (const agg::Tuple& tuple : tuples) {
    const agg::Timestamp t = tuple.timestamp;
    if (t < previous) {
      throw AggregationError(AggregationError::Code::UnsortedInput,
                             "timestamp " + std::to_string(t) + " follows " +
                                 std::to_string(previous));
    }
    previous = t;
    // Walk window indices down from the last window that starts at or before t.
    for (agg::Timestamp k = t / spec.advance; k >= 0; --k) {
      const agg::Timestamp start = k * spec.advance;
      if (start + spec.size <= t) break;
      totals[start] += tuple.value;
    }
  }
  return totals;
}

void FifoChecker::fail(std::string why) {
  if (verdict_.ok) verdict_ = FifoVerdict::violation(std::move(why));
}

void FifoChecker::on_enqueue(std::uint64_t seq) {
  if (finished_) fail("enqueue of " + std::to_string(seq) + " after finish");
  if (!enqueued_.empty() && seq <= enqueued_.back()) {
    fail("enqueued sequence numbers not increasing at " + std::to_string(seq));
  }
  enqueued_.push_back(seq);
}

void FifoChecker::on_dequeue(std::uint64_t seq) {
  if (dequeued_ >= enqueued_.size()) {
    fail("dequeued " + std::to_string(seq) + " which was never enqueued");
  } else if (seq != enqueued_[dequeued_]) {
    fail("dequeue #" + std::to_string(dequeued_) + " returned " + std::to_string(seq) +
         ", expected " + std::to_string(enqueued_[dequeued_]));
  }
  ++dequeued_;
}

void FifoChecker::on_finish() { finished_ = true; }

void FifoChecker::on_drain_complete() {
  if (!finished_) {
    fail("drain completed before the producer finished");
    return;
  }
  if (dequeued_ < enqueued_.size()) {
    fail("lost " + std::to_string(enqueued_.size() - dequeued_) + " element(s), first missing " +
         std::to_string(enqueued_[dequeued_]));
  }
}

FifoVerdict check_fifo(const OpLog& log) {
  FifoChecker checker;
  for (const OpLogEntry& e : log.entries) {
    if (e.result != OpResult::Ok) continue;
    switch (e.op) {
      case Op::Enqueue:
        checker.on_enqueue(e.seq);
        break;
      case Op::Dequeue:
        checker.on_dequeue(e.seq);
        break;
      case Op::Finish:
        checker.on_finish();
        break;
      case Op::DrainComplete:
        checker.on_drain_complete();
        break;
    }
    if (!checker.verdict()) break;
  }
  return checker.verdict();
}

}  // namespace spscagg::oracle
