#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "spsc/cache_line_arena.hpp"
#include "spsc/queue_config.hpp"
#include "spsc/stats.hpp"

namespace spscagg::spsc {

// BatchQueue: the ring is two halves of N = capacity / 2 slots. The producer fills one
// half while the consumer copies the other into a private buffer; the single `is_full`
// flag hands a completed half over and back.
//
// try_enqueue never waits: if a half completes while the peer still owns the previous
// one, the hand-off is deferred to the next call (which reports Full until the flag
// clears). At termination producer_finish() publishes the final enqueue index so the
// consumer can drain a partially filled half (the leftover path).
template <class T>
class BatchQueue {
 public:
  using value_type = T;
  static constexpr QueueKind kKind = QueueKind::BatchQueue;

  explicit BatchQueue(const QueueConfig& config)
      : arena_(checked(config).cache_line_bytes,
               {sizeof(ProducerSide), sizeof(ConsumerSide), sizeof(Flag), sizeof(Finish),
                sizeof(Debug), sizeof(Constants)},
               sizeof(T) * config.capacity, alignof(T)),
        producer_(arena_.emplace<ProducerSide>(0)),
        consumer_(arena_.emplace<ConsumerSide>(1)),
        is_full_(arena_.emplace<Flag>(2)),
        finish_(arena_.emplace<Finish>(3)),
        debug_(arena_.emplace<Debug>(4)),
        constants_(arena_.emplace<Constants>(
            5, Constants{config.capacity, config.capacity / 2, config.debug_checks})),
        ring_(arena_.payload(), config.capacity),
        copy_buf_(config.capacity / 2) {}

  bool try_enqueue(const T& item) {
    auto& p = *producer_;
    ++p.stats.enq_attempts;
    if (p.handoff_pending) {
      if (is_full_->value.load(std::memory_order_acquire)) return false;
      is_full_->value.store(true, std::memory_order_release);
      ++p.stats.publication_events;
      p.handoff_pending = false;
    }
    if (constants_->debug &&
        debug_->copying_half.load(std::memory_order_seq_cst) ==
            static_cast<std::int64_t>(p.enq_index / constants_->half)) {
      debug_->ownership_violations.fetch_add(1, std::memory_order_relaxed);
    }
    ring_[p.enq_index] = item;
    p.enq_index = p.enq_index + 1 == constants_->capacity ? 0 : p.enq_index + 1;
    if (p.enq_index % constants_->half == 0) {
      if (!is_full_->value.load(std::memory_order_acquire)) {
        is_full_->value.store(true, std::memory_order_release);
        ++p.stats.publication_events;
      } else {
        p.handoff_pending = true;
      }
    }
    ++p.stats.enq_successes;
    return true;
  }

  bool try_dequeue(T& out) {
    auto& c = *consumer_;
    ++c.stats.deq_attempts;
    if (c.buf_pos == c.buf_len && !refill()) return false;
    out = copy_buf_[c.buf_pos++];
    ++c.stats.deq_successes;
    return true;
  }

  void producer_finish() {
    auto& p = *producer_;
    finish_->final_enq_index = p.enq_index;
    finish_->leftover = p.enq_index % constants_->half != 0;
    finish_->done.store(true, std::memory_order_release);
  }
  bool producer_finished() const { return finish_->done.load(std::memory_order_acquire); }
  void producer_idle_tick() {}

  // Valid on the consumer once producer_finished() returned true.
  bool leftover_flag() const { return finish_->leftover; }

  EndpointStats producer_stats() const {
    EndpointStats s = producer_->stats;
    s.ownership_violations = debug_->ownership_violations.load(std::memory_order_relaxed);
    return s;
  }
  EndpointStats consumer_stats() const { return consumer_->stats; }
  std::size_t capacity() const { return constants_->capacity; }
  std::size_t usable_capacity() const { return constants_->capacity; }
  std::size_t half_size() const { return constants_->half; }
  const CacheLineArena& layout() const { return arena_; }

 private:
  struct ProducerSide {
    std::size_t enq_index = 0;
    bool handoff_pending = false;
    EndpointStats stats;
  };
  struct ConsumerSide {
    std::size_t deq_index = 0;
    std::size_t buf_pos = 0;
    std::size_t buf_len = 0;
    EndpointStats stats;
  };
  struct Flag {
    std::atomic<bool> value{false};
  };
  struct Finish {
    std::atomic<bool> done{false};
    std::size_t final_enq_index = 0;
    bool leftover = false;
  };
  struct Debug {
    std::atomic<std::int64_t> copying_half{-1};
    std::atomic<std::uint64_t> ownership_violations{0};
  };
  struct Constants {
    std::size_t capacity;
    std::size_t half;
    bool debug;
  };

  static const QueueConfig& checked(const QueueConfig& config) {
    validate(kKind, config);
    return config;
  }

  bool refill() {
    auto& c = *consumer_;
    const bool done = finish_->done.load(std::memory_order_acquire);
    if (is_full_->value.load(std::memory_order_acquire)) {
      copy_out(constants_->half);
      is_full_->value.store(false, std::memory_order_release);
      ++c.stats.publication_events;
      return true;
    }
    if (!done) return false;
    // Producer is done and no hand-off is outstanding: everything between deq_index and
    // the published final index is committed. That is either a whole half whose hand-off
    // was still deferred, or a partial half (the leftovers).
    const std::size_t cap = constants_->capacity;
    const std::size_t remaining = (finish_->final_enq_index + cap - c.deq_index) % cap;
    if (remaining == 0) return false;
    copy_out(remaining);
    if (remaining < constants_->half) c.stats.leftover_drained += remaining;
    return true;
  }

  void copy_out(std::size_t count) {
    auto& c = *consumer_;
    if (constants_->debug) {
      debug_->copying_half.store(static_cast<std::int64_t>(c.deq_index / constants_->half),
                                 std::memory_order_seq_cst);
    }
    for (std::size_t i = 0; i < count; ++i) copy_buf_[i] = ring_[c.deq_index + i];
    if (constants_->debug) debug_->copying_half.store(-1, std::memory_order_seq_cst);
    c.deq_index = (c.deq_index + count) % constants_->capacity;
    c.buf_pos = 0;
    c.buf_len = count;
  }

  CacheLineArena arena_;
  ProducerSide* producer_;
  ConsumerSide* consumer_;
  Flag* is_full_;
  Finish* finish_;
  Debug* debug_;
  const Constants* constants_;
  ArenaArray<T> ring_;
  std::vector<T> copy_buf_;
};

}  // namespace spscagg::spsc
