#pragma once

#include <atomic>
#include <cstddef>

#include "spsc/cache_line_arena.hpp"
#include "spsc/queue_config.hpp"
#include "spsc/stats.hpp"

namespace spscagg::spsc {

// Lamport's cyclic buffer. `head` and `tail` are both shared and consulted on every
// operation; each lives on its own line. One slot stays free to tell full from empty.
template <class T>
class LamportQueue {
 public:
  using value_type = T;
  static constexpr QueueKind kKind = QueueKind::Lamport;

  explicit LamportQueue(const QueueConfig& config)
      : arena_(checked(config).cache_line_bytes,
               {sizeof(Index), sizeof(Tail), sizeof(EndpointStats), sizeof(EndpointStats),
                sizeof(std::size_t)},
               sizeof(T) * config.capacity, alignof(T)),
        head_(arena_.emplace<Index>(0)),
        tail_(arena_.emplace<Tail>(1)),
        consumer_stats_(arena_.emplace<EndpointStats>(2)),
        producer_stats_(arena_.emplace<EndpointStats>(3)),
        capacity_(arena_.emplace<std::size_t>(4, config.capacity)),
        ring_(arena_.payload(), config.capacity) {}

  bool try_enqueue(const T& item) {
    auto& stats = *producer_stats_;
    ++stats.enq_attempts;
    const std::size_t tail = tail_->index.load(std::memory_order_relaxed);
    const std::size_t next = after(tail);
    if (next == head_->index.load(std::memory_order_acquire)) return false;
    ring_[tail] = item;
    tail_->index.store(next, std::memory_order_release);
    ++stats.publication_events;
    ++stats.enq_successes;
    return true;
  }

  bool try_dequeue(T& out) {
    auto& stats = *consumer_stats_;
    ++stats.deq_attempts;
    const std::size_t head = head_->index.load(std::memory_order_relaxed);
    if (head == tail_->index.load(std::memory_order_acquire)) return false;
    out = ring_[head];
    head_->index.store(after(head), std::memory_order_release);
    ++stats.publication_events;
    ++stats.deq_successes;
    return true;
  }

  void producer_finish() {
    tail_->done.store(true, std::memory_order_release);
  }
  bool producer_finished() const { return tail_->done.load(std::memory_order_acquire); }
  void producer_idle_tick() {}

  EndpointStats producer_stats() const { return *producer_stats_; }
  EndpointStats consumer_stats() const { return *consumer_stats_; }
  std::size_t capacity() const { return *capacity_; }
  std::size_t usable_capacity() const { return *capacity_ - 1; }

  // Quiescent-state view, for tests: (tail - head) mod capacity.
  std::size_t occupancy() const {
    const std::size_t head = head_->index.load(std::memory_order_acquire);
    const std::size_t tail = tail_->index.load(std::memory_order_acquire);
    return (tail + *capacity_ - head) % *capacity_;
  }
  const CacheLineArena& layout() const { return arena_; }

 private:
  struct Index {
    std::atomic<std::size_t> index{0};
  };
  struct Tail {
    std::atomic<std::size_t> index{0};
    std::atomic<bool> done{false};
  };

  static const QueueConfig& checked(const QueueConfig& config) {
    validate(kKind, config);
    return config;
  }
  std::size_t after(std::size_t i) const { return i + 1 == *capacity_ ? 0 : i + 1; }

  CacheLineArena arena_;
  Index* head_;
  Tail* tail_;
  EndpointStats* consumer_stats_;
  EndpointStats* producer_stats_;
  const std::size_t* capacity_;
  ArenaArray<T> ring_;
};

}  // namespace spscagg::spsc
