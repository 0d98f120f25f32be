#pragma once

#include <atomic>
#include <cstddef>

#include "spsc/cache_line_arena.hpp"
#include "spsc/queue_config.hpp"
#include "spsc/stats.hpp"

namespace spscagg::spsc {

// FastForward: control is coupled with data. Each cell carries an occupancy tag next to
// its payload, so head and tail stay private to their endpoints and never cross cores.
// The tag replaces the reserved NULL payload, leaving every value of T usable.
template <class T>
class FastForwardQueue {
 public:
  using value_type = T;
  static constexpr QueueKind kKind = QueueKind::FastForward;

  explicit FastForwardQueue(const QueueConfig& config)
      : arena_(checked(config).cache_line_bytes,
               {sizeof(Side), sizeof(Side), sizeof(Shared), sizeof(std::size_t)},
               sizeof(Cell) * config.capacity, alignof(Cell)),
        producer_(arena_.emplace<Side>(0)),
        consumer_(arena_.emplace<Side>(1)),
        shared_(arena_.emplace<Shared>(2)),
        capacity_(arena_.emplace<std::size_t>(3, config.capacity)),
        cells_(arena_.payload(), config.capacity) {}

  bool try_enqueue(const T& item) {
    auto& side = *producer_;
    ++side.stats.enq_attempts;
    Cell& cell = cells_[side.index];
    if (cell.full.load(std::memory_order_acquire)) return false;
    cell.value = item;
    cell.full.store(true, std::memory_order_release);
    side.index = after(side.index);
    ++side.stats.publication_events;
    ++side.stats.enq_successes;
    return true;
  }

  bool try_dequeue(T& out) {
    auto& side = *consumer_;
    ++side.stats.deq_attempts;
    Cell& cell = cells_[side.index];
    if (!cell.full.load(std::memory_order_acquire)) return false;
    out = cell.value;
    // Clear before advancing; head is consumer-private so the advance needs no ordering.
    cell.full.store(false, std::memory_order_release);
    side.index = after(side.index);
    ++side.stats.publication_events;
    ++side.stats.deq_successes;
    return true;
  }

  void producer_finish() {
    shared_->done.store(true, std::memory_order_release);
  }
  bool producer_finished() const { return shared_->done.load(std::memory_order_acquire); }
  void producer_idle_tick() {}

  EndpointStats producer_stats() const { return producer_->stats; }
  EndpointStats consumer_stats() const { return consumer_->stats; }
  std::size_t capacity() const { return *capacity_; }
  std::size_t usable_capacity() const { return *capacity_; }

  std::size_t occupancy() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < *capacity_; ++i) {
      n += cells_[i].full.load(std::memory_order_acquire) ? 1 : 0;
    }
    return n;
  }
  const CacheLineArena& layout() const { return arena_; }

 private:
  struct Cell {
    std::atomic<bool> full{false};
    T value{};
  };
  struct Side {
    std::size_t index = 0;
    EndpointStats stats;
  };
  struct Shared {
    std::atomic<bool> done{false};
  };

  static const QueueConfig& checked(const QueueConfig& config) {
    validate(kKind, config);
    return config;
  }
  std::size_t after(std::size_t i) const { return i + 1 == *capacity_ ? 0 : i + 1; }

  CacheLineArena arena_;
  Side* producer_;
  Side* consumer_;
  Shared* shared_;
  const std::size_t* capacity_;
  ArenaArray<Cell> cells_;
};

}  // namespace spscagg::spsc
