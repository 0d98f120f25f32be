#pragma once

#include <atomic>
#include <cstddef>

#include "spsc/cache_line_arena.hpp"
#include "spsc/queue_config.hpp"
#include "spsc/stats.hpp"

namespace spscagg::spsc {

// MCRingBuffer: cache-line protection plus batch updates. Each endpoint works against a
// private snapshot of its peer's index and only re-reads the shared copy when the
// snapshot says it cannot progress. Shared indices are published every batch_size
// operations.
//
// A stalled endpoint (Full or Empty even after refreshing its snapshot) publishes any
// operations still pending in its batch; with batch_size close to capacity the two
// sides would otherwise wait on each other forever. Those writes are counted in
// EndpointStats::stall_publications as well as publication_events.
template <class T>
class MCRingBuffer {
 public:
  using value_type = T;
  static constexpr QueueKind kKind = QueueKind::MCRingBuffer;

  explicit MCRingBuffer(const QueueConfig& config)
      : arena_(checked(config).cache_line_bytes,
               {1, sizeof(Shared), sizeof(ConsumerLocal), sizeof(ProducerLocal),
                sizeof(Constants)},
               sizeof(Slot) * config.capacity, alignof(Slot)),
        shared_(arena_.emplace<Shared>(1)),
        consumer_(arena_.emplace<ConsumerLocal>(2)),
        producer_(arena_.emplace<ProducerLocal>(3)),
        constants_(arena_.emplace<Constants>(
            4, Constants{config.capacity, config.mcr_batch_size, config.mcr_heartbeat_period})),
        ring_(arena_.payload(), config.capacity) {}

  bool try_enqueue(const T& item) {
    auto& p = *producer_;
    ++p.stats.enq_attempts;
    if (!push(item, false)) return false;
    p.idle_ticks = 0;
    ++p.stats.enq_successes;
    return true;
  }

  bool try_dequeue(T& out) {
    auto& c = *consumer_;
    ++c.stats.deq_attempts;
    for (;;) {
      if (c.next_read == c.local_write) {
        c.local_write = shared_->write.load(std::memory_order_acquire);
        if (c.next_read == c.local_write) {
          if (c.published_read != c.next_read) {
            shared_->read.store(c.next_read, std::memory_order_release);
            c.published_read = c.next_read;
            ++c.stats.publication_events;
            ++c.stats.stall_publications;
          }
          return false;
        }
      }
      const Slot& slot = ring_[c.next_read];
      const bool dummy = slot.dummy;
      if (!dummy) out = slot.value;
      c.next_read = after(c.next_read);
      if (++c.r_batch >= constants_->batch_size) {
        shared_->read.store(c.next_read, std::memory_order_release);
        c.published_read = c.next_read;
        c.r_batch = 0;
        ++c.stats.publication_events;
      }
      if (dummy) {
        ++c.stats.heartbeat_dummies;
        continue;
      }
      ++c.stats.deq_successes;
      return true;
    }
  }

  // Publishes a partial batch so the consumer observes every committed element.
  void producer_finish() {
    auto& p = *producer_;
    if (p.w_batch > 0) {
      shared_->write.store(p.next_write, std::memory_order_release);
      p.published_write = p.next_write;
      p.w_batch = 0;
      ++p.stats.publication_events;
    }
    shared_->done.store(true, std::memory_order_release);
  }
  bool producer_finished() const { return shared_->done.load(std::memory_order_acquire); }

  // Called by an idle producer. Every heartbeat_period ticks without a real enqueue,
  // one dummy element is inserted so a slow stream still completes its batches.
  void producer_idle_tick() {
    auto& p = *producer_;
    if (constants_->heartbeat_period == 0) return;
    if (++p.idle_ticks < constants_->heartbeat_period) return;
    p.idle_ticks = 0;
    if (push(T{}, true)) ++p.stats.heartbeat_dummies;
  }

  EndpointStats producer_stats() const { return producer_->stats; }
  EndpointStats consumer_stats() const { return consumer_->stats; }
  std::size_t capacity() const { return constants_->capacity; }
  std::size_t usable_capacity() const { return constants_->capacity - 1; }
  std::size_t batch_size() const { return constants_->batch_size; }

  // Elements committed by the producer but not yet visible through shared_write.
  std::size_t unpublished_writes() const {
    const std::size_t cap = constants_->capacity;
    return (producer_->next_write + cap - shared_->write.load(std::memory_order_acquire)) % cap;
  }
  std::size_t unpublished_reads() const {
    const std::size_t cap = constants_->capacity;
    return (consumer_->next_read + cap - shared_->read.load(std::memory_order_acquire)) % cap;
  }
  const CacheLineArena& layout() const { return arena_; }

 private:
  struct Slot {
    T value{};
    bool dummy = false;
  };
  struct Shared {
    std::atomic<std::size_t> read{0};
    std::atomic<std::size_t> write{0};
    std::atomic<bool> done{false};
  };
  struct ConsumerLocal {
    std::size_t local_write = 0;
    std::size_t next_read = 0;
    std::size_t r_batch = 0;
    std::size_t published_read = 0;
    EndpointStats stats;
  };
  struct ProducerLocal {
    std::size_t local_read = 0;
    std::size_t next_write = 0;
    std::size_t w_batch = 0;
    std::size_t published_write = 0;
    std::size_t idle_ticks = 0;
    EndpointStats stats;
  };
  struct Constants {
    std::size_t capacity;
    std::size_t batch_size;
    std::size_t heartbeat_period;
  };

  static const QueueConfig& checked(const QueueConfig& config) {
    validate(kKind, config);
    return config;
  }
  std::size_t after(std::size_t i) const { return i + 1 == constants_->capacity ? 0 : i + 1; }

  bool push(const T& item, bool dummy) {
    auto& p = *producer_;
    const std::size_t after_next_write = after(p.next_write);
    if (after_next_write == p.local_read) {
      p.local_read = shared_->read.load(std::memory_order_acquire);
      if (after_next_write == p.local_read) {
        if (p.published_write != p.next_write) {
          shared_->write.store(p.next_write, std::memory_order_release);
          p.published_write = p.next_write;
          ++p.stats.publication_events;
          ++p.stats.stall_publications;
        }
        return false;
      }
    }
    Slot& slot = ring_[p.next_write];
    slot.value = item;
    slot.dummy = dummy;
    p.next_write = after_next_write;
    if (++p.w_batch >= constants_->batch_size) {
      shared_->write.store(p.next_write, std::memory_order_release);
      p.published_write = p.next_write;
      p.w_batch = 0;
      ++p.stats.publication_events;
    }
    return true;
  }

  CacheLineArena arena_;
  Shared* shared_;
  ConsumerLocal* consumer_;
  ProducerLocal* producer_;
  const Constants* constants_;
  ArenaArray<Slot> ring_;
};

}  // namespace spscagg::spsc
