#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <utility>

#include "spsc/backoff.hpp"
#include "spsc/queue_config.hpp"
#include "spsc/stats.hpp"

namespace spscagg::spsc {

enum class SpinResult { Ok, Timeout };

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

// Producer and consumer handles share ownership of one queue. Each handle must be
// used by at most one agent at a time; handles are movable, so ownership can be
// transferred between agents (e.g. prefill on one thread, run on another).
template <class Queue>
class Producer {
 public:
  using value_type = typename Queue::value_type;

  Producer() = default;
  explicit Producer(std::shared_ptr<Queue> q) : q_(std::move(q)) {}

  bool try_enqueue(const value_type& item) { return q_->try_enqueue(item); }

  // Retries try_enqueue up to `budget` attempts, backing off between attempts.
  SpinResult enqueue_spin(const value_type& item, std::size_t budget = kUnbounded) {
    Backoff backoff;
    for (std::size_t attempt = 0; attempt < budget; ++attempt) {
      if (q_->try_enqueue(item)) return SpinResult::Ok;
      q_->producer_idle_tick();
      backoff.pause();
    }
    return SpinResult::Timeout;
  }

  void finish() { q_->producer_finish(); }
  void idle_tick() { q_->producer_idle_tick(); }
  EndpointStats stats() const { return q_->producer_stats(); }
  Queue& queue() const { return *q_; }
  explicit operator bool() const { return static_cast<bool>(q_); }

 private:
  std::shared_ptr<Queue> q_;
};

template <class Queue>
class Consumer {
 public:
  using value_type = typename Queue::value_type;

  Consumer() = default;
  explicit Consumer(std::shared_ptr<Queue> q) : q_(std::move(q)) {}

  bool try_dequeue(value_type& out) { return q_->try_dequeue(out); }

  std::optional<value_type> try_dequeue() {
    value_type out{};
    if (q_->try_dequeue(out)) return out;
    return std::nullopt;
  }

  // Returns nullopt on timeout.
  std::optional<value_type> dequeue_spin(std::size_t budget = kUnbounded) {
    Backoff backoff;
    value_type out{};
    for (std::size_t attempt = 0; attempt < budget; ++attempt) {
      if (q_->try_dequeue(out)) return out;
      backoff.pause();
    }
    return std::nullopt;
  }

  // True once the producer has called finish(). An Empty result observed after this
  // returned true means the queue is drained for good.
  bool producer_finished() const { return q_->producer_finished(); }

  EndpointStats stats() const { return q_->consumer_stats(); }
  Queue& queue() const { return *q_; }
  explicit operator bool() const { return static_cast<bool>(q_); }

 private:
  std::shared_ptr<Queue> q_;
};

template <class Queue>
struct EndpointPair {
  Producer<Queue> producer;
  Consumer<Queue> consumer;
};

// Throws ConfigError if the configuration is invalid for Queue's kind.
template <class Queue>
EndpointPair<Queue> make_queue(const QueueConfig& config) {
  auto q = std::make_shared<Queue>(config);
  return {Producer<Queue>(q), Consumer<Queue>(q)};
}

// Drains everything the producer committed: keeps polling until the producer has
// finished and a subsequent dequeue finds the queue empty. Calls `sink` per element.
template <class Queue, class Sink>
void drain(Consumer<Queue>& consumer, Sink&& sink) {
  Backoff backoff;
  typename Queue::value_type item{};
  for (;;) {
    const bool finished = consumer.producer_finished();
    if (consumer.try_dequeue(item)) {
      sink(item);
      backoff.reset();
      continue;
    }
    if (finished) return;
    backoff.pause();
  }
}

}  // namespace spscagg::spsc
