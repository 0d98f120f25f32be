#pragma once

#include <memory>
#include <type_traits>
#include <utility>

#include "spsc/batch_queue.hpp"
#include "spsc/endpoints.hpp"
#include "spsc/fast_forward_queue.hpp"
#include "spsc/lamport_queue.hpp"
#include "spsc/mc_ring_buffer.hpp"
#include "spsc/queue_config.hpp"

namespace spscagg::spsc {

template <QueueKind K, class T>
struct QueueFor;
template <class T>
struct QueueFor<QueueKind::Lamport, T> {
  using type = LamportQueue<T>;
};
template <class T>
struct QueueFor<QueueKind::FastForward, T> {
  using type = FastForwardQueue<T>;
};
template <class T>
struct QueueFor<QueueKind::BatchQueue, T> {
  using type = BatchQueue<T>;
};
template <class T>
struct QueueFor<QueueKind::MCRingBuffer, T> {
  using type = MCRingBuffer<T>;
};
template <QueueKind K, class T>
using QueueFor_t = typename QueueFor<K, T>::type;

template <QueueKind K>
using KindTag = std::integral_constant<QueueKind, K>;

// Calls fn(KindTag<kind>{}) so the body can name the concrete queue type statically:
//   visit_kind(kind, [&](auto tag) { using Q = QueueFor_t<tag.value, Item>; ... });
template <class Fn>
decltype(auto) visit_kind(QueueKind kind, Fn&& fn) {
  switch (kind) {
    case QueueKind::Lamport:
      return std::forward<Fn>(fn)(KindTag<QueueKind::Lamport>{});
    case QueueKind::FastForward:
      return std::forward<Fn>(fn)(KindTag<QueueKind::FastForward>{});
    case QueueKind::BatchQueue:
      return std::forward<Fn>(fn)(KindTag<QueueKind::BatchQueue>{});
    case QueueKind::MCRingBuffer:
      break;
  }
  return std::forward<Fn>(fn)(KindTag<QueueKind::MCRingBuffer>{});
}

// Runtime-polymorphic queue so a kind chosen at run time yields one endpoint type.
template <class T>
class AnyQueue {
 public:
  using value_type = T;
  virtual ~AnyQueue() = default;
  virtual QueueKind kind() const = 0;
  virtual bool try_enqueue(const T& item) = 0;
  virtual bool try_dequeue(T& out) = 0;
  virtual void producer_finish() = 0;
  virtual bool producer_finished() const = 0;
  virtual void producer_idle_tick() = 0;
  virtual EndpointStats producer_stats() const = 0;
  virtual EndpointStats consumer_stats() const = 0;
  virtual std::size_t capacity() const = 0;
  virtual std::size_t usable_capacity() const = 0;
};

template <class Queue>
class ErasedQueue final : public AnyQueue<typename Queue::value_type> {
  using T = typename Queue::value_type;

 public:
  explicit ErasedQueue(const QueueConfig& config) : q_(config) {}
  QueueKind kind() const override { return Queue::kKind; }
  bool try_enqueue(const T& item) override { return q_.try_enqueue(item); }
  bool try_dequeue(T& out) override { return q_.try_dequeue(out); }
  void producer_finish() override { q_.producer_finish(); }
  bool producer_finished() const override { return q_.producer_finished(); }
  void producer_idle_tick() override { q_.producer_idle_tick(); }
  EndpointStats producer_stats() const override { return q_.producer_stats(); }
  EndpointStats consumer_stats() const override { return q_.consumer_stats(); }
  std::size_t capacity() const override { return q_.capacity(); }
  std::size_t usable_capacity() const override { return q_.usable_capacity(); }

 private:
  Queue q_;
};

template <class T>
EndpointPair<AnyQueue<T>> new_queue(QueueKind kind, const QueueConfig& config) {
  std::shared_ptr<AnyQueue<T>> q = visit_kind(kind, [&](auto tag) -> std::shared_ptr<AnyQueue<T>> {
    return std::make_shared<ErasedQueue<QueueFor_t<decltype(tag)::value, T>>>(config);
  });
  return {Producer<AnyQueue<T>>(q), Consumer<AnyQueue<T>>(q)};
}

}  // namespace spscagg::spsc
