#include "aggregation/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <latch>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "aggregation/aggregator.hpp"
#include "aggregation/final_aggregator.hpp"
#include "spsc/queues.hpp"

namespace spscagg::agg {

namespace {

// Aggregator -> final aggregator message. One window partial per message; the last
// message from each aggregator is an inactivity marker.
struct AggMessage {
  Timestamp start = 0;
  Watts sum = 0;
  std::uint32_t source = 0;
  std::uint32_t inactive = 0;
};

// Thrown inside an agent when another agent failed and the run is being torn down.
struct AgentAborted {};

class Pacer {
 public:
  Pacer(const std::optional<std::uint64_t>& seed, std::size_t agent) {
    if (seed) rng_.emplace(*seed * 1000003ULL + agent);
  }
  void step() {
    if (rng_ && (*rng_)() % 4 == 0) std::this_thread::yield();
  }

 private:
  std::optional<std::mt19937_64> rng_;
};

template <class Queue>
void push_or_abort(spsc::Producer<Queue>& producer, const typename Queue::value_type& item,
                   const std::atomic<bool>& abort) {
  spsc::Backoff backoff;
  while (!producer.try_enqueue(item)) {
    if (abort.load(std::memory_order_relaxed)) throw AgentAborted{};
    producer.idle_tick();
    backoff.pause();
  }
}

template <spsc::QueueKind Kind>
PipelineResult run_typed(const PipelineConfig& config) {
  using TupleQueue = spsc::QueueFor_t<Kind, Tuple>;
  using MessageQueue = spsc::QueueFor_t<Kind, AggMessage>;

  const std::size_t producers = config.producers;
  const std::size_t aggregators = config.aggregators;
  const std::size_t agents = producers + aggregators + 1;

  std::vector<spsc::EndpointPair<TupleQueue>> inbound;
  std::vector<spsc::EndpointPair<MessageQueue>> outbound;
  inbound.reserve(aggregators);
  outbound.reserve(aggregators);
  for (std::size_t a = 0; a < aggregators; ++a) {
    inbound.push_back(spsc::make_queue<TupleQueue>(config.queue_config));
    outbound.push_back(spsc::make_queue<MessageQueue>(config.queue_config));
  }

  std::atomic<bool> abort{false};
  std::atomic<bool> go{false};
  std::latch ready(static_cast<std::ptrdiff_t>(agents));
  std::vector<std::exception_ptr> errors(agents);
  std::atomic<std::uint64_t> messages{0};
  std::atomic<std::uint64_t> partial_messages{0};
  WindowTotals totals;

  auto agent = [&](std::size_t slot, auto body) {
    return std::thread([&, slot, body]() mutable {
      ready.count_down();
      while (!go.load(std::memory_order_acquire)) std::this_thread::yield();
      try {
        body();
      } catch (const AgentAborted&) {
      } catch (...) {
        errors[slot] = std::current_exception();
        abort.store(true, std::memory_order_relaxed);
      }
    });
  };

  std::vector<std::thread> threads;
  threads.reserve(agents);

  for (std::size_t p = 0; p < producers; ++p) {
    threads.push_back(agent(p, [&, p] {
      Pacer pacer(config.pacing_seed, p);
      const AggregatorRange range = assigned_aggregators(p, producers, aggregators);
      std::size_t target = range.first;
      for (const Tuple& tuple : config.workloads[p]) {
        push_or_abort(inbound[target].producer, tuple, abort);
        if (++target == range.last) target = range.first;
        pacer.step();
      }
      for (std::size_t a = range.first; a < range.last; ++a) inbound[a].producer.finish();
    }));
  }

  for (std::size_t a = 0; a < aggregators; ++a) {
    threads.push_back(agent(producers + a, [&, a] {
      Pacer pacer(config.pacing_seed, producers + a);
      Aggregator state(config.spec, static_cast<std::uint32_t>(a));
      auto& input = inbound[a].consumer;
      auto& output = outbound[a].producer;
      std::uint64_t consumed = 0;
      std::uint64_t sent = 0;
      auto emit = [&](const WindowPartial& w) {
        push_or_abort(output, AggMessage{w.start, w.sum, w.source, 0}, abort);
        ++sent;
      };
      spsc::Backoff backoff;
      Tuple tuple;
      for (;;) {
        const bool finished = input.producer_finished();
        if (input.try_dequeue(tuple)) {
          state.update(tuple, emit);
          ++consumed;
          backoff.reset();
          pacer.step();
          continue;
        }
        if (finished) break;
        if (abort.load(std::memory_order_relaxed)) throw AgentAborted{};
        backoff.pause();
      }
      state.finalize(emit);
      push_or_abort(output, AggMessage{0, 0, static_cast<std::uint32_t>(a), 1}, abort);
      output.finish();
      messages.fetch_add(consumed, std::memory_order_relaxed);
      partial_messages.fetch_add(sent, std::memory_order_relaxed);
    }));
  }

  threads.push_back(agent(agents - 1, [&] {
    Pacer pacer(config.pacing_seed, agents - 1);
    FinalAggregator final_stage(aggregators, config.spec);
    auto record = [&](const std::vector<WindowTotal>& ready_windows) {
      for (const WindowTotal& w : ready_windows) {
        if (!totals.emplace(w.start, w.total).second) {
          throw std::logic_error("window " + std::to_string(w.start) + " reported twice");
        }
      }
    };
    std::vector<bool> inactive(aggregators, false);
    std::size_t active = aggregators;
    spsc::Backoff backoff;
    AggMessage msg;
    while (active > 0) {
      bool progressed = false;
      for (std::size_t a = 0; a < aggregators; ++a) {
        if (inactive[a] || !outbound[a].consumer.try_dequeue(msg)) continue;
        progressed = true;
        if (msg.source != a) throw std::logic_error("message source does not match its queue");
        if (msg.inactive != 0) {
          record(final_stage.mark_inactive(msg.source));
          inactive[a] = true;
          --active;
        } else {
          record(final_stage.accept(WindowPartial{msg.start, msg.sum, msg.source}));
        }
        pacer.step();
      }
      if (progressed) {
        backoff.reset();
      } else {
        if (abort.load(std::memory_order_relaxed)) throw AgentAborted{};
        backoff.pause();
      }
    }
    record(final_stage.flush());
  }));

  ready.wait();
  if (config.on_start) config.on_start();
  const auto t0 = std::chrono::steady_clock::now();
  go.store(true, std::memory_order_release);
  for (auto& t : threads) t.join();
  const auto t1 = std::chrono::steady_clock::now();
  if (config.on_stop) config.on_stop();

  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  PipelineResult result;
  result.totals = std::move(totals);
  result.metrics.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  result.metrics.messages = messages.load();
  result.metrics.partial_messages = partial_messages.load();
  result.metrics.throughput_per_ms =
      result.metrics.elapsed_ms > 0.0
          ? static_cast<double>(result.metrics.messages) / result.metrics.elapsed_ms
          : 0.0;
  return result;
}

}  // namespace

AggregatorRange assigned_aggregators(std::size_t producer, std::size_t producers,
                                     std::size_t aggregators) {
  return {producer * aggregators / producers, (producer + 1) * aggregators / producers};
}

void validate(const PipelineConfig& config) {
  if (config.producers == 0) throw spsc::ConfigError("pipeline needs at least one producer");
  if (config.aggregators < config.producers) {
    throw spsc::ConfigError("pipeline needs at least one aggregator per producer, got " +
                            std::to_string(config.aggregators) + " aggregators for " +
                            std::to_string(config.producers) + " producers");
  }
  if (config.workloads.size() != config.producers) {
    throw spsc::ConfigError("expected one workload per producer, got " +
                            std::to_string(config.workloads.size()));
  }
  spsc::validate(config.queue_kind, config.queue_config);
  validate(config.spec);
  for (std::size_t p = 0; p < config.workloads.size(); ++p) {
    const auto& w = config.workloads[p];
    const bool sorted = std::is_sorted(w.begin(), w.end(), [](const Tuple& a, const Tuple& b) {
      return a.timestamp < b.timestamp;
    });
    if (!sorted || (!w.empty() && w.front().timestamp < 0)) {
      throw AggregationError(AggregationError::Code::UnsortedInput,
                             "workload of producer " + std::to_string(p) +
                                 " is not sorted by non-negative timestamp");
    }
  }
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  validate(config);
  return spsc::visit_kind(config.queue_kind,
                          [&](auto tag) { return run_typed<decltype(tag)::value>(config); });
}

}  // namespace spscagg::agg
