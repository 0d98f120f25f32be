#include "bench/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <latch>
#include <sstream>
#include <thread>

#include "aggregation/pipeline.hpp"
#include "bench/energy_probe.hpp"
#include "bench/payload.hpp"
#include "bench/workload.hpp"
#include "oracle/oracle.hpp"
#include "spsc/queues.hpp"

namespace spscagg::bench {

namespace {

using Clock = std::chrono::steady_clock;

// Brackets one timed region with the energy probe, if any. Failures are recorded
// rather than thrown so that a pipeline's worker agents are always released.
class EnergySession {
 public:
  explicit EnergySession(const BenchConfig& config) : config_(config) {
    if (config.energy_cmd) probe_.emplace(*config.energy_cmd);
  }

  void start() {
    if (!probe_) return;
    try {
      probe_->start();
    } catch (const ProbeFailure& e) {
      fail(e.what());
    }
  }

  void stop() {
    if (!probe_ || failure_) return;
    try {
      joules_ = probe_->stop();
    } catch (const ProbeFailure& e) {
      fail(e.what());
    }
  }

  // Joules for the region, or nullopt after a (non-strict) failure.
  std::optional<double> finish() {
    if (failure_) {
      if (config_.strict_energy) throw ProbeFailure(*failure_);
      if (config_.on_warning) config_.on_warning("energy probe: " + *failure_ + "; joules omitted");
      return std::nullopt;
    }
    return joules_;
  }

 private:
  void fail(std::string why) {
    if (!failure_) failure_ = std::move(why);
  }

  const BenchConfig& config_;
  std::optional<EnergyProbe> probe_;
  std::optional<double> joules_;
  std::optional<std::string> failure_;
};

spsc::QueueConfig queue_config(const BenchConfig& config, std::size_t capacity) {
  spsc::QueueConfig qc;
  qc.capacity = capacity;
  qc.cache_line_bytes = config.cache_line_bytes;
  qc.mcr_batch_size = config.mcr_batch;
  return qc;
}

void attach_energy(ReportRow& row, std::optional<double> joules) {
  row.joules = joules;
  if (joules && row.ops > 0) row.joules_per_message = *joules / static_cast<double>(row.ops);
}

void append_with_average(std::vector<ReportRow>& out, std::vector<ReportRow> reps) {
  ReportRow mean = average(reps);
  for (ReportRow& r : reps) out.push_back(std::move(r));
  out.push_back(std::move(mean));
}

struct MicroTiming {
  double elapsed_ms = 0.0;
  std::optional<double> joules;
};

template <class Queue>
MicroTiming micro_once(const BenchConfig& config, const spsc::QueueConfig& qc,
                       std::size_t prefill) {
  using Item = typename Queue::value_type;
  auto [producer, consumer] = spsc::make_queue<Queue>(qc);

  Item item{};
  for (std::size_t i = 0; i < prefill; ++i) {
    item.tuple.timestamp = static_cast<agg::Timestamp>(i);
    if (!producer.try_enqueue(item)) throw std::logic_error("prefill exceeded queue capacity");
  }

  const std::uint64_t total = prefill + config.tuples;
  std::latch ready(3);
  std::atomic<bool> go{false};
  std::uint64_t received = 0;
  std::optional<std::string> violation;

  std::thread producer_thread([&, &producer = producer] {
    ready.count_down();
    while (!go.load(std::memory_order_acquire)) std::this_thread::yield();
    Item out{};
    for (std::uint64_t seq = prefill; seq < total; ++seq) {
      out.tuple.timestamp = static_cast<agg::Timestamp>(seq);
      producer.enqueue_spin(out);
    }
    producer.finish();
  });
  std::thread consumer_thread([&, &consumer = consumer] {
    ready.count_down();
    while (!go.load(std::memory_order_acquire)) std::this_thread::yield();
    spsc::drain(consumer, [&](const Item& in) {
      if (config.verify && !violation &&
          static_cast<std::uint64_t>(in.tuple.timestamp) != received) {
        violation = "dequeued sequence number " + std::to_string(in.tuple.timestamp) +
                    " at position " + std::to_string(received);
      }
      ++received;
    });
  });

  EnergySession energy(config);
  ready.arrive_and_wait();
  energy.start();
  const auto t0 = Clock::now();
  go.store(true, std::memory_order_release);
  producer_thread.join();
  consumer_thread.join();
  const auto t1 = Clock::now();
  energy.stop();

  if (config.verify) {
    if (!violation && received != total) {
      violation = "consumer received " + std::to_string(received) + " of " +
                  std::to_string(total) + " elements";
    }
    if (violation) throw VerificationError("FIFO check failed: " + *violation);
  }
  return {std::chrono::duration<double, std::milli>(t1 - t0).count(), energy.finish()};
}

std::string dump(const agg::WindowTotals& totals) {
  std::ostringstream out;
  for (const auto& [start, total] : totals) out << start << ' ' << total << '\n';
  return out.str();
}

}  // namespace

void check_against_oracle(const agg::WindowTotals& expected, const agg::WindowTotals& actual,
                          const std::string& label) {
  if (expected == actual) return;
  std::string detail;
  auto e = expected.begin();
  auto a = actual.begin();
  while (e != expected.end() && a != actual.end() && *e == *a) {
    ++e;
    ++a;
  }
  if (e == expected.end()) {
    detail = "unexpected window " + std::to_string(a->first);
  } else if (a == actual.end() || a->first > e->first) {
    detail = "missing window " + std::to_string(e->first);
  } else if (a->first < e->first) {
    detail = "unexpected window " + std::to_string(a->first);
  } else {
    detail = "window " + std::to_string(e->first) + " total " + std::to_string(a->second) +
             ", expected " + std::to_string(e->second);
  }
  throw OracleMismatch("pipeline output differs from oracle (" + label + "): " + detail,
                       dump(expected), dump(actual));
}


void validate(const BenchConfig& config) {
  using spsc::ConfigError;
  if (config.reps == 0) throw ConfigError("repetitions must be at least 1");
  if (config.kinds.empty()) throw ConfigError("no queue kind selected");
  if (config.capacities.empty()) throw ConfigError("no capacity selected");
  if (config.tuples == 0) throw ConfigError("tuple count must be at least 1");
  if (config.mode == Mode::Micro) {
    if (config.element_sizes.empty()) throw ConfigError("no element size selected");
    for (std::size_t size : config.element_sizes) {
      if (!supported_element_size(size)) {
        std::string supported;
        for (std::size_t s : kElementSizes) supported += (supported.empty() ? "" : ", ") + std::to_string(s);
        throw ConfigError("unsupported element size " + std::to_string(size) + " (supported: " +
                          supported + ")");
      }
    }
  } else {
    for (std::size_t size : config.element_sizes) {
      if (size != sizeof(agg::Tuple)) {
        throw ConfigError("pipeline mode carries 12-byte tuples; element size " +
                          std::to_string(size) + " is not supported");
      }
    }
    if (config.producers == 0) throw ConfigError("pipeline needs at least one producer");
    if (config.aggregators < config.producers) {
      throw ConfigError("pipeline needs at least one aggregator per producer");
    }
    try {
      agg::validate(config.spec);
    } catch (const agg::AggregationError& e) {
      throw ConfigError(e.what());
    }
  }
  for (spsc::QueueKind kind : config.kinds) {
    for (std::size_t capacity : config.capacities) {
      spsc::validate(kind, queue_config(config, capacity));
      if (config.mode == Mode::Micro && config.prefill &&
          *config.prefill > spsc::usable_capacity(kind, queue_config(config, capacity))) {
        throw ConfigError("prefill " + std::to_string(*config.prefill) + " exceeds the usable capacity of " +
                          std::string(spsc::to_string(kind)) + " at capacity " + std::to_string(capacity));
      }
    }
  }
}

std::size_t effective_prefill(const BenchConfig& config, spsc::QueueKind kind,
                              std::size_t capacity) {
  const std::size_t usable = spsc::usable_capacity(kind, queue_config(config, capacity));
  return std::min(config.prefill.value_or(kDefaultPrefill), usable);
}

std::vector<ReportRow> run_micro(const BenchConfig& config) {
  validate(config);
  std::vector<ReportRow> rows;
  for (spsc::QueueKind kind : config.kinds) {
    for (std::size_t capacity : config.capacities) {
      for (std::size_t element_size : config.element_sizes) {
        const spsc::QueueConfig qc = queue_config(config, capacity);
        const std::size_t prefill = effective_prefill(config, kind, capacity);
        auto once = [&] {
          return spsc::visit_kind(kind, [&](auto kind_tag) {
            return visit_element_size(element_size, [&](auto size_tag) {
              using Queue = spsc::QueueFor_t<decltype(kind_tag)::value, Payload<decltype(size_tag)::value>>;
              return micro_once<Queue>(config, qc, prefill);
            });
          });
        };
        for (std::size_t w = 0; w < config.warmup; ++w) once();
        std::vector<ReportRow> reps;
        for (std::size_t rep = 0; rep < config.reps; ++rep) {
          const MicroTiming timing = once();
          ReportRow row;
          row.kind = spsc::to_string(kind);
          row.capacity = capacity;
          row.element_size = element_size;
          row.tuples = config.tuples;
          row.producers = 1;
          row.aggregators = 0;
          row.rep = static_cast<int>(rep);
          row.elapsed_ms = timing.elapsed_ms;
          row.ops = config.tuples;
          row.throughput_ops_per_ms =
              timing.elapsed_ms > 0.0 ? static_cast<double>(row.ops) / timing.elapsed_ms : 0.0;
          attach_energy(row, timing.joules);
          reps.push_back(std::move(row));
        }
        append_with_average(rows, std::move(reps));
      }
    }
  }
  return rows;
}

std::vector<ReportRow> run_pipeline_bench(const BenchConfig& config) {
  validate(config);
  const std::vector<agg::Tuple> stream = generate_workload(config.tuples, config.seed);
  agg::WindowTotals expected;
  if (config.verify) expected = oracle::oracle_aggregate(stream, config.spec);

  agg::PipelineConfig pc;
  pc.producers = config.producers;
  pc.aggregators = config.aggregators;
  pc.spec = config.spec;
  pc.workloads = split_round_robin(stream, config.producers);

  std::vector<ReportRow> rows;
  for (spsc::QueueKind kind : config.kinds) {
    for (std::size_t capacity : config.capacities) {
      pc.queue_kind = kind;
      pc.queue_config = queue_config(config, capacity);
      const std::string label = std::string(spsc::to_string(kind)) + ", capacity " + std::to_string(capacity);
      auto once = [&] {
        EnergySession energy(config);
        pc.on_start = [&] { energy.start(); };
        pc.on_stop = [&] { energy.stop(); };
        agg::PipelineResult result = agg::run_pipeline(pc);
        if (config.verify) check_against_oracle(expected, result.totals, label);
        return std::pair{result.metrics, energy.finish()};
      };
      for (std::size_t w = 0; w < config.warmup; ++w) once();
      std::vector<ReportRow> reps;
      for (std::size_t rep = 0; rep < config.reps; ++rep) {
        const auto [metrics, joules] = once();
        ReportRow row;
        row.kind = spsc::to_string(kind);
        row.capacity = capacity;
        row.element_size = sizeof(agg::Tuple);
        row.tuples = config.tuples;
        row.producers = config.producers;
        row.aggregators = config.aggregators;
        row.rep = static_cast<int>(rep);
        row.elapsed_ms = metrics.elapsed_ms;
        row.ops = metrics.messages;
        row.throughput_ops_per_ms = metrics.throughput_per_ms;
        attach_energy(row, joules);
        reps.push_back(std::move(row));
      }
      append_with_average(rows, std::move(reps));
    }
  }
  return rows;
}

std::vector<ReportRow> run_bench(const BenchConfig& config) {
  return config.mode == Mode::Micro ? run_micro(config) : run_pipeline_bench(config);
}

}  // namespace spscagg::bench
