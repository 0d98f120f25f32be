#include "spscagg.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "aggregation/pipeline.hpp"
#include "bench/bench.hpp"
#include "bench/energy_probe.hpp"
#include "bench/report.hpp"
#include "bench/workload.hpp"
#include "oracle/oracle.hpp"
#include "spsc/queues.hpp"

using namespace spscagg;

struct sa_queue {
  spsc::EndpointPair<spsc::AnyQueue<agg::Tuple>> endpoints;
};

struct sa_windows {
  agg::WindowTotals totals;
};

struct sa_bench_config {
  bench::BenchConfig config;
  bool kinds_set = false;
  bool capacities_set = false;
  bool sizes_set = false;
};

struct sa_report {
  std::vector<bench::ReportRow> rows;
};

namespace {

thread_local std::string last_error;
thread_local std::string mismatch_expected;
thread_local std::string mismatch_actual;

sa_status fail(sa_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

sa_status null_argument(const char* name) {
  return fail(SA_ERR_INVALID_ARGUMENT, std::string(name) + " must not be null");
}

sa_status from_aggregation(const agg::AggregationError& e) {
  using Code = agg::AggregationError::Code;
  switch (e.code()) {
    case Code::InvalidSpec:
      return fail(SA_ERR_INVALID_CONFIG, e.what());
    case Code::OutOfOrderTuple:
    case Code::UnsortedInput:
      return fail(SA_ERR_OUT_OF_ORDER, e.what());
    case Code::DuplicateContribution:
      return fail(SA_ERR_DUPLICATE, e.what());
    case Code::InactiveSource:
    case Code::AlreadyInactive:
      return fail(SA_ERR_INACTIVE, e.what());
    case Code::UnknownSource:
    case Code::LateContribution:
      break;
  }
  return fail(SA_ERR_INTERNAL, e.what());
}

// Runs `body` and translates any escaping exception into a status code.
template <class Body>
sa_status guarded(Body&& body) {
  try {
    return body();
  } catch (const spsc::ConfigError& e) {
    return fail(SA_ERR_INVALID_CONFIG, e.what());
  } catch (const agg::AggregationError& e) {
    return from_aggregation(e);
  } catch (const bench::OracleMismatch& e) {
    mismatch_expected = e.expected_dump();
    mismatch_actual = e.actual_dump();
    return fail(SA_ERR_ORACLE_MISMATCH, e.what());
  } catch (const bench::VerificationError& e) {
    return fail(SA_ERR_ORACLE_MISMATCH, e.what());
  } catch (const bench::ProbeFailure& e) {
    return fail(SA_ERR_PROBE, e.what());
  } catch (const bench::ReportParseError& e) {
    return fail(SA_ERR_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SA_ERR_INTERNAL, "unknown exception");
  }
}

spsc::QueueKind to_kind(sa_queue_kind kind) {
  switch (kind) {
    case SA_LAMPORT:
      return spsc::QueueKind::Lamport;
    case SA_FASTFORWARD:
      return spsc::QueueKind::FastForward;
    case SA_BATCHQUEUE:
      return spsc::QueueKind::BatchQueue;
    case SA_MCRINGBUFFER:
      return spsc::QueueKind::MCRingBuffer;
  }
  throw spsc::ConfigError("unknown queue kind " + std::to_string(static_cast<int>(kind)));
}

sa_queue_kind from_kind(spsc::QueueKind kind) {
  switch (kind) {
    case spsc::QueueKind::Lamport:
      return SA_LAMPORT;
    case spsc::QueueKind::FastForward:
      return SA_FASTFORWARD;
    case spsc::QueueKind::BatchQueue:
      return SA_BATCHQUEUE;
    case spsc::QueueKind::MCRingBuffer:
      break;
  }
  return SA_MCRINGBUFFER;
}

spsc::QueueConfig to_config(const sa_queue_config& c) {
  spsc::QueueConfig config;
  config.capacity = c.capacity;
  config.cache_line_bytes = c.cache_line_bytes;
  config.mcr_batch_size = c.mcr_batch_size;
  config.mcr_heartbeat_period = c.mcr_heartbeat_period;
  config.debug_checks = c.debug_checks != 0;
  return config;
}

agg::WindowSpec to_spec(const sa_window_spec& s) { return {s.size, s.advance}; }

agg::Tuple to_tuple(const sa_tuple& t) { return {t.timestamp, t.value}; }
sa_tuple from_tuple(const agg::Tuple& t) { return {t.timestamp, t.value}; }

std::vector<agg::Tuple> to_tuples(const sa_tuple* tuples, std::size_t count) {
  std::vector<agg::Tuple> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(to_tuple(tuples[i]));
  return out;
}

void to_stats(const spsc::EndpointStats& s, sa_stats* out) {
  *out = {s.enq_attempts,      s.enq_successes,      s.deq_attempts,
          s.deq_successes,     s.publication_events, s.stall_publications,
          s.heartbeat_dummies, s.leftover_drained,   s.ownership_violations};
}

bench::ReportFormat to_format(sa_report_format format) {
  if (format == SA_FORMAT_CSV) return bench::ReportFormat::Csv;
  if (format == SA_FORMAT_JSON) return bench::ReportFormat::Json;
  throw spsc::ConfigError("unknown report format");
}

}  // namespace

extern "C" {

const char* sa_status_name(sa_status status) {
  switch (status) {
    case SA_OK: return "ok";
    case SA_FULL: return "full";
    case SA_EMPTY: return "empty";
    case SA_TIMEOUT: return "timeout";
    case SA_ERR_INVALID_CONFIG: return "invalid configuration";
    case SA_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SA_ERR_OUT_OF_ORDER: return "out-of-order input";
    case SA_ERR_DUPLICATE: return "duplicate contribution";
    case SA_ERR_INACTIVE: return "inactive source";
    case SA_ERR_ORACLE_MISMATCH: return "oracle mismatch";
    case SA_ERR_PROBE: return "energy probe failure";
    case SA_ERR_IO: return "i/o error";
    case SA_ERR_PARSE: return "parse error";
    case SA_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* sa_last_error(void) { return last_error.c_str(); }

const char* sa_queue_kind_name(sa_queue_kind kind) {
  switch (kind) {
    case SA_LAMPORT: return "lamport";
    case SA_FASTFORWARD: return "fastforward";
    case SA_BATCHQUEUE: return "batchqueue";
    case SA_MCRINGBUFFER: return "mcringbuffer";
  }
  return "unknown";
}

sa_status sa_queue_kind_parse(const char* name, sa_queue_kind* out) {
  if (!name) return null_argument("name");
  if (!out) return null_argument("out");
  const auto kind = spsc::parse_kind(name);
  if (!kind) return fail(SA_ERR_INVALID_CONFIG, std::string("unknown queue kind '") + name + "'");
  *out = from_kind(*kind);
  return SA_OK;
}

void sa_queue_config_init(sa_queue_config* config) {
  if (!config) return;
  const spsc::QueueConfig defaults;
  *config = {defaults.capacity, defaults.cache_line_bytes, defaults.mcr_batch_size,
             defaults.mcr_heartbeat_period, defaults.debug_checks ? 1 : 0};
}

sa_status sa_queue_config_validate(sa_queue_kind kind, const sa_queue_config* config) {
  if (!config) return null_argument("config");
  return guarded([&] {
    spsc::validate(to_kind(kind), to_config(*config));
    return SA_OK;
  });
}

size_t sa_queue_usable_capacity(sa_queue_kind kind, const sa_queue_config* config) {
  if (!config) return 0;
  try {
    spsc::validate(to_kind(kind), to_config(*config));
    return spsc::usable_capacity(to_kind(kind), to_config(*config));
  } catch (...) {
    return 0;
  }
}

sa_status sa_queue_create(sa_queue_kind kind, const sa_queue_config* config, sa_queue** out) {
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new sa_queue{spsc::new_queue<agg::Tuple>(to_kind(kind), to_config(*config))};
    return SA_OK;
  });
}

void sa_queue_destroy(sa_queue* queue) { delete queue; }

sa_queue_kind sa_queue_get_kind(const sa_queue* queue) {
  return from_kind(queue->endpoints.producer.queue().kind());
}

size_t sa_queue_capacity(const sa_queue* queue) {
  return queue ? queue->endpoints.producer.queue().capacity() : 0;
}

sa_status sa_queue_try_enqueue(sa_queue* queue, const sa_tuple* item) {
  if (!queue) return null_argument("queue");
  if (!item) return null_argument("item");
  return queue->endpoints.producer.try_enqueue(to_tuple(*item)) ? SA_OK : SA_FULL;
}

sa_status sa_queue_enqueue_spin(sa_queue* queue, const sa_tuple* item, size_t budget) {
  if (!queue) return null_argument("queue");
  if (!item) return null_argument("item");
  return queue->endpoints.producer.enqueue_spin(to_tuple(*item), budget) == spsc::SpinResult::Ok
             ? SA_OK
             : SA_TIMEOUT;
}

sa_status sa_queue_finish(sa_queue* queue) {
  if (!queue) return null_argument("queue");
  queue->endpoints.producer.finish();
  return SA_OK;
}

sa_status sa_queue_idle_tick(sa_queue* queue) {
  if (!queue) return null_argument("queue");
  queue->endpoints.producer.idle_tick();
  return SA_OK;
}

sa_status sa_queue_producer_stats(const sa_queue* queue, sa_stats* out) {
  if (!queue) return null_argument("queue");
  if (!out) return null_argument("out");
  to_stats(queue->endpoints.producer.stats(), out);
  return SA_OK;
}

sa_status sa_queue_try_dequeue(sa_queue* queue, sa_tuple* out) {
  if (!queue) return null_argument("queue");
  if (!out) return null_argument("out");
  agg::Tuple t;
  if (!queue->endpoints.consumer.try_dequeue(t)) return SA_EMPTY;
  *out = from_tuple(t);
  return SA_OK;
}

sa_status sa_queue_dequeue_spin(sa_queue* queue, sa_tuple* out, size_t budget) {
  if (!queue) return null_argument("queue");
  if (!out) return null_argument("out");
  const auto t = queue->endpoints.consumer.dequeue_spin(budget);
  if (!t) return SA_TIMEOUT;
  *out = from_tuple(*t);
  return SA_OK;
}

int sa_queue_producer_finished(const sa_queue* queue) {
  return queue && queue->endpoints.consumer.producer_finished() ? 1 : 0;
}

sa_status sa_queue_consumer_stats(const sa_queue* queue, sa_stats* out) {
  if (!queue) return null_argument("queue");
  if (!out) return null_argument("out");
  to_stats(queue->endpoints.consumer.stats(), out);
  return SA_OK;
}

sa_status sa_window_starts(int64_t t, const sa_window_spec* spec, int64_t* starts, size_t capacity,
                           size_t* count) {
  if (!spec) return null_argument("spec");
  if (!count) return null_argument("count");
  return guarded([&] {
    agg::validate(to_spec(*spec));
    if (t < 0) return fail(SA_ERR_INVALID_ARGUMENT, "timestamp must be non-negative");
    const std::vector<agg::Timestamp> found = agg::window_starts(t, to_spec(*spec));
    *count = found.size();
    if (found.size() > capacity) return fail(SA_ERR_INVALID_ARGUMENT, "output buffer too small");
    if (!found.empty() && !starts) return null_argument("starts");
    std::copy(found.begin(), found.end(), starts);
    return SA_OK;
  });
}

void sa_windows_destroy(sa_windows* windows) { delete windows; }

size_t sa_windows_count(const sa_windows* windows) { return windows ? windows->totals.size() : 0; }

sa_status sa_windows_at(const sa_windows* windows, size_t index, int64_t* start, int64_t* total) {
  if (!windows) return null_argument("windows");
  if (index >= windows->totals.size()) return fail(SA_ERR_INVALID_ARGUMENT, "window index out of range");
  auto it = std::next(windows->totals.begin(), static_cast<std::ptrdiff_t>(index));
  if (start) *start = it->first;
  if (total) *total = it->second;
  return SA_OK;
}

int sa_windows_equal(const sa_windows* a, const sa_windows* b) {
  return a && b && a->totals == b->totals ? 1 : 0;
}

int64_t sa_windows_sum(const sa_windows* windows) {
  return windows ? agg::total_sum(windows->totals) : 0;
}

sa_status sa_oracle_aggregate(const sa_tuple* tuples, size_t count, const sa_window_spec* spec,
                              sa_windows** out) {
  if (!spec) return null_argument("spec");
  if (!out) return null_argument("out");
  if (count > 0 && !tuples) return null_argument("tuples");
  *out = nullptr;
  return guarded([&] {
    *out = new sa_windows{oracle::oracle_aggregate(to_tuples(tuples, count), to_spec(*spec))};
    return SA_OK;
  });
}

sa_status sa_weighted_value_sum(const sa_tuple* tuples, size_t count, const sa_window_spec* spec,
                                int64_t* out) {
  if (!spec) return null_argument("spec");
  if (!out) return null_argument("out");
  if (count > 0 && !tuples) return null_argument("tuples");
  return guarded([&] {
    agg::validate(to_spec(*spec));
    *out = agg::weighted_value_sum(to_tuples(tuples, count), to_spec(*spec));
    return SA_OK;
  });
}

sa_status sa_generate_workload(size_t count, uint64_t seed, int32_t min_value, int32_t max_value,
                               sa_tuple* out) {
  if (count > 0 && !out) return null_argument("out");
  if (min_value > max_value) return fail(SA_ERR_INVALID_ARGUMENT, "min_value exceeds max_value");
  return guarded([&] {
    const auto tuples = bench::generate_workload(count, seed, {min_value, max_value});
    for (std::size_t i = 0; i < tuples.size(); ++i) out[i] = from_tuple(tuples[i]);
    return SA_OK;
  });
}

sa_status sa_pipeline_run(const sa_pipeline_config* config, sa_windows** out, sa_run_metrics* metrics) {
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  if (config->producers > 0 && (!config->workloads || !config->workload_lengths)) {
    return null_argument("workloads");
  }
  *out = nullptr;
  return guarded([&] {
    agg::PipelineConfig pc;
    pc.producers = config->producers;
    pc.aggregators = config->aggregators;
    pc.queue_kind = to_kind(config->kind);
    pc.queue_config = to_config(config->queue);
    pc.spec = to_spec(config->spec);
    for (std::size_t p = 0; p < config->producers; ++p) {
      if (config->workload_lengths[p] > 0 && !config->workloads[p]) return null_argument("workloads[p]");
      pc.workloads.push_back(to_tuples(config->workloads[p], config->workload_lengths[p]));
    }
    if (config->use_pacing_seed) pc.pacing_seed = config->pacing_seed;
    agg::PipelineResult result = agg::run_pipeline(pc);
    if (metrics) {
      *metrics = {result.metrics.elapsed_ms, result.metrics.messages,
                  result.metrics.partial_messages, result.metrics.throughput_per_ms};
    }
    *out = new sa_windows{std::move(result.totals)};
    return SA_OK;
  });
}

sa_status sa_bench_config_create(sa_bench_config** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = new sa_bench_config{};
    return SA_OK;
  });
}

void sa_bench_config_destroy(sa_bench_config* config) { delete config; }

sa_status sa_bench_set_mode(sa_bench_config* config, sa_bench_mode mode) {
  if (!config) return null_argument("config");
  if (mode != SA_MODE_MICRO && mode != SA_MODE_PIPELINE) {
    return fail(SA_ERR_INVALID_CONFIG, "unknown benchmark mode");
  }
  config->config.mode = mode == SA_MODE_MICRO ? bench::Mode::Micro : bench::Mode::Pipeline;
  return SA_OK;
}

sa_status sa_bench_add_kind(sa_bench_config* config, sa_queue_kind kind) {
  if (!config) return null_argument("config");
  return guarded([&] {
    const spsc::QueueKind k = to_kind(kind);
    if (!config->kinds_set) config->config.kinds.clear();
    config->kinds_set = true;
    config->config.kinds.push_back(k);
    return SA_OK;
  });
}

sa_status sa_bench_add_capacity(sa_bench_config* config, size_t capacity) {
  if (!config) return null_argument("config");
  if (!config->capacities_set) config->config.capacities.clear();
  config->capacities_set = true;
  config->config.capacities.push_back(capacity);
  return SA_OK;
}

sa_status sa_bench_add_element_size(sa_bench_config* config, size_t bytes) {
  if (!config) return null_argument("config");
  if (!config->sizes_set) config->config.element_sizes.clear();
  config->sizes_set = true;
  config->config.element_sizes.push_back(bytes);
  return SA_OK;
}

sa_status sa_bench_set_tuples(sa_bench_config* config, uint64_t tuples) {
  if (!config) return null_argument("config");
  config->config.tuples = tuples;
  return SA_OK;
}

sa_status sa_bench_set_topology(sa_bench_config* config, size_t producers, size_t aggregators) {
  if (!config) return null_argument("config");
  config->config.producers = producers;
  config->config.aggregators = aggregators;
  return SA_OK;
}

sa_status sa_bench_set_window(sa_bench_config* config, const sa_window_spec* spec) {
  if (!config) return null_argument("config");
  if (!spec) return null_argument("spec");
  config->config.spec = to_spec(*spec);
  return SA_OK;
}

sa_status sa_bench_set_prefill(sa_bench_config* config, size_t prefill) {
  if (!config) return null_argument("config");
  config->config.prefill = prefill;
  return SA_OK;
}

sa_status sa_bench_set_reps(sa_bench_config* config, size_t reps, size_t warmup) {
  if (!config) return null_argument("config");
  config->config.reps = reps;
  config->config.warmup = warmup;
  return SA_OK;
}

sa_status sa_bench_set_seed(sa_bench_config* config, uint64_t seed) {
  if (!config) return null_argument("config");
  config->config.seed = seed;
  return SA_OK;
}

sa_status sa_bench_set_mcr_batch(sa_bench_config* config, size_t batch) {
  if (!config) return null_argument("config");
  config->config.mcr_batch = batch;
  return SA_OK;
}

sa_status sa_bench_set_verify(sa_bench_config* config, int verify) {
  if (!config) return null_argument("config");
  config->config.verify = verify != 0;
  return SA_OK;
}

sa_status sa_bench_set_energy_command(sa_bench_config* config, const char* command, int strict) {
  if (!config) return null_argument("config");
  if (command && *command == '\0') return fail(SA_ERR_INVALID_CONFIG, "empty energy probe command");
  config->config.energy_cmd = command ? std::optional<std::string>(command) : std::nullopt;
  config->config.strict_energy = strict != 0;
  return SA_OK;
}

sa_status sa_bench_set_warning_callback(sa_bench_config* config, sa_warning_fn fn, void* user) {
  if (!config) return null_argument("config");
  if (fn) {
    config->config.on_warning = [fn, user](const std::string& message) { fn(message.c_str(), user); };
  } else {
    config->config.on_warning = nullptr;
  }
  return SA_OK;
}

sa_status sa_bench_validate(const sa_bench_config* config) {
  if (!config) return null_argument("config");
  return guarded([&] {
    bench::validate(config->config);
    return SA_OK;
  });
}

sa_status sa_bench_run(const sa_bench_config* config, sa_report** out) {
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  *out = nullptr;
  mismatch_expected.clear();
  mismatch_actual.clear();
  return guarded([&] {
    *out = new sa_report{bench::run_bench(config->config)};
    return SA_OK;
  });
}

const char* sa_last_mismatch_expected(void) { return mismatch_expected.c_str(); }
const char* sa_last_mismatch_actual(void) { return mismatch_actual.c_str(); }

void sa_report_destroy(sa_report* report) { delete report; }

size_t sa_report_row_count(const sa_report* report) { return report ? report->rows.size() : 0; }

sa_status sa_report_row_at(const sa_report* report, size_t index, sa_report_row* out) {
  if (!report) return null_argument("report");
  if (!out) return null_argument("out");
  if (index >= report->rows.size()) return fail(SA_ERR_INVALID_ARGUMENT, "row index out of range");
  const bench::ReportRow& r = report->rows[index];
  *out = {r.kind.c_str(),
          r.capacity,
          r.element_size,
          r.tuples,
          r.producers,
          r.aggregators,
          r.rep,
          r.elapsed_ms,
          r.ops,
          r.throughput_ops_per_ms,
          r.joules ? 1 : 0,
          r.joules.value_or(0.0),
          r.joules_per_message.value_or(0.0)};
  return SA_OK;
}

sa_status sa_report_serialize(const sa_report* report, sa_report_format format, char** out) {
  if (!report) return null_argument("report");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    const std::string text = bench::write_report(report->rows, to_format(format));
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
    return SA_OK;
  });
}

sa_status sa_report_write_file(const sa_report* report, sa_report_format format, const char* path) {
  if (!report) return null_argument("report");
  if (!path) return null_argument("path");
  return guarded([&] {
    const std::string text = bench::write_report(report->rows, to_format(format));
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) return fail(SA_ERR_IO, std::string("cannot open ") + path + " for writing");
    file << text;
    file.close();
    if (!file) return fail(SA_ERR_IO, std::string("failed writing ") + path);
    return SA_OK;
  });
}

sa_status sa_report_parse(const char* text, sa_report_format format, sa_report** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    *out = new sa_report{bench::parse_report(text, to_format(format))};
    return SA_OK;
  });
}

void sa_string_free(char* text) { std::free(text); }

}  // extern "C"
