/* spscagg: bounded single-producer/single-consumer queues, a windowed stream
 * aggregation pipeline built on them, and the benchmark harness.
 *
 * All functions returning sa_status set a thread-local error message on failure,
 * readable with sa_last_error() until the next failing call on the same thread.
 * Objects returned through out-parameters are owned by the caller and released with
 * the matching *_destroy function. */
#ifndef SPSCAGG_H
#define SPSCAGG_H

#include <stddef.h>
#include <stdint.h>

#if defined(SPSCAGG_BUILDING) && defined(__GNUC__)
#define SA_API __attribute__((visibility("default")))
#else
#define SA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sa_status {
  SA_OK = 0,
  SA_FULL = 1,
  SA_EMPTY = 2,
  SA_TIMEOUT = 3,
  SA_ERR_INVALID_CONFIG = 10,
  SA_ERR_INVALID_ARGUMENT = 11,
  SA_ERR_OUT_OF_ORDER = 12,
  SA_ERR_DUPLICATE = 13,
  SA_ERR_INACTIVE = 14,
  SA_ERR_ORACLE_MISMATCH = 15,
  SA_ERR_PROBE = 16,
  SA_ERR_IO = 17,
  SA_ERR_PARSE = 18,
  SA_ERR_INTERNAL = 99
} sa_status;

SA_API const char* sa_status_name(sa_status status);
SA_API const char* sa_last_error(void);

/* ---- Queues ---------------------------------------------------------------- */

typedef enum sa_queue_kind {
  SA_LAMPORT = 0,
  SA_FASTFORWARD = 1,
  SA_BATCHQUEUE = 2,
  SA_MCRINGBUFFER = 3
} sa_queue_kind;

SA_API const char* sa_queue_kind_name(sa_queue_kind kind);
/* Accepts the names above plus the short forms ff, bq, mcr. */
SA_API sa_status sa_queue_kind_parse(const char* name, sa_queue_kind* out);

typedef struct sa_queue_config {
  size_t capacity;             /* slots; at least 2 (even for BatchQueue) */
  size_t cache_line_bytes;     /* power of two in [8, 4096] */
  size_t mcr_batch_size;       /* MCRingBuffer only; divides capacity */
  size_t mcr_heartbeat_period; /* MCRingBuffer only; 0 disables */
  int debug_checks;            /* BatchQueue half-ownership assertions */
} sa_queue_config;

/* capacity 128, 64-byte lines, batch 1, heartbeat off, checks off. */
SA_API void sa_queue_config_init(sa_queue_config* config);
SA_API sa_status sa_queue_config_validate(sa_queue_kind kind, const sa_queue_config* config);
/* Elements the queue can hold at once (capacity - 1 for Lamport and MCRingBuffer);
 * 0 for an invalid configuration. */
SA_API size_t sa_queue_usable_capacity(sa_queue_kind kind, const sa_queue_config* config);

typedef struct sa_tuple {
  int64_t timestamp;
  int32_t value;
} sa_tuple;

typedef struct sa_stats {
  uint64_t enq_attempts;
  uint64_t enq_successes;
  uint64_t deq_attempts;
  uint64_t deq_successes;
  uint64_t publication_events;
  uint64_t stall_publications;
  uint64_t heartbeat_dummies;
  uint64_t leftover_drained;
  uint64_t ownership_violations;
} sa_stats;

/* A queue of sa_tuple. Producer-side calls must come from one thread at a time, as
 * must consumer-side calls. */
typedef struct sa_queue sa_queue;

SA_API sa_status sa_queue_create(sa_queue_kind kind, const sa_queue_config* config, sa_queue** out);
SA_API void sa_queue_destroy(sa_queue* queue);
SA_API sa_queue_kind sa_queue_get_kind(const sa_queue* queue);
SA_API size_t sa_queue_capacity(const sa_queue* queue);

/* Producer side. try_enqueue returns SA_OK or SA_FULL; enqueue_spin retries up to
 * `budget` times (SIZE_MAX: forever) and returns SA_OK or SA_TIMEOUT. */
SA_API sa_status sa_queue_try_enqueue(sa_queue* queue, const sa_tuple* item);
SA_API sa_status sa_queue_enqueue_spin(sa_queue* queue, const sa_tuple* item, size_t budget);
/* Publishes everything enqueued so far and marks the stream finished. */
SA_API sa_status sa_queue_finish(sa_queue* queue);
/* Lets an idle MCRingBuffer producer inject heartbeat dummies; no-op otherwise. */
SA_API sa_status sa_queue_idle_tick(sa_queue* queue);
SA_API sa_status sa_queue_producer_stats(const sa_queue* queue, sa_stats* out);

/* Consumer side. try_dequeue returns SA_OK or SA_EMPTY; dequeue_spin SA_OK or
 * SA_TIMEOUT. An SA_EMPTY observed after sa_queue_producer_finished returned 1 means
 * the queue is drained for good. */
SA_API sa_status sa_queue_try_dequeue(sa_queue* queue, sa_tuple* out);
SA_API sa_status sa_queue_dequeue_spin(sa_queue* queue, sa_tuple* out, size_t budget);
SA_API int sa_queue_producer_finished(const sa_queue* queue);
SA_API sa_status sa_queue_consumer_stats(const sa_queue* queue, sa_stats* out);

/* ---- Windows and aggregation ----------------------------------------------- */

typedef struct sa_window_spec {
  int64_t size;
  int64_t advance; /* 0 < advance <= size */
} sa_window_spec;

/* Writes the starts of all windows covering `t` in ascending order. `*count` receives
 * the number of starts; if it exceeds `capacity` nothing is written and
 * SA_ERR_INVALID_ARGUMENT is returned, so callers can size the buffer and retry. */
SA_API sa_status sa_window_starts(int64_t t, const sa_window_spec* spec, int64_t* starts,
                                  size_t capacity, size_t* count);

/* Window start -> total, ascending by start. */
typedef struct sa_windows sa_windows;

SA_API void sa_windows_destroy(sa_windows* windows);
SA_API size_t sa_windows_count(const sa_windows* windows);
SA_API sa_status sa_windows_at(const sa_windows* windows, size_t index, int64_t* start, int64_t* total);
SA_API int sa_windows_equal(const sa_windows* a, const sa_windows* b);
SA_API int64_t sa_windows_sum(const sa_windows* windows);

/* Sequential reference aggregation. Tuples must be sorted by timestamp. */
SA_API sa_status sa_oracle_aggregate(const sa_tuple* tuples, size_t count, const sa_window_spec* spec,
                                     sa_windows** out);
/* Sum over tuples of value times the number of windows covering it. */
SA_API sa_status sa_weighted_value_sum(const sa_tuple* tuples, size_t count, const sa_window_spec* spec,
                                       int64_t* out);

/* Fills `out` (room for `count` tuples) with a sorted pseudo-random stream. */
SA_API sa_status sa_generate_workload(size_t count, uint64_t seed, int32_t min_value, int32_t max_value,
                                      sa_tuple* out);

typedef struct sa_pipeline_config {
  size_t producers;
  size_t aggregators; /* at least one per producer */
  sa_queue_kind kind;
  sa_queue_config queue;
  sa_window_spec spec;
  const sa_tuple* const* workloads; /* one sorted array per producer */
  const size_t* workload_lengths;
  int use_pacing_seed; /* agents yield at random points when set */
  uint64_t pacing_seed;
} sa_pipeline_config;

typedef struct sa_run_metrics {
  double elapsed_ms;
  uint64_t messages;         /* tuples processed */
  uint64_t partial_messages; /* window partials sent to the final aggregator */
  double throughput_per_ms;
} sa_run_metrics;

SA_API sa_status sa_pipeline_run(const sa_pipeline_config* config, sa_windows** out,
                                 sa_run_metrics* metrics);

/* ---- Benchmarks ------------------------------------------------------------ */

typedef enum sa_bench_mode { SA_MODE_MICRO = 0, SA_MODE_PIPELINE = 1 } sa_bench_mode;
typedef enum sa_report_format { SA_FORMAT_CSV = 0, SA_FORMAT_JSON = 1 } sa_report_format;

typedef struct sa_bench_config sa_bench_config;
typedef void (*sa_warning_fn)(const char* message, void* user);

/* Defaults: micro mode, all four kinds, capacity 128, 12-byte elements, 10^6 tuples,
 * 1 producer, 10 aggregators, window 4/2, prefill 150 (clamped), 5 reps, 0 warmup,
 * seed 42, MCRingBuffer batch 1, verification on, no energy probe. The add_* lists
 * replace the defaults on first use. */
SA_API sa_status sa_bench_config_create(sa_bench_config** out);
SA_API void sa_bench_config_destroy(sa_bench_config* config);
SA_API sa_status sa_bench_set_mode(sa_bench_config* config, sa_bench_mode mode);
SA_API sa_status sa_bench_add_kind(sa_bench_config* config, sa_queue_kind kind);
SA_API sa_status sa_bench_add_capacity(sa_bench_config* config, size_t capacity);
SA_API sa_status sa_bench_add_element_size(sa_bench_config* config, size_t bytes);
SA_API sa_status sa_bench_set_tuples(sa_bench_config* config, uint64_t tuples);
SA_API sa_status sa_bench_set_topology(sa_bench_config* config, size_t producers, size_t aggregators);
SA_API sa_status sa_bench_set_window(sa_bench_config* config, const sa_window_spec* spec);
SA_API sa_status sa_bench_set_prefill(sa_bench_config* config, size_t prefill);
SA_API sa_status sa_bench_set_reps(sa_bench_config* config, size_t reps, size_t warmup);
SA_API sa_status sa_bench_set_seed(sa_bench_config* config, uint64_t seed);
SA_API sa_status sa_bench_set_mcr_batch(sa_bench_config* config, size_t batch);
SA_API sa_status sa_bench_set_verify(sa_bench_config* config, int verify);
/* The probe runs "CMD start" before and "CMD stop" after each timed region; the stop
 * output is the joules consumed. NULL removes the probe. */
SA_API sa_status sa_bench_set_energy_command(sa_bench_config* config, const char* command, int strict);
SA_API sa_status sa_bench_set_warning_callback(sa_bench_config* config, sa_warning_fn fn, void* user);
/* Checks the whole matrix without running it. */
SA_API sa_status sa_bench_validate(const sa_bench_config* config);

typedef struct sa_report sa_report;

typedef struct sa_report_row {
  const char* kind; /* valid while the report lives */
  size_t capacity;
  size_t element_size;
  uint64_t tuples;
  size_t producers;
  size_t aggregators;
  int rep; /* -1 for the mean row */
  double elapsed_ms;
  uint64_t ops;
  double throughput_ops_per_ms;
  int has_joules;
  double joules;
  double joules_per_message;
} sa_report_row;

/* SA_ERR_INVALID_CONFIG, SA_ERR_ORACLE_MISMATCH (wrong answer; sa_last_error holds the
 * first differing window) or SA_ERR_PROBE (strict energy only). */
SA_API sa_status sa_bench_run(const sa_bench_config* config, sa_report** out);
/* After SA_ERR_ORACLE_MISMATCH from a pipeline run on this thread: the oracle's and the
 * pipeline's window maps, one "start total" line per window. Empty otherwise. */
SA_API const char* sa_last_mismatch_expected(void);
SA_API const char* sa_last_mismatch_actual(void);

SA_API void sa_report_destroy(sa_report* report);
SA_API size_t sa_report_row_count(const sa_report* report);
SA_API sa_status sa_report_row_at(const sa_report* report, size_t index, sa_report_row* out);
/* Serialized report; release with sa_string_free. */
SA_API sa_status sa_report_serialize(const sa_report* report, sa_report_format format, char** out);
SA_API sa_status sa_report_write_file(const sa_report* report, sa_report_format format, const char* path);
SA_API sa_status sa_report_parse(const char* text, sa_report_format format, sa_report** out);
SA_API void sa_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif
