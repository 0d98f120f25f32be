// Benchmark driver: queue micro-benchmarks and aggregation pipeline runs, reported as
// CSV or JSON.
//
// Exit codes: 0 success, 1 other failure (I/O), 2 configuration error, 3 a run produced
// a wrong answer, 4 energy probe failure with --strict-energy.

#include <CLI11.hpp>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "spscagg.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitProbe = 4;

struct Options {
  std::string mode = "micro";
  std::vector<std::string> kinds;
  std::vector<std::size_t> capacities;
  std::vector<std::size_t> element_sizes;
  std::uint64_t tuples = 1'000'000;
  std::size_t producers = 1;
  std::size_t aggregators = 10;
  std::int64_t window_size = 4;
  std::int64_t window_advance = 2;
  std::optional<std::size_t> prefill;
  std::size_t reps = 5;
  std::size_t warmup = 0;
  std::uint64_t seed = 42;
  std::string format = "csv";
  std::string out;
  std::string energy_cmd;
  bool strict_energy = false;
  std::size_t mcr_batch = 1;
  std::string verify = "on";
};

int exit_code(sa_status status) {
  switch (status) {
    case SA_ERR_INVALID_CONFIG:
    case SA_ERR_INVALID_ARGUMENT:
      return kExitConfig;
    case SA_ERR_ORACLE_MISMATCH:
      return kExitMismatch;
    case SA_ERR_PROBE:
      return kExitProbe;
    default:
      return kExitFailure;
  }
}

int report_error(sa_status status) {
  std::cerr << "spsc_bench: " << sa_status_name(status) << ": " << sa_last_error() << '\n';
  return exit_code(status);
}

void write_dump(const std::string& path, const char* text) {
  std::ofstream file(path);
  file << text;
  std::cerr << "spsc_bench: wrote " << path << '\n';
}

struct ConfigHandle {
  sa_bench_config* ptr = nullptr;
  ~ConfigHandle() { sa_bench_config_destroy(ptr); }
};

struct ReportHandle {
  sa_report* ptr = nullptr;
  ~ReportHandle() { sa_report_destroy(ptr); }
};

sa_status build_config(const Options& o, sa_bench_config* config) {
  sa_status s = sa_bench_set_mode(config, o.mode == "micro" ? SA_MODE_MICRO : SA_MODE_PIPELINE);
  for (const std::string& name : o.kinds) {
    sa_queue_kind kind;
    if (s == SA_OK) s = sa_queue_kind_parse(name.c_str(), &kind);
    if (s == SA_OK) s = sa_bench_add_kind(config, kind);
  }
  for (std::size_t c : o.capacities) {
    if (s == SA_OK) s = sa_bench_add_capacity(config, c);
  }
  for (std::size_t e : o.element_sizes) {
    if (s == SA_OK) s = sa_bench_add_element_size(config, e);
  }
  const sa_window_spec spec{o.window_size, o.window_advance};
  if (s == SA_OK) s = sa_bench_set_tuples(config, o.tuples);
  if (s == SA_OK) s = sa_bench_set_topology(config, o.producers, o.aggregators);
  if (s == SA_OK) s = sa_bench_set_window(config, &spec);
  if (s == SA_OK && o.prefill) s = sa_bench_set_prefill(config, *o.prefill);
  if (s == SA_OK) s = sa_bench_set_reps(config, o.reps, o.warmup);
  if (s == SA_OK) s = sa_bench_set_seed(config, o.seed);
  if (s == SA_OK) s = sa_bench_set_mcr_batch(config, o.mcr_batch);
  if (s == SA_OK) s = sa_bench_set_verify(config, o.verify == "on");
  if (s == SA_OK && !o.energy_cmd.empty()) {
    s = sa_bench_set_energy_command(config, o.energy_cmd.c_str(), o.strict_energy);
  }
  if (s == SA_OK) {
    s = sa_bench_set_warning_callback(
        config, [](const char* message, void*) { std::cerr << "warning: " << message << '\n'; },
        nullptr);
  }
  if (s == SA_OK) s = sa_bench_validate(config);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Benchmark SPSC queues and the windowed aggregation pipeline."};
  app.add_option("--mode", o.mode, "micro: queue throughput; pipeline: aggregation runs")
      ->check(CLI::IsMember({"micro", "pipeline"}))
      ->capture_default_str();
  app.add_option("--kind", o.kinds,
                 "lamport, fastforward (ff), batchqueue (bq), mcringbuffer (mcr); repeatable, "
                 "default all")
      ->delimiter(',');
  app.add_option("--capacity", o.capacities, "queue capacity in slots; repeatable, default 128")
      ->delimiter(',');
  app.add_option("--element-size", o.element_sizes,
                 "micro element size in bytes; repeatable, default 12")
      ->delimiter(',');
  app.add_option("--tuples", o.tuples, "elements (micro) or tuples (pipeline) per run")
      ->capture_default_str();
  app.add_option("--producers", o.producers, "pipeline producers")->capture_default_str();
  app.add_option("--aggregators", o.aggregators, "pipeline aggregators")->capture_default_str();
  app.add_option("--window-size", o.window_size)->capture_default_str();
  app.add_option("--window-advance", o.window_advance)->capture_default_str();
  app.add_option("--prefill", o.prefill, "elements queued before timing (default 150, clamped)");
  app.add_option("--reps", o.reps, "reported repetitions per matrix point")->capture_default_str();
  app.add_option("--warmup", o.warmup, "unreported leading repetitions")->capture_default_str();
  app.add_option("--seed", o.seed, "workload seed")->capture_default_str();
  app.add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", o.out, "report file (default stdout)");
  app.add_option("--energy-cmd", o.energy_cmd,
                 "probe command; run as 'CMD start' and 'CMD stop', the latter printing joules");
  app.add_flag("--strict-energy", o.strict_energy, "fail (exit 4) instead of omitting joules");
  app.add_option("--mcr-batch", o.mcr_batch, "MCRingBuffer publication batch")->capture_default_str();
  app.add_option("--verify", o.verify, "check FIFO order / oracle totals")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  ConfigHandle config;
  if (sa_status s = sa_bench_config_create(&config.ptr); s != SA_OK) return report_error(s);
  if (sa_status s = build_config(o, config.ptr); s != SA_OK) return report_error(s);

  ReportHandle report;
  if (sa_status s = sa_bench_run(config.ptr, &report.ptr); s != SA_OK) {
    const int code = report_error(s);
    if (s == SA_ERR_ORACLE_MISMATCH && *sa_last_mismatch_expected() != '\0') {
      const std::string stem = o.out.empty() ? "spsc_bench" : o.out;
      write_dump(stem + ".expected", sa_last_mismatch_expected());
      write_dump(stem + ".actual", sa_last_mismatch_actual());
    }
    return code;
  }

  const sa_report_format format = o.format == "csv" ? SA_FORMAT_CSV : SA_FORMAT_JSON;
  if (!o.out.empty()) {
    if (sa_status s = sa_report_write_file(report.ptr, format, o.out.c_str()); s != SA_OK) {
      return report_error(s);
    }
    return 0;
  }
  char* text = nullptr;
  if (sa_status s = sa_report_serialize(report.ptr, format, &text); s != SA_OK) return report_error(s);
  std::fputs(text, stdout);
  sa_string_free(text);
  return 0;
}
