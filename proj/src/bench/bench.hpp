#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aggregation/window.hpp"
#include "bench/report.hpp"
#include "spsc/queue_config.hpp"

namespace spscagg::bench {

enum class Mode { Micro, Pipeline };

struct BenchConfig {
  Mode mode = Mode::Micro;
  std::vector<spsc::QueueKind> kinds{std::begin(spsc::kAllKinds), std::end(spsc::kAllKinds)};
  std::vector<std::size_t> capacities{128};
  // Micro mode only; pipeline queues always carry 12-byte tuples.
  std::vector<std::size_t> element_sizes{sizeof(agg::Tuple)};
  // Micro: elements pushed through the queue in the timed region.
  // Pipeline: tuples generated and split across the producers.
  std::uint64_t tuples = 1'000'000;
  std::size_t producers = 1;
  std::size_t aggregators = 10;
  agg::WindowSpec spec{};
  // Elements enqueued before the timed region (micro). Defaults to 150, clamped to the
  // queue's usable capacity.
  std::optional<std::size_t> prefill;
  std::size_t reps = 5;
  // Extra leading repetitions that are run but not reported.
  std::size_t warmup = 0;
  std::uint64_t seed = 42;
  std::size_t mcr_batch = 1;
  std::size_t cache_line_bytes = 64;
  bool verify = true;
  std::optional<std::string> energy_cmd;
  // Probe failures abort the run instead of dropping the joules columns.
  bool strict_energy = false;
  std::function<void(const std::string&)> on_warning;
};

inline constexpr std::size_t kDefaultPrefill = 150;

// A benchmark run produced a wrong answer: lost, duplicated or reordered elements in
// micro mode, or pipeline totals that differ from the sequential oracle.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OracleMismatch : public VerificationError {
 public:
  OracleMismatch(const std::string& what, std::string expected, std::string actual)
      : VerificationError(what), expected_(std::move(expected)), actual_(std::move(actual)) {}
  // "start total" per line.
  const std::string& expected_dump() const { return expected_; }
  const std::string& actual_dump() const { return actual_; }

 private:
  std::string expected_;
  std::string actual_;
};

// Throws OracleMismatch naming the first differing window; `label` identifies the run.
void check_against_oracle(const agg::WindowTotals& expected, const agg::WindowTotals& actual,
                          const std::string& label);

// Throws spsc::ConfigError.
void validate(const BenchConfig& config);

std::size_t effective_prefill(const BenchConfig& config, spsc::QueueKind kind,
                              std::size_t capacity);

// Per matrix point: `reps` rows followed by their mean row.
// Throw spsc::ConfigError, VerificationError, or ProbeFailure (strict_energy only).
std::vector<ReportRow> run_micro(const BenchConfig& config);
std::vector<ReportRow> run_pipeline_bench(const BenchConfig& config);
std::vector<ReportRow> run_bench(const BenchConfig& config);

}  // namespace spscagg::bench
