#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spscagg::bench {

inline constexpr std::string_view kCsvHeader =
    "kind,capacity,element_size,tuples,producers,aggregators,rep,elapsed_ms,ops,"
    "throughput_ops_per_ms,joules,joules_per_message";

struct ReportRow {
  // Repetition index of the mean row; written as "avg".
  static constexpr int kAverage = -1;

  std::string kind;
  std::size_t capacity = 0;
  std::size_t element_size = 0;
  std::uint64_t tuples = 0;
  std::size_t producers = 0;
  std::size_t aggregators = 0;
  int rep = 0;
  double elapsed_ms = 0.0;
  // Enqueue/dequeue pairs (micro) or tuples processed by the pipeline.
  std::uint64_t ops = 0;
  double throughput_ops_per_ms = 0.0;
  std::optional<double> joules;
  std::optional<double> joules_per_message;

  bool is_average() const { return rep == kAverage; }
  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

enum class ReportFormat { Csv, Json };

class ReportParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mean row over `reps` (all from the same matrix point). Throughput is recomputed from
// the mean ops and mean elapsed time; joules are averaged only if every rep has them.
ReportRow average(const std::vector<ReportRow>& reps);

// Doubles are written in shortest round-trip form, so parse(write(rows)) == rows.
std::string write_csv(const std::vector<ReportRow>& rows);
std::string write_json(const std::vector<ReportRow>& rows);
std::string write_report(const std::vector<ReportRow>& rows, ReportFormat format);

std::vector<ReportRow> parse_csv(std::string_view text);
std::vector<ReportRow> parse_json(std::string_view text);
std::vector<ReportRow> parse_report(std::string_view text, ReportFormat format);

}  // namespace spscagg::bench
