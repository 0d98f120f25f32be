#include "bench/report.hpp"

#include <charconv>
#include <json.hpp>
#include <numeric>
#include <sstream>

namespace spscagg::bench {

namespace {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

template <class T>
T parse_number(std::string_view field, const char* column) {
  T value{};
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || end != field.data() + field.size() || field.empty()) {
    throw ReportParseError(std::string("bad ") + column + " value '" + std::string(field) + "'");
  }
  return value;
}

std::string rep_label(int rep) { return rep == ReportRow::kAverage ? "avg" : std::to_string(rep); }

int parse_rep(std::string_view field) {
  if (field == "avg") return ReportRow::kAverage;
  const int rep = parse_number<int>(field, "rep");
  if (rep < 0) throw ReportParseError("negative rep");
  return rep;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, begin);
    parts.push_back(line.substr(begin, pos - begin));
    if (pos == std::string_view::npos) return parts;
    begin = pos + 1;
  }
}

}  // namespace

ReportRow average(const std::vector<ReportRow>& reps) {
  if (reps.empty()) throw std::invalid_argument("cannot average zero repetitions");
  ReportRow mean = reps.front();
  mean.rep = ReportRow::kAverage;
  const double n = static_cast<double>(reps.size());
  double elapsed = 0.0;
  long double ops = 0.0;
  bool all_joules = true;
  double joules = 0.0;
  for (const ReportRow& r : reps) {
    elapsed += r.elapsed_ms;
    ops += static_cast<long double>(r.ops);
    if (r.joules) {
      joules += *r.joules;
    } else {
      all_joules = false;
    }
  }
  mean.elapsed_ms = elapsed / n;
  mean.ops = static_cast<std::uint64_t>(ops / reps.size() + 0.5L);
  mean.throughput_ops_per_ms =
      mean.elapsed_ms > 0.0 ? static_cast<double>(mean.ops) / mean.elapsed_ms : 0.0;
  mean.joules.reset();
  mean.joules_per_message.reset();
  if (all_joules) {
    mean.joules = joules / n;
    if (mean.ops > 0) mean.joules_per_message = *mean.joules / static_cast<double>(mean.ops);
  }
  return mean;
}

std::string write_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const ReportRow& r : rows) {
    out << r.kind << ',' << r.capacity << ',' << r.element_size << ',' << r.tuples << ','
        << r.producers << ',' << r.aggregators << ',' << rep_label(r.rep) << ','
        << format_double(r.elapsed_ms) << ',' << r.ops << ','
        << format_double(r.throughput_ops_per_ms) << ','
        << (r.joules ? format_double(*r.joules) : "") << ','
        << (r.joules_per_message ? format_double(*r.joules_per_message) : "") << '\n';
  }
  return out.str();
}

std::vector<ReportRow> parse_csv(std::string_view text) {
  std::vector<ReportRow> rows;
  bool header = true;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (header) {
      if (line != kCsvHeader) throw ReportParseError("unexpected CSV header");
      header = false;
      continue;
    }
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 12) {
      throw ReportParseError("line " + std::to_string(line_no) + ": expected 12 fields, got " +
                             std::to_string(f.size()));
    }
    ReportRow r;
    r.kind = std::string(f[0]);
    r.capacity = parse_number<std::size_t>(f[1], "capacity");
    r.element_size = parse_number<std::size_t>(f[2], "element_size");
    r.tuples = parse_number<std::uint64_t>(f[3], "tuples");
    r.producers = parse_number<std::size_t>(f[4], "producers");
    r.aggregators = parse_number<std::size_t>(f[5], "aggregators");
    r.rep = parse_rep(f[6]);
    r.elapsed_ms = parse_number<double>(f[7], "elapsed_ms");
    r.ops = parse_number<std::uint64_t>(f[8], "ops");
    r.throughput_ops_per_ms = parse_number<double>(f[9], "throughput_ops_per_ms");
    if (!f[10].empty()) r.joules = parse_number<double>(f[10], "joules");
    if (!f[11].empty()) r.joules_per_message = parse_number<double>(f[11], "joules_per_message");
    rows.push_back(std::move(r));
  }
  if (header) throw ReportParseError("missing CSV header");
  return rows;
}

std::string write_json(const std::vector<ReportRow>& rows) {
  json out = json::array();
  for (const ReportRow& r : rows) {
    json row = {
        {"kind", r.kind},
        {"capacity", r.capacity},
        {"element_size", r.element_size},
        {"tuples", r.tuples},
        {"producers", r.producers},
        {"aggregators", r.aggregators},
        {"rep", r.is_average() ? json("avg") : json(r.rep)},
        {"elapsed_ms", r.elapsed_ms},
        {"ops", r.ops},
        {"throughput_ops_per_ms", r.throughput_ops_per_ms},
    };
    if (r.joules) row["joules"] = *r.joules;
    if (r.joules_per_message) row["joules_per_message"] = *r.joules_per_message;
    out.push_back(std::move(row));
  }
  return out.dump(2) + "\n";
}

std::vector<ReportRow> parse_json(std::string_view text) {
  std::vector<ReportRow> rows;
  try {
    const json doc = json::parse(text);
    if (!doc.is_array()) throw ReportParseError("JSON report must be an array");
    for (const json& j : doc) {
      ReportRow r;
      j.at("kind").get_to(r.kind);
      j.at("capacity").get_to(r.capacity);
      j.at("element_size").get_to(r.element_size);
      j.at("tuples").get_to(r.tuples);
      j.at("producers").get_to(r.producers);
      j.at("aggregators").get_to(r.aggregators);
      const json& rep = j.at("rep");
      r.rep = rep.is_string() ? parse_rep(rep.get<std::string>()) : rep.get<int>();
      j.at("elapsed_ms").get_to(r.elapsed_ms);
      j.at("ops").get_to(r.ops);
      j.at("throughput_ops_per_ms").get_to(r.throughput_ops_per_ms);
      if (j.contains("joules")) r.joules = j["joules"].get<double>();
      if (j.contains("joules_per_message")) r.joules_per_message = j["joules_per_message"].get<double>();
      rows.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ReportParseError(e.what());
  }
  return rows;
}

std::string write_report(const std::vector<ReportRow>& rows, ReportFormat format) {
  return format == ReportFormat::Csv ? write_csv(rows) : write_json(rows);
}

std::vector<ReportRow> parse_report(std::string_view text, ReportFormat format) {
  return format == ReportFormat::Csv ? parse_csv(text) : parse_json(text);
}

}  // namespace spscagg::bench
