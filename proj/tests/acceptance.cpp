// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.
//
//   acceptance [report-dir]
//
// Report files from the CLI sweeps (criterion 7) are kept in report-dir (default
// ./acceptance_reports).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <thread>
#include <tuple>
#include <vector>

#include "aggregation/pipeline.hpp"
#include "aggregation/window.hpp"
#include "bench/report.hpp"
#include "bench/workload.hpp"
#include "oracle/explorer.hpp"
#include "oracle/oracle.hpp"
#include "spsc/endpoints.hpp"
#include "spsc/queues.hpp"

namespace {

namespace fs = std::filesystem;
using namespace spscagg;
using spsc::QueueKind;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(std::string why) {
    pass = false;
    if (failures.size() < 10) failures.push_back(std::move(why));
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string kind_name(QueueKind k) { return std::string(spsc::to_string(k)); }

spsc::QueueConfig queue_config(std::size_t capacity, std::size_t batch = 1) {
  spsc::QueueConfig c;
  c.capacity = capacity;
  c.mcr_batch_size = batch;
  return c;
}

// ---- 1. FIFO stress --------------------------------------------------------------------

struct StressResult {
  oracle::FifoVerdict fifo;
  bool multiset_ok = false;
};

template <QueueKind K>
StressResult stress(const spsc::QueueConfig& config, std::uint64_t count) {
  using Q = spsc::QueueFor_t<K, std::uint64_t>;
  auto [producer, consumer] = spsc::make_queue<Q>(config);
  std::vector<std::uint64_t> received;
  received.reserve(count);
  std::thread consumer_thread([&, &consumer = consumer] {
    spsc::drain(consumer, [&](std::uint64_t v) { received.push_back(v); });
  });
  for (std::uint64_t seq = 1; seq <= count; ++seq) producer.enqueue_spin(seq);
  producer.finish();
  consumer_thread.join();

  // Each enqueue precedes the dequeue that returns it, so all enqueues, then finish,
  // then the dequeues in consumer order is a valid linearization of the run.
  oracle::OpLog log;
  for (std::uint64_t seq = 1; seq <= count; ++seq) log.enqueue(seq);
  log.finish();
  for (std::uint64_t v : received) log.dequeue(v);
  log.drain_complete();

  StressResult r;
  r.fifo = oracle::check_fifo(log);
  std::sort(received.begin(), received.end());
  std::vector<std::uint64_t> expected(count);
  std::iota(expected.begin(), expected.end(), 1);
  r.multiset_ok = received == expected;
  return r;
}

Outcome criterion_fifo_stress() {
  constexpr std::uint64_t kCount = 1'000'000;
  Outcome out;
  std::size_t runs = 0;
  std::size_t rejected = 0;
  const auto t0 = Clock::now();
  for (QueueKind kind : spsc::kAllKinds) {
    for (std::size_t capacity : {2u, 3u, 128u, 2048u}) {
      const std::string label = kind_name(kind) + " capacity " + std::to_string(capacity);
      const spsc::QueueConfig config = queue_config(capacity);
      if (kind == QueueKind::BatchQueue && capacity % 2 != 0) {
        // Two equal halves cannot be carved from an odd array; the configuration rule
        // requires InvalidConfig here.
        try {
          spsc::validate(kind, config);
          out.fail(label + ": odd capacity accepted");
        } catch (const spsc::ConfigError&) {
          ++rejected;
        }
        continue;
      }
      const StressResult r = spsc::visit_kind(
          kind, [&](auto tag) { return stress<decltype(tag)::value>(config, kCount); });
      ++runs;
      if (!r.fifo) out.fail(label + ": " + r.fifo.description);
      if (!r.multiset_ok) out.fail(label + ": terminal multiset differs");
    }
  }
  std::ostringstream d;
  d << runs << " runs x 10^6 elements FIFO ok and multiset exact; batchqueue capacity 3 "
    << (rejected == 1 ? "rejected as InvalidConfig" : "NOT rejected") << "; "
    << seconds_since(t0) << " s";
  out.detail = d.str();
  return out;
}

// ---- 2. Exhaustive model check ------------------------------------------------------------

Outcome criterion_model_check() {
  Outcome out;
  const auto t0 = Clock::now();
  std::size_t configurations = 0;
  std::size_t states = 0;
  for (QueueKind kind : spsc::kAllKinds) {
    for (std::size_t capacity = 2; capacity <= oracle::kMaxExploreCapacity; ++capacity) {
      if (kind == QueueKind::BatchQueue && capacity % 2 != 0) continue;
      for (std::size_t batch = 1; batch <= capacity; ++batch) {
        if (capacity % batch != 0 || (kind != QueueKind::MCRingBuffer && batch > 1)) continue;
        for (std::size_t e = 0; e <= oracle::kMaxExploreOps; ++e) {
          for (std::size_t d = 0; d <= oracle::kMaxExploreOps; ++d) {
            const auto r = oracle::explore_interleavings(kind, {capacity, e, d, batch});
            ++configurations;
            states += r.states;
            if (!r) {
              out.fail(kind_name(kind) + " c" + std::to_string(capacity) + " b" +
                       std::to_string(batch) + " " + std::to_string(e) + "/" +
                       std::to_string(d) + ": " + r.violation);
            }
          }
        }
      }
    }
  }

  std::string sample_trace;
  for (QueueKind kind : spsc::kAllKinds) {
    const auto r =
        oracle::explore_interleavings(kind, {2, 2, 2, 1}, oracle::Mutation::PublishBeforeWrite);
    if (r || r.trace.empty()) {
      out.fail(kind_name(kind) + ": publish-before-write mutant not caught with a trace");
    } else if (sample_trace.empty()) {
      sample_trace = kind_name(kind) + " mutant: " + r.violation + " after";
      for (const std::string& step : r.trace) sample_trace += " [" + step + "]";
    }
  }

  std::ostringstream d;
  d << configurations << " configurations, " << states
    << " states, all ok; mutant caught for all 4 kinds; " << seconds_since(t0) << " s";
  out.detail = d.str();
  if (!sample_trace.empty()) out.detail += "\n      " + sample_trace;
  return out;
}

// ---- 3. BatchQueue leftover protocol -------------------------------------------------------

Outcome criterion_batchqueue_leftover() {
  constexpr std::size_t kHalf = 8;
  using Q = spsc::BatchQueue<std::uint64_t>;
  Outcome out;
  spsc::QueueConfig config = queue_config(2 * kHalf);
  config.debug_checks = true;

  const auto check = [&](const std::string& label, std::size_t count,
                         const std::vector<std::uint64_t>& got, const spsc::EndpointStats& cs,
                         const spsc::EndpointStats& ps) {
    std::vector<std::uint64_t> expected(count);
    std::iota(expected.begin(), expected.end(), 0);
    if (got != expected) out.fail(label + " count " + std::to_string(count) + ": wrong elements");
    if (cs.leftover_drained != count % kHalf) {
      out.fail(label + " count " + std::to_string(count) + ": leftover_drained " +
               std::to_string(cs.leftover_drained));
    }
    if (ps.ownership_violations != 0) out.fail(label + ": ownership violation");
  };

  for (std::size_t count = 1; count <= 64; ++count) {
    // Three deterministic schedules: producer-greedy, lockstep, and consumer-lazy.
    for (std::size_t burst : {std::size_t{1000}, std::size_t{1}, std::size_t{3}}) {
      auto [producer, consumer] = spsc::make_queue<Q>(config);
      std::vector<std::uint64_t> got;
      std::uint64_t next = 0;
      while (next < count) {
        for (std::size_t i = 0; i < burst && next < count && producer.try_enqueue(next); ++i) ++next;
        if (auto v = consumer.try_dequeue()) got.push_back(*v);
        if (burst == 1000) {
          while (auto v = consumer.try_dequeue()) got.push_back(*v);
        }
      }
      producer.finish();
      if (producer.queue().leftover_flag() != (count % kHalf != 0)) {
        out.fail("count " + std::to_string(count) + ": leftover flag wrong");
      }
      spsc::drain(consumer, [&](std::uint64_t v) { got.push_back(v); });
      check("burst " + std::to_string(burst), count, got, consumer.stats(), producer.stats());
    }

    // Two agents.
    for (int trial = 0; trial < 20; ++trial) {
      auto [producer, consumer] = spsc::make_queue<Q>(config);
      std::vector<std::uint64_t> got;
      std::thread t([&, &consumer = consumer] {
        spsc::drain(consumer, [&](std::uint64_t v) { got.push_back(v); });
      });
      for (std::uint64_t v = 0; v < count; ++v) producer.enqueue_spin(v);
      producer.finish();
      t.join();
      check("threaded", count, got, consumer.stats(), producer.stats());
    }
  }
  out.detail = "counts 1..64, N=8: 3 fixed schedules + 20 two-agent runs each recover every "
               "element in order; leftover_drained == count mod 8";
  return out;
}

// ---- 4. MCRingBuffer publication arithmetic ------------------------------------------------

Outcome criterion_mcr_publications() {
  // Room for every op, so the producer never stalls on a full ring.
  constexpr std::size_t kCapacity = 131072;
  using Q = spsc::MCRingBuffer<std::uint64_t>;
  Outcome out;
  std::size_t cases = 0;
  for (std::size_t batch : {1u, 8u, 32u, 128u}) {
    for (std::uint64_t ops : {1u, 100u, 320u, 100'000u}) {
      const std::uint64_t expected = ops / batch + (ops % batch != 0 ? 1 : 0);
      const std::string label = "batch " + std::to_string(batch) + " ops " + std::to_string(ops);

      for (bool threaded : {false, true}) {
        auto [producer, consumer] = spsc::make_queue<Q>(queue_config(kCapacity, batch));
        std::uint64_t received = 0;
        std::thread t;
        if (threaded) {
          t = std::thread([&, &consumer = consumer] {
            spsc::drain(consumer, [&](std::uint64_t) { ++received; });
          });
        }
        for (std::uint64_t v = 0; v < ops; ++v) {
          if (!producer.try_enqueue(v)) out.fail(label + ": unexpected Full");
        }
        producer.finish();
        if (threaded) {
          t.join();
        } else {
          spsc::drain(consumer, [&](std::uint64_t) { ++received; });
        }
        const auto& s = producer.stats();
        ++cases;
        if (s.publication_events != expected) {
          out.fail(label + (threaded ? " (two agents)" : "") + ": publication_events " +
                   std::to_string(s.publication_events) + ", expected " + std::to_string(expected));
        }
        if (s.stall_publications != 0) out.fail(label + ": stall publications on a roomy ring");
        if (received != ops) out.fail(label + ": received " + std::to_string(received));
      }
    }
  }
  out.detail = std::to_string(cases) +
               " cases (single-threaded and two-agent): publication_events == "
               "floor(ops/batch) + (ops mod batch != 0)";
  return out;
}

// ---- 5 and 6. Oracle equivalence and conservation ---------------------------------------------

struct Conservation {
  std::size_t checked = 0;
};

void check_conservation(Outcome& out, Conservation& cons, const std::string& label,
                        const agg::WindowTotals& totals, const std::vector<agg::Tuple>& tuples,
                        const agg::WindowSpec& spec) {
  ++cons.checked;
  // Σ_t value(t) * |window_starts(t)| with the count taken from the start list itself.
  agg::Watts weighted = 0;
  for (const agg::Tuple& t : tuples) {
    weighted += static_cast<agg::Watts>(t.value) *
                static_cast<agg::Watts>(agg::window_starts(t.timestamp, spec).size());
  }
  if (agg::total_sum(totals) != weighted) {
    out.fail(label + ": window sum " + std::to_string(agg::total_sum(totals)) + " != " +
             std::to_string(weighted));
  }
}

Outcome criterion_oracle_equivalence(Outcome& conservation, Conservation& cons) {
  struct Topology {
    std::size_t producers;
    std::size_t aggregators;
  };
  const Topology topologies[] = {{1, 10}, {3, 8}};
  const std::size_t capacities[] = {64, 128, 256};
  const agg::WindowSpec spec{4, 2};
  Outcome out;
  const auto t0 = Clock::now();
  std::set<std::size_t> combos;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t combo = seed % 24;
    combos.insert(combo);
    const Topology topo = topologies[combo / 12];
    const QueueKind kind = spsc::kAllKinds[(combo / 3) % 4];
    const std::size_t capacity = capacities[combo % 3];
    const std::string label = "seed " + std::to_string(seed) + " " + kind_name(kind) + " " +
                              std::to_string(topo.producers) + "x" +
                              std::to_string(topo.aggregators) + " c" + std::to_string(capacity);

    const auto tuples = bench::generate_workload(10'000, seed);
    const agg::WindowTotals expected = oracle::oracle_aggregate(tuples, spec);
    check_conservation(conservation, cons, label + " oracle", expected, tuples, spec);

    agg::PipelineConfig config;
    config.producers = topo.producers;
    config.aggregators = topo.aggregators;
    config.queue_kind = kind;
    config.queue_config = queue_config(capacity);
    config.spec = spec;
    config.workloads = bench::split_round_robin(tuples, topo.producers);
    config.pacing_seed = seed;
    const agg::PipelineResult result = agg::run_pipeline(config);
    if (result.totals != expected) out.fail(label + ": pipeline totals differ from oracle");
    if (result.metrics.messages != tuples.size()) out.fail(label + ": message count");
    check_conservation(conservation, cons, label + " pipeline", result.totals, tuples, spec);
  }
  std::ostringstream d;
  d << "200 runs over " << combos.size() << " combinations, all equal to the oracle; "
    << seconds_since(t0) << " s";
  out.detail = d.str();
  return out;
}

void extra_conservation(Outcome& out, Conservation& cons) {
  const agg::WindowSpec specs[] = {{10, 5}, {4, 2}, {7, 3}, {5, 5}, {1, 1}, {9, 4}};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto tuples = bench::generate_workload(3'000, 1000 + seed, {-1000, 1000});
    for (const agg::WindowSpec& spec : specs) {
      const std::string label = "seed " + std::to_string(1000 + seed) + " spec (" +
                                std::to_string(spec.size) + "," + std::to_string(spec.advance) + ")";
      check_conservation(out, cons, label + " oracle", oracle::oracle_aggregate(tuples, spec), tuples,
                         spec);
      agg::PipelineConfig config;
      config.producers = 2;
      config.aggregators = 4;
      config.queue_kind = spsc::kAllKinds[seed % 4];
      config.queue_config = queue_config(16);
      config.spec = spec;
      config.workloads = bench::split_round_robin(tuples, 2);
      config.pacing_seed = seed;
      check_conservation(out, cons, label + " pipeline", agg::run_pipeline(config).totals, tuples,
                         spec);
    }
  }
}

// ---- 7. Methodology reproduction ------------------------------------------------------------

struct CliRun {
  int exit_code = -1;
  std::string stderr_text;
};

CliRun run_cli(const std::string& args, const fs::path& err_file) {
  const std::string cmd = std::string(SPSC_BENCH_PATH) + " " + args + " 2>" + err_file.string();
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(err_file);
  r.stderr_text.assign(std::istreambuf_iterator<char>(in), {});
  return r;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

struct Sweep {
  std::string name;
  std::string args;
  std::vector<std::string> kinds;
  std::vector<std::size_t> capacities;
  std::vector<std::size_t> element_sizes;
  bool pipeline = false;
};

// Checks one CSV report against the schema and the expected matrix.
void check_report(Outcome& out, const Sweep& sweep, const fs::path& path, std::size_t reps) {
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  std::istringstream lines(text);
  std::string header;
  std::getline(lines, header);
  if (header != bench::kCsvHeader) {
    out.fail(sweep.name + ": header mismatch");
    return;
  }
  const std::set<std::string> kinds(sweep.kinds.begin(), sweep.kinds.end());
  std::map<std::tuple<std::string, std::size_t, std::size_t>, std::vector<std::string>> seen;
  std::string line;
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    const auto cells = split(line);
    if (cells.size() != 12) {
      out.fail(sweep.name + ": row with " + std::to_string(cells.size()) + " cells");
      continue;
    }
    if (!kinds.count(cells[0])) out.fail(sweep.name + ": unexpected kind " + cells[0]);
    const double throughput = std::stod(cells[9]);
    if (!(throughput > 0.0)) out.fail(sweep.name + ": throughput " + cells[9]);
    if (!(std::stod(cells[7]) > 0.0)) out.fail(sweep.name + ": elapsed " + cells[7]);
    if (sweep.pipeline && cells[5] == "0") out.fail(sweep.name + ": pipeline row without aggregators");
    seen[{cells[0], std::stoul(cells[1]), std::stoul(cells[2])}].push_back(cells[6]);
  }
  // The typed parser must accept the file as well.
  try {
    if (bench::parse_csv(text).size() != rows) out.fail(sweep.name + ": parser row count");
  } catch (const bench::ReportParseError& e) {
    out.fail(sweep.name + ": " + e.what());
  }

  std::vector<std::string> rep_labels;
  for (std::size_t r = 0; r < reps; ++r) rep_labels.push_back(std::to_string(r));
  rep_labels.push_back("avg");
  const std::size_t points = sweep.kinds.size() * sweep.capacities.size() * sweep.element_sizes.size();
  if (seen.size() != points) {
    out.fail(sweep.name + ": " + std::to_string(seen.size()) + " matrix points, expected " +
             std::to_string(points));
  }
  for (const std::string& k : sweep.kinds) {
    for (std::size_t c : sweep.capacities) {
      for (std::size_t e : sweep.element_sizes) {
        const auto it = seen.find({k, c, e});
        if (it == seen.end() || it->second != rep_labels) {
          out.fail(sweep.name + ": " + k + " c" + std::to_string(c) + " e" + std::to_string(e) +
                   " missing or wrong repetitions");
        }
      }
    }
  }
}

Outcome criterion_methodology(const fs::path& report_dir) {
  constexpr std::size_t kReps = 5;
  const std::vector<std::string> all_kinds{"lamport", "fastforward", "batchqueue", "mcringbuffer"};
  std::vector<std::size_t> buffer_axis;
  for (std::size_t c = 128; c <= 16384; c *= 2) buffer_axis.push_back(c);

  const std::vector<Sweep> sweeps{
      {"buffer-size sweep", "--mode micro --capacity 128,256,512,1024,2048,4096,8192,16384",
       all_kinds, buffer_axis, {12}, false},
      {"element-size sweep", "--mode micro --element-size 12,64,128,192", all_kinds, {128},
       {12, 64, 128, 192}, false},
      {"batchqueue buffer variation", "--mode pipeline --kind batchqueue --capacity 64,128,256",
       {"batchqueue"}, {64, 128, 256}, {12}, true},
  };

  Outcome out;
  fs::create_directories(report_dir);
  const auto t0 = Clock::now();
  std::size_t files = 0;
  for (const Sweep& sweep : sweeps) {
    std::string stem = sweep.name;
    std::replace(stem.begin(), stem.end(), ' ', '_');
    const fs::path csv = report_dir / (stem + ".csv");
    const fs::path err = report_dir / (stem + ".stderr");
    fs::remove(csv);
    const CliRun r = run_cli(sweep.args + " --reps " + std::to_string(kReps) +
                                 " --verify on --format csv --out " + csv.string(),
                             err);
    if (r.exit_code != 0) {
      out.fail(sweep.name + ": exit " + std::to_string(r.exit_code) + " " + r.stderr_text);
      continue;
    }
    ++files;
    check_report(out, sweep, csv, kReps);
  }
  std::ostringstream d;
  d << files << " report files in " << report_dir.string()
    << " (8 capacities x 4 kinds, 4 element sizes x 4 kinds, 3 pipeline capacities), "
    << kReps << " reps + avg each, schema valid, throughput > 0, pipeline runs oracle-verified; "
    << seconds_since(t0) << " s";
  out.detail = d.str();
  return out;
}

// ---- 8. Window math --------------------------------------------------------------------------

Outcome criterion_window_math() {
  Outcome out;
  const agg::WindowSpec specs[] = {{10, 5}, {4, 2}, {7, 3}, {5, 5}};
  std::size_t checks = 0;
  for (const agg::WindowSpec& spec : specs) {
    for (agg::Timestamp t = 0; t <= 10'000; ++t) {
      std::vector<agg::Timestamp> brute;
      for (agg::Timestamp s = 0; s <= t; ++s) {
        if (s % spec.advance == 0 && s <= t && t < s + spec.size) brute.push_back(s);
      }
      ++checks;
      if (agg::window_starts(t, spec) != brute) {
        out.fail("spec (" + std::to_string(spec.size) + "," + std::to_string(spec.advance) +
                 ") t=" + std::to_string(t));
      }
    }
  }
  out.detail = std::to_string(checks) + " (spec, t) pairs equal to the brute-force filter";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path report_dir = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance_reports");

  struct Entry {
    int number;
    const char* title;
    std::function<Outcome()> run;
  };
  Outcome conservation;
  Conservation cons;
  const std::vector<Entry> entries{
      {1, "FIFO stress", criterion_fifo_stress},
      {2, "exhaustive small-instance model check", criterion_model_check},
      {3, "BatchQueue leftover protocol", criterion_batchqueue_leftover},
      {4, "MCRingBuffer publication arithmetic", criterion_mcr_publications},
      {5, "oracle equivalence end-to-end",
       [&] { return criterion_oracle_equivalence(conservation, cons); }},
      {6, "conservation identity",
       [&] {
         extra_conservation(conservation, cons);
         conservation.detail = std::to_string(cons.checked) + " oracle and pipeline outputs";
         return conservation;
       }},
      {7, "methodology reproduction", [&] { return criterion_methodology(report_dir); }},
      {8, "window math", criterion_window_math},
  };

  bool all = true;
  for (const Entry& e : entries) {
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o.fail(std::string("exception: ") + ex.what());
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << e.number << ": " << e.title;
    if (!o.detail.empty()) std::cout << " -- " << o.detail;
    std::cout << '\n';
    for (const std::string& f : o.failures) std::cout << "      " << f << '\n';
    std::cout.flush();
  }
  return all ? 0 : 1;
}
