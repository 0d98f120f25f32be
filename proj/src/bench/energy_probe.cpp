#include "bench/energy_probe.hpp"

#include <sys/wait.h>

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <memory>
#include <utility>

namespace spscagg::bench {

namespace {

std::string run_command(const std::string& command) {
  const std::string line = command + " 2>/dev/null";
  FILE* pipe = ::popen(line.c_str(), "r");
  if (!pipe) throw ProbeFailure("cannot run energy probe '" + command + "'");
  std::string output;
  std::array<char, 256> buf;
  while (const std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) output.append(buf.data(), n);
  const int status = ::pclose(pipe);
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw ProbeFailure("energy probe '" + command + "' failed with status " + std::to_string(status));
  }
  return output;
}

}  // namespace

EnergyProbe::EnergyProbe(std::string command) : command_(std::move(command)) {
  if (command_.empty()) throw ProbeFailure("empty energy probe command");
}

void EnergyProbe::start() { run_command(command_ + " start"); }

double EnergyProbe::stop() { return parse_joules(run_command(command_ + " stop")); }

double parse_joules(const std::string& output) {
  const auto first = output.find_first_not_of(" \t\r\n");
  const auto last = output.find_last_not_of(" \t\r\n");
  if (first == std::string::npos) throw ProbeFailure("energy probe printed nothing");
  const char* begin = output.data() + first;
  const char* end = output.data() + last + 1;
  double joules = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, joules, std::chars_format::fixed);
  if (ec != std::errc{} || ptr != end || !std::isfinite(joules) || joules < 0.0) {
    throw ProbeFailure("energy probe output is not a single decimal: '" +
                       std::string(begin, end) + "'");
  }
  return joules;
}

}  // namespace spscagg::bench
