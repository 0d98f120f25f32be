#pragma once

#include <stdexcept>
#include <string>

namespace spscagg::bench {

class ProbeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// External energy meter driven through a shell command. `start()` runs "CMD start"
// right before the timed region; `stop()` runs "CMD stop" right after it and parses
// the joules consumed in between from its standard output, which must hold a single
// decimal number (surrounding whitespace allowed).
class EnergyProbe {
 public:
  explicit EnergyProbe(std::string command);

  // Both throw ProbeFailure on a non-zero exit status or unparsable output.
  void start();
  double stop();

  const std::string& command() const { return command_; }

 private:
  std::string command_;
};

// Exposed for tests.
double parse_joules(const std::string& output);

}  // namespace spscagg::bench
