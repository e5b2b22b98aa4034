#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "alimit/formats.hpp"

namespace alimit::cli {

/// Runs the command line (without the program name). Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Threshold values at alpha with explicit inf / undefined markers.
ThresholdRow threshold_row(double alpha);

/// Sweep label: interval-I (one interval [tau1, inf)), gap (two intervals
/// with an unresolved gap between tau1' and tau2), interval-II (only
/// [tau2, inf)), unknown (alpha >= 1/2).
std::string sweep_label(double alpha);

/// Proven limit-point segments at alpha, e.g. "[2.092435365,2.103408681);[2.692120306,inf)".
std::string sweep_segments(double alpha, int digits);

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

inline constexpr std::uint64_t kInertiaSeed = 0x5eed'a11f'0001ULL;

std::vector<CheckResult> verify_inertia(std::size_t cases = 200, std::uint64_t seed = kInertiaSeed);
std::vector<CheckResult> verify_identities();
std::vector<CheckResult> verify_examples();

}  // namespace alimit::cli
