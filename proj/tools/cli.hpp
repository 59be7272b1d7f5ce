#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace canon::cli {

/// Exit codes beyond the per-command 0/1 results.
enum ExitCode : int {
  exit_ok = 0,
  exit_negative = 1,  // iso: not isomorphic
  exit_usage = 2,     // bad flags or unparsable input
  exit_capacity = 3,  // oracle or backend capacity exceeded
  exit_failure = 4,   // input outside a command's contract
};

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics and summaries to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// ⌈log2 n⌉ + 1, the recursion-depth bound reported by bench.
std::size_t depth_bound(std::size_t n);

}  // namespace canon::cli
