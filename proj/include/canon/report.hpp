#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace canon {

/// A non-fatal finding surfaced by a canonizer run.
struct Diagnostic {
  enum class Kind {
    no_separator,       // identity fallback inside a separator scope
    no_fixing_sequence, // identity fallback in the rigidity canonizer
    invariant_failure,  // equal codes on non-isomorphic inputs, or a failed check
    warning,
  };
  Kind kind;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

std::string diagnostic_kind_name(Diagnostic::Kind kind);

/// Per-run ledger printed by the CLI and the bench command.
struct RunReport {
  double wall_ms = 0.0;
  int workers = 1;
  std::size_t depth = 0;
  std::uint64_t invariant_calls = 0;
  std::uint64_t wl_rounds = 0;
  std::vector<Diagnostic> diagnostics;

  double rounds_per_wl_call() const {
    return invariant_calls == 0 ? 0.0 : static_cast<double>(wl_rounds) / static_cast<double>(invariant_calls);
  }
  /// Semicolon-joined kind names, or "none".
  std::string diagnostics_column() const;
};

}  // namespace canon
