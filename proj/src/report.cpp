#include "canon/report.hpp"

#include <set>

namespace canon {

std::string diagnostic_kind_name(Diagnostic::Kind kind) {
  switch (kind) {
    case Diagnostic::Kind::no_separator: return "no-separator";
    case Diagnostic::Kind::no_fixing_sequence: return "no-fixing-sequence";
    case Diagnostic::Kind::invariant_failure: return "invariant-failure";
    case Diagnostic::Kind::warning: return "warning";
  }
  return "unknown";
}

std::string RunReport::diagnostics_column() const {
  std::set<std::string> kinds;
  for (const auto& d : diagnostics) kinds.insert(diagnostic_kind_name(d.kind));
  if (kinds.empty()) return "none";
  std::string out;
  for (const auto& k : kinds) {
    if (!out.empty()) out += ';';
    out += k;
  }
  return out;
}

}  // namespace canon
