#pragma once

#include <span>
#include <vector>

#include "canon/graph.hpp"
#include "canon/invariant.hpp"
#include "canon/oracles.hpp"
#include "canon/report.hpp"
#include "canon/separator.hpp"

namespace canon {

/// Offset added to individualization colors: one above the largest input
/// color, or 0 for an uncolored graph.
Color individualization_base(const ColoredGraph& g);

/// G_s: the i-th vertex of s (1-based) gains color base + i.
ColoredGraph individualize(const ColoredGraph& g, std::span<const Vertex> s);
/// G_{s,v}: G_s with color base + r + 1 added to v. v may lie in s.
ColoredGraph individualize_plus(const ColoredGraph& g, std::span<const Vertex> s, Vertex v);

struct FixingCandidate {
  std::vector<Vertex> sequence;
  std::vector<CanonicalCode> vertex_codes;  // f(G_{s,v}) per vertex
  CanonicalCode sequence_code;              // f(G_s), filled only when fixing
  bool fixing = false;
};

FixingCandidate evaluate_candidate(const ColoredGraph& g, std::span<const Vertex> s, const InvariantBackend& f,
                                   InvariantStats* stats = nullptr);

/// The codes f(G_{s,v}), v in V(G), are pairwise distinct.
bool is_fixing_by_invariant(const ColoredGraph& g, std::span<const Vertex> s, const InvariantBackend& f);

/// Ordered sequences of `length` distinct vertices, lexicographic.
std::vector<std::vector<Vertex>> distinct_sequences(std::size_t n, std::size_t length);

struct RigidityResult {
  Labeling labeling;
  std::vector<Vertex> sequence;  // chosen fixing sequence; empty on fallback
  std::vector<Diagnostic> diagnostics;
};

/// Canonical labeling for graphs with rigidity index <= r: among fixing
/// r-sequences pick the one minimizing f(G_s), place it first, then order
/// the rest by f(G_{s,v}). Sequences have length min(r, n). Returns the
/// identity and a no_fixing_sequence diagnostic when nothing is fixing.
RigidityResult canon_rigidity(const ColoredGraph& g, std::size_t r, const InvariantBackend& f,
                              const CanonOptions& options = {});

struct ConsistencyReport {
  std::size_t checked = 0;
  std::vector<std::vector<Vertex>> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// Compares the invariant-based fixing test (with the exact invariant)
/// against automorphism enumeration for every r-sequence.
ConsistencyReport rigidity_consistency_check(const ColoredGraph& g, std::size_t r,
                                             std::size_t cap = default_oracle_cap());

}  // namespace canon
