#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "canon/graph.hpp"
#include "canon/invariant.hpp"
#include "canon/parallel.hpp"
#include "canon/report.hpp"

namespace canon {

/// Color bookkeeping for one recursion level. With R = 2^r + r, level d
/// owns the colors base + ((d-1)R, dR]: base + (d-1)R + i marks the i-th
/// separator vertex and base + (d-1)R + r + 1 + mask marks a flap vertex
/// whose neighbors in the separator are given by the bits of mask.
/// `base` is one above the largest input color, so the reduction's colors
/// never collide with colors the caller supplied.
struct SeparatorRun {
  std::size_t r = 1;
  std::uint64_t block_width = 3;  // R
  std::uint64_t color_base = 0;
  std::size_t depth = 1;

  static SeparatorRun start(const ColoredGraph& g, std::size_t r);
  SeparatorRun deeper() const;

  Color sequence_color(std::size_t i) const;  // i is 1-based
  Color pattern_color(std::uint64_t mask) const;
  Color block_begin() const { return color_base + (depth - 1) * block_width; }
};

/// One connected component of G - X with inherited colors plus its
/// adjacency-pattern color. origin[i] is the parent vertex of flap vertex i
/// (ascending).
struct Flap {
  ColoredGraph graph;
  std::vector<Vertex> origin;
};

/// Every component of G - X has at most n/2 vertices.
bool is_separator(const ColoredGraph& g, std::span<const Vertex> x);

/// All ordered r-sequences of distinct vertices whose set is a separator,
/// in lexicographic order.
std::vector<std::vector<Vertex>> mark_separating_sequences(const ColoredGraph& g, std::size_t r,
                                                           const Exec& exec = {});

/// G_s: sequence vertex i gets run.sequence_color(i).
ColoredGraph color_sequence(const ColoredGraph& g, std::span<const Vertex> s, const SeparatorRun& run);

/// Throws ContractViolation unless set(s) separates g.
std::vector<Flap> decompose_flaps(const ColoredGraph& g, std::span<const Vertex> s, const SeparatorRun& run);

struct CanonOptions {
  Exec exec;
  /// Brute-force isomorphism checks on equal-code flaps (within the oracle
  /// cap) to catch an incomplete invariant.
  bool cross_check = false;
  std::size_t oracle_cap = default_oracle_cap();
  InvariantStats* stats = nullptr;
};

struct CanonResult {
  Labeling labeling;
  std::size_t depth = 0;  // deepest recursion level reached, 1-based
  std::vector<Diagnostic> diagnostics;

  bool found_separators_everywhere() const;
};

/// Canonical labeling by recursion on r-vertex separators. The labeling
/// lists the chosen separator first (in sequence order), then the flaps in
/// increasing invariant order, each flap ordered recursively; flaps with at
/// most r vertices are ordered by the individualization that minimizes the
/// invariant. Canonical whenever `f` is complete on every colored graph the
/// run evaluates.
CanonResult canon_separator(const ColoredGraph& g, std::size_t r, const InvariantBackend& f,
                            const CanonOptions& options = {});

struct IsoResult {
  std::optional<Labeling> mapping;  // G vertex -> H vertex, verified
  std::vector<Diagnostic> diagnostics;
};

IsoResult find_isomorphism(const ColoredGraph& g, const ColoredGraph& h, std::size_t r,
                           const InvariantBackend& f, const CanonOptions& options = {});

}  // namespace canon
