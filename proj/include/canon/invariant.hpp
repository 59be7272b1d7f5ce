#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "canon/graph.hpp"
#include "canon/parallel.hpp"

namespace canon {

struct RefineOptions {
  Exec exec;
  std::optional<std::size_t> round_cap;
  /// Keep the class vector of every round (round 0 = initial coloring).
  bool keep_history = false;
  /// Upper bound on n^k for k-dimensional refinement.
  std::size_t tuple_cap = std::size_t{1} << 20;
};

struct Wl1Result {
  std::vector<std::uint32_t> classes;  // stable class id per vertex
  std::size_t class_count = 0;
  std::size_t rounds = 0;
  CanonicalCode code;
  std::vector<std::vector<std::uint32_t>> history;
};

/// Color refinement. Each round replaces a vertex color by (old color,
/// sorted neighbor colors); new ids follow the sorted order of the distinct
/// signatures, so ids mean the same thing in every graph with the same
/// refinement trace. The code is that trace plus the stable quotient
/// (class sizes and per-class neighbor-class counts).
Wl1Result wl1_refine(const ColoredGraph& g, const RefineOptions& options = {});

struct WlkResult {
  std::size_t k = 0;
  std::size_t n = 0;
  /// Stable class per tuple; tuple (x1..xk) sits at index sum x_i n^(k-i).
  std::vector<std::uint32_t> classes;
  std::size_t class_count = 0;
  std::size_t rounds = 0;
  CanonicalCode code;
  std::vector<std::vector<std::uint32_t>> history;

  std::size_t tuple_index(std::span<const Vertex> tuple) const;
  /// Classes of the diagonal tuples (v, v, ..., v).
  std::vector<std::uint32_t> diagonal_classes() const;
};

/// k-dimensional refinement of vertex k-tuples (folklore variant): a tuple's
/// new color is its old color plus the multiset, over all n substitution
/// targets w, of the k colors of the tuples obtained by writing w into each
/// coordinate. Throws BackendCapacityError when n^k exceeds the tuple cap.
WlkResult wlk_refine(const ColoredGraph& g, std::size_t k, const RefineOptions& options = {});

struct BfCanonical {
  CanonicalCode code;
  Labeling labeling;  // a minimizing relabeling
};

/// Minimum of encode(G^σ) over all relabelings σ, computed by an ordered
/// search that only keeps partial orderings whose adjacency rows are
/// minimal so far and treats twin vertices as interchangeable.
BfCanonical bf_canonical(const ColoredGraph& g, std::size_t cap = default_oracle_cap());
CanonicalCode bf_invariant(const ColoredGraph& g, std::size_t cap = default_oracle_cap());

/// Counters shared across concurrent evaluations.
struct InvariantStats {
  std::atomic<std::uint64_t> calls{0};
  std::atomic<std::uint64_t> wl_rounds{0};
};

/// A pluggable invariant: `wl1`, `wlk:<k>` or `bf`.
class InvariantBackend {
 public:
  enum class Kind { wl1, wlk, bf };

  static InvariantBackend wl1() { return InvariantBackend(Kind::wl1, 0); }
  static InvariantBackend wlk(std::size_t k);
  static InvariantBackend bf(std::size_t cap = default_oracle_cap());
  /// Throws ParseError on anything outside the selector grammar.
  static InvariantBackend parse(std::string_view selector);

  Kind kind() const { return kind_; }
  std::size_t dimension() const { return k_; }
  std::string name() const;

  InvariantBackend& with_round_cap(std::optional<std::size_t> cap) {
    round_cap_ = cap;
    return *this;
  }
  InvariantBackend& with_oracle_cap(std::size_t cap) {
    oracle_cap_ = cap;
    return *this;
  }
  std::size_t oracle_cap() const { return oracle_cap_; }

  CanonicalCode evaluate(const ColoredGraph& g, InvariantStats* stats = nullptr) const;

 private:
  InvariantBackend(Kind kind, std::size_t k) : kind_(kind), k_(k) {}

  Kind kind_;
  std::size_t k_;
  std::optional<std::size_t> round_cap_;
  std::size_t oracle_cap_ = default_oracle_cap();
};

}  // namespace canon
