#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "canon/graph.hpp"

namespace canon {

/// Every color- and adjacency-preserving permutation of a graph, found by
/// exhaustive search. Elements are in lexicographic order of their mapping
/// arrays, so elements.front() is the identity.
struct AutomorphismGroup {
  std::vector<Labeling> elements;
  std::size_t order() const { return elements.size(); }
};

AutomorphismGroup automorphisms(const ColoredGraph& g, std::size_t cap = default_oracle_cap());

/// Visits automorphisms that fix `fixed` pointwise, in lexicographic order,
/// until the visitor returns false.
void for_each_automorphism(const ColoredGraph& g, std::span<const Vertex> fixed,
                           const std::function<bool(const Labeling&)>& visit,
                           std::size_t cap = default_oracle_cap());

/// Orbit partition; each orbit sorted, orbits ordered by smallest vertex.
std::vector<std::vector<Vertex>> orbits(const ColoredGraph& g, std::size_t cap = default_oracle_cap());

/// True iff the only automorphism fixing every vertex of `set` is the identity.
bool is_fixing_bf(const ColoredGraph& g, std::span<const Vertex> set, std::size_t cap = default_oracle_cap());

struct RigidityIndex {
  std::size_t index = 0;
  std::vector<Vertex> witness;  // lexicographically first minimum fixing set
};

RigidityIndex rigidity_index(const ColoredGraph& g, std::size_t cap = default_oracle_cap());

// ---------------------------------------------------------------------------
// Generators

/// 64-bit linear congruential generator, x' = a x + c mod 2^64 with
/// a = 6364136223846793005 and c = 1442695040888963407. The state is the
/// seed itself; outputs are the high 32 bits of each new state.
class Lcg64 {
 public:
  static constexpr std::uint64_t multiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t increment = 1442695040888963407ULL;

  explicit Lcg64(std::uint64_t seed) : state_(seed) {}

  std::uint32_t next() {
    state_ = state_ * multiplier + increment;
    return static_cast<std::uint32_t>(state_ >> 32);
  }
  /// Value in [0, bound), by reduction of next() modulo bound.
  std::uint32_t below(std::uint32_t bound) { return next() % bound; }
  /// True with probability numerator / 2^32 (p given as a double in [0,1]).
  bool chance(double p);
  /// Fisher-Yates from the back using below().
  std::vector<Vertex> permutation(std::size_t n);

 private:
  std::uint64_t state_;
};

enum class Family { tree, path, cycle, complete, star, k_tree, partial_k_tree, random_gnp, platonic };

struct FamilyParams {
  std::size_t n = 0;
  std::size_t k = 2;
  /// Edge probability (random_gnp, default 0.5) or deletion probability
  /// (partial_k_tree, default 0.25).
  std::optional<double> p;
  std::string name;  // platonic: k4, cube, octahedron
};

Family parse_family(const std::string& name);
std::string family_name(Family f);

/// Deterministic for a fixed seed. k_tree grows a (k+1)-clique by attaching
/// each new vertex to a uniformly chosen existing k-clique; partial_k_tree
/// then drops each edge independently with probability p (default 0.25).
ColoredGraph gen_family(Family family, const FamilyParams& params, std::uint64_t seed);

/// Relabels by a seeded random permutation.
ColoredGraph random_relabel(const ColoredGraph& g, std::uint64_t seed, Labeling* used = nullptr);

/// `<family> <params> <seed> <cg-file-path>`, params as `n=6,k=2,...`.
struct ManifestEntry {
  Family family;
  FamilyParams params;
  std::uint64_t seed = 0;
  std::string path;
};

std::string format_params(Family family, const FamilyParams& params);
FamilyParams parse_params(const std::string& text);
std::string write_manifest(std::span<const ManifestEntry> entries);
std::vector<ManifestEntry> parse_manifest(const std::string& text);

}  // namespace canon
