#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "canon/graph.hpp"

namespace canon {

/// Orientable embedding as a ternary relation: T(a, b, c) holds iff
/// succ(a, b) == c. The relation is stored raw so that malformed systems
/// can be represented and rejected by validate().
class RotationSystem {
 public:
  RotationSystem() = default;

  /// Builds succ(a, order[a][i]) = order[a][i + 1 mod d]. Colors on `graph`
  /// are dropped.
  static RotationSystem from_orders(const ColoredGraph& graph, const std::vector<std::vector<Vertex>>& orders);
  /// Raw triples (a, b, c); nothing is checked until validate().
  static RotationSystem from_triples(const ColoredGraph& graph,
                                     const std::vector<std::tuple<Vertex, Vertex, Vertex>>& triples);

  const ColoredGraph& graph() const { return graph_; }
  /// Throws ContractViolation if b has no successor at a.
  Vertex succ(Vertex a, Vertex b) const;
  bool holds(Vertex a, Vertex b, Vertex c) const;
  const std::map<Vertex, Vertex>& relation_at(Vertex a) const { return succ_[a]; }

  /// Cyclic successor order at a, starting from the smallest neighbor.
  /// Requires a valid rotation at a.
  std::vector<Vertex> cyclic_order(Vertex a) const;

  struct Validation {
    bool ok = true;
    std::string reason;
  };
  /// Condition 1: T(a, b, c) only for b, c in Γ(a). Condition 2: T(a, ., .)
  /// is a single directed cycle through all of Γ(a).
  Validation validate() const;

  friend bool operator==(const RotationSystem& a, const RotationSystem& b) {
    return a.graph_ == b.graph_ && a.succ_ == b.succ_;
  }

 private:
  ColoredGraph graph_;
  std::vector<std::map<Vertex, Vertex>> succ_;
};

/// A closed walk bounding one face, as arcs (u -> v), rotated so the
/// lexicographically smallest arc comes first. A single isolated vertex has
/// one face with no arcs.
struct FacialWalk {
  std::vector<Edge> arcs;
  std::vector<Vertex> vertices;  // tail of each arc, or the isolated vertex

  friend bool operator==(const FacialWalk&, const FacialWalk&) = default;
};

bool validate_rotation_system(const RotationSystem& r, std::string* reason = nullptr);

/// Reverses every vertex cycle.
RotationSystem conjugate(const RotationSystem& r);

/// After arc (u -> v) the walk continues with (v -> succ(v, u)). Throws
/// UnsupportedInput on disconnected graphs, ContractViolation on invalid
/// systems.
std::vector<FacialWalk> trace_faces(const RotationSystem& r);

/// (2 - V + E - F) / 2.
std::size_t euler_genus(const RotationSystem& r);

bool is_polyhedral(const RotationSystem& r);

/// R^α: succ^α(α(a), α(b)) = α(succ(a, b)). α must be an automorphism of
/// the underlying graph.
RotationSystem rotation_image(const RotationSystem& r, const Labeling& alpha);

/// Equal, or equal to the conjugate.
bool equivalent_embeddings(const RotationSystem& a, const RotationSystem& b);

/// Every automorphism maps the embedding to an equivalent one.
bool is_faithful(const RotationSystem& r, std::size_t cap = default_oracle_cap());

struct FixingTriple {
  std::vector<Vertex> vertices;  // {u, v, w}, or the degenerate set
  bool degenerate = false;       // path or cycle
  std::optional<bool> faithful;  // checked when n <= cap
  std::optional<bool> verified;  // is_fixing_bf, when n <= cap
  std::string warning;
};

/// A facial-walk segment u, v, w around a vertex v of degree >= 3 (or two
/// adjacent vertices for paths and cycles). Fixing whenever r is faithful.
FixingTriple fixing_triple(const RotationSystem& r, std::size_t cap = default_oracle_cap());

/// Product of (deg(v) - 1)! over all vertices (0! for isolated vertices).
std::uint64_t rotation_system_count(const ColoredGraph& g);

/// Systems are indexed in mixed radix with the last vertex varying fastest;
/// each vertex's orders start at its smallest neighbor and follow
/// std::next_permutation order of the rest.
RotationSystem rotation_system_at(const ColoredGraph& g, std::uint64_t index);

/// Streams every rotation system in index order until `visit` returns false.
void for_each_rotation_system(const ColoredGraph& g, const std::function<bool(const RotationSystem&)>& visit,
                              std::uint64_t cap = std::uint64_t{1} << 22);
std::vector<RotationSystem> enumerate_rotation_systems(const ColoredGraph& g,
                                                       std::uint64_t cap = std::uint64_t{1} << 22);

/// Every polyhedral rotation system of `g` of the given genus (or of the
/// smallest genus admitting one), in index order. Empty if none exist.
std::vector<RotationSystem> polyhedral_embeddings(const ColoredGraph& g, std::optional<std::size_t> genus = {},
                                                  std::uint64_t cap = std::uint64_t{1} << 22);

/// First genus-0 rotation system in index order.
RotationSystem planar_rotation_system(const ColoredGraph& g);

struct PolyhedralFixingSet {
  std::vector<Vertex> vertices;  // sorted, duplicates removed
  std::size_t c = 0;             // number of embeddings up to equivalence
  Edge base_edge{0, 0};          // x y
  /// For each i >= 2: (x_i, y_i, z_i) with T_1(x_i, y_i, z_i) != T_i(x_i, y_i, z_i).
  std::vector<std::tuple<Vertex, Vertex, Vertex>> witnesses;
  std::optional<bool> verified;
};

/// Fixing set of size <= 4c from all 2c rotation systems of the polyhedral
/// embeddings of `g` into one surface (conjugates included, R_1 first).
PolyhedralFixingSet polyhedral_fixing_set(const ColoredGraph& g, const std::vector<RotationSystem>& embeddings,
                                          std::size_t cap = default_oracle_cap());

/// `rs 1` format: header, `n <N>`, `e <u> <v>` lines as in cg, then one
/// `r <v>: <u1> ... <ud>` line per vertex in cyclic order from the smallest
/// neighbor.
std::string write_rs(const RotationSystem& r);
RotationSystem parse_rs(std::string_view text);

}  // namespace canon
