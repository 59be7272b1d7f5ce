#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace canon {

/// Vertices are 0-based inside the library; text formats print them 1-based.
using Vertex = std::uint32_t;
using Color = std::uint64_t;
using ColorSet = std::vector<Color>;  // sorted, no duplicates
using Edge = std::pair<Vertex, Vertex>;

/// Size cap for the factorial-time oracles. Reads CANON_ORACLE_CAP once,
/// falling back to 10.
std::size_t default_oracle_cap();

/// Simple undirected graph on vertices 0..n-1 with a finite color set per
/// vertex. Mutators exist for construction; once shared across workers a
/// graph is treated as immutable.
class ColoredGraph {
 public:
  ColoredGraph() = default;
  explicit ColoredGraph(std::size_t n);
  ColoredGraph(std::size_t n, std::span<const Edge> edges);

  std::size_t order() const { return adjacency_.size(); }
  std::size_t size() const { return edge_count_; }

  bool adjacent(Vertex u, Vertex v) const { return matrix_[u * order() + v] != 0; }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
  const ColorSet& colors(Vertex v) const { return colors_[v]; }

  /// Edges as (u, v) with u < v, sorted.
  std::vector<Edge> edges() const;

  /// Throws ContractViolation on loops, out-of-range endpoints, or
  /// duplicate edges.
  void add_edge(Vertex u, Vertex v);
  void add_color(Vertex v, Color c);
  void set_colors(Vertex v, ColorSet colors);
  void clear_colors();

  bool has_colors() const;
  /// Largest color present anywhere, if any.
  std::optional<Color> max_color() const;

  /// Induced subgraph on `vertices` (renumbered 0.. in the given order),
  /// colors carried over.
  ColoredGraph induced(std::span<const Vertex> vertices) const;

  /// Connected components of the graph with `removed` deleted; each
  /// component sorted ascending, components ordered by smallest vertex.
  std::vector<std::vector<Vertex>> components(std::span<const Vertex> removed = {}) const;

  bool connected() const;

  friend bool operator==(const ColoredGraph& a, const ColoredGraph& b) {
    return a.adjacency_ == b.adjacency_ && a.colors_ == b.colors_;
  }

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::uint8_t> matrix_;
  std::vector<ColorSet> colors_;
  std::size_t edge_count_ = 0;
};

/// Bijection from the vertex set onto positions {0..n-1}.
class Labeling {
 public:
  Labeling() = default;
  /// Throws InvalidLabeling unless `mapping` is a permutation of 0..n-1.
  explicit Labeling(std::vector<Vertex> mapping);

  static Labeling identity(std::size_t n);
  /// Labeling that places `order[i]` at position i.
  static Labeling from_order(std::span<const Vertex> order);

  std::size_t size() const { return mapping_.size(); }
  Vertex operator[](Vertex v) const { return mapping_[v]; }
  std::span<const Vertex> mapping() const { return mapping_; }

  Labeling inverse() const;
  /// (*this)(other(v)); apply `other` first.
  Labeling after(const Labeling& other) const;
  bool is_identity() const;

  friend auto operator<=>(const Labeling&, const Labeling&) = default;

 private:
  std::vector<Vertex> mapping_;
};

/// Byte string totally ordered by length first, then bytes.
class CanonicalCode {
 public:
  CanonicalCode() = default;
  explicit CanonicalCode(std::string bytes) : bytes_(std::move(bytes)) {}

  const std::string& bytes() const { return bytes_; }
  std::size_t length() const { return bytes_.size(); }
  std::string hex() const;

  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
  friend std::strong_ordering operator<=>(const CanonicalCode& a, const CanonicalCode& b) {
    if (auto c = a.bytes_.size() <=> b.bytes_.size(); c != 0) return c;
    int r = a.bytes_.compare(b.bytes_);
    return r < 0 ? std::strong_ordering::less
                 : r > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  std::string bytes_;
};

/// Append-only big-endian byte sink used by every code producer.
class ByteWriter {
 public:
  void u8(std::uint8_t b) { out_.push_back(static_cast<char>(b)); }
  void u32(std::uint32_t x);
  void u64(std::uint64_t x);
  void varint(std::uint64_t x);
  void bytes(const std::string& s) { out_ += s; }
  CanonicalCode finish() && { return CanonicalCode(std::move(out_)); }

 private:
  std::string out_;
};

/// G^σ: {σ(u), σ(v)} is an edge iff {u, v} is, and σ(v) carries v's colors.
ColoredGraph apply_permutation(const ColoredGraph& g, const Labeling& sigma);

/// Injective encoding of a labeled colored graph: n, the upper-triangle
/// adjacency bits row-major (MSB first, zero padded), then per vertex its
/// sorted colors each as 0x01 + 8 bytes, closed by 0x00.
CanonicalCode encode(const ColoredGraph& g);

/// Color-set encoding used by encode(); prefix-free across vertices.
std::string encode_colors(const ColorSet& colors);

/// Lexicographically first color- and adjacency-preserving bijection
/// g -> h, if any.
std::optional<Labeling> are_isomorphic_bf(const ColoredGraph& g, const ColoredGraph& h,
                                          std::size_t cap = default_oracle_cap());

void require_within_cap(std::size_t n, std::size_t cap, const char* what);

}  // namespace canon
