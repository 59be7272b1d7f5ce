#include "canon/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

#include "canon/errors.hpp"

namespace canon {

std::size_t default_oracle_cap() {
  static const std::size_t cap = [] {
    if (const char* env = std::getenv("CANON_ORACLE_CAP")) {
      char* end = nullptr;
      unsigned long v = std::strtoul(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return std::size_t{10};
  }();
  return cap;
}

void require_within_cap(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap) {
    throw OracleCapacityError(std::string(what) + ": n = " + std::to_string(n) +
                              " exceeds oracle cap " + std::to_string(cap));
  }
}

// ---------------------------------------------------------------------------
// ColoredGraph

ColoredGraph::ColoredGraph(std::size_t n) : adjacency_(n), matrix_(n * n, 0), colors_(n) {}

ColoredGraph::ColoredGraph(std::size_t n, std::span<const Edge> edges) : ColoredGraph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void ColoredGraph::add_edge(Vertex u, Vertex v) {
  const std::size_t n = order();
  if (u >= n || v >= n) throw ContractViolation("edge endpoint out of range");
  if (u == v) throw ContractViolation("loops are not allowed");
  if (adjacent(u, v)) throw ContractViolation("duplicate edge");
  matrix_[u * n + v] = matrix_[v * n + u] = 1;
  auto insert_sorted = [](std::vector<Vertex>& list, Vertex x) {
    list.insert(std::upper_bound(list.begin(), list.end(), x), x);
  };
  insert_sorted(adjacency_[u], v);
  insert_sorted(adjacency_[v], u);
  ++edge_count_;
}

void ColoredGraph::add_color(Vertex v, Color c) {
  auto& set = colors_.at(v);
  auto it = std::lower_bound(set.begin(), set.end(), c);
  if (it == set.end() || *it != c) set.insert(it, c);
}

void ColoredGraph::set_colors(Vertex v, ColorSet colors) {
  std::sort(colors.begin(), colors.end());
  colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
  colors_.at(v) = std::move(colors);
}

void ColoredGraph::clear_colors() {
  for (auto& c : colors_) c.clear();
}

bool ColoredGraph::has_colors() const {
  return std::any_of(colors_.begin(), colors_.end(), [](const ColorSet& c) { return !c.empty(); });
}

std::optional<Color> ColoredGraph::max_color() const {
  std::optional<Color> best;
  for (const auto& set : colors_) {
    if (!set.empty() && (!best || set.back() > *best)) best = set.back();
  }
  return best;
}

std::vector<Edge> ColoredGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < order(); ++u) {
    for (Vertex v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

ColoredGraph ColoredGraph::induced(std::span<const Vertex> vertices) const {
  ColoredGraph sub(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    sub.colors_[i] = colors_[vertices[i]];
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (adjacent(vertices[i], vertices[j])) {
        sub.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
      }
    }
  }
  return sub;
}

std::vector<std::vector<Vertex>> ColoredGraph::components(std::span<const Vertex> removed) const {
  const std::size_t n = order();
  std::vector<char> blocked(n, 0);
  for (Vertex x : removed) blocked[x] = 1;
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> stack;
  for (Vertex start = 0; start < n; ++start) {
    if (blocked[start]) continue;
    std::vector<Vertex> comp;
    blocked[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex w : adjacency_[v]) {
        if (!blocked[w]) {
          blocked[w] = 1;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool ColoredGraph::connected() const { return components().size() <= 1; }

// ---------------------------------------------------------------------------
// Labeling

Labeling::Labeling(std::vector<Vertex> mapping) : mapping_(std::move(mapping)) {
  std::vector<char> seen(mapping_.size(), 0);
  for (Vertex image : mapping_) {
    if (image >= mapping_.size() || seen[image]) {
      throw InvalidLabeling("labeling is not a bijection onto {1.." +
                            std::to_string(mapping_.size()) + "}");
    }
    seen[image] = 1;
  }
}

Labeling Labeling::identity(std::size_t n) {
  std::vector<Vertex> m(n);
  std::iota(m.begin(), m.end(), Vertex{0});
  return Labeling(std::move(m));
}

Labeling Labeling::from_order(std::span<const Vertex> order) {
  std::vector<Vertex> m(order.size(), static_cast<Vertex>(order.size()));
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] >= order.size()) throw InvalidLabeling("order entry out of range");
    m[order[i]] = static_cast<Vertex>(i);
  }
  return Labeling(std::move(m));
}

Labeling Labeling::inverse() const {
  std::vector<Vertex> inv(mapping_.size());
  for (std::size_t v = 0; v < mapping_.size(); ++v) inv[mapping_[v]] = static_cast<Vertex>(v);
  return Labeling(std::move(inv));
}

Labeling Labeling::after(const Labeling& other) const {
  if (other.size() != size()) throw InvalidLabeling("composing labelings of different sizes");
  std::vector<Vertex> m(size());
  for (std::size_t v = 0; v < size(); ++v) m[v] = mapping_[other.mapping_[v]];
  return Labeling(std::move(m));
}

bool Labeling::is_identity() const {
  for (std::size_t v = 0; v < mapping_.size(); ++v) {
    if (mapping_[v] != v) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Codes

std::string CanonicalCode::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes_.size() * 2);
  for (unsigned char c : bytes_) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

void ByteWriter::u32(std::uint32_t x) {
  for (int shift = 24; shift >= 0; shift -= 8) u8(static_cast<std::uint8_t>(x >> shift));
}

void ByteWriter::u64(std::uint64_t x) {
  for (int shift = 56; shift >= 0; shift -= 8) u8(static_cast<std::uint8_t>(x >> shift));
}

void ByteWriter::varint(std::uint64_t x) {
  while (x >= 0x80) {
    u8(static_cast<std::uint8_t>(x | 0x80));
    x >>= 7;
  }
  u8(static_cast<std::uint8_t>(x));
}

std::string encode_colors(const ColorSet& colors) {
  std::string out;
  out.reserve(colors.size() * 9 + 1);
  for (Color c : colors) {
    out.push_back('\x01');
    for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<char>(c >> shift));
  }
  out.push_back('\0');
  return out;
}

CanonicalCode encode(const ColoredGraph& g) {
  const std::size_t n = g.order();
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(n));
  std::uint8_t acc = 0;
  int filled = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      acc = static_cast<std::uint8_t>((acc << 1) | (g.adjacent(u, v) ? 1 : 0));
      if (++filled == 8) {
        w.u8(acc);
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) w.u8(static_cast<std::uint8_t>(acc << (8 - filled)));
  for (Vertex v = 0; v < n; ++v) w.bytes(encode_colors(g.colors(v)));
  return std::move(w).finish();
}

ColoredGraph apply_permutation(const ColoredGraph& g, const Labeling& sigma) {
  const std::size_t n = g.order();
  if (sigma.size() != n) throw InvalidLabeling("labeling size does not match graph order");
  ColoredGraph out(n);
  for (auto [u, v] : g.edges()) out.add_edge(sigma[u], sigma[v]);
  for (Vertex v = 0; v < n; ++v) out.set_colors(sigma[v], g.colors(v));
  return out;
}

// ---------------------------------------------------------------------------
// Brute-force isomorphism

namespace {

class IsoSearch {
 public:
  IsoSearch(const ColoredGraph& g, const ColoredGraph& h)
      : g_(g), h_(h), map_(g.order()), used_(g.order(), 0) {}

  bool run() { return extend(0); }
  std::vector<Vertex> mapping() && { return std::move(map_); }

 private:
  bool extend(Vertex v) {
    if (v == g_.order()) return true;
    for (Vertex image = 0; image < h_.order(); ++image) {
      if (used_[image] || !compatible(v, image)) continue;
      map_[v] = image;
      used_[image] = 1;
      if (extend(v + 1)) return true;
      used_[image] = 0;
    }
    return false;
  }

  bool compatible(Vertex v, Vertex image) const {
    if (g_.degree(v) != h_.degree(image) || g_.colors(v) != h_.colors(image)) return false;
    for (Vertex u = 0; u < v; ++u) {
      if (g_.adjacent(u, v) != h_.adjacent(map_[u], image)) return false;
    }
    return true;
  }

  const ColoredGraph& g_;
  const ColoredGraph& h_;
  std::vector<Vertex> map_;
  std::vector<char> used_;
};

}  // namespace

std::optional<Labeling> are_isomorphic_bf(const ColoredGraph& g, const ColoredGraph& h,
                                          std::size_t cap) {
  if (g.order() != h.order()) return std::nullopt;
  require_within_cap(g.order(), cap, "are_isomorphic_bf");
  if (g.size() != h.size()) return std::nullopt;
  IsoSearch search(g, h);
  if (!search.run()) return std::nullopt;
  return Labeling(std::move(search).mapping());
}

}  // namespace canon
