#pragma once

#include <algorithm>
#include <initializer_list>
#include <numeric>
#include <vector>

#include "canon/graph.hpp"
#include "canon/oracles.hpp"

namespace canon::testing {

/// Graph from 1-based edge pairs, matching the text formats.
inline ColoredGraph graph(std::size_t n, std::initializer_list<std::pair<int, int>> edges) {
  ColoredGraph g(n);
  for (auto [u, v] : edges) g.add_edge(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
  return g;
}

inline ColoredGraph path(std::size_t n) {
  ColoredGraph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

inline ColoredGraph cycle(std::size_t n) {
  ColoredGraph g = path(n);
  g.add_edge(0, static_cast<Vertex>(n - 1));
  return g;
}

inline ColoredGraph complete(std::size_t n) {
  ColoredGraph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

inline ColoredGraph star(std::size_t leaves) {
  ColoredGraph g(leaves + 1);
  for (Vertex v = 1; v <= leaves; ++v) g.add_edge(0, v);
  return g;
}

inline ColoredGraph disjoint_union(const ColoredGraph& a, const ColoredGraph& b) {
  ColoredGraph g(a.order() + b.order());
  for (auto [u, v] : a.edges()) g.add_edge(u, v);
  const auto shift = static_cast<Vertex>(a.order());
  for (auto [u, v] : b.edges()) g.add_edge(u + shift, v + shift);
  for (Vertex v = 0; v < a.order(); ++v) g.set_colors(v, a.colors(v));
  for (Vertex v = 0; v < b.order(); ++v) g.set_colors(v + shift, b.colors(v));
  return g;
}

/// Every permutation of 0..n-1 in lexicographic order.
inline std::vector<Labeling> all_permutations(std::size_t n) {
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), Vertex{0});
  std::vector<Labeling> out;
  do {
    out.emplace_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Reference canonical code: minimum of encode over all n! relabelings.
inline CanonicalCode naive_min_code(const ColoredGraph& g) {
  CanonicalCode best;
  bool first = true;
  for (const auto& sigma : all_permutations(g.order())) {
    CanonicalCode code = encode(apply_permutation(g, sigma));
    if (first || code < best) {
      best = std::move(code);
      first = false;
    }
  }
  return best;
}

/// Reference automorphism count by checking all n! permutations.
inline std::size_t naive_automorphism_count(const ColoredGraph& g) {
  std::size_t count = 0;
  for (const auto& sigma : all_permutations(g.order())) count += apply_permutation(g, sigma) == g;
  return count;
}

/// G(n, p) sample with colors drawn from {0..palette-1} (none when palette is 0).
inline ColoredGraph random_graph(std::size_t n, double p, std::size_t palette, std::uint64_t seed) {
  Lcg64 rng(seed);
  ColoredGraph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.chance(p)) g.add_edge(u, v);
    }
  }
  if (palette > 0) {
    for (Vertex v = 0; v < n; ++v) {
      if (rng.chance(0.5)) g.add_color(v, rng.below(static_cast<std::uint32_t>(palette)));
    }
  }
  return g;
}

/// Every labeled simple graph on n vertices, by edge bitmask.
inline std::vector<ColoredGraph> all_labeled_graphs(std::size_t n) {
  std::vector<Edge> slots;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) slots.emplace_back(u, v);
  }
  std::vector<ColoredGraph> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    ColoredGraph g(n);
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (mask >> i & 1) g.add_edge(slots[i].first, slots[i].second);
    }
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace canon::testing
