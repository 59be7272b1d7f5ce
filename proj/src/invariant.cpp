#include "canon/invariant.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>

#include "canon/errors.hpp"

namespace canon {

namespace {

using Signature = std::vector<std::uint64_t>;

struct Renumbered {
  std::vector<std::uint32_t> ids;
  std::size_t class_count = 0;
};

// Assigns ids by the sorted order of the distinct signatures and appends the
// table (count, then each distinct signature with its multiplicity) to `w`.
Renumbered renumber(const std::vector<Signature>& sigs, ByteWriter& w) {
  std::vector<std::uint32_t> idx(sigs.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) { return sigs[a] < sigs[b]; });
  Renumbered out;
  out.ids.resize(sigs.size());
  std::vector<std::pair<std::size_t, std::size_t>> runs;  // (first position, length)
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i == 0 || sigs[idx[i]] != sigs[idx[i - 1]]) runs.emplace_back(i, 0);
    ++runs.back().second;
    out.ids[idx[i]] = static_cast<std::uint32_t>(runs.size() - 1);
  }
  out.class_count = runs.size();
  w.varint(runs.size());
  for (auto [first, len] : runs) {
    const Signature& s = sigs[idx[first]];
    w.varint(len);
    w.varint(s.size());
    for (std::uint64_t x : s) w.varint(x);
  }
  return out;
}

// Initial vertex colors: rank of the color set among the distinct sets.
std::vector<Signature> color_signatures(const ColoredGraph& g) {
  std::vector<Signature> sigs(g.order());
  for (Vertex v = 0; v < g.order(); ++v) sigs[v].assign(g.colors(v).begin(), g.colors(v).end());
  return sigs;
}

std::vector<std::uint32_t> color_ranks(const ColoredGraph& g) {
  std::map<ColorSet, std::uint32_t> rank;
  for (Vertex v = 0; v < g.order(); ++v) rank.emplace(g.colors(v), 0);
  std::uint32_t next = 0;
  for (auto& [set, id] : rank) id = next++;
  std::vector<std::uint32_t> out(g.order());
  for (Vertex v = 0; v < g.order(); ++v) out[v] = rank.at(g.colors(v));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// WL-1

Wl1Result wl1_refine(const ColoredGraph& g, const RefineOptions& options) {
  const std::size_t n = g.order();
  ByteWriter w;
  w.bytes("WL1");
  w.varint(n);
  Wl1Result result;
  Renumbered current = renumber(color_signatures(g), w);
  if (options.keep_history) result.history.push_back(current.ids);

  std::vector<Signature> sigs(n);
  while (!options.round_cap || result.rounds < *options.round_cap) {
    for_each_index(options.exec, n, [&](std::size_t v) {
      Signature& s = sigs[v];
      s.clear();
      s.push_back(current.ids[v]);
      for (Vertex u : g.neighbors(static_cast<Vertex>(v))) s.push_back(current.ids[u]);
      std::sort(s.begin() + 1, s.end());
    });
    ByteWriter round;
    Renumbered next = renumber(sigs, round);
    // New partition refines the old one, so equal class counts mean equal
    // partitions.
    if (next.class_count == current.class_count) break;
    w.bytes(std::move(round).finish().bytes());
    current = std::move(next);
    ++result.rounds;
    if (options.keep_history) result.history.push_back(current.ids);
  }

  // Stable quotient.
  std::vector<std::size_t> size(current.class_count, 0);
  std::vector<Vertex> rep(current.class_count, 0);
  for (Vertex v = n; v-- > 0;) {
    ++size[current.ids[v]];
    rep[current.ids[v]] = v;
  }
  w.u8(0xff);
  w.varint(current.class_count);
  for (std::size_t c = 0; c < current.class_count; ++c) {
    w.varint(c);
    w.varint(size[c]);
    std::map<std::uint32_t, std::size_t> counts;
    for (Vertex u : g.neighbors(rep[c])) ++counts[current.ids[u]];
    w.varint(counts.size());
    for (auto [cls, cnt] : counts) {
      w.varint(cls);
      w.varint(cnt);
    }
  }
  result.classes = std::move(current.ids);
  result.class_count = current.class_count;
  result.code = std::move(w).finish();
  return result;
}

// ---------------------------------------------------------------------------
// WL-k

std::size_t WlkResult::tuple_index(std::span<const Vertex> tuple) const {
  std::size_t idx = 0;
  for (Vertex x : tuple) idx = idx * n + x;
  return idx;
}

std::vector<std::uint32_t> WlkResult::diagonal_classes() const {
  std::vector<std::uint32_t> out(n);
  std::vector<Vertex> t(k);
  for (Vertex v = 0; v < n; ++v) {
    std::fill(t.begin(), t.end(), v);
    out[v] = classes[tuple_index(t)];
  }
  return out;
}

WlkResult wlk_refine(const ColoredGraph& g, std::size_t k, const RefineOptions& options) {
  if (k < 2) throw ContractViolation("wlk_refine requires k >= 2");
  const std::size_t n = g.order();
  std::size_t tuples = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (n != 0 && tuples > options.tuple_cap / n) {
      throw BackendCapacityError("wlk:" + std::to_string(k) + " on n = " + std::to_string(n) +
                                 " exceeds tuple cap " + std::to_string(options.tuple_cap));
    }
    tuples *= n;
  }
  if (n == 0) tuples = 0;

  std::vector<std::size_t> stride(k);
  for (std::size_t i = k; i-- > 0;) stride[i] = (i + 1 == k) ? 1 : stride[i + 1] * n;
  auto coordinate = [&](std::size_t t, std::size_t i) { return static_cast<Vertex>((t / stride[i]) % n); };

  ByteWriter w;
  w.bytes("WLK");
  w.varint(k);
  w.varint(n);
  WlkResult result;
  result.k = k;
  result.n = n;

  // Ordered isomorphism type: coordinate colors, then equality/adjacency of
  // every coordinate pair.
  const auto ranks = color_ranks(g);
  std::vector<Signature> sigs(tuples);
  for_each_index(options.exec, tuples, [&](std::size_t t) {
    Signature& s = sigs[t];
    s.clear();
    for (std::size_t i = 0; i < k; ++i) s.push_back(ranks[coordinate(t, i)]);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        Vertex a = coordinate(t, i), b = coordinate(t, j);
        s.push_back(a == b ? 2 : (g.adjacent(a, b) ? 1 : 0));
      }
    }
  });
  Renumbered current = renumber(sigs, w);
  if (options.keep_history) result.history.push_back(current.ids);

  while (!options.round_cap || result.rounds < *options.round_cap) {
    for_each_index(options.exec, tuples, [&](std::size_t t) {
      thread_local std::vector<std::uint32_t> items;
      thread_local std::vector<std::uint32_t> order;
      items.resize(n * k);
      order.resize(n);
      for (Vertex target = 0; target < n; ++target) {
        for (std::size_t i = 0; i < k; ++i) {
          const std::size_t replaced = t + (static_cast<std::size_t>(target) - coordinate(t, i)) * stride[i];
          items[target * k + i] = current.ids[replaced];
        }
        order[target] = target;
      }
      auto slice_less = [&](std::uint32_t a, std::uint32_t b) {
        return std::lexicographical_compare(items.begin() + a * k, items.begin() + (a + 1) * k,
                                            items.begin() + b * k, items.begin() + (b + 1) * k);
      };
      auto slice_equal = [&](std::uint32_t a, std::uint32_t b) {
        return std::equal(items.begin() + a * k, items.begin() + (a + 1) * k, items.begin() + b * k);
      };
      std::sort(order.begin(), order.end(), slice_less);
      Signature& s = sigs[t];
      s.clear();
      s.push_back(current.ids[t]);
      // Run-length form of the multiset.
      for (std::size_t a = 0; a < n;) {
        std::size_t b = a;
        while (b < n && slice_equal(order[b], order[a])) ++b;
        s.insert(s.end(), items.begin() + order[a] * k, items.begin() + (order[a] + 1) * k);
        s.push_back(b - a);
        a = b;
      }
    });
    ByteWriter round;
    Renumbered next = renumber(sigs, round);
    if (next.class_count == current.class_count) break;
    w.bytes(std::move(round).finish().bytes());
    current = std::move(next);
    ++result.rounds;
    if (options.keep_history) result.history.push_back(current.ids);
  }
  result.classes = std::move(current.ids);
  result.class_count = current.class_count;
  result.code = std::move(w).finish();
  return result;
}

// ---------------------------------------------------------------------------
// Exact minimum code

namespace {

struct SearchNode {
  std::vector<Vertex> placed;
  std::vector<std::vector<Vertex>> cells;  // ordered partition of the rest
};

class MinCodeSearch {
 public:
  explicit MinCodeSearch(const ColoredGraph& g) : g_(g), n_(g.order()), color_code_(n_), twin_rank_(n_) {
    for (Vertex v = 0; v < n_; ++v) color_code_[v] = encode_colors(g.colors(v));
    build_twin_classes();
  }

  BfCanonical run() {
    std::vector<SearchNode> frontier(1);
    if (n_ > 0) {
      std::vector<Vertex> all(n_);
      std::iota(all.begin(), all.end(), Vertex{0});
      frontier[0].cells.push_back(std::move(all));
    }
    for (std::size_t level = 0; level < n_; ++level) {
      std::vector<SearchNode> children;
      std::vector<std::vector<char>> rows;
      std::vector<char> best_row;
      bool have_best = false;
      for (const SearchNode& node : frontier) {
        std::vector<char> placed_mask(n_, 0);
        for (Vertex p : node.placed) placed_mask[p] = 1;
        for (Vertex v : node.cells.front()) {
          if (!eligible(v, placed_mask)) continue;
          SearchNode child = expand(node, v);
          std::vector<char> row = row_bits(child, v);
          if (!have_best || row < best_row) {
            best_row = row;
            have_best = true;
            children.clear();
          } else if (row != best_row) {
            continue;
          }
          children.push_back(std::move(child));
        }
      }
      frontier = std::move(children);
    }

    // Every surviving ordering has the minimal adjacency part; the colors
    // decide.
    const SearchNode* best = nullptr;
    std::string best_colors;
    for (const SearchNode& leaf : frontier) {
      std::string colors;
      for (Vertex v : leaf.placed) colors += color_code_[v];
      if (!best || colors < best_colors) {
        best = &leaf;
        best_colors = std::move(colors);
      }
    }
    Labeling labeling = Labeling::from_order(best->placed);
    return BfCanonical{encode(apply_permutation(g_, labeling)), std::move(labeling)};
  }

 private:
  // Open twins share N(v); closed twins share N[v]. Swapping two twins is an
  // automorphism of the uncolored graph, so some optimal ordering lists each
  // twin class in increasing (color code, vertex) order.
  void build_twin_classes() {
    std::map<std::vector<Vertex>, std::vector<Vertex>> open, closed;
    for (Vertex v = 0; v < n_; ++v) {
      std::vector<Vertex> nb(g_.neighbors(v).begin(), g_.neighbors(v).end());
      open[nb].push_back(v);
      nb.insert(std::upper_bound(nb.begin(), nb.end(), v), v);
      closed[nb].push_back(v);
    }
    twin_class_.assign(n_, {});
    for (auto* groups : {&open, &closed}) {
      for (auto& [key, members] : *groups) {
        if (members.size() < 2) continue;
        std::sort(members.begin(), members.end(), [&](Vertex a, Vertex b) {
          if (color_code_[a] != color_code_[b]) return color_code_[a] < color_code_[b];
          return a < b;
        });
        for (std::size_t i = 0; i < members.size(); ++i) {
          twin_class_[members[i]] = members;
          twin_rank_[members[i]] = i;
        }
      }
    }
  }

  bool eligible(Vertex v, const std::vector<char>& placed_mask) const {
    const auto& members = twin_class_[v];
    for (std::size_t i = 0; i < twin_rank_[v]; ++i) {
      if (!placed_mask[members[i]]) return false;
    }
    return true;
  }

  SearchNode expand(const SearchNode& node, Vertex v) const {
    SearchNode child;
    child.placed = node.placed;
    child.placed.push_back(v);
    for (std::size_t c = 0; c < node.cells.size(); ++c) {
      std::vector<Vertex> non, adj;
      for (Vertex u : node.cells[c]) {
        if (u == v) continue;
        (g_.adjacent(u, v) ? adj : non).push_back(u);
      }
      if (!non.empty()) child.cells.push_back(std::move(non));
      if (!adj.empty()) child.cells.push_back(std::move(adj));
    }
    return child;
  }

  // Row of the just-placed vertex v: adjacency to every later position.
  std::vector<char> row_bits(const SearchNode& child, Vertex v) const {
    std::vector<char> row;
    for (const auto& cell : child.cells) {
      for (Vertex u : cell) row.push_back(g_.adjacent(u, v) ? 1 : 0);
    }
    return row;
  }

  const ColoredGraph& g_;
  std::size_t n_;
  std::vector<std::string> color_code_;
  std::vector<std::vector<Vertex>> twin_class_;
  std::vector<std::size_t> twin_rank_;
};

}  // namespace

BfCanonical bf_canonical(const ColoredGraph& g, std::size_t cap) {
  require_within_cap(g.order(), cap, "bf_invariant");
  return MinCodeSearch(g).run();
}

CanonicalCode bf_invariant(const ColoredGraph& g, std::size_t cap) { return bf_canonical(g, cap).code; }

// ---------------------------------------------------------------------------
// Backend selection

InvariantBackend InvariantBackend::wlk(std::size_t k) {
  if (k < 2) throw ContractViolation("wlk backend requires k >= 2");
  return InvariantBackend(Kind::wlk, k);
}

InvariantBackend InvariantBackend::bf(std::size_t cap) {
  InvariantBackend b(Kind::bf, 0);
  b.oracle_cap_ = cap;
  return b;
}

InvariantBackend InvariantBackend::parse(std::string_view selector) {
  if (selector == "wl1") return wl1();
  if (selector == "bf") return bf();
  constexpr std::string_view prefix = "wlk:";
  if (selector.substr(0, prefix.size()) == prefix) {
    std::string_view digits = selector.substr(prefix.size());
    std::size_t k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty() && digits[0] != '0' && k >= 2) {
      return wlk(k);
    }
  }
  throw ParseError("invalid invariant selector '" + std::string(selector) + "' (expected wl1, wlk:<k>=2..., bf)");
}

std::string InvariantBackend::name() const {
  switch (kind_) {
    case Kind::wl1: return "wl1";
    case Kind::wlk: return "wlk:" + std::to_string(k_);
    case Kind::bf: return "bf";
  }
  return "?";
}

CanonicalCode InvariantBackend::evaluate(const ColoredGraph& g, InvariantStats* stats) const {
  if (stats) stats->calls.fetch_add(1, std::memory_order_relaxed);
  RefineOptions options;
  options.round_cap = round_cap_;
  switch (kind_) {
    case Kind::wl1: {
      auto r = wl1_refine(g, options);
      if (stats) stats->wl_rounds.fetch_add(r.rounds, std::memory_order_relaxed);
      return std::move(r.code);
    }
    case Kind::wlk: {
      auto r = wlk_refine(g, k_, options);
      if (stats) stats->wl_rounds.fetch_add(r.rounds, std::memory_order_relaxed);
      return std::move(r.code);
    }
    case Kind::bf:
      return bf_invariant(g, oracle_cap_);
  }
  return {};
}

}  // namespace canon
