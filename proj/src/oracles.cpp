#include "canon/oracles.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "canon/errors.hpp"

namespace canon {

// ---------------------------------------------------------------------------
// Automorphisms

namespace {

// Backtracking over images of 0, 1, ... in increasing order; partial maps are
// pruned only when they cannot extend to an automorphism.
class AutSearch {
 public:
  AutSearch(const ColoredGraph& g, std::span<const Vertex> fixed,
            const std::function<bool(const Labeling&)>& visit)
      : g_(g), visit_(visit), map_(g.order()), used_(g.order(), 0), forced_(g.order(), -1),
        profile_(g.order()) {
    for (Vertex f : fixed) {
      if (f >= g.order()) throw ContractViolation("fixed vertex out of range");
      forced_[f] = static_cast<long>(f);
    }
    for (Vertex v = 0; v < g.order(); ++v) {
      for (Vertex u : g.neighbors(v)) profile_[v].push_back(g.degree(u));
      std::sort(profile_[v].begin(), profile_[v].end());
    }
  }

  void run() { extend(0); }

 private:
  // Returns false once the visitor asked to stop.
  bool extend(Vertex v) {
    if (v == g_.order()) return visit_(Labeling(map_));
    for (Vertex image = 0; image < g_.order(); ++image) {
      if (used_[image]) continue;
      if (forced_[v] >= 0 && image != static_cast<Vertex>(forced_[v])) continue;
      if (forced_[image] >= 0 && image != v) continue;
      if (!compatible(v, image)) continue;
      map_[v] = image;
      used_[image] = 1;
      bool keep_going = extend(v + 1);
      used_[image] = 0;
      if (!keep_going) return false;
    }
    return true;
  }

  bool compatible(Vertex v, Vertex image) const {
    if (g_.colors(v) != g_.colors(image) || profile_[v] != profile_[image]) return false;
    for (Vertex u = 0; u < v; ++u) {
      if (g_.adjacent(u, v) != g_.adjacent(map_[u], image)) return false;
    }
    return true;
  }

  const ColoredGraph& g_;
  const std::function<bool(const Labeling&)>& visit_;
  std::vector<Vertex> map_;
  std::vector<char> used_;
  std::vector<long> forced_;
  std::vector<std::vector<std::size_t>> profile_;
};

}  // namespace

void for_each_automorphism(const ColoredGraph& g, std::span<const Vertex> fixed,
                           const std::function<bool(const Labeling&)>& visit, std::size_t cap) {
  require_within_cap(g.order(), cap, "automorphisms");
  AutSearch(g, fixed, visit).run();
}

AutomorphismGroup automorphisms(const ColoredGraph& g, std::size_t cap) {
  AutomorphismGroup group;
  for_each_automorphism(
      g, {},
      [&](const Labeling& a) {
        group.elements.push_back(a);
        return true;
      },
      cap);
  return group;
}

std::vector<std::vector<Vertex>> orbits(const ColoredGraph& g, std::size_t cap) {
  const std::size_t n = g.order();
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for_each_automorphism(
      g, {},
      [&](const Labeling& a) {
        for (Vertex v = 0; v < n; ++v) {
          Vertex x = find(v), y = find(a[v]);
          if (x != y) parent[std::max(x, y)] = std::min(x, y);
        }
        return true;
      },
      cap);
  std::vector<std::vector<Vertex>> out;
  std::vector<long> slot(n, -1);
  for (Vertex v = 0; v < n; ++v) {
    Vertex root = find(v);
    if (slot[root] < 0) {
      slot[root] = static_cast<long>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[root])].push_back(v);
  }
  return out;
}

bool is_fixing_bf(const ColoredGraph& g, std::span<const Vertex> set, std::size_t cap) {
  bool nontrivial = false;
  for_each_automorphism(
      g, set,
      [&](const Labeling& a) {
        if (!a.is_identity()) {
          nontrivial = true;
          return false;
        }
        return true;
      },
      cap);
  return !nontrivial;
}

RigidityIndex rigidity_index(const ColoredGraph& g, std::size_t cap) {
  const std::size_t n = g.order();
  require_within_cap(n, cap, "rigidity_index");
  for (std::size_t size = 0; size <= n; ++size) {
    // Lexicographic enumeration of size-subsets via a selection mask.
    std::vector<char> pick(n, 0);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(size), 1);
    do {
      std::vector<Vertex> subset;
      for (Vertex v = 0; v < n; ++v) {
        if (pick[v]) subset.push_back(v);
      }
      if (is_fixing_bf(g, subset, cap)) return RigidityIndex{size, subset};
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return {};  // unreachable: the full vertex set is fixing
}

// ---------------------------------------------------------------------------
// Generators

bool Lcg64::chance(double p) {
  if (p <= 0.0) {
    next();
    return false;
  }
  const double threshold = p * 4294967296.0;
  return static_cast<double>(next()) < threshold;
}

std::vector<Vertex> Lcg64::permutation(std::size_t n) {
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), Vertex{0});
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = below(static_cast<std::uint32_t>(i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

namespace {

struct FamilyEntry {
  Family family;
  const char* name;
};

constexpr FamilyEntry kFamilies[] = {
    {Family::tree, "tree"},           {Family::path, "path"},
    {Family::cycle, "cycle"},         {Family::complete, "complete"},
    {Family::star, "star"},           {Family::k_tree, "k_tree"},
    {Family::partial_k_tree, "partial_k_tree"}, {Family::random_gnp, "random_gnp"},
    {Family::platonic, "platonic"},
};

void require_n(const FamilyParams& params, std::size_t minimum, const char* family) {
  if (params.n < minimum) {
    throw ContractViolation(std::string(family) + " needs n >= " + std::to_string(minimum));
  }
}

ColoredGraph k_tree(std::size_t n, std::size_t k, Lcg64& rng) {
  if (k < 1) throw ContractViolation("k_tree needs k >= 1");
  if (n < k + 1) throw ContractViolation("k_tree needs n >= k + 1");
  ColoredGraph g(n);
  for (Vertex u = 0; u <= k; ++u) {
    for (Vertex v = u + 1; v <= k; ++v) g.add_edge(u, v);
  }
  std::vector<std::vector<Vertex>> cliques;
  for (Vertex skip = 0; skip <= k; ++skip) {
    std::vector<Vertex> c;
    for (Vertex u = 0; u <= k; ++u) {
      if (u != skip) c.push_back(u);
    }
    cliques.push_back(std::move(c));
  }
  for (Vertex v = static_cast<Vertex>(k + 1); v < n; ++v) {
    const std::vector<Vertex> base = cliques[rng.below(static_cast<std::uint32_t>(cliques.size()))];
    for (Vertex u : base) g.add_edge(u, v);
    for (std::size_t i = 0; i < base.size(); ++i) {
      std::vector<Vertex> c = base;
      c[i] = v;
      std::sort(c.begin(), c.end());
      cliques.push_back(std::move(c));
    }
  }
  return g;
}

}  // namespace

Family parse_family(const std::string& name) {
  for (const auto& entry : kFamilies) {
    if (name == entry.name) return entry.family;
  }
  throw ParseError("unknown graph family '" + name + "'");
}

std::string family_name(Family f) {
  for (const auto& entry : kFamilies) {
    if (f == entry.family) return entry.name;
  }
  return "?";
}

ColoredGraph gen_family(Family family, const FamilyParams& params, std::uint64_t seed) {
  Lcg64 rng(seed);
  const std::size_t n = params.n;
  switch (family) {
    case Family::tree: {
      require_n(params, 1, "tree");
      ColoredGraph g(n);
      for (Vertex v = 1; v < n; ++v) g.add_edge(rng.below(v), v);
      return g;
    }
    case Family::path: {
      require_n(params, 1, "path");
      ColoredGraph g(n);
      for (Vertex v = 1; v < n; ++v) g.add_edge(v - 1, v);
      return g;
    }
    case Family::cycle: {
      require_n(params, 3, "cycle");
      ColoredGraph g(n);
      for (Vertex v = 1; v < n; ++v) g.add_edge(v - 1, v);
      g.add_edge(0, static_cast<Vertex>(n - 1));
      return g;
    }
    case Family::complete: {
      ColoredGraph g(n);
      for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
      }
      return g;
    }
    case Family::star: {
      require_n(params, 1, "star");
      ColoredGraph g(n);
      for (Vertex v = 1; v < n; ++v) g.add_edge(0, v);
      return g;
    }
    case Family::k_tree:
      return k_tree(n, params.k, rng);
    case Family::partial_k_tree: {
      ColoredGraph full = k_tree(n, params.k, rng);
      const double p = params.p.value_or(0.25);
      ColoredGraph g(n);
      for (auto [u, v] : full.edges()) {
        if (!rng.chance(p)) g.add_edge(u, v);
      }
      return g;
    }
    case Family::random_gnp: {
      const double p = params.p.value_or(0.5);
      ColoredGraph g(n);
      for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
          if (rng.chance(p)) g.add_edge(u, v);
        }
      }
      return g;
    }
    case Family::platonic: {
      if (params.name == "k4" || params.name == "tetrahedron") {
        return gen_family(Family::complete, FamilyParams{4, 0, {}, {}}, seed);
      }
      if (params.name == "cube") {
        ColoredGraph g(8);
        for (Vertex u = 0; u < 8; ++u) {
          for (Vertex bit = 1; bit < 8; bit <<= 1) {
            if (u < (u ^ bit)) g.add_edge(u, u ^ bit);
          }
        }
        return g;
      }
      if (params.name == "octahedron") {
        ColoredGraph g(6);
        for (Vertex u = 0; u < 6; ++u) {
          for (Vertex v = u + 1; v < 6; ++v) {
            if ((u ^ 1) != v) g.add_edge(u, v);
          }
        }
        return g;
      }
      throw ContractViolation("unknown platonic solid '" + params.name + "' (k4, cube, octahedron)");
    }
  }
  throw ContractViolation("unknown family");
}

ColoredGraph random_relabel(const ColoredGraph& g, std::uint64_t seed, Labeling* used) {
  Lcg64 rng(seed);
  Labeling sigma(rng.permutation(g.order()));
  ColoredGraph out = apply_permutation(g, sigma);
  if (used) *used = std::move(sigma);
  return out;
}

// ---------------------------------------------------------------------------
// Manifest

std::string format_params(Family family, const FamilyParams& params) {
  std::ostringstream out;
  if (family == Family::platonic) {
    out << "name=" << params.name;
    return out.str();
  }
  out << "n=" << params.n;
  if (family == Family::k_tree || family == Family::partial_k_tree) out << ",k=" << params.k;
  if (params.p && (family == Family::partial_k_tree || family == Family::random_gnp)) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, *params.p);
    out << ",p=" << std::string(buf, ptr);
  }
  return out.str();
}

FamilyParams parse_params(const std::string& text) {
  FamilyParams params;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("manifest: bad parameter '" + item + "'");
    std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    auto number = [&](auto& target) {
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), target);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ParseError("manifest: bad value for '" + key + "'");
      }
    };
    if (key == "n") {
      number(params.n);
    } else if (key == "k") {
      number(params.k);
    } else if (key == "p") {
      double p = 0;
      number(p);
      params.p = p;
    } else if (key == "name") {
      params.name = value;
    } else {
      throw ParseError("manifest: unknown parameter '" + key + "'");
    }
  }
  return params;
}

std::string write_manifest(std::span<const ManifestEntry> entries) {
  std::ostringstream out;
  for (const auto& e : entries) {
    out << family_name(e.family) << ' ' << format_params(e.family, e.params) << ' ' << e.seed << ' ' << e.path
        << '\n';
  }
  return out.str();
}

std::vector<ManifestEntry> parse_manifest(const std::string& text) {
  std::vector<ManifestEntry> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string family, params, seed, path, extra;
    if (!(fields >> family >> params >> seed >> path) || (fields >> extra)) {
      throw ParseError("manifest line " + std::to_string(line_no) + ": expected 4 fields");
    }
    ManifestEntry e;
    e.family = parse_family(family);
    e.params = parse_params(params);
    auto [ptr, ec] = std::from_chars(seed.data(), seed.data() + seed.size(), e.seed);
    if (ec != std::errc() || ptr != seed.data() + seed.size()) {
      throw ParseError("manifest line " + std::to_string(line_no) + ": bad seed");
    }
    e.path = path;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace canon
