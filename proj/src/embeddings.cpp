#include "canon/embeddings.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "canon/errors.hpp"
#include "canon/graph_io.hpp"
#include "canon/oracles.hpp"

namespace canon {

namespace {

ColoredGraph strip_colors(const ColoredGraph& g) {
  ColoredGraph out = g;
  out.clear_colors();
  return out;
}

void require_valid(const RotationSystem& r, const char* what) {
  auto v = r.validate();
  if (!v.ok) throw ContractViolation(std::string(what) + ": invalid rotation system: " + v.reason);
}

void require_connected(const RotationSystem& r, const char* what) {
  if (!r.graph().connected()) {
    throw UnsupportedInput(std::string(what) + ": disconnected graphs have no cellular embedding");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// RotationSystem

RotationSystem RotationSystem::from_orders(const ColoredGraph& graph, const std::vector<std::vector<Vertex>>& orders) {
  if (orders.size() != graph.order()) throw ContractViolation("one cyclic order per vertex required");
  RotationSystem r;
  r.graph_ = strip_colors(graph);
  r.succ_.resize(graph.order());
  for (Vertex a = 0; a < graph.order(); ++a) {
    const auto& order = orders[a];
    for (std::size_t i = 0; i < order.size(); ++i) r.succ_[a][order[i]] = order[(i + 1) % order.size()];
  }
  return r;
}

RotationSystem RotationSystem::from_triples(const ColoredGraph& graph,
                                            const std::vector<std::tuple<Vertex, Vertex, Vertex>>& triples) {
  RotationSystem r;
  r.graph_ = strip_colors(graph);
  r.succ_.resize(graph.order());
  for (auto [a, b, c] : triples) {
    if (a >= graph.order()) throw ContractViolation("triple vertex out of range");
    r.succ_[a][b] = c;
  }
  return r;
}

Vertex RotationSystem::succ(Vertex a, Vertex b) const {
  auto it = succ_.at(a).find(b);
  if (it == succ_[a].end()) throw ContractViolation("no successor defined");
  return it->second;
}

bool RotationSystem::holds(Vertex a, Vertex b, Vertex c) const {
  auto it = succ_.at(a).find(b);
  return it != succ_[a].end() && it->second == c;
}

std::vector<Vertex> RotationSystem::cyclic_order(Vertex a) const {
  std::vector<Vertex> order;
  auto nb = graph_.neighbors(a);
  if (nb.empty()) return order;
  Vertex x = nb.front();
  do {
    order.push_back(x);
    x = succ(a, x);
  } while (x != nb.front() && order.size() <= nb.size());
  return order;
}

RotationSystem::Validation RotationSystem::validate() const {
  auto fail = [](std::string reason) { return Validation{false, std::move(reason)}; };
  if (succ_.size() != graph_.order()) return fail("relation does not cover every vertex");
  for (Vertex a = 0; a < graph_.order(); ++a) {
    const auto nb = graph_.neighbors(a);
    const auto& rel = succ_[a];
    const std::string at = " at vertex " + std::to_string(a + 1);
    for (auto [b, c] : rel) {
      if (!graph_.adjacent(a, b) || !graph_.adjacent(a, c)) return fail("triple leaves the neighborhood" + at);
    }
    if (rel.size() != nb.size()) return fail("not every neighbor has a successor" + at);
    std::set<Vertex> images;
    for (auto [b, c] : rel) images.insert(c);
    if (images.size() != nb.size()) return fail("successor map is not a bijection" + at);
    if (nb.empty()) continue;
    std::size_t length = 0;
    Vertex x = nb.front();
    do {
      x = rel.at(x);
      ++length;
    } while (x != nb.front());
    if (length != nb.size()) return fail("successor map splits into several cycles" + at);
  }
  return {};
}

bool validate_rotation_system(const RotationSystem& r, std::string* reason) {
  auto v = r.validate();
  if (reason) *reason = v.reason;
  return v.ok;
}

RotationSystem conjugate(const RotationSystem& r) {
  std::vector<std::tuple<Vertex, Vertex, Vertex>> triples;
  for (Vertex a = 0; a < r.graph().order(); ++a) {
    for (auto [b, c] : r.relation_at(a)) triples.emplace_back(a, c, b);
  }
  return RotationSystem::from_triples(r.graph(), triples);
}

// ---------------------------------------------------------------------------
// Faces

std::vector<FacialWalk> trace_faces(const RotationSystem& r) {
  require_valid(r, "trace_faces");
  require_connected(r, "trace_faces");
  const ColoredGraph& g = r.graph();
  if (g.order() == 1) return {FacialWalk{{}, {0}}};

  std::set<Edge> unused;
  for (auto [u, v] : g.edges()) {
    unused.emplace(u, v);
    unused.emplace(v, u);
  }
  std::vector<FacialWalk> walks;
  while (!unused.empty()) {
    const Edge start = *unused.begin();
    FacialWalk walk;
    Edge arc = start;
    do {
      unused.erase(arc);
      walk.arcs.push_back(arc);
      walk.vertices.push_back(arc.first);
      arc = Edge{arc.second, r.succ(arc.second, arc.first)};
    } while (arc != start);
    // `start` is the smallest arc still unused, hence the smallest of this walk.
    walks.push_back(std::move(walk));
  }
  return walks;
}

std::size_t euler_genus(const RotationSystem& r) {
  const auto faces = trace_faces(r);
  const long long v = static_cast<long long>(r.graph().order());
  const long long e = static_cast<long long>(r.graph().size());
  const long long f = static_cast<long long>(faces.size());
  const long long twice = 2 - v + e - f;
  if (twice < 0 || twice % 2 != 0) {
    throw Error("face tracing produced a non-integral genus (2 - V + E - F = " + std::to_string(twice) + ")");
  }
  return static_cast<std::size_t>(twice / 2);
}

bool is_polyhedral(const RotationSystem& r) {
  const auto faces = trace_faces(r);
  std::vector<std::set<Vertex>> vertex_sets;
  std::vector<std::set<Edge>> edge_sets;
  for (const auto& walk : faces) {
    std::set<Vertex> vs(walk.vertices.begin(), walk.vertices.end());
    if (walk.arcs.size() < 3 || vs.size() != walk.vertices.size()) return false;
    std::set<Edge> es;
    for (auto [u, v] : walk.arcs) es.emplace(std::min(u, v), std::max(u, v));
    vertex_sets.push_back(std::move(vs));
    edge_sets.push_back(std::move(es));
  }
  for (std::size_t i = 0; i < faces.size(); ++i) {
    for (std::size_t j = i + 1; j < faces.size(); ++j) {
      std::vector<Vertex> common;
      std::set_intersection(vertex_sets[i].begin(), vertex_sets[i].end(), vertex_sets[j].begin(),
                            vertex_sets[j].end(), std::back_inserter(common));
      if (common.size() <= 1) continue;
      if (common.size() > 2) return false;
      const Edge shared{common[0], common[1]};
      if (!edge_sets[i].count(shared) || !edge_sets[j].count(shared)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Relabeling and equivalence

RotationSystem rotation_image(const RotationSystem& r, const Labeling& alpha) {
  const ColoredGraph& g = r.graph();
  if (alpha.size() != g.order() || apply_permutation(g, alpha) != g) {
    throw ContractViolation("rotation_image: mapping is not an automorphism of the graph");
  }
  std::vector<std::tuple<Vertex, Vertex, Vertex>> triples;
  for (Vertex a = 0; a < g.order(); ++a) {
    for (auto [b, c] : r.relation_at(a)) triples.emplace_back(alpha[a], alpha[b], alpha[c]);
  }
  return RotationSystem::from_triples(g, triples);
}

bool equivalent_embeddings(const RotationSystem& a, const RotationSystem& b) {
  if (!(a.graph() == b.graph())) throw ContractViolation("equivalent_embeddings: different underlying graphs");
  return a == b || a == conjugate(b);
}

bool is_faithful(const RotationSystem& r, std::size_t cap) {
  bool faithful = true;
  for_each_automorphism(
      r.graph(), {},
      [&](const Labeling& alpha) {
        faithful = equivalent_embeddings(rotation_image(r, alpha), r);
        return faithful;
      },
      cap);
  return faithful;
}

// ---------------------------------------------------------------------------
// Fixing sets from embeddings

FixingTriple fixing_triple(const RotationSystem& r, std::size_t cap) {
  require_valid(r, "fixing_triple");
  require_connected(r, "fixing_triple");
  const ColoredGraph& g = r.graph();
  const std::size_t n = g.order();
  FixingTriple out;

  std::optional<Vertex> branch;
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) >= 3) {
      branch = v;
      break;
    }
  }
  if (!branch) {
    // Path or cycle: an end (or any vertex) plus one neighbor.
    out.degenerate = true;
    Vertex start = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (g.degree(v) == 1) {
        start = v;
        break;
      }
    }
    out.vertices.push_back(start);
    if (g.degree(start) > 0) out.vertices.push_back(g.neighbors(start).front());
  } else {
    // Face tracing continues arc (u -> v) with (v -> succ(v, u)), so u v w is
    // a segment of the facial walk through that arc; w != u since deg v >= 3.
    const Vertex v = *branch;
    const Vertex u = g.neighbors(v).front();
    const Vertex w = r.succ(v, u);
    out.vertices = {u, v, w};
  }
  std::sort(out.vertices.begin(), out.vertices.end());

  if (n <= cap) {
    out.faithful = is_faithful(r, cap);
    out.verified = is_fixing_bf(g, out.vertices, cap);
    if (!*out.faithful) out.warning = "rotation system is not faithful; the triple is not guaranteed to be fixing";
  } else {
    out.warning = "graph above oracle cap; faithfulness and fixing property not checked";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

std::uint64_t factorial(std::size_t k) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= k; ++i) f *= i;
  return f;
}

// index-th permutation (lexicographic) of `items`.
std::vector<Vertex> nth_permutation(std::vector<Vertex> items, std::uint64_t index) {
  std::vector<Vertex> out;
  while (!items.empty()) {
    const std::uint64_t block = factorial(items.size() - 1);
    const std::size_t pick = static_cast<std::size_t>(index / block);
    index %= block;
    out.push_back(items[pick]);
    items.erase(items.begin() + static_cast<long>(pick));
  }
  return out;
}

}  // namespace

std::uint64_t rotation_system_count(const ColoredGraph& g) {
  std::uint64_t count = 1;
  for (Vertex v = 0; v < g.order(); ++v) {
    const std::size_t d = g.degree(v);
    const std::uint64_t f = factorial(d == 0 ? 0 : d - 1);
    if (f != 0 && count > UINT64_MAX / f) return UINT64_MAX;
    count *= f;
  }
  return count;
}

RotationSystem rotation_system_at(const ColoredGraph& g, std::uint64_t index) {
  const std::size_t n = g.order();
  std::vector<std::vector<Vertex>> orders(n);
  for (Vertex v = static_cast<Vertex>(n); v-- > 0;) {
    auto nb = g.neighbors(v);
    if (nb.empty()) continue;
    const std::uint64_t radix = factorial(nb.size() - 1);
    std::vector<Vertex> tail(nb.begin() + 1, nb.end());
    orders[v].push_back(nb.front());
    for (Vertex x : nth_permutation(tail, index % radix)) orders[v].push_back(x);
    index /= radix;
  }
  return RotationSystem::from_orders(g, orders);
}

void for_each_rotation_system(const ColoredGraph& g, const std::function<bool(const RotationSystem&)>& visit,
                              std::uint64_t cap) {
  const std::uint64_t count = rotation_system_count(g);
  if (count > cap) {
    throw OracleCapacityError("graph has " + std::to_string(count) + " rotation systems, above cap " +
                              std::to_string(cap));
  }
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!visit(rotation_system_at(g, i))) return;
  }
}

std::vector<RotationSystem> enumerate_rotation_systems(const ColoredGraph& g, std::uint64_t cap) {
  std::vector<RotationSystem> out;
  for_each_rotation_system(
      g,
      [&](const RotationSystem& r) {
        out.push_back(r);
        return true;
      },
      cap);
  return out;
}

std::vector<RotationSystem> polyhedral_embeddings(const ColoredGraph& g, std::optional<std::size_t> genus,
                                                  std::uint64_t cap) {
  if (!g.connected()) return {};
  std::map<std::size_t, std::vector<RotationSystem>> by_genus;
  for_each_rotation_system(
      g,
      [&](const RotationSystem& r) {
        if (is_polyhedral(r)) by_genus[euler_genus(r)].push_back(r);
        return true;
      },
      cap);
  if (by_genus.empty()) return {};
  if (!genus) return by_genus.begin()->second;
  auto it = by_genus.find(*genus);
  return it == by_genus.end() ? std::vector<RotationSystem>{} : it->second;
}

RotationSystem planar_rotation_system(const ColoredGraph& g) {
  std::optional<RotationSystem> found;
  for_each_rotation_system(g, [&](const RotationSystem& r) {
    if (euler_genus(r) == 0) {
      found = r;
      return false;
    }
    return true;
  });
  if (!found) throw UnsupportedInput("graph has no planar rotation system");
  return *found;
}

PolyhedralFixingSet polyhedral_fixing_set(const ColoredGraph& g, const std::vector<RotationSystem>& embeddings,
                                          std::size_t cap) {
  if (embeddings.empty()) throw NoPolyhedralEmbedding("no polyhedral embeddings supplied");
  const ColoredGraph plain = strip_colors(g);
  if (!plain.connected() || plain.size() == 0) throw UnsupportedInput("polyhedral_fixing_set needs a connected graph");
  const std::size_t genus = euler_genus(embeddings.front());
  for (const auto& r : embeddings) {
    if (!(r.graph() == plain)) throw ContractViolation("embedding of a different graph supplied");
    require_valid(r, "polyhedral_fixing_set");
    if (!is_polyhedral(r)) throw ContractViolation("non-polyhedral rotation system supplied");
    if (euler_genus(r) != genus) throw ContractViolation("embeddings of different genus supplied");
  }
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    const RotationSystem conj = conjugate(embeddings[i]);
    bool has_conjugate = false;
    for (std::size_t j = 0; j < embeddings.size(); ++j) {
      if (j != i && embeddings[j] == embeddings[i]) throw ContractViolation("duplicate rotation system supplied");
      if (embeddings[j] == conj) has_conjugate = true;
    }
    if (!has_conjugate) throw ContractViolation("rotation system list is not closed under conjugation");
  }

  PolyhedralFixingSet out;
  out.c = embeddings.size() / 2;
  out.base_edge = plain.edges().front();
  const auto [x, y] = out.base_edge;

  // Vertices in nondecreasing distance from x.
  std::vector<Vertex> by_distance;
  {
    std::vector<char> seen(plain.order(), 0);
    std::deque<Vertex> queue{x};
    seen[x] = 1;
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop_front();
      by_distance.push_back(v);
      for (Vertex w : plain.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
  }

  const RotationSystem& first = embeddings.front();
  std::set<Vertex> set{x, y};
  for (std::size_t i = 1; i < embeddings.size(); ++i) {
    const RotationSystem& other = embeddings[i];
    for (Vertex xi : by_distance) {
      if (first.relation_at(xi) == other.relation_at(xi)) continue;
      for (Vertex yi : plain.neighbors(xi)) {
        const Vertex zi = first.succ(xi, yi);
        if (!other.holds(xi, yi, zi)) {
          out.witnesses.emplace_back(xi, yi, zi);
          set.insert(yi);
          set.insert(zi);
          break;
        }
      }
      break;
    }
  }
  out.vertices.assign(set.begin(), set.end());
  if (plain.order() <= cap) out.verified = is_fixing_bf(plain, out.vertices, cap);
  return out;
}

// ---------------------------------------------------------------------------
// rs format

std::string write_rs(const RotationSystem& r) {
  require_valid(r, "write_rs");
  std::ostringstream out;
  const ColoredGraph& g = r.graph();
  out << "rs 1\n" << "n " << g.order() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  for (Vertex v = 0; v < g.order(); ++v) {
    out << "r " << v + 1 << ':';
    for (Vertex u : r.cyclic_order(v)) out << ' ' << u + 1;
    out << '\n';
  }
  return out.str();
}

RotationSystem parse_rs(std::string_view text) {
  // Split off the rotation lines and reuse the cg parser for the graph part.
  std::string graph_text;
  std::vector<std::string> rotation_lines;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line_no == 1) {
      if (line != "rs 1") throw ParseError("rs: missing 'rs 1' header");
      graph_text += "cg 1\n";
    } else if (line.rfind("r ", 0) == 0) {
      rotation_lines.push_back(line);
    } else {
      if (!rotation_lines.empty()) throw ParseError("rs: line " + std::to_string(line_no) + " after rotation lines");
      graph_text += line + "\n";
    }
  }
  if (line_no == 0) throw ParseError("rs: empty input");
  ColoredGraph g = parse_cg(graph_text);
  if (g.has_colors()) throw ParseError("rs: color lines are not allowed");
  if (rotation_lines.size() != g.order()) throw ParseError("rs: expected one rotation line per vertex");

  std::vector<std::vector<Vertex>> orders(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    const std::string& line = rotation_lines[v];
    const std::string prefix = "r " + std::to_string(v + 1) + ":";
    if (line.rfind(prefix, 0) != 0) throw ParseError("rs: expected '" + prefix + "'");
    std::istringstream fields(line.substr(prefix.size()));
    if (line.size() > prefix.size() && line[prefix.size()] != ' ') throw ParseError("rs: bad rotation line");
    std::string token;
    while (fields >> token) {
      std::size_t used = 0;
      unsigned long u = 0;
      try {
        u = std::stoul(token, &used);
      } catch (const std::exception&) {
        throw ParseError("rs: bad vertex '" + token + "'");
      }
      if (used != token.size() || u < 1 || u > g.order()) throw ParseError("rs: bad vertex '" + token + "'");
      orders[v].push_back(static_cast<Vertex>(u - 1));
    }
    std::vector<Vertex> listed = orders[v];
    std::sort(listed.begin(), listed.end());
    auto nb = g.neighbors(v);
    if (!std::equal(listed.begin(), listed.end(), nb.begin(), nb.end())) {
      throw ParseError("rs: rotation at vertex " + std::to_string(v + 1) + " must list each neighbor once");
    }
    if (!nb.empty() && orders[v].front() != nb.front()) {
      throw ParseError("rs: rotation at vertex " + std::to_string(v + 1) + " must start at its smallest neighbor");
    }
  }
  return RotationSystem::from_orders(g, orders);
}

}  // namespace canon
