#include "canon/separator.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "canon/errors.hpp"

namespace canon {

SeparatorRun SeparatorRun::start(const ColoredGraph& g, std::size_t r) {
  if (r < 1 || r > 40) throw ContractViolation("separator size r must be in 1..40");
  SeparatorRun run;
  run.r = r;
  run.block_width = (std::uint64_t{1} << r) + r;
  auto top = g.max_color();
  run.color_base = top ? *top + 1 : 0;
  run.depth = 1;
  return run;
}

SeparatorRun SeparatorRun::deeper() const {
  SeparatorRun next = *this;
  ++next.depth;
  return next;
}

Color SeparatorRun::sequence_color(std::size_t i) const { return block_begin() + i; }

Color SeparatorRun::pattern_color(std::uint64_t mask) const { return block_begin() + r + 1 + mask; }

bool is_separator(const ColoredGraph& g, std::span<const Vertex> x) {
  const std::size_t n = g.order();
  for (const auto& comp : g.components(x)) {
    if (2 * comp.size() > n) return false;
  }
  return true;
}

std::vector<std::vector<Vertex>> mark_separating_sequences(const ColoredGraph& g, std::size_t r,
                                                           const Exec& exec) {
  const std::size_t n = g.order();
  if (r > n) return {};
  std::vector<std::vector<Vertex>> subsets;
  std::vector<char> pick(n, 0);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(r), 1);
  do {
    std::vector<Vertex> subset;
    for (Vertex v = 0; v < n; ++v) {
      if (pick[v]) subset.push_back(v);
    }
    subsets.push_back(std::move(subset));
  } while (std::prev_permutation(pick.begin(), pick.end()));

  auto separating = map_indices<char>(exec, subsets.size(),
                                      [&](std::size_t i) { return static_cast<char>(is_separator(g, subsets[i])); });
  std::vector<std::vector<Vertex>> out;
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if (!separating[i]) continue;
    std::vector<Vertex> seq = subsets[i];
    do {
      out.push_back(seq);
    } while (std::next_permutation(seq.begin(), seq.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

ColoredGraph color_sequence(const ColoredGraph& g, std::span<const Vertex> s, const SeparatorRun& run) {
  ColoredGraph out = g;
  for (std::size_t i = 0; i < s.size(); ++i) out.add_color(s[i], run.sequence_color(i + 1));
  return out;
}

std::vector<Flap> decompose_flaps(const ColoredGraph& g, std::span<const Vertex> s, const SeparatorRun& run) {
  if (!is_separator(g, s)) throw ContractViolation("decompose_flaps: sequence is not a separator");
  std::vector<Flap> flaps;
  for (auto& comp : g.components(s)) {
    Flap flap;
    flap.graph = g.induced(comp);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      std::uint64_t mask = 0;
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (g.adjacent(comp[i], s[j])) mask |= std::uint64_t{1} << j;
      }
      flap.graph.add_color(static_cast<Vertex>(i), run.pattern_color(mask));
    }
    flap.origin = std::move(comp);
    flaps.push_back(std::move(flap));
  }
  return flaps;
}

bool CanonResult::found_separators_everywhere() const {
  return std::none_of(diagnostics.begin(), diagnostics.end(),
                      [](const Diagnostic& d) { return d.kind == Diagnostic::Kind::no_separator; });
}

namespace {

struct ScopeOrder {
  std::vector<Vertex> order;  // scope vertices, canonical order
  std::size_t depth = 0;
  std::vector<Diagnostic> diagnostics;
};

class SeparatorCanonizer {
 public:
  SeparatorCanonizer(const InvariantBackend& f, const CanonOptions& options) : f_(f), options_(options) {}

  ScopeOrder scope(const ColoredGraph& g, const SeparatorRun& run) const {
    if (g.order() <= run.r) return base_case(g, run);

    const auto sequences = mark_separating_sequences(g, run.r, options_.exec);
    if (sequences.empty()) {
      ScopeOrder out;
      out.order.resize(g.order());
      std::iota(out.order.begin(), out.order.end(), Vertex{0});
      out.depth = run.depth;
      out.diagnostics.push_back({Diagnostic::Kind::no_separator,
                                 "no " + std::to_string(run.r) + "-vertex separator at depth " +
                                     std::to_string(run.depth) + " (n = " + std::to_string(g.order()) +
                                     "); identity order used"});
      return out;
    }

    auto codes = map_indices<CanonicalCode>(options_.exec, sequences.size(), [&](std::size_t i) {
      return f_.evaluate(color_sequence(g, sequences[i], run), options_.stats);
    });
    // Sequences are already lexicographic, so the first minimum breaks ties.
    const std::size_t best = static_cast<std::size_t>(std::min_element(codes.begin(), codes.end()) - codes.begin());
    const std::vector<Vertex>& s = sequences[best];

    auto flaps = decompose_flaps(g, s, run);
    auto flap_codes = map_indices<CanonicalCode>(
        options_.exec, flaps.size(), [&](std::size_t i) { return f_.evaluate(flaps[i].graph, options_.stats); });
    std::vector<std::size_t> rank(flaps.size());
    std::iota(rank.begin(), rank.end(), std::size_t{0});
    // Components come out ordered by smallest vertex, so a stable sort on the
    // code realizes the (code, smallest vertex) tie-break.
    std::stable_sort(rank.begin(), rank.end(),
                     [&](std::size_t a, std::size_t b) { return flap_codes[a] < flap_codes[b]; });

    ScopeOrder out;
    out.depth = run.depth;
    if (options_.cross_check) check_equal_code_flaps(flaps, flap_codes, rank, run, out.diagnostics);

    const SeparatorRun child_run = run.deeper();
    auto children = map_indices<ScopeOrder>(options_.exec, flaps.size(), [&](std::size_t i) {
      const auto& flap = flaps[rank[i]];
      return flap.graph.order() > run.r ? scope(flap.graph, child_run) : base_case(flap.graph, child_run);
    });

    out.order.assign(s.begin(), s.end());
    for (std::size_t i = 0; i < flaps.size(); ++i) {
      const auto& origin = flaps[rank[i]].origin;
      for (Vertex local : children[i].order) out.order.push_back(origin[local]);
      out.depth = std::max(out.depth, children[i].depth);
      out.diagnostics.insert(out.diagnostics.end(), children[i].diagnostics.begin(), children[i].diagnostics.end());
    }
    return out;
  }

  // Individualize every vertex of a small flap with a+1..a+t and keep the
  // bijection minimizing the invariant.
  ScopeOrder base_case(const ColoredGraph& g, const SeparatorRun& run) const {
    const std::size_t t = g.order();
    const Color a = g.max_color().value_or(0);
    std::vector<Vertex> tau(t);
    std::iota(tau.begin(), tau.end(), Vertex{0});
    std::vector<Vertex> best_tau;
    CanonicalCode best_code;
    do {
      ColoredGraph f_tau = g;
      for (Vertex v = 0; v < t; ++v) f_tau.add_color(v, a + tau[v] + 1);
      CanonicalCode code = f_.evaluate(f_tau, options_.stats);
      if (best_tau.empty() || code < best_code) {
        best_code = std::move(code);
        best_tau = tau;
      }
    } while (std::next_permutation(tau.begin(), tau.end()));

    ScopeOrder out;
    out.depth = run.depth;
    out.order.resize(t);
    for (Vertex v = 0; v < t; ++v) out.order[best_tau[v]] = v;
    return out;
  }

 private:
  void check_equal_code_flaps(const std::vector<Flap>& flaps, const std::vector<CanonicalCode>& codes,
                              const std::vector<std::size_t>& rank, const SeparatorRun& run,
                              std::vector<Diagnostic>& diagnostics) const {
    for (std::size_t i = 0; i < rank.size();) {
      std::size_t j = i + 1;
      while (j < rank.size() && codes[rank[j]] == codes[rank[i]]) ++j;
      const auto& first = flaps[rank[i]].graph;
      for (std::size_t k = i + 1; k < j; ++k) {
        const auto& other = flaps[rank[k]].graph;
        if (first.order() > options_.oracle_cap) continue;
        if (!are_isomorphic_bf(first, other, options_.oracle_cap)) {
          diagnostics.push_back({Diagnostic::Kind::invariant_failure,
                                 "flaps with equal " + f_.name() + " codes are not isomorphic (depth " +
                                     std::to_string(run.depth) + ", flap sizes " + std::to_string(first.order()) +
                                     ")"});
        }
      }
      i = j;
    }
  }

  const InvariantBackend& f_;
  const CanonOptions& options_;
};

}  // namespace

CanonResult canon_separator(const ColoredGraph& g, std::size_t r, const InvariantBackend& f,
                            const CanonOptions& options) {
  const SeparatorRun run = SeparatorRun::start(g, r);
  SeparatorCanonizer canonizer(f, options);
  ScopeOrder top = g.order() <= r ? canonizer.base_case(g, run) : canonizer.scope(g, run);
  CanonResult result;
  result.labeling = Labeling::from_order(top.order);
  result.depth = top.depth;
  result.diagnostics = std::move(top.diagnostics);
  return result;
}

IsoResult find_isomorphism(const ColoredGraph& g, const ColoredGraph& h, std::size_t r, const InvariantBackend& f,
                           const CanonOptions& options) {
  IsoResult result;
  if (g.order() != h.order()) return result;
  CanonResult cg = canon_separator(g, r, f, options);
  CanonResult ch = canon_separator(h, r, f, options);
  result.diagnostics = cg.diagnostics;
  result.diagnostics.insert(result.diagnostics.end(), ch.diagnostics.begin(), ch.diagnostics.end());

  const ColoredGraph form_g = apply_permutation(g, cg.labeling);
  const ColoredGraph form_h = apply_permutation(h, ch.labeling);
  if (encode(form_g) == encode(form_h)) {
    Labeling mapping = ch.labeling.inverse().after(cg.labeling);
    if (apply_permutation(g, mapping) == h) {
      result.mapping = std::move(mapping);
    } else {
      result.diagnostics.push_back(
          {Diagnostic::Kind::invariant_failure, "equal canonical forms but the composed mapping is not an isomorphism"});
    }
    return result;
  }

  if (options.cross_check) {
    InvariantStats* stats = options.stats;
    if (f.evaluate(g, stats) == f.evaluate(h, stats)) {
      std::string what = "inputs have equal " + f.name() + " codes but different canonical forms";
      if (g.order() <= options.oracle_cap) {
        what += are_isomorphic_bf(g, h, options.oracle_cap) ? "; they are isomorphic, so canonization failed"
                                                             : "; brute force confirms they are not isomorphic";
      }
      result.diagnostics.push_back({Diagnostic::Kind::invariant_failure, what});
    }
  }
  return result;
}

}  // namespace canon
