#include <gtest/gtest.h>

#include "canon/errors.hpp"
#include "canon/separator.hpp"
#include "support.hpp"

using namespace canon;
using namespace canon::testing;

namespace {

using Sequences = std::vector<std::vector<Vertex>>;

CanonicalCode canonical_form(const ColoredGraph& g, std::size_t r, const InvariantBackend& f,
                             const CanonOptions& options = {}) {
  return encode(apply_permutation(g, canon_separator(g, r, f, options).labeling));
}

}  // namespace

TEST(SeparatorRun, ColorBlocks) {
  SeparatorRun run = SeparatorRun::start(path(5), 2);
  EXPECT_EQ(run.block_width, 6u);
  EXPECT_EQ(run.color_base, 0u);
  EXPECT_EQ(run.sequence_color(1), 1u);
  EXPECT_EQ(run.pattern_color(0), 3u);
  EXPECT_EQ(run.pattern_color(3), 6u);
  SeparatorRun next = run.deeper();
  EXPECT_EQ(next.sequence_color(1), 7u);
  EXPECT_EQ(next.pattern_color(3), 12u);
  EXPECT_THROW(SeparatorRun::start(path(3), 0), ContractViolation);
}

TEST(SeparatorRun, ColorBaseSitsAboveInputColors) {
  ColoredGraph g = path(3);
  g.add_color(1, 41);
  EXPECT_EQ(SeparatorRun::start(g, 1).color_base, 42u);
}

TEST(IsSeparator, SmallExamples) {
  std::vector<Vertex> mid{1};
  EXPECT_TRUE(is_separator(path(3), mid));
  EXPECT_FALSE(is_separator(complete(4), {}));
  std::vector<Vertex> four{3};
  std::vector<Vertex> two{1};
  EXPECT_TRUE(is_separator(path(7), four));
  EXPECT_FALSE(is_separator(path(7), two));
}

TEST(MarkSeparatingSequences, SmallExamples) {
  EXPECT_EQ(mark_separating_sequences(path(3), 1), (Sequences{{1}}));
  EXPECT_TRUE(mark_separating_sequences(complete(5), 1).empty());
  EXPECT_EQ(mark_separating_sequences(path(3), 2), (Sequences{{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}));
  EXPECT_TRUE(mark_separating_sequences(path(2), 3).empty());
}

TEST(MarkSeparatingSequences, AgreesWithDirectCheck) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ColoredGraph g = random_graph(7, 0.3, 0, seed);
    auto marked = mark_separating_sequences(g, 2);
    Sequences expected;
    for (Vertex a = 0; a < 7; ++a) {
      for (Vertex b = 0; b < 7; ++b) {
        std::vector<Vertex> s{a, b};
        if (a != b && is_separator(g, s)) expected.push_back(s);
      }
    }
    EXPECT_EQ(marked, expected);
  }
}

TEST(DecomposeFlaps, PathWithMidpoint) {
  SeparatorRun run = SeparatorRun::start(path(3), 1);
  std::vector<Vertex> s{1};
  auto flaps = decompose_flaps(path(3), s, run);
  ASSERT_EQ(flaps.size(), 2u);
  for (const auto& flap : flaps) {
    EXPECT_EQ(flap.graph.order(), 1u);
    EXPECT_EQ(flap.graph.colors(0), ColorSet{3});
  }
  EXPECT_EQ(flaps[0].origin, std::vector<Vertex>{0});
  EXPECT_EQ(flaps[1].origin, std::vector<Vertex>{2});
}

TEST(DecomposeFlaps, PatternColorRange) {
  // r = 2: vertex 5 sees neither separator vertex, vertex 3 sees both.
  ColoredGraph g = graph(5, {{1, 3}, {2, 3}, {4, 5}});
  SeparatorRun run = SeparatorRun::start(g, 2);
  std::vector<Vertex> s{0, 1};
  auto flaps = decompose_flaps(g, s, run);
  ASSERT_EQ(flaps.size(), 2u);
  EXPECT_EQ(flaps[0].origin, std::vector<Vertex>{2});
  EXPECT_EQ(flaps[0].graph.colors(0), ColorSet{6});
  EXPECT_EQ(flaps[1].graph.colors(0), ColorSet{3});
  EXPECT_EQ(flaps[1].graph.colors(1), ColorSet{3});
}

TEST(DecomposeFlaps, StarAndContract) {
  std::vector<Vertex> center{0};
  EXPECT_EQ(decompose_flaps(star(4), center, SeparatorRun::start(star(4), 1)).size(), 4u);
  std::vector<Vertex> leaf{1};
  EXPECT_THROW(decompose_flaps(star(4), leaf, SeparatorRun::start(star(4), 1)), ContractViolation);
}

TEST(DecomposeFlaps, FlapsPartitionTheRest) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ColoredGraph g = gen_family(Family::partial_k_tree, {10, 2, {}, {}}, seed);
    SeparatorRun run = SeparatorRun::start(g, 3);
    for (const auto& s : mark_separating_sequences(g, 3)) {
      std::vector<int> hits(g.order(), 0);
      for (Vertex v : s) ++hits[v];
      for (const auto& flap : decompose_flaps(g, s, run)) {
        EXPECT_LE(2 * flap.graph.order(), g.order());
        for (Vertex v : flap.origin) ++hits[v];
      }
      for (int h : hits) ASSERT_EQ(h, 1);
      break;
    }
  }
}

TEST(CanonSeparator, SingleVertexAndEmpty) {
  EXPECT_TRUE(canon_separator(ColoredGraph(1), 1, InvariantBackend::bf()).labeling.is_identity());
  EXPECT_EQ(canon_separator(ColoredGraph(0), 1, InvariantBackend::bf()).labeling.size(), 0u);
}

TEST(CanonSeparator, PathPutsMidpointFirst) {
  CanonResult result = canon_separator(path(3), 1, InvariantBackend::bf());
  EXPECT_EQ(result.labeling[1], 0u);
  EXPECT_TRUE(result.diagnostics.empty());
  for (const auto& sigma : all_permutations(3)) {
    EXPECT_EQ(canonical_form(apply_permutation(path(3), sigma), 1, InvariantBackend::bf()),
              canonical_form(path(3), 1, InvariantBackend::bf()));
  }
}

TEST(CanonSeparator, NoSeparatorFallsBackToIdentity) {
  CanonResult result = canon_separator(complete(5), 1, InvariantBackend::bf());
  EXPECT_TRUE(result.labeling.is_identity());
  ASSERT_EQ(result.diagnostics.size(), 1u);
  EXPECT_EQ(result.diagnostics[0].kind, Diagnostic::Kind::no_separator);
  EXPECT_FALSE(result.found_separators_everywhere());
}

TEST(CanonSeparator, SmallGraphGoesToBaseCase) {
  CanonResult result = canon_separator(complete(3), 3, InvariantBackend::bf());
  EXPECT_EQ(result.depth, 1u);
  EXPECT_TRUE(result.diagnostics.empty());
}

TEST(CanonSeparator, CanonicalOnPartialTwoTrees) {
  const InvariantBackend f = InvariantBackend::bf();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    ColoredGraph g = gen_family(Family::partial_k_tree, {5 + seed % 6, 2, {}, {}}, seed);
    CanonResult base = canon_separator(g, 3, f);
    const CanonicalCode form = encode(apply_permutation(g, base.labeling));
    for (std::uint64_t t = 0; t < 5; ++t) {
      ColoredGraph h = random_relabel(g, seed * 100 + t);
      EXPECT_EQ(canonical_form(h, 3, f), form) << "seed " << seed << " relabel " << t;
    }
  }
}

TEST(CanonSeparator, CanonicalOnColoredInputs) {
  const InvariantBackend f = InvariantBackend::bf();
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    ColoredGraph g = gen_family(Family::tree, {8, 2, {}, {}}, seed);
    g.add_color(seed % 8, 1);
    g.add_color((seed + 3) % 8, 2);
    for (std::uint64_t t = 0; t < 3; ++t) {
      EXPECT_EQ(canonical_form(random_relabel(g, t + 7), 2, f), canonical_form(g, 2, f)) << "seed " << seed;
    }
  }
}

TEST(CanonSeparator, FormsSeparateNonIsomorphicGraphs) {
  const InvariantBackend f = InvariantBackend::bf();
  std::vector<ColoredGraph> corpus;
  for (std::uint64_t seed = 0; seed < 30; ++seed) corpus.push_back(gen_family(Family::tree, {7, 2, {}, {}}, seed));
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = i + 1; j < corpus.size(); ++j) {
      EXPECT_EQ(canonical_form(corpus[i], 2, f) == canonical_form(corpus[j], 2, f),
                are_isomorphic_bf(corpus[i], corpus[j]).has_value());
    }
  }
}

TEST(CanonSeparator, DepthWithinLogBound) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ColoredGraph g = gen_family(Family::tree, {16, 2, {}, {}}, seed);
    CanonResult result = canon_separator(g, 1, InvariantBackend::wl1());
    ASSERT_TRUE(result.found_separators_everywhere());
    EXPECT_LE(result.depth, 5u);  // ⌈log2 16⌉ + 1
  }
}

TEST(CanonSeparator, EqualCodeFlapOrderIsIrrelevant) {
  // Two isomorphic arms hanging off a center: whichever arm comes first,
  // relabeled inputs agree on the final form.
  ColoredGraph g = graph(7, {{1, 2}, {2, 3}, {1, 4}, {4, 5}, {1, 6}, {6, 7}});
  const InvariantBackend f = InvariantBackend::bf();
  const CanonicalCode form = canonical_form(g, 1, f);
  for (const auto& sigma : all_permutations(7)) {
    if (sigma.mapping()[0] != 0) continue;  // keep the center, permute the arms
    ASSERT_EQ(canonical_form(apply_permutation(g, sigma), 1, f), form);
  }
}

TEST(CanonSeparator, CrossCheckReportsIncompleteInvariant) {
  // A hub joined to every vertex of a triangular prism and of K3,3. Removing
  // the hub leaves two connected 3-regular flaps that WL-1 cannot tell apart.
  ColoredGraph g = graph(13, {{2, 3}, {3, 4}, {2, 4}, {5, 6}, {6, 7}, {5, 7}, {2, 5}, {3, 6}, {4, 7},
                              {8, 11}, {8, 12}, {8, 13}, {9, 11}, {9, 12}, {9, 13}, {10, 11}, {10, 12}, {10, 13}});
  for (Vertex v = 1; v < 13; ++v) g.add_edge(0, v);
  CanonOptions options;
  options.cross_check = true;
  CanonResult result = canon_separator(g, 1, InvariantBackend::wl1(), options);
  bool flagged = false;
  for (const auto& d : result.diagnostics) flagged |= d.kind == Diagnostic::Kind::invariant_failure;
  EXPECT_TRUE(flagged);

  options.cross_check = false;
  result = canon_separator(g, 1, InvariantBackend::wl1(), options);
  for (const auto& d : result.diagnostics) EXPECT_NE(d.kind, Diagnostic::Kind::invariant_failure);
}

TEST(FindIsomorphism, SmallExamples) {
  const InvariantBackend f = InvariantBackend::bf();
  auto self = find_isomorphism(cycle(5), cycle(5), 2, f);
  ASSERT_TRUE(self.mapping);
  EXPECT_EQ(apply_permutation(cycle(5), *self.mapping), cycle(5));
  EXPECT_FALSE(find_isomorphism(path(3), complete(3), 1, f).mapping);
  EXPECT_FALSE(find_isomorphism(path(3), path(4), 1, f).mapping);
}

TEST(FindIsomorphism, TreesWithWl1) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    ColoredGraph t = gen_family(Family::tree, {9, 2, {}, {}}, seed);
    ColoredGraph h = random_relabel(t, seed + 99);
    auto result = find_isomorphism(t, h, 1, InvariantBackend::wl1());
    ASSERT_TRUE(result.mapping) << "seed " << seed;
    EXPECT_EQ(apply_permutation(t, *result.mapping), h);
  }
}

TEST(FindIsomorphism, CrossCheckFlagsWl1Collision) {
  ColoredGraph c6 = cycle(6);
  ColoredGraph triangles = disjoint_union(complete(3), complete(3));
  CanonOptions options;
  options.cross_check = true;
  IsoResult result = find_isomorphism(c6, triangles, 3, InvariantBackend::wl1(), options);
  EXPECT_FALSE(result.mapping);
  bool flagged = false;
  for (const auto& d : result.diagnostics) flagged |= d.kind == Diagnostic::Kind::invariant_failure;
  EXPECT_TRUE(flagged);
}
