#include <gtest/gtest.h>

#include <set>

#include "canon/errors.hpp"
#include "canon/graph.hpp"
#include "support.hpp"

using namespace canon;
using namespace canon::testing;

TEST(ColoredGraph, RejectsLoopsDuplicatesAndRange) {
  ColoredGraph g(3);
  g.add_edge(0, 1);
  EXPECT_THROW(g.add_edge(1, 0), ContractViolation);
  EXPECT_THROW(g.add_edge(2, 2), ContractViolation);
  EXPECT_THROW(g.add_edge(0, 3), ContractViolation);
  EXPECT_EQ(g.size(), 1u);
  EXPECT_TRUE(g.adjacent(1, 0));
}

TEST(ColoredGraph, ComponentsOrderedBySmallestVertex) {
  ColoredGraph g = graph(6, {{1, 5}, {2, 3}, {5, 6}});
  auto comps = g.components();
  ASSERT_EQ(comps.size(), 3u);
  EXPECT_EQ(comps[0], (std::vector<Vertex>{0, 4, 5}));
  EXPECT_EQ(comps[1], (std::vector<Vertex>{1, 2}));
  EXPECT_EQ(comps[2], (std::vector<Vertex>{3}));
  std::vector<Vertex> removed{4};
  EXPECT_EQ(g.components(removed).size(), 4u);
}

TEST(ColoredGraph, InducedKeepsColorsAndOrder) {
  ColoredGraph g = path(4);
  g.add_color(2, 7);
  std::vector<Vertex> keep{2, 1};
  ColoredGraph h = g.induced(keep);
  EXPECT_EQ(h.order(), 2u);
  EXPECT_TRUE(h.adjacent(0, 1));
  EXPECT_EQ(h.colors(0), ColorSet{7});
  EXPECT_TRUE(h.colors(1).empty());
}

TEST(Labeling, RejectsNonBijections) {
  EXPECT_THROW(Labeling(std::vector<Vertex>{0, 0}), InvalidLabeling);
  EXPECT_THROW(Labeling(std::vector<Vertex>{0, 2}), InvalidLabeling);
  EXPECT_NO_THROW(Labeling(std::vector<Vertex>{1, 0}));
}

TEST(Labeling, FromOrderInverseAndComposition) {
  std::vector<Vertex> order{2, 0, 1};
  Labeling sigma = Labeling::from_order(order);
  EXPECT_EQ(sigma[2], 0u);
  EXPECT_EQ(sigma[0], 1u);
  EXPECT_EQ(sigma[1], 2u);
  EXPECT_TRUE(sigma.inverse().after(sigma).is_identity());
  Labeling swap(std::vector<Vertex>{1, 0, 2});
  Labeling both = swap.after(sigma);
  for (Vertex v = 0; v < 3; ++v) EXPECT_EQ(both[v], swap[sigma[v]]);
}

TEST(ApplyPermutation, SingleVertexIdentity) {
  ColoredGraph g(1);
  EXPECT_EQ(apply_permutation(g, Labeling::identity(1)), g);
}

TEST(ApplyPermutation, ReversalOfPathKeepsEdges) {
  ColoredGraph p3 = path(3);
  Labeling reverse(std::vector<Vertex>{2, 1, 0});
  EXPECT_EQ(apply_permutation(p3, reverse), p3);
}

TEST(ApplyPermutation, ColorsFollowVertices) {
  ColoredGraph p3 = path(3);
  p3.add_color(0, 5);
  ColoredGraph image = apply_permutation(p3, Labeling(std::vector<Vertex>{2, 1, 0}));
  EXPECT_TRUE(image.colors(0).empty());
  EXPECT_EQ(image.colors(2), ColorSet{5});
  EXPECT_EQ(image.edges(), p3.edges());
}

TEST(ApplyPermutation, RejectsWrongSize) {
  EXPECT_THROW(apply_permutation(path(3), Labeling::identity(2)), InvalidLabeling);
}

TEST(ApplyPermutation, RoundTripWithInverse) {
  Lcg64 rng(17);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    ColoredGraph g = random_graph(7, 0.4, 3, seed);
    Labeling sigma(rng.permutation(7));
    EXPECT_EQ(apply_permutation(apply_permutation(g, sigma), sigma.inverse()), g);
  }
}

TEST(Encode, ColorsAreEncoded) {
  ColoredGraph plain(1);
  ColoredGraph colored(1);
  colored.add_color(0, 0);
  EXPECT_NE(encode(plain), encode(colored));
  EXPECT_EQ(encode(plain), encode(apply_permutation(plain, Labeling::identity(1))));
}

TEST(Encode, LayoutOfSmallGraph) {
  // n = 3, bits 1 1 0 for pairs (1,2) (1,3) (2,3), vertex 2 colored {4}.
  ColoredGraph g = graph(3, {{1, 2}, {1, 3}});
  g.add_color(1, 4);
  const std::string bytes = encode(g).bytes();
  const std::string expected = std::string("\x00\x00\x00\x03", 4) + "\xc0" + std::string("\x00", 1) +
                               std::string("\x01\x00\x00\x00\x00\x00\x00\x00\x04\x00", 10) + std::string("\x00", 1);
  EXPECT_EQ(bytes, expected);
}

TEST(Encode, InjectiveOnSmallLabeledGraphs) {
  std::set<std::string> seen;
  std::size_t count = 0;
  for (std::size_t n = 0; n <= 4; ++n) {
    for (const auto& base : all_labeled_graphs(n)) {
      // Also vary colors on vertex 0 to exercise the color section.
      for (int variant = 0; variant < (n > 0 ? 4 : 1); ++variant) {
        ColoredGraph g = base;
        if (variant == 1) g.add_color(0, 0);
        if (variant == 2) g.add_color(0, 1);
        if (variant == 3) {
          g.add_color(0, 0);
          g.add_color(0, 1);
        }
        seen.insert(encode(g).bytes());
        ++count;
      }
    }
  }
  EXPECT_EQ(seen.size(), count);
}

TEST(CanonicalCode, LengthFirstOrder) {
  CanonicalCode shorter(std::string("\xff", 1));
  CanonicalCode longer(std::string("\x00\x00", 2));
  EXPECT_LT(shorter, longer);
  EXPECT_LT(CanonicalCode("ab"), CanonicalCode("ac"));
  EXPECT_EQ(CanonicalCode("ab").hex(), "6162");
}

TEST(AreIsomorphicBf, SmallExamples) {
  auto k3 = complete(3);
  auto found = are_isomorphic_bf(k3, k3);
  ASSERT_TRUE(found);
  EXPECT_TRUE(found->is_identity());
  EXPECT_FALSE(are_isomorphic_bf(path(3), k3));

  ColoredGraph end_colored = path(3);
  end_colored.add_color(0, 1);
  ColoredGraph mid_colored = path(3);
  mid_colored.add_color(1, 1);
  EXPECT_FALSE(are_isomorphic_bf(end_colored, mid_colored));
}

TEST(AreIsomorphicBf, SizeMismatchBeforeCap) {
  EXPECT_FALSE(are_isomorphic_bf(path(20), path(21), 5));
  EXPECT_THROW(are_isomorphic_bf(path(20), path(20), 5), OracleCapacityError);
}

TEST(AreIsomorphicBf, FindsMappingForEveryRelabeling) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    ColoredGraph g = random_graph(7, 0.45, 2, seed);
    ColoredGraph h = random_relabel(g, seed + 1000);
    auto mapping = are_isomorphic_bf(g, h);
    ASSERT_TRUE(mapping) << "seed " << seed;
    EXPECT_EQ(encode(apply_permutation(g, *mapping)), encode(h));
  }
}

TEST(AreIsomorphicBf, IsLexicographicallyFirst) {
  ColoredGraph c4 = cycle(4);
  ColoredGraph h = random_relabel(c4, 3);
  auto mapping = are_isomorphic_bf(c4, h);
  ASSERT_TRUE(mapping);
  for (const auto& sigma : all_permutations(4)) {
    if (apply_permutation(c4, sigma) == h) {
      EXPECT_EQ(sigma, *mapping);
      break;
    }
  }
}

TEST(AreIsomorphicBf, AgreesWithExhaustiveSearch) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    ColoredGraph g = random_graph(5, 0.5, 2, seed);
    ColoredGraph h = random_graph(5, 0.5, 2, seed + 7919);
    bool exhaustive = false;
    for (const auto& sigma : all_permutations(5)) {
      if (apply_permutation(g, sigma) == h) {
        exhaustive = true;
        break;
      }
    }
    EXPECT_EQ(are_isomorphic_bf(g, h).has_value(), exhaustive) << "seed " << seed;
  }
}
