#include <gtest/gtest.h>

#include "canon/errors.hpp"
#include "canon/graph_io.hpp"
#include "support.hpp"

using namespace canon;
using namespace canon::testing;

TEST(CgFormat, WritesExactText) {
  ColoredGraph g = graph(3, {{1, 2}, {2, 3}});
  g.add_color(2, 0);
  g.add_color(0, 9);
  g.add_color(0, 4);
  EXPECT_EQ(write_cg(g), "cg 1\nn 3\ne 1 2\ne 2 3\nk 1 4\nk 1 9\nk 3 0\n");
}

TEST(CgFormat, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    ColoredGraph g = random_graph(1 + seed % 9, 0.4, 5, seed);
    EXPECT_EQ(parse_cg(write_cg(g)), g);
  }
  EXPECT_EQ(parse_cg("cg 1\nn 0\n"), ColoredGraph(0));
}

TEST(CgFormat, RejectsMalformedInput) {
  const char* bad[] = {
      "",
      "cg 2\nn 1\n",
      "cg 1\nn x\n",
      "cg 1\nn 3\ne 2 1\n",
      "cg 1\nn 3\ne 1 1\n",
      "cg 1\nn 3\ne 1 2\ne 1 2\n",
      "cg 1\nn 3\ne 2 3\ne 1 2\n",
      "cg 1\nn 3\ne 1 4\n",
      "cg 1\nn 3\nk 1 2\ne 1 2\n",
      "cg 1\nn 3\nk 2 1\nk 1 1\n",
      "cg 1\nn 3\nk 1 1\nk 1 1\n",
      "cg 1\nn 3\nx 1 2\n",
      "cg 1\nn 3\ne 01 2\n",
  };
  for (const char* text : bad) EXPECT_THROW(parse_cg(text), ParseError) << text;
}

TEST(Graph6, KnownEncodings) {
  // Standard examples: K4 is "C~", the path 1-2-3 is "Bg" (edges 1-2, 2-3 in column order).
  EXPECT_EQ(write_graph6(complete(4)), "C~");
  EXPECT_EQ(write_graph6(path(3)), "Bg");
  EXPECT_EQ(write_graph6(ColoredGraph(0)), "?");
  EXPECT_EQ(parse_graph6(">>graph6<<C~\n"), complete(4));
}

TEST(Graph6, LongSizeField) {
  ColoredGraph g = path(70);
  const std::string text = write_graph6(g);
  EXPECT_EQ(text[0], '~');
  EXPECT_EQ(parse_graph6(text), g);
}

TEST(Graph6, RoundTripRandom) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    ColoredGraph g = random_graph(seed % 20, 0.3, 0, seed);
    EXPECT_EQ(parse_graph6(write_graph6(g)), g);
  }
}

TEST(Graph6, RejectsColoredAndMalformed) {
  ColoredGraph g = path(2);
  g.add_color(0, 1);
  EXPECT_THROW(write_graph6(g), UnsupportedInput);
  EXPECT_THROW(parse_graph6(""), ParseError);
  EXPECT_THROW(parse_graph6("C"), ParseError);
  EXPECT_THROW(parse_graph6("Bh"), ParseError);  // padding bit set
}
