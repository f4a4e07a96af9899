#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "ramseyqubo/encode.hpp"
#include "ramseyqubo/verify.hpp"

using namespace ramseyqubo;

namespace {
Coloring pentagon() {
  Coloring c(5);
  for (Vertex i = 0; i < 5; ++i)
    for (Vertex j = i + 1; j < 5; ++j) c.set(i, j, (j - i == 1 || j - i == 4) ? 0 : 1);
  return c;
}
Coloring uniform(std::size_t n, int colour) {
  Coloring c(n);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) c.set(i, j, colour);
  return c;
}
}  // namespace

TEST(Verify, AllRedK6) {
  const auto r = count_monochromatic(complete_graph(6), uniform(6, 0), 3, "K6");
  EXPECT_EQ(r.monochromatic, 20u);
  EXPECT_EQ(r.red, 20u);
  EXPECT_EQ(r.blue, 0u);
  EXPECT_EQ(r.graph_id, "K6");
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(*r.witness, (std::vector<Vertex>{0, 1, 2}));
}

TEST(Verify, PentagonWitnessesR3) {
  const auto r = count_monochromatic(complete_graph(5), pentagon(), 3);
  EXPECT_EQ(r.monochromatic, 0u);
  EXPECT_FALSE(r.witness);
  EXPECT_TRUE(certify_r_lower_bound(5, 3, pentagon()));
}

TEST(Verify, NoK6ColouringAvoidsTriangles) {
  for (std::uint64_t m = 0; m < (1u << 15); ++m)
    ASSERT_FALSE(certify_r_lower_bound(6, 3, oracle::coloring_of(6, oracle::bits_of(m, 15))));
}

TEST(Verify, AgreesWithMctExhaustively) {
  for (std::size_t n = 3; n <= 6; ++n) {
    const auto g = complete_graph(n);
    const auto p = build_mct(g).poly();
    for (std::uint64_t m = 0; m < (1u << g.num_pairs()); ++m) {
      const auto bits = oracle::bits_of(m, g.num_pairs());
      const auto r = count_monochromatic(g, oracle::coloring_of(n, bits), 3);
      ASSERT_EQ(r.monochromatic, static_cast<std::uint64_t>(p(bits)));
      ASSERT_EQ(r.monochromatic, r.red + r.blue);
    }
  }
}

TEST(Verify, AgreesWithMctOnRandomGraphs) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 3 + rng() % 13;
    const auto g = random_graph(n, 0.5, rng());
    const auto bits = oracle::random_bits(g.num_pairs(), rng);
    Coloring c(n);
    for (const auto& e : g.edges()) c.set(e.i, e.j, bits[e.index(n)]);
    ASSERT_EQ(count_monochromatic(g, c, 3).monochromatic,
              static_cast<std::uint64_t>(build_mct(g).poly()(bits)));
  }
}

TEST(Verify, AgreesWithRamseyPubo) {
  std::mt19937_64 rng(32);
  for (std::size_t m = 4; m <= 9; ++m)
    for (std::size_t k : {3u, 4u}) {
      const auto p = build_ramsey_pubo(m, k);
      const int trials = m <= 5 ? (1 << binomial(m, 2)) : 100;
      for (int t = 0; t < trials; ++t) {
        const auto bits = m <= 5 ? oracle::bits_of(t, binomial(m, 2))
                                 : oracle::random_bits(binomial(m, 2), rng);
        ASSERT_EQ(count_monochromatic(complete_graph(m), oracle::coloring_of(m, bits), k).monochromatic,
                  static_cast<std::uint64_t>(p(bits)));
      }
    }
}

TEST(Verify, ColourSwapInvariance) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 50; ++t) {
    const auto c = oracle::coloring_of(9, oracle::random_bits(36, rng));
    const auto a = count_monochromatic(complete_graph(9), c, 3);
    const auto b = count_monochromatic(complete_graph(9), c.swapped(), 3);
    EXPECT_EQ(a.monochromatic, b.monochromatic);
    EXPECT_EQ(a.red, b.blue);
  }
}

TEST(Verify, RejectsIncompleteColouring) {
  Coloring c(4);
  c.set(0, 1, 0);
  EXPECT_THROW(count_monochromatic(complete_graph(4), c, 3), Error);
  EXPECT_THROW(count_monochromatic(complete_graph(5), uniform(4, 0), 3), Error);
  EXPECT_THROW(count_monochromatic(complete_graph(4), uniform(4, 0), 1), Error);
  EXPECT_THROW(c.set(0, 0, 1), Error);
  EXPECT_THROW(c.set(0, 1, 2), Error);
}

TEST(Verify, AssignmentRoundTripThroughRegistry) {
  const auto r = reduce_r4(6);
  const auto c = pentagon();
  (void)c;
  std::mt19937_64 rng(34);
  const auto bits = oracle::random_bits(15, rng);
  const auto col = oracle::coloring_of(6, bits);
  EXPECT_EQ(edge_assignment(r.problem.registry(), col), bits);
  Assignment full(r.problem.num_vars(), 1);
  std::copy(bits.begin(), bits.end(), full.begin());
  EXPECT_EQ(coloring_from_assignment(r.problem.registry(), full), col);
}

TEST(Verify, ColoringFileRoundTrip) {
  const auto c = pentagon();
  std::stringstream a;
  write_coloring(a, c);
  std::istringstream in(a.str());
  const auto d = read_coloring(in);
  EXPECT_EQ(c, d);
  std::stringstream b;
  write_coloring(b, d);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Verify, ColoringFileErrors) {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return read_coloring(in);
  };
  EXPECT_THROW(parse(""), Error);
  EXPECT_THROW(parse("0 1 0\n"), ParseError);
  EXPECT_THROW(parse("coloring n 3\n0 1 0\n1 0 1\n"), ParseError);
  EXPECT_THROW(parse("coloring n 3\n0 3 0\n"), ParseError);
  EXPECT_THROW(parse("coloring n 3\n0 1 2\n"), ParseError);
}

TEST(Verify, Coverage) {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(2, 3);
  Coloring c(4);
  c.set(0, 1, 0);
  EXPECT_THROW(check_coverage(g, c), Error);
  c.set(2, 3, 1);
  EXPECT_NO_THROW(check_coverage(g, c));
  c.set(0, 2, 1);
  EXPECT_THROW(check_coverage(g, c), Error);
}
