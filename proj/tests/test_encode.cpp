#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "ramseyqubo/encode.hpp"
#include "ramseyqubo/solve.hpp"

using namespace ramseyqubo;

TEST(Gadget, TruthTable) {
  const auto g = mct_gadget(0, 1, 2);
  for (std::uint64_t m = 0; m < 8; ++m) {
    const auto a = oracle::bits_of(m, 3);
    EXPECT_EQ(g(a), (m == 0 || m == 7) ? 1 : 0) << m;
  }
  EXPECT_EQ(g.coefficient({0}), -1);
  EXPECT_EQ(g.constant(), 1);
  EXPECT_THROW(mct_gadget(1, 1, 2), Error);
}

TEST(Gadget, PlusSignFormIsWrong) {
  Polynomial wrong;
  wrong.add_constant(1);
  for (Var v = 0; v < 3; ++v) wrong.add_term({v}, 1);
  wrong.add_term({0, 1}, 1);
  wrong.add_term({1, 2}, 1);
  wrong.add_term({0, 2}, 1);
  EXPECT_EQ(wrong({1, 1, 1}), 7);
  EXPECT_EQ(mct_gadget(0, 1, 2)({1, 1, 1}), 1);
}

TEST(BuildMct, K6Examples) {
  const auto p = build_mct(complete_graph(6));
  EXPECT_EQ(p.num_vars(), 15u);
  EXPECT_EQ(p.offset(), 20);
  EXPECT_EQ(p.poly()(Assignment(15, 0)), 20);
  EXPECT_TRUE(p.poly().nonnegative());
}

TEST(BuildMct, MatchesTriangleOracleExhaustively) {
  for (std::size_t n = 3; n <= 6; ++n) {
    const auto g = complete_graph(n);
    const auto p = build_mct(g).poly();
    const auto e = g.num_pairs();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << e); ++m) {
      const auto a = oracle::bits_of(m, e);
      ASSERT_EQ(static_cast<std::size_t>(p(a)), oracle::mono_triangles(g, a));
    }
  }
}

TEST(BuildMct, MatchesTriangleOracleOnRandomGraphs) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 3 + rng() % 10;
    const auto g = (t % 2) ? complete_graph(n) : random_graph(n, 0.5, rng());
    const auto p = build_mct(g).poly();
    const auto a = oracle::random_bits(g.num_pairs(), rng);
    ASSERT_EQ(static_cast<std::size_t>(p(a)), oracle::mono_triangles(g, a));
  }
}

TEST(BuildMct, TriangleFreeGraphGivesZeroPolynomial) {
  Graph g(5);
  for (Vertex v = 0; v < 5; ++v) g.add_edge(v, (v + 1) % 5);
  const auto p = build_mct(g);
  EXPECT_TRUE(p.poly().is_zero());
  EXPECT_EQ(p.registry().count(VarRole::edge), 5u);
  EXPECT_EQ(p.registry().count(VarRole::unused), 5u);
}

TEST(RamseyPubo, Examples) {
  auto p33 = build_ramsey_pubo(3, 3);
  EXPECT_EQ(p33({0, 1, 1}), 0);  // (0,1) red, others blue
  EXPECT_EQ(build_ramsey_pubo(4, 4)(Assignment(6, 1)), 1);
  const auto p54 = build_ramsey_pubo(5, 4);
  EXPECT_EQ(p54.degree(), 6u);
  EXPECT_EQ(p54.num_vars(), 10u);
  EXPECT_EQ(p54(Assignment(10, 0)), 5);
  EXPECT_THROW(build_ramsey_pubo(3, 4), Error);
  EXPECT_THROW(build_ramsey_pubo(3, 1), Error);
}

TEST(RamseyPubo, MatchesCliqueOracleExhaustively) {
  for (std::size_t m = 3; m <= 5; ++m)
    for (std::size_t n : {3u, 4u}) {
      if (n > m) continue;
      const auto p = build_ramsey_pubo(m, n);
      const auto e = binomial(m, 2);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << e); ++mask) {
        const auto a = oracle::bits_of(mask, e);
        ASSERT_EQ(static_cast<std::size_t>(p(a)), oracle::mono_cliques(m, n, a));
      }
    }
}

TEST(RamseyPubo, MatchesCliqueOracleSampled) {
  std::mt19937_64 rng(17);
  for (std::size_t m = 6; m <= 9; ++m)
    for (std::size_t n : {3u, 4u}) {
      const auto p = build_ramsey_pubo(m, n);
      for (int t = 0; t < 50; ++t) {
        const auto a = oracle::random_bits(binomial(m, 2), rng);
        ASSERT_EQ(static_cast<std::size_t>(p(a)), oracle::mono_cliques(m, n, a));
      }
    }
}

TEST(ReduceR4, VariableCounts) {
  EXPECT_EQ(reduce_r4(4).problem.num_vars(), 9u);
  EXPECT_EQ(reduce_r4(5).problem.num_vars(), 24u);
  EXPECT_EQ(reduce_r4(15).problem.num_vars(), 3199u);
  for (std::uint64_t m = 4; m <= 20; ++m) {
    const auto r = reduce_r4(m);
    EXPECT_EQ(r.problem.num_vars(), variable_count_paper(m)) << m;
    EXPECT_EQ(r.map.ancillas.size(), binomial(m - 1, 3) + 2 * binomial(m, 4)) << m;
    EXPECT_EQ(r.map.original_vars, binomial(m, 2));
    EXPECT_LE(r.problem.poly().degree(), 2u);
  }
  EXPECT_THROW(reduce_r4(3), Error);
}

TEST(ReduceR4, AncillaProvenance) {
  const auto r = reduce_r4(7);
  std::set<std::array<std::uint32_t, 3>> triples;
  std::map<std::array<std::uint32_t, 4>, std::set<std::uint8_t>> quads;
  for (const auto& a : r.map.ancillas) {
    EXPECT_EQ(r.problem.registry()[a.index].role, VarRole::ancilla);
    if (a.kind == AncillaRecord::Kind::triple) {
      EXPECT_TRUE(triples.insert({a.members[0], a.members[1], a.members[2]}).second);
      EXPECT_LT(a.members[2], 6u);
    } else {
      ASSERT_EQ(a.kind, AncillaRecord::Kind::quad);
      EXPECT_TRUE(quads[a.members].insert(a.slot).second);
    }
  }
  EXPECT_EQ(triples.size(), binomial(6, 3));
  EXPECT_EQ(quads.size(), binomial(7, 4));
  for (const auto& [k, slots] : quads) EXPECT_EQ(slots, (std::set<std::uint8_t>{2, 3}));
  EXPECT_EQ(r.map.gadgets.size(), binomial(6, 3) + 3 * binomial(7, 4));
}

TEST(ReduceR4, GadgetLogSumsToObjective) {
  for (auto pairing : {R4Pairing::star_aligned, R4Pairing::listing}) {
    const auto r = reduce_r4(6, pairing);
    Polynomial sum;
    for (const auto& g : r.map.gadgets) sum += mct_gadget(g.members[0], g.members[1], g.members[2]);
    sum.set_num_vars(r.problem.num_vars());
    EXPECT_EQ(sum, r.problem.poly());
  }
}

TEST(ReduceR4, SoundnessAtM4) {
  for (auto pairing : {R4Pairing::star_aligned, R4Pairing::listing}) {
    const auto r = reduce_r4(4, pairing);
    const auto& p = r.problem.poly();
    for (std::uint64_t m = 0; m < 64; ++m) {
      const auto edges = oracle::bits_of(m, 6);
      const auto best = oracle::min_over_tail(p, edges, p.num_vars());
      EXPECT_EQ(best, static_cast<std::int64_t>(oracle::mono_cliques(4, 4, edges))) << m;
    }
  }
}

TEST(RosenbergReduce, CubicExample) {
  Polynomial p;
  p.add_term({0, 1, 2}, 1);
  const auto r = rosenberg_reduce(p, 10);
  EXPECT_EQ(r.problem.num_vars(), 4u);
  EXPECT_LE(r.problem.poly().degree(), 2u);
  EXPECT_EQ(oracle::min_over_tail(r.problem.poly(), {1, 1, 1}, 4), 1);
  EXPECT_EQ(oracle::min_over_tail(r.problem.poly(), {1, 1, 0}, 4), 0);
}

TEST(RosenbergReduce, PenaltyIsZeroExactlyOnProduct) {
  Polynomial pen;
  detail::add_rosenberg_penalty(pen, 0, 1, 2, 1);
  for (std::uint64_t m = 0; m < 8; ++m) {
    const auto a = oracle::bits_of(m, 3);
    if (a[2] == (a[0] & a[1]))
      EXPECT_EQ(pen(a), 0) << m;
    else
      EXPECT_GT(pen(a), 0) << m;
  }
}

TEST(RosenbergReduce, QuadraticInputUnchanged) {
  std::mt19937_64 rng(1);
  const auto p = oracle::random_poly(6, 2, 12, 5, rng);
  const auto r = rosenberg_reduce(p);
  EXPECT_EQ(r.problem.poly(), p);
  EXPECT_TRUE(r.map.ancillas.empty());
}

TEST(RosenbergReduce, PreservesValueAndArgminOnRandomPolys) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 4 + trial % 7;
    const auto p = oracle::random_poly(n, std::min<std::size_t>(5, n), 6, 5, rng);
    for (auto pairing : {RosenbergPairing::greedy, RosenbergPairing::triangle_first}) {
      const auto r = rosenberg_reduce(p, std::nullopt, pairing);
      const auto& q = r.problem.poly();
      ASSERT_LE(q.degree(), 2u);
      ASSERT_LE(q.num_vars(), 24u);
      std::int64_t pmin = 0, qmin = 0;
      std::set<std::uint64_t> parg, qarg;
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        const auto a = oracle::bits_of(m, n);
        const auto pv = p(a);
        const auto qv = oracle::min_over_tail(q, a, q.num_vars());
        ASSERT_EQ(qv, pv) << "trial " << trial << " mask " << m;
        if (m == 0 || pv < pmin) pmin = pv, parg.clear();
        if (pv == pmin) parg.insert(m);
        if (m == 0 || qv < qmin) qmin = qv, qarg.clear();
        if (qv == qmin) qarg.insert(m);
      }
      EXPECT_EQ(parg, qarg);
    }
  }
}

TEST(RosenbergReduce, RejectsNonPositiveWeight) {
  Polynomial p;
  p.add_term({0, 1, 2}, 1);
  EXPECT_THROW(rosenberg_reduce(p, 0), Error);
  EXPECT_THROW(rosenberg_reduce(p, -3), Error);
}

TEST(RosenbergReduce, AllOnesHalfMatchesCountFormula) {
  for (std::uint64_t m = 4; m <= 12; ++m) {
    Polynomial positive(binomial(m, 2));
    for (const auto& c : enumerate_cliques(complete_graph(m), 4))
      positive.add_sorted_term(VarSet(c.edge_ids.begin(), c.edge_ids.end()), 1);
    const auto r = rosenberg_reduce(positive, std::nullopt, RosenbergPairing::triangle_first,
                                    ramsey_registry(m));
    EXPECT_EQ(r.problem.num_vars(), variable_count_rosenberg(m)) << m;
  }
}

TEST(CountFormulas, Values) {
  EXPECT_EQ(variable_count_paper(15), 3199u);
  EXPECT_EQ(variable_count_rosenberg(15), 3563u);
  EXPECT_EQ(variable_count_paper(17), 5456u);
  for (std::uint64_t m = 5; m <= 40; ++m)
    EXPECT_EQ(variable_count_rosenberg(m) - variable_count_paper(m), binomial(m - 1, 3));
}

TEST(RamseyPubo, TriangleCaseIsTheMctQubo) {
  for (std::size_t m = 3; m <= 8; ++m)
    EXPECT_EQ(build_ramsey_pubo(m, 3), build_mct(complete_graph(m)).poly()) << m;
}
