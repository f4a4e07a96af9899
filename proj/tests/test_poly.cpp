#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ramseyqubo/encode.hpp"
#include "ramseyqubo/poly.hpp"
#include "ramseyqubo/qubo.hpp"

using namespace ramseyqubo;

TEST(Poly, MergingAndPruning) {
  Polynomial p;
  p.add_term({2, 0}, 3);
  p.add_term({0, 2}, -3);
  EXPECT_EQ(p.num_terms(), 0u);
  p.add_term({1, 1}, 4);  // x*x = x
  EXPECT_EQ(p.coefficient({1}), 4);
  p.add_term({}, 7);
  EXPECT_EQ(p.constant(), 7);
  p.add_term({5}, 0);
  EXPECT_EQ(p.num_terms(), 1u);
  EXPECT_EQ(p.num_vars(), 3u);  // registry size never shrinks
}

TEST(Poly, EvaluateExamples) {
  const auto g = mct_gadget(0, 1, 2);
  EXPECT_EQ(evaluate(g, {1, 1, 1}), 1);
  EXPECT_EQ(evaluate(g, {1, 0, 1}), 0);
  EXPECT_EQ(evaluate(build_ramsey_pubo(4, 3), Assignment(6, 0)), 4);
  EXPECT_THROW(evaluate(g, {1, 1}), Error);
}

TEST(Poly, PositiveMonomialIsAnd) {
  Polynomial p;
  p.add_term({0, 1, 2, 3}, 1);
  for (std::uint64_t m = 0; m < 16; ++m) EXPECT_EQ(p(oracle::bits_of(m, 4)), m == 15 ? 1 : 0);
}

TEST(Poly, SubstituteExamples) {
  Polynomial xy;
  xy.add_term({0, 1}, 1);
  const auto s = substitute(xy, {{0, 1}});
  Polynomial x1;
  x1.add_term({1}, 1);
  x1.set_num_vars(2);
  EXPECT_EQ(s, x1);

  const auto g = substitute(mct_gadget(0, 1, 2), {{0, 1}, {1, 1}});
  ASSERT_EQ(g.num_terms(), 1u);
  EXPECT_EQ(g.terms().begin()->first, VarSet{2});
  EXPECT_EQ(g({1, 1, 1}), 1);
  EXPECT_EQ(g({1, 1, 0}), 0);
}

TEST(Poly, SubstituteAgreesWithOriginalExhaustively) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = trial < 20 ? 8 : 12;
    const auto p = oracle::random_poly(n, trial < 20 ? 4 : 6, 30, 5, rng);
    std::map<Var, std::uint8_t> fixes;
    std::vector<Var> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int k = 0; k < 3; ++k) fixes[order[k]] = static_cast<std::uint8_t>(rng() & 1);
    const auto q = substitute(p, fixes);
    for (const auto& [vars, c] : q.terms())
      for (Var v : vars) EXPECT_FALSE(fixes.count(v));
    for (std::uint64_t m = 0; m < (1u << n); ++m) {
      auto a = oracle::bits_of(m, n);
      bool consistent = true;
      for (const auto& [v, b] : fixes) consistent &= a[v] == b;
      if (!consistent) continue;
      ASSERT_EQ(q(a), p(a));
    }
  }
}

TEST(Poly, ProductExpandExamples) {
  const auto pp = product_expand({{0, true}, {1, true}});
  ASSERT_EQ(pp.num_terms(), 1u);
  EXPECT_EQ(pp.coefficient({0, 1}), 1);

  const auto nn = product_expand({{0, false}, {1, false}});
  EXPECT_EQ(nn.constant(), 1);
  EXPECT_EQ(nn.coefficient({0}), -1);
  EXPECT_EQ(nn.coefficient({1}), -1);
  EXPECT_EQ(nn.coefficient({0, 1}), 1);
  EXPECT_EQ(nn.num_terms(), 3u);

  const auto nnn = product_expand({{0, false}, {1, false}, {2, false}});
  EXPECT_EQ(nnn({0, 0, 0}), 1);
  EXPECT_EQ(nnn.num_terms() + 1, 8u);
}

TEST(Poly, ProductExpandMatchesDirectProduct) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Literal> f;
    for (Var v = 0; v < 7; ++v)
      if (rng() & 1) f.push_back({v, static_cast<bool>(rng() & 1)});
    const auto p = product_expand(f);
    for (std::uint64_t m = 0; m < 128; ++m) {
      const auto a = oracle::bits_of(m, 7);
      std::int64_t expect = 1;
      for (const auto& l : f) expect *= l.positive ? a[l.var] : 1 - a[l.var];
      ASSERT_EQ(p(a), expect);
    }
  }
}

TEST(Poly, ProductExpandErrors) {
  EXPECT_THROW(product_expand({{0, true}, {0, false}}), Error);
  std::vector<Literal> many;
  for (Var v = 0; v < 33; ++v) many.push_back({v, true});
  EXPECT_THROW(product_expand(many), Error);
}

TEST(Poly, AdditionIsCommutativeAndAssociative) {
  std::mt19937_64 rng(9);
  const auto a = oracle::random_poly(6, 3, 10, 4, rng);
  const auto b = oracle::random_poly(6, 3, 10, 4, rng);
  const auto c = oracle::random_poly(6, 3, 10, 4, rng);
  EXPECT_EQ(a + b, b + a);
  EXPECT_EQ((a + b) + c, a + (b + c));
  const auto z = a + a * std::int64_t{-1};
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.num_terms(), 0u);
}

TEST(Poly, MultilinearProduct) {
  std::mt19937_64 rng(10);
  const auto a = oracle::random_poly(5, 3, 6, 3, rng);
  const auto b = oracle::random_poly(5, 3, 6, 3, rng);
  const auto ab = a * b;
  for (std::uint64_t m = 0; m < 32; ++m) {
    const auto x = oracle::bits_of(m, 5);
    EXPECT_EQ(ab(x), a(x) * b(x));
  }
}

TEST(Poly, AsQubo) {
  const auto k5 = build_mct(complete_graph(5));
  EXPECT_EQ(k5.num_vars(), 10u);
  try {
    as_qubo(build_ramsey_pubo(5, 4), ramsey_registry(5));
    FAIL() << "expected DegreeTooHigh";
  } catch (const DegreeTooHigh& e) {
    EXPECT_GT(e.term().size(), 2u);
  }
  EXPECT_EQ(reduce_r4(5).problem.num_vars(), 24u);
  Polynomial q;
  q.add_term({0, 3}, 1);
  EXPECT_THROW(as_qubo(q, VarRegistry::plain(2)), Error);
}

TEST(Poly, SetNumVarsGuard) {
  Polynomial p;
  p.add_term({4}, 1);
  EXPECT_THROW(p.set_num_vars(3), Error);
  p.set_num_vars(9);
  EXPECT_EQ(p.num_vars(), 9u);
}
