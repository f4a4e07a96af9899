/// @file encode.hpp
/// @brief Encoders for monochromatic-triangle and Ramsey colouring problems,
/// and the two order reductions (shared-ancilla R(4) gadgets, Rosenberg).

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ramseyqubo/error.hpp"
#include "ramseyqubo/graph.hpp"
#include "ramseyqubo/poly.hpp"
#include "ramseyqubo/qubo.hpp"

namespace ramseyqubo {

/// Not-all-equal penalty 1 - x - y - z + xy + yz + zx: equals 1 when
/// x = y = z and 0 otherwise. It is the expansion of xyz + (1-x)(1-y)(1-z);
/// the cubic parts cancel.
template <Coefficient Coeff = std::int64_t>
BinaryPolynomial<Coeff> mct_gadget(Var x, Var y, Var z) {
  if (x == y || y == z || x == z) throw Error("mct_gadget: variables must be distinct");
  BinaryPolynomial<Coeff> p;
  p.add_constant(1);
  p.add_term({x}, -1);
  p.add_term({y}, -1);
  p.add_term({z}, -1);
  p.add_term({x, y}, 1);
  p.add_term({y, z}, 1);
  p.add_term({x, z}, 1);
  p.set_nonnegative(true);
  return p;
}

namespace detail {
template <Coefficient Coeff>
void add_mct_gadget(BinaryPolynomial<Coeff>& p, Var x, Var y, Var z) {
  p.add_constant(1);
  p.add_sorted_term({x}, -1);
  p.add_sorted_term({y}, -1);
  p.add_sorted_term({z}, -1);
  p.add_sorted_term({std::min(x, y), std::max(x, y)}, 1);
  p.add_sorted_term({std::min(y, z), std::max(y, z)}, 1);
  p.add_sorted_term({std::min(x, z), std::max(x, z)}, 1);
}
}  // namespace detail

/// Sum of mct_gadget over every triangle of g. Uses only edge variables; the
/// minimum equals the fewest monochromatic triangles of any 2-colouring.
template <Coefficient Coeff = std::int64_t>
QuboProblem<Coeff> build_mct(const Graph& g) {
  auto registry = VarRegistry::for_graph(g);
  BinaryPolynomial<Coeff> p(registry.size());
  for (const auto& tri : enumerate_cliques(g, 3))
    detail::add_mct_gadget(p, static_cast<Var>(tri.edge_ids[0]), static_cast<Var>(tri.edge_ids[1]),
                           static_cast<Var>(tri.edge_ids[2]));
  p.set_nonnegative(true);
  return as_qubo(std::move(p), std::move(registry));
}

/// Sum over every K_n of K_m of prod(e) + prod(1 - e) over its C(n,2) edges.
/// The value at a colouring is the number of monochromatic K_n; the degree is C(n,2).
template <Coefficient Coeff = std::int64_t>
BinaryPolynomial<Coeff> build_ramsey_pubo(std::size_t m, std::size_t n) {
  if (n < 2 || n > m) throw Error("build_ramsey_pubo: need 2 <= n <= m");
  const std::size_t k = n * (n - 1) / 2;
  if (k > kMaxProductFactors)
    throw Error("build_ramsey_pubo: clique has more than " + std::to_string(kMaxProductFactors) +
                " edges");
  const Graph g = complete_graph(m);
  BinaryPolynomial<Coeff> p(g.num_pairs());

  // prod(1-e) = sum over subsets S of (-1)^#S prod_S e
  const std::uint64_t subsets = std::uint64_t{1} << k;
  for (const auto& clique : enumerate_cliques(g, n)) {
    VarSet all(clique.edge_ids.begin(), clique.edge_ids.end());  // increasing already
    p.add_sorted_term(all, 1);
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
      VarSet vars;
      vars.reserve(k);
      for (std::size_t b = 0; b < k; ++b)
        if (mask >> b & 1) vars.push_back(all[b]);
      p.add_sorted_term(std::move(vars), (std::popcount(mask) & 1) ? Coeff{-1} : Coeff{1});
    }
  }
  p.set_nonnegative(true);
  return p;
}

/// Registry for build_ramsey_pubo(m, n): every variable is an edge of K_m.
inline VarRegistry ramsey_registry(std::size_t m) {
  return VarRegistry::for_graph(complete_graph(m));
}

/// How the six edges of a K4 {a<b<c<d} are split into three gadget pairs.
/// Both keep {(a,b),(b,c)} as the pair whose ancilla is shared by all K4s on
/// the same first three vertices, so variable counts agree.
enum class R4Pairing : std::uint8_t {
  star_aligned,  // {(a,c),(c,d)}, {(a,d),(b,d)}: star edges at the top vertex share a gadget
  listing,       // {(a,c),(a,d)}, {(b,d),(c,d)}
};

struct R4Reduction {
  QuboProblem<std::int64_t> problem;
  ReductionMap map;
};

/// Quadratic R(4) objective on K_m built from not-all-equal gadgets.
///
/// For every triple a<b<c<m-1 one shared ancilla s with gadget (ab, bc, s).
/// For every K4 a<b<c<d two fresh ancillas p, q, one gadget per remaining
/// edge pair, and a top gadget (s, p, q). A monochromatic K4 forces s, p, q
/// to the opposite colour and the top gadget then pays 1; any other K4 admits
/// a zero-cost completion. Hence the minimum over ancillas is 0 exactly when
/// the edge colouring has no monochromatic K4.
///
/// Variables: C(m,2) edges first (lexicographic), then ancillas in emission
/// order; C(m-1,3) + 2 C(m,4) ancillas in total.
inline R4Reduction reduce_r4(std::size_t m, R4Pairing pairing = R4Pairing::star_aligned) {
  if (m < 4) throw Error("reduce_r4: m must be at least 4");
  const Graph g = complete_graph(m);
  auto registry = VarRegistry::for_graph(g);
  ReductionMap map;
  map.original_vars = registry.size();
  BinaryPolynomial<std::int64_t> p;

  auto edge = [&](Vertex u, Vertex v) { return static_cast<Var>(g.edge_index(u, v)); };
  auto gadget = [&](Var x, Var y, Var z) {
    detail::add_mct_gadget(p, x, y, z);
    map.gadgets.push_back({GadgetRecord::Kind::mct, {x, y, z}});
  };
  auto ancilla = [&](AncillaRecord rec) {
    rec.index = registry.add({VarRole::ancilla, {}});
    map.ancillas.push_back(rec);
    return rec.index;
  };

  const auto top = static_cast<Vertex>(m);
  for (Vertex a = 0; a < top; ++a)
    for (Vertex b = a + 1; b < top; ++b)
      for (Vertex c = b + 1; c + 1 < top; ++c) {
        const Var s = ancilla({0, AncillaRecord::Kind::triple, {a, b, c, 0}, 0});
        gadget(edge(a, b), edge(b, c), s);
        for (Vertex d = c + 1; d < top; ++d) {
          const Var q2 = ancilla({0, AncillaRecord::Kind::quad, {a, b, c, d}, 2});
          const Var q3 = ancilla({0, AncillaRecord::Kind::quad, {a, b, c, d}, 3});
          if (pairing == R4Pairing::listing) {
            gadget(edge(a, c), edge(a, d), q2);
            gadget(edge(b, d), edge(c, d), q3);
          } else {
            gadget(edge(a, c), edge(c, d), q2);
            gadget(edge(a, d), edge(b, d), q3);
          }
          gadget(s, q2, q3);
        }
      }

  p.set_nonnegative(true);
  p.set_num_vars(registry.size());
  return {as_qubo(std::move(p), std::move(registry)), std::move(map)};
}

/// C(m-1,3) + 2 C(m,4) + C(m,2): variables used by reduce_r4(m).
constexpr std::uint64_t variable_count_paper(std::uint64_t m) {
  return binomial(m - 1, 3) + 2 * binomial(m, 4) + binomial(m, 2);
}

/// 2 C(m-1,3) + 2 C(m,4) + C(m,2): prefix-shared Rosenberg chains over the
/// all-ones product of each K4, taking the triangle on its three smallest
/// vertices first.
constexpr std::uint64_t variable_count_rosenberg(std::uint64_t m) {
  return 2 * binomial(m - 1, 3) + 2 * binomial(m, 4) + binomial(m, 2);
}

enum class RosenbergPairing : std::uint8_t {
  /// Repeatedly substitute the variable pair that occurs in the most terms of
  /// degree >= 3; ties go to the lexicographically smallest pair.
  greedy,
  /// Reduce each term by a left-to-right chain (x1 x2 -> a1, a1 x3 -> a2, ...)
  /// with equal prefixes sharing ancillas. Edge variables are ordered by
  /// (larger endpoint, smaller endpoint), which puts the triangle on the three
  /// smallest vertices of a clique first; other variables follow by index.
  triangle_first,
};

struct RosenbergReduction {
  QuboProblem<std::int64_t> problem;
  ReductionMap map;
  std::int64_t weight = 0;
};

namespace detail {

/// Penalty w * (xy - 2ax - 2ay + 3a), zero iff a = x*y.
inline void add_rosenberg_penalty(BinaryPolynomial<std::int64_t>& p, Var x, Var y, Var a,
                                  std::int64_t w) {
  p.add_term({x, y}, w);
  p.add_term({a, x}, -2 * w);
  p.add_term({a, y}, -2 * w);
  p.add_term({a}, 3 * w);
}

class RosenbergBuilder {
 public:
  RosenbergBuilder(const BinaryPolynomial<std::int64_t>& p, VarRegistry registry,
                   std::int64_t weight)
      : registry_(std::move(registry)), weight_(weight) {
    map_.original_vars = registry_.size();
    out_.add_constant(p.constant());
  }

  Var pair_ancilla(Var u, Var v) {
    if (u > v) std::swap(u, v);
    auto [it, inserted] = pair_to_ancilla_.try_emplace({u, v}, 0);
    if (!inserted) return it->second;
    const Var a = registry_.add({VarRole::ancilla, {}});
    it->second = a;
    map_.ancillas.push_back({a, AncillaRecord::Kind::pair, {u, v, 0, 0}, 0});
    map_.gadgets.push_back({GadgetRecord::Kind::rosenberg, {u, v, a}});
    add_rosenberg_penalty(penalties_, u, v, a, weight_);
    return a;
  }

  void emit(VarSet vars, std::int64_t c) { out_.add_term(std::move(vars), c); }

  RosenbergReduction finish(bool nonnegative) && {
    out_ += penalties_;
    out_.set_num_vars(registry_.size());
    out_.set_nonnegative(nonnegative);
    return {as_qubo(std::move(out_), std::move(registry_)), std::move(map_), weight_};
  }

 private:
  VarRegistry registry_;
  std::int64_t weight_;
  ReductionMap map_;
  BinaryPolynomial<std::int64_t> out_;
  BinaryPolynomial<std::int64_t> penalties_;
  std::map<std::pair<Var, Var>, Var> pair_to_ancilla_;
};

inline void rosenberg_chain(const BinaryPolynomial<std::int64_t>& p, const VarRegistry& registry,
                            RosenbergBuilder& builder) {
  auto key = [&](Var v) {
    const auto& t = v < registry.size() ? registry[v] : VarTag{};
    if (t.role == VarRole::edge)
      return std::tuple<int, std::uint32_t, std::uint32_t>{0, t.edge.j, t.edge.i};
    return std::tuple<int, std::uint32_t, std::uint32_t>{1, v, 0};
  };
  for (const auto& [vars, c] : p.terms()) {
    if (vars.size() <= 2) {
      builder.emit(vars, c);
      continue;
    }
    VarSet order = vars;
    std::sort(order.begin(), order.end(), [&](Var x, Var y) { return key(x) < key(y); });
    Var acc = builder.pair_ancilla(order[0], order[1]);
    for (std::size_t i = 2; i + 1 < order.size(); ++i) acc = builder.pair_ancilla(acc, order[i]);
    builder.emit({acc, order.back()}, c);
  }
}

inline void rosenberg_greedy(const BinaryPolynomial<std::int64_t>& p, RosenbergBuilder& builder) {
  // Working copy of the high-degree terms; low-degree terms pass straight through.
  std::map<VarSet, std::int64_t> high;
  for (const auto& [vars, c] : p.terms()) {
    if (vars.size() <= 2)
      builder.emit(vars, c);
    else
      high[vars] += c;
  }
  while (!high.empty()) {
    std::map<std::pair<Var, Var>, std::size_t> freq;
    for (const auto& [vars, c] : high)
      for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j) ++freq[{vars[i], vars[j]}];
    auto best = freq.begin();
    for (auto it = freq.begin(); it != freq.end(); ++it)
      if (it->second > best->second) best = it;
    const auto [u, v] = best->first;
    const Var a = builder.pair_ancilla(u, v);

    std::map<VarSet, std::int64_t> next;
    for (auto& [vars, c] : high) {
      VarSet w = vars;
      if (std::binary_search(w.begin(), w.end(), u) && std::binary_search(w.begin(), w.end(), v)) {
        std::erase(w, u);
        std::erase(w, v);
        w.insert(std::upper_bound(w.begin(), w.end(), a), a);
      }
      if (w.size() <= 2) {
        builder.emit(std::move(w), c);
      } else {
        auto& slot = next[std::move(w)];
        slot += c;
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
    high = std::move(next);
  }
}

}  // namespace detail

/// Default Rosenberg weight: one more than the sum of absolute coefficients.
inline std::int64_t default_rosenberg_weight(const BinaryPolynomial<std::int64_t>& p) {
  return 1 + p.sum_abs_coefficients();
}

/// Quadratizes p by substituting variable pairs with ancillas a = x*y, each
/// enforced by weight * (xy - 2ax - 2ay + 3a). For every assignment of the
/// original variables the minimum over ancillas equals p's value, provided
/// weight exceeds the total absolute coefficient mass of p (the default).
/// Terms of degree <= 2 are copied unchanged.
inline RosenbergReduction rosenberg_reduce(const BinaryPolynomial<std::int64_t>& p,
                                           std::optional<std::int64_t> weight = std::nullopt,
                                           RosenbergPairing pairing = RosenbergPairing::greedy,
                                           std::optional<VarRegistry> registry = std::nullopt) {
  const std::int64_t w = weight.value_or(default_rosenberg_weight(p));
  if (w <= 0) throw Error("rosenberg_reduce: weight must be positive");
  VarRegistry reg = registry ? std::move(*registry) : VarRegistry::plain(p.num_vars());
  if (reg.size() < p.num_vars()) throw Error("rosenberg_reduce: registry too small");
  detail::RosenbergBuilder builder(p, reg, w);
  if (pairing == RosenbergPairing::triangle_first)
    detail::rosenberg_chain(p, reg, builder);
  else
    detail::rosenberg_greedy(p, builder);
  return std::move(builder).finish(p.nonnegative());
}

}  // namespace ramseyqubo
