/// @file precolor.hpp
/// @brief Fixing part of the colouring up front from star-graph Ramsey numbers.
///
/// Every 2-colouring of K_m with m >= R(S_k) contains a monochromatic star
/// S_k, and K_m is vertex-transitive, so a search may assume one particular
/// star has one particular colour. Fixing those k edge variables in the
/// gadget-reduced R(4) problem also determines every ancilla whose gadget now
/// holds two equal fixed members: in any zero-cost assignment that ancilla
/// must take the opposite value.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ramseyqubo/error.hpp"
#include "ramseyqubo/graph.hpp"
#include "ramseyqubo/poly.hpp"
#include "ramseyqubo/qubo.hpp"

namespace ramseyqubo {

/// R(S_n): 2n - 1 for even n, 2n for odd n.
constexpr std::uint64_t star_ramsey(std::uint64_t n) {
  if (n < 1) throw Error("star_ramsey: n must be at least 1");
  return n % 2 == 0 ? 2 * n - 1 : 2 * n;
}

struct PrecolorPlan {
  Vertex center = 0;
  std::vector<Vertex> leaves;
  std::uint8_t colour = 0;  // 0 = red

  // Filled in by precolor_star, indices refer to the input problem.
  std::vector<Var> fixed_edge_vars;
  std::vector<std::pair<Var, std::uint8_t>> fixed_ancilla_vars;
};

/// Star S_k centred on the last vertex of K_m with leaves 0..k-1.
inline PrecolorPlan default_star_plan(std::size_t m, std::size_t k, std::uint8_t colour = 0) {
  if (k + 1 > m) throw Error("default_star_plan: S_" + std::to_string(k) + " does not fit in K_" +
                             std::to_string(m));
  PrecolorPlan plan;
  plan.center = static_cast<Vertex>(m - 1);
  plan.leaves.resize(k);
  std::iota(plan.leaves.begin(), plan.leaves.end(), Vertex{0});
  plan.colour = colour;
  return plan;
}

struct PrecolorResult {
  QuboProblem<std::int64_t> problem;  // over the remaining variables, renumbered densely
  ReductionMap map;
  std::size_t eliminated = 0;
  PrecolorPlan plan;
  std::vector<Var> kept;  // new index -> index in the input problem

  /// Lifts an assignment of the reduced problem to the input problem's indices.
  Assignment lift(const Assignment& reduced, std::size_t original_vars) const {
    if (reduced.size() != kept.size())
      throw Error("lift: assignment has " + std::to_string(reduced.size()) + " bits, expected " +
                  std::to_string(kept.size()));
    Assignment full(original_vars, 0);
    for (std::size_t v = 0; v < kept.size(); ++v) full[kept[v]] = reduced[v];
    for (Var v : plan.fixed_edge_vars) full[v] = plan.colour;
    for (const auto& [v, value] : plan.fixed_ancilla_vars) full[v] = value;
    return full;
  }
};

inline PrecolorResult precolor_star(const QuboProblem<std::int64_t>& problem,
                                    const ReductionMap& map, std::size_t m, PrecolorPlan plan) {
  if (plan.colour > 1) throw Error("precolor_star: colour must be 0 or 1");
  if (!plan.leaves.empty() && plan.center >= m)
    throw Error("precolor_star: center outside K_" + std::to_string(m));
  for (Vertex leaf : plan.leaves)
    if (leaf >= m) throw Error("precolor_star: leaf outside K_" + std::to_string(m));

  const auto& registry = problem.registry();
  std::vector<int> value(problem.num_vars(), -1);
  plan.fixed_edge_vars.clear();
  plan.fixed_ancilla_vars.clear();
  for (const auto& e : star_edges(plan.center, plan.leaves)) {
    const auto v = registry.find_edge(e);
    if (!v)
      throw Error("precolor_star: edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                  ") is not a variable of the problem");
    value[*v] = plan.colour;
    plan.fixed_edge_vars.push_back(*v);
  }

  // Force ancillas to a fixed point.
  for (bool changed = !plan.leaves.empty(); changed;) {
    changed = false;
    for (const auto& g : map.gadgets) {
      if (g.kind != GadgetRecord::Kind::mct) continue;
      for (int free_slot = 0; free_slot < 3; ++free_slot) {
        const Var z = g.members[free_slot];
        const Var x = g.members[(free_slot + 1) % 3];
        const Var y = g.members[(free_slot + 2) % 3];
        if (value[z] < 0 && registry[z].role == VarRole::ancilla && value[x] >= 0 &&
            value[x] == value[y]) {
          value[z] = 1 - value[x];
          plan.fixed_ancilla_vars.emplace_back(z, static_cast<std::uint8_t>(value[z]));
          changed = true;
        }
      }
    }
  }

  std::map<Var, std::uint8_t> fixes;
  for (std::size_t v = 0; v < value.size(); ++v)
    if (value[v] >= 0) fixes.emplace(static_cast<Var>(v), static_cast<std::uint8_t>(value[v]));
  const auto substituted = substitute(problem.poly(), fixes);

  std::vector<Var> kept;
  ReductionMap new_map;
  std::vector<Var> renumber(problem.num_vars(), 0);
  VarRegistry reg;
  reg.set_graph_order(registry.graph_order());
  for (const auto& [e, c] : registry.fixed_edges()) reg.add_fixed_edge(e, c);
  for (Var v : plan.fixed_edge_vars) reg.add_fixed_edge(registry[v].edge, plan.colour);
  for (std::size_t v = 0; v < value.size(); ++v) {
    if (value[v] >= 0) continue;
    renumber[v] = static_cast<Var>(kept.size());
    kept.push_back(static_cast<Var>(v));
    reg.add(registry[static_cast<Var>(v)]);
  }

  BinaryPolynomial<std::int64_t> poly(kept.size());
  poly.add_constant(substituted.constant());
  for (const auto& [vars, c] : substituted.terms()) {
    VarSet mapped;
    mapped.reserve(vars.size());
    for (Var v : vars) mapped.push_back(renumber[v]);  // monotone, stays sorted
    poly.add_sorted_term(std::move(mapped), c);
  }
  poly.set_nonnegative(problem.poly().nonnegative());

  new_map.original_vars = reg.count(VarRole::edge);
  for (auto rec : map.ancillas) {
    if (value[rec.index] >= 0) continue;
    rec.index = renumber[rec.index];
    new_map.ancillas.push_back(rec);
  }
  for (auto g : map.gadgets) {
    if (std::any_of(g.members.begin(), g.members.end(), [&](Var v) { return value[v] >= 0; }))
      continue;
    for (auto& v : g.members) v = renumber[v];
    new_map.gadgets.push_back(g);
  }

  return {as_qubo(std::move(poly), std::move(reg)), std::move(new_map), fixes.size(),
          std::move(plan), std::move(kept)};
}

}  // namespace ramseyqubo
