/// @file qubo.hpp
/// @brief Variable registry, reduction bookkeeping and the degree-2 problem type.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramseyqubo/error.hpp"
#include "ramseyqubo/graph.hpp"
#include "ramseyqubo/poly.hpp"

namespace ramseyqubo {

enum class VarRole : std::uint8_t {
  plain,    // no graph meaning (generic PUBO input)
  edge,     // colour of a graph edge
  ancilla,  // introduced by an order reduction
  unused,   // index reserved for a pair that is not an edge of the graph
};

struct VarTag {
  VarRole role = VarRole::plain;
  EdgeId edge{};  // meaningful for VarRole::edge only
};

/// Maps variable indices to their meaning. `graph_order` is the vertex count
/// of the host graph (0 when variables carry no graph meaning). Edges whose
/// colour was fixed during preprocessing are kept in `fixed_edges` so a full
/// colouring can be rebuilt from a solution of the smaller problem.
class VarRegistry {
 public:
  VarRegistry() = default;

  static VarRegistry plain(std::size_t num_vars) {
    VarRegistry r;
    r.tags_.assign(num_vars, VarTag{});
    return r;
  }

  /// One variable per vertex pair of g, at its lexicographic rank. Pairs that
  /// are not edges of g are tagged unused.
  static VarRegistry for_graph(const Graph& g) {
    VarRegistry r;
    r.graph_order_ = g.num_vertices();
    r.tags_.assign(g.num_pairs(), VarTag{VarRole::unused, {}});
    for (const auto& e : g.edges()) r.tags_[e.index(g.num_vertices())] = {VarRole::edge, e};
    return r;
  }

  std::size_t size() const noexcept { return tags_.size(); }
  std::size_t graph_order() const noexcept { return graph_order_; }
  void set_graph_order(std::size_t n) noexcept { graph_order_ = n; }
  const VarTag& operator[](Var v) const { return tags_.at(v); }
  const std::vector<VarTag>& tags() const noexcept { return tags_; }

  Var add(VarTag tag) {
    tags_.push_back(tag);
    return static_cast<Var>(tags_.size() - 1);
  }
  void resize(std::size_t n) { tags_.resize(n); }

  std::size_t count(VarRole role) const noexcept {
    std::size_t c = 0;
    for (const auto& t : tags_) c += t.role == role;
    return c;
  }

  std::vector<Var> vars_with_role(VarRole role) const {
    std::vector<Var> out;
    for (std::size_t v = 0; v < tags_.size(); ++v)
      if (tags_[v].role == role) out.push_back(static_cast<Var>(v));
    return out;
  }

  std::optional<Var> find_edge(EdgeId e) const {
    for (std::size_t v = 0; v < tags_.size(); ++v)
      if (tags_[v].role == VarRole::edge && tags_[v].edge == e) return static_cast<Var>(v);
    return std::nullopt;
  }

  const std::vector<std::pair<EdgeId, std::uint8_t>>& fixed_edges() const noexcept {
    return fixed_edges_;
  }
  void add_fixed_edge(EdgeId e, std::uint8_t colour) { fixed_edges_.emplace_back(e, colour); }

  friend bool operator==(const VarRegistry& a, const VarRegistry& b) {
    if (a.graph_order_ != b.graph_order_ || a.tags_.size() != b.tags_.size() ||
        a.fixed_edges_ != b.fixed_edges_)
      return false;
    for (std::size_t v = 0; v < a.tags_.size(); ++v) {
      if (a.tags_[v].role != b.tags_[v].role) return false;
      if (a.tags_[v].role == VarRole::edge && a.tags_[v].edge != b.tags_[v].edge) return false;
    }
    return true;
  }

 private:
  std::size_t graph_order_ = 0;
  std::vector<VarTag> tags_;
  std::vector<std::pair<EdgeId, std::uint8_t>> fixed_edges_;
};

/// Where an ancilla came from.
///  - triple: shared across every K4 {a,b,c,*} of the R(4) gadget reduction
///  - quad:   one of the two per-K4 ancillas (slot 2 or 3)
///  - pair:   Rosenberg substitution a = x_u * x_v
struct AncillaRecord {
  enum class Kind : std::uint8_t { triple, quad, pair };

  Var index = 0;
  Kind kind = Kind::triple;
  std::array<std::uint32_t, 4> members{};  // vertices, or (u, v) variables for pair
  std::uint8_t slot = 0;                   // 2 or 3 for quad

  friend bool operator==(const AncillaRecord&, const AncillaRecord&) = default;
};

/// One emitted penalty block over three variables.
///  - mct: 1 - x - y - z + xy + yz + zx   (members x, y, z)
///  - rosenberg: w * (xy - 2ax - 2ay + 3a) (members x, y, a)
struct GadgetRecord {
  enum class Kind : std::uint8_t { mct, rosenberg };
  Kind kind = Kind::mct;
  std::array<Var, 3> members{};

  friend bool operator==(const GadgetRecord&, const GadgetRecord&) = default;
};

struct ReductionMap {
  std::size_t original_vars = 0;
  std::vector<AncillaRecord> ancillas;
  std::vector<GadgetRecord> gadgets;

  friend bool operator==(const ReductionMap&, const ReductionMap&) = default;
};

class DegreeTooHigh : public Error {
 public:
  DegreeTooHigh(VarSet term, std::size_t limit)
      : Error("term " + to_string(term) + " has degree " + std::to_string(term.size()) +
              " > " + std::to_string(limit)),
        term_(std::move(term)) {}
  const VarSet& term() const noexcept { return term_; }

 private:
  VarSet term_;
};

/// A polynomial together with the meaning of its variables.
template <Coefficient Coeff = std::int64_t>
struct Problem {
  BinaryPolynomial<Coeff> poly;
  VarRegistry registry;
};

/// Degree <= 2 problem. Only constructible through as_qubo, which checks the degree.
template <Coefficient Coeff = std::int64_t>
class QuboProblem {
 public:
  const BinaryPolynomial<Coeff>& poly() const noexcept { return poly_; }
  const VarRegistry& registry() const noexcept { return registry_; }
  std::size_t num_vars() const noexcept { return poly_.num_vars(); }
  Coeff offset() const noexcept { return poly_.constant(); }

  Problem<Coeff> as_problem() const { return {poly_, registry_}; }

  template <Coefficient C>
  friend QuboProblem<C> as_qubo(BinaryPolynomial<C> p, VarRegistry kinds);

 private:
  QuboProblem(BinaryPolynomial<Coeff> p, VarRegistry r)
      : poly_(std::move(p)), registry_(std::move(r)) {}

  BinaryPolynomial<Coeff> poly_;
  VarRegistry registry_;
};

/// Wraps p; throws DegreeTooHigh carrying the first offending term.
template <Coefficient Coeff>
QuboProblem<Coeff> as_qubo(BinaryPolynomial<Coeff> p, VarRegistry kinds) {
  for (const auto& [vars, c] : p.terms())
    if (vars.size() > 2) throw DegreeTooHigh(vars, 2);
  if (kinds.size() < p.num_vars())
    throw Error("as_qubo: registry has " + std::to_string(kinds.size()) +
                " entries for " + std::to_string(p.num_vars()) + " variables");
  p.set_num_vars(kinds.size());
  return QuboProblem<Coeff>(std::move(p), std::move(kinds));
}

}  // namespace ramseyqubo
