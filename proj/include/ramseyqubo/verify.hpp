/// @file verify.hpp
/// @brief Ground-truth scoring of edge colourings.
///
/// The counters here walk vertex subsets directly and compare edge colours;
/// they share no code with the polynomial encoders or with clique
/// enumeration in graph.hpp, so each side can check the other.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ramseyqubo/error.hpp"
#include "ramseyqubo/graph.hpp"
#include "ramseyqubo/poly.hpp"
#include "ramseyqubo/qubo.hpp"

namespace ramseyqubo {

/// Colour per vertex pair of an n-vertex graph; -1 where unassigned.
class Coloring {
 public:
  Coloring() = default;
  explicit Coloring(std::size_t n) : n_(n), colour_(n * (n > 0 ? n - 1 : 0) / 2, -1) {}

  std::size_t num_vertices() const noexcept { return n_; }

  int get(Vertex u, Vertex v) const { return colour_.at(slot(u, v)); }
  bool is_set(Vertex u, Vertex v) const { return get(u, v) >= 0; }
  void set(Vertex u, Vertex v, int c) {
    if (c != 0 && c != 1) throw Error("Coloring: colour must be 0 or 1");
    colour_.at(slot(u, v)) = static_cast<std::int8_t>(c);
  }

  std::size_t num_assigned() const noexcept {
    std::size_t k = 0;
    for (auto c : colour_) k += c >= 0;
    return k;
  }

  /// Swaps red and blue on every assigned pair.
  Coloring swapped() const {
    Coloring r = *this;
    for (auto& c : r.colour_)
      if (c >= 0) c = static_cast<std::int8_t>(1 - c);
    return r;
  }

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  std::size_t slot(Vertex u, Vertex v) const {
    if (u == v || u >= n_ || v >= n_)
      throw Error("Coloring: bad pair (" + std::to_string(u) + "," + std::to_string(v) + ")");
    if (u > v) std::swap(u, v);
    return static_cast<std::size_t>(u) * n_ - static_cast<std::size_t>(u) * (u + 1) / 2 + (v - u - 1);
  }

  std::size_t n_ = 0;
  std::vector<std::int8_t> colour_;
};

struct ColoringReport {
  std::string graph_id;
  std::size_t k = 0;
  std::uint64_t monochromatic = 0;
  std::uint64_t red = 0;   // colour 0
  std::uint64_t blue = 0;  // colour 1
  std::optional<std::vector<Vertex>> witness;
};

/// Counts monochromatic K_k subgraphs of g under `coloring`.
inline ColoringReport count_monochromatic(const Graph& g, const Coloring& coloring, std::size_t k,
                                          std::string graph_id = {}) {
  if (k < 2) throw Error("count_monochromatic: k must be at least 2");
  const std::size_t n = g.num_vertices();
  if (coloring.num_vertices() != n)
    throw Error("count_monochromatic: colouring is for " +
                std::to_string(coloring.num_vertices()) + " vertices, graph has " +
                std::to_string(n));
  for (const auto& e : g.edges())
    if (!coloring.is_set(e.i, e.j))
      throw Error("count_monochromatic: edge (" + std::to_string(e.i) + "," +
                  std::to_string(e.j) + ") has no colour");

  ColoringReport report;
  report.graph_id = std::move(graph_id);
  report.k = k;
  if (k > n) return report;

  // Odometer over increasing k-tuples.
  std::vector<Vertex> pick(k);
  for (std::size_t r = 0; r < k; ++r) pick[r] = static_cast<Vertex>(r);
  while (true) {
    bool clique = true;
    int colour = -1;
    bool uniform = true;
    for (std::size_t r = 0; r < k && clique; ++r)
      for (std::size_t s = r + 1; s < k; ++s) {
        if (!g.has_edge(pick[r], pick[s])) {
          clique = false;
          break;
        }
        const int c = coloring.get(pick[r], pick[s]);
        if (colour < 0) colour = c;
        else if (c != colour) uniform = false;
      }
    if (clique && uniform) {
      ++report.monochromatic;
      ++(colour == 0 ? report.red : report.blue);
      if (!report.witness) report.witness = pick;
    }
    std::size_t r = k;
    while (r > 0 && pick[r - 1] == n - k + (r - 1)) --r;
    if (r == 0) break;
    ++pick[r - 1];
    for (std::size_t s = r; s < k; ++s) pick[s] = pick[s - 1] + 1;
  }
  return report;
}

/// True iff the colouring of K_m has no monochromatic K_n, i.e. it witnesses R(n) > m.
inline bool certify_r_lower_bound(std::size_t m, std::size_t n, const Coloring& coloring) {
  return count_monochromatic(complete_graph(m), coloring, n).monochromatic == 0;
}

/// Reads the edge colours out of a solved problem, including edges fixed
/// during preprocessing.
inline Coloring coloring_from_assignment(const VarRegistry& registry, const Assignment& bits) {
  if (registry.graph_order() == 0) throw Error("coloring_from_assignment: registry has no graph");
  if (bits.size() < registry.size())
    throw Error("coloring_from_assignment: assignment shorter than registry");
  Coloring c(registry.graph_order());
  for (std::size_t v = 0; v < registry.size(); ++v) {
    const auto& tag = registry[static_cast<Var>(v)];
    if (tag.role == VarRole::edge) c.set(tag.edge.i, tag.edge.j, bits[v]);
  }
  for (const auto& [e, colour] : registry.fixed_edges()) c.set(e.i, e.j, colour);
  return c;
}

/// Edge-variable values of `coloring` in the order min_over_ancillas expects.
inline Assignment edge_assignment(const VarRegistry& registry, const Coloring& coloring) {
  Assignment a;
  for (std::size_t v = 0; v < registry.size(); ++v) {
    const auto& tag = registry[static_cast<Var>(v)];
    if (tag.role == VarRole::edge) {
      const int c = coloring.get(tag.edge.i, tag.edge.j);
      if (c < 0) throw Error("edge_assignment: colouring misses an edge");
      a.push_back(static_cast<std::uint8_t>(c));
    }
  }
  return a;
}

// ---------------------------------------------------------------------------
// Text format: "coloring n <m>" then "<i> <j> <0|1>" per coloured pair.

inline void write_coloring(std::ostream& os, const Coloring& c) {
  const auto n = static_cast<Vertex>(c.num_vertices());
  os << "coloring n " << n << '\n';
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (c.is_set(i, j)) os << i << ' ' << j << ' ' << c.get(i, j) << '\n';
}

inline Coloring read_coloring(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<Coloring> c;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    if (!c) {
      std::string word, tag;
      long long n = 0;
      if (!(ls >> word >> tag >> n) || word != "coloring" || tag != "n" || n < 1)
        throw ParseError(lineno, "expected 'coloring n <m>'");
      c.emplace(static_cast<std::size_t>(n));
      continue;
    }
    long long i = -1, j = -1, colour = -1;
    std::string rest;
    if (!(ls >> i >> j >> colour) || (ls >> rest) || i < 0 || j < 0 || i == j ||
        static_cast<std::size_t>(std::max(i, j)) >= c->num_vertices() || (colour != 0 && colour != 1))
      throw ParseError(lineno, "malformed colour line");
    if (c->is_set(static_cast<Vertex>(i), static_cast<Vertex>(j)))
      throw ParseError(lineno, "pair coloured twice");
    c->set(static_cast<Vertex>(i), static_cast<Vertex>(j), static_cast<int>(colour));
  }
  if (!c) throw Error("colouring file has no header");
  return *c;
}

/// Checks that `c` colours exactly the edges of g.
inline void check_coverage(const Graph& g, const Coloring& c) {
  if (c.num_vertices() != g.num_vertices())
    throw Error("colouring is for " + std::to_string(c.num_vertices()) + " vertices, graph has " +
                std::to_string(g.num_vertices()));
  for (const auto& e : g.edges())
    if (!c.is_set(e.i, e.j))
      throw Error("edge (" + std::to_string(e.i) + "," + std::to_string(e.j) + ") not coloured");
  if (c.num_assigned() != g.num_edges()) throw Error("colouring assigns pairs that are not edges");
}

}  // namespace ramseyqubo
