/// @file graph.hpp
/// @brief Undirected simple graphs, canonical edge indexing, clique and star
/// enumeration, and the plain-text graph format.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ramseyqubo/error.hpp"

namespace ramseyqubo {

using Vertex = std::uint32_t;

/// Binomial coefficient C(n, k); zero when k > n.
constexpr std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// An edge (i, j) with i < j. Its variable index is the rank of the pair in
/// lexicographic order over all pairs of 0..n-1, so indices do not depend on
/// which other edges are present.
struct EdgeId {
  Vertex i = 0;
  Vertex j = 0;

  static constexpr EdgeId canonical(Vertex u, Vertex v) noexcept {
    return u < v ? EdgeId{u, v} : EdgeId{v, u};
  }

  constexpr std::size_t index(std::size_t n) const noexcept {
    return static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i + 1) / 2 +
           (j - i - 1);
  }

  static EdgeId from_index(std::size_t index, std::size_t n) {
    Vertex i = 0;
    std::size_t row = n - 1;
    while (index >= row) {
      index -= row;
      ++i;
      --row;
    }
    return {i, static_cast<Vertex>(i + 1 + index)};
  }

  friend constexpr auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

struct Clique {
  std::vector<Vertex> vertices;      // strictly increasing
  std::vector<std::size_t> edge_ids; // C(k,2) edge variable indices, lexicographic pair order
};

class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t n) : n_(n), adjacency_(n * n, 0) {}

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::size_t num_pairs() const noexcept { return n_ * (n_ > 0 ? n_ - 1 : 0) / 2; }
  const std::vector<EdgeId>& edges() const noexcept { return edges_; }

  bool is_complete() const noexcept { return edges_.size() == num_pairs(); }

  bool has_edge(Vertex u, Vertex v) const noexcept {
    return u < n_ && v < n_ && adjacency_[u * n_ + v] != 0;
  }

  std::size_t edge_index(Vertex u, Vertex v) const noexcept {
    return EdgeId::canonical(u, v).index(n_);
  }

  /// Adds (u, v); returns false if it was already present.
  bool add_edge(Vertex u, Vertex v) {
    if (u == v) throw Error("self-loop (" + std::to_string(u) + "," + std::to_string(v) + ")");
    if (u >= n_ || v >= n_)
      throw Error("edge (" + std::to_string(u) + "," + std::to_string(v) +
                  ") out of range for n=" + std::to_string(n_));
    if (has_edge(u, v)) return false;
    adjacency_[u * n_ + v] = adjacency_[v * n_ + u] = 1;
    const auto e = EdgeId::canonical(u, v);
    edges_.insert(std::upper_bound(edges_.begin(), edges_.end(), e), e);
    return true;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> adjacency_;
  std::vector<EdgeId> edges_;
};

inline Graph complete_graph(std::size_t n) {
  if (n < 1) throw Error("complete_graph: n must be at least 1");
  Graph g(n);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

namespace detail {
// 53 random mantissa bits; avoids implementation-defined distributions so
// streams are identical across standard libraries.
inline double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}
}  // namespace detail

/// G(n, p) with p = saturation. Pairs are visited in lexicographic order and
/// each consumes exactly one draw from a mt19937_64 seeded with `seed`.
inline Graph random_graph(std::size_t n, double saturation, std::uint64_t seed) {
  if (n < 1) throw Error("random_graph: n must be at least 1");
  if (!(saturation >= 0.0 && saturation <= 1.0))
    throw Error("random_graph: saturation must lie in [0,1]");
  std::mt19937_64 rng(seed);
  Graph g(n);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (detail::unit_double(rng) < saturation) g.add_edge(i, j);
  return g;
}

/// Every k-subset of vertices inducing a complete subgraph, in lexicographic
/// order. Complete graphs skip the adjacency tests.
inline std::vector<Clique> enumerate_cliques(const Graph& g, std::size_t k) {
  if (k < 2) throw Error("enumerate_cliques: k must be at least 2");
  std::vector<Clique> out;
  const std::size_t n = g.num_vertices();
  if (k > n) return out;
  const bool complete = g.is_complete();
  std::vector<Vertex> stack;
  stack.reserve(k);

  auto emit = [&] {
    Clique c;
    c.vertices = stack;
    c.edge_ids.reserve(k * (k - 1) / 2);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t s = r + 1; s < k; ++s)
        c.edge_ids.push_back(g.edge_index(stack[r], stack[s]));
    out.push_back(std::move(c));
  };

  auto extend = [&](auto& self, Vertex from) -> void {
    if (stack.size() == k) {
      emit();
      return;
    }
    const std::size_t need = k - stack.size();
    for (Vertex v = from; v + need <= n; ++v) {
      if (!complete &&
          !std::all_of(stack.begin(), stack.end(), [&](Vertex u) { return g.has_edge(u, v); }))
        continue;
      stack.push_back(v);
      self(self, v + 1);
      stack.pop_back();
    }
  };
  extend(extend, 0);
  return out;
}

inline std::vector<EdgeId> star_edges(Vertex center, const std::vector<Vertex>& leaves) {
  std::vector<EdgeId> out;
  out.reserve(leaves.size());
  std::vector<Vertex> seen = leaves;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw Error("star_edges: duplicate leaf");
  for (Vertex leaf : leaves) {
    if (leaf == center) throw Error("star_edges: center listed as a leaf");
    out.push_back(EdgeId::canonical(center, leaf));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text format:  n <count>  /  e <i> <j>  /  # comment

inline void write_graph(std::ostream& os, const Graph& g) {
  os << "n " << g.num_vertices() << '\n';
  for (const auto& e : g.edges()) os << "e " << e.i << ' ' << e.j << '\n';
}

inline Graph read_graph(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  Graph g;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "n") {
      std::size_t n = 0;
      if (have_header || !(ls >> n) || n < 1)
        throw ParseError(lineno, "bad or repeated vertex-count line");
      g = Graph(n);
      have_header = true;
    } else if (tag == "e") {
      long long i = -1, j = -1;
      if (!have_header) throw ParseError(lineno, "edge before 'n' line");
      if (!(ls >> i >> j) || i < 0 || j < 0) throw ParseError(lineno, "malformed edge");
      try {
        g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
      } catch (const Error& e) {
        throw ParseError(lineno, e.what());
      }
    } else {
      throw ParseError(lineno, "unknown record '" + tag + "'");
    }
    std::string rest;
    if (ls >> rest) throw ParseError(lineno, "trailing tokens");
  }
  if (!have_header) throw Error("graph file has no 'n' line");
  return g;
}

}  // namespace ramseyqubo
