/// @file io.hpp
/// @brief Text formats for problems, reduction maps and precolour plans.
///
/// Problem file:
///
///     format qubo|pubo
///     # free-form comment lines (kept verbatim, in order)
///     # vars <count>
///     # order <graph vertex count>
///     # nonnegative
///     # edge <var> <i> <j>
///     # unused <var>
///     # ancillas <first>
///     # fixed <i> <j> <colour>
///     c <offset>
///     t <coeff> <v1> ... <vk>
///
/// The structured comments carry the variable registry; tools that only
/// understand `c`/`t` lines can ignore them. Variables from `first` on are
/// ancillas; other variables without an `edge` or `unused` line are plain. Terms are
/// written in increasing variable-set order, so writing a parsed file
/// reproduces it byte for byte.

#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ramseyqubo/error.hpp"
#include "ramseyqubo/graph.hpp"
#include "ramseyqubo/poly.hpp"
#include "ramseyqubo/precolor.hpp"
#include "ramseyqubo/qubo.hpp"

namespace ramseyqubo {

enum class Format : std::uint8_t { qubo, pubo };

inline std::string_view format_name(Format f) { return f == Format::qubo ? "qubo" : "pubo"; }

template <Coefficient Coeff = std::int64_t>
struct ProblemFile {
  Format format = Format::pubo;
  std::vector<std::string> comments;  // without the leading "# "
  Problem<Coeff> problem;
};

namespace detail {

template <Coefficient Coeff>
std::string format_coeff(Coeff c) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, c);
  if (ec != std::errc{}) throw Error("cannot format coefficient");
  return std::string(buf, end);
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && end == s.data() + s.size();
}

inline std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool is_structured_comment(std::string_view body) {
  const auto tok = split(body);
  if (tok.empty()) return false;
  return tok[0] == "vars" || tok[0] == "order" || tok[0] == "nonnegative" || tok[0] == "edge" ||
         tok[0] == "unused" || tok[0] == "ancillas" || tok[0] == "fixed";
}

}  // namespace detail

template <Coefficient Coeff>
void write_problem(std::ostream& os, const ProblemFile<Coeff>& file) {
  const auto& p = file.problem.poly;
  const auto& reg = file.problem.registry;
  if (file.format == Format::qubo && p.degree() > 2)
    throw Error("write_problem: degree " + std::to_string(p.degree()) + " in a qubo file");
  if (reg.size() != p.num_vars())
    throw Error("write_problem: registry size does not match the polynomial");

  os << "format " << format_name(file.format) << '\n';
  for (const auto& c : file.comments) {
    if (detail::is_structured_comment(c))
      throw Error("write_problem: free comment collides with a registry record: " + c);
    os << "# " << c << '\n';
  }
  os << "# vars " << p.num_vars() << '\n';
  if (reg.graph_order() > 0) os << "# order " << reg.graph_order() << '\n';
  if (p.nonnegative()) os << "# nonnegative\n";
  std::size_t first_ancilla = reg.size();
  while (first_ancilla > 0 && reg[static_cast<Var>(first_ancilla - 1)].role == VarRole::ancilla)
    --first_ancilla;
  for (std::size_t v = 0; v < reg.size(); ++v) {
    const auto& tag = reg[static_cast<Var>(v)];
    if (tag.role == VarRole::edge)
      os << "# edge " << v << ' ' << tag.edge.i << ' ' << tag.edge.j << '\n';
    else if (tag.role == VarRole::unused)
      os << "# unused " << v << '\n';
    else if (tag.role == VarRole::ancilla && v < first_ancilla)
      throw Error("write_problem: ancillas must follow all other variables");
  }
  if (first_ancilla < reg.size()) os << "# ancillas " << first_ancilla << '\n';
  for (const auto& [e, c] : reg.fixed_edges())
    os << "# fixed " << e.i << ' ' << e.j << ' ' << int{c} << '\n';
  os << "c " << detail::format_coeff(p.constant()) << '\n';
  for (const auto& [vars, c] : p.terms()) {
    os << "t " << detail::format_coeff(c);
    for (Var v : vars) os << ' ' << v;
    os << '\n';
  }
}

template <Coefficient Coeff = std::int64_t>
ProblemFile<Coeff> read_problem(std::istream& is) {
  ProblemFile<Coeff> file;
  bool have_format = false, have_offset = false, nonnegative = false;
  std::size_t declared_vars = 0, order = 0;
  std::optional<std::size_t> first_ancilla;
  bool have_vars = false;
  struct EdgeLine {
    Var var;
    EdgeId edge;
  };
  std::vector<EdgeLine> edges;
  std::vector<Var> unused;
  std::vector<std::pair<EdgeId, std::uint8_t>> fixed;
  BinaryPolynomial<Coeff> poly;

  std::string line;
  std::size_t lineno = 0;
  auto number = [&](std::string_view s, auto& out) {
    if (!detail::parse_number(s, out)) throw ParseError(lineno, "bad number '" + std::string(s) + "'");
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.size() > 1 && line[1] == ' ' ? line.substr(2) : line.substr(1);
      const auto tok = detail::split(body);
      if (!detail::is_structured_comment(body)) {
        file.comments.push_back(body);
      } else if (tok[0] == "vars" && tok.size() == 2) {
        number(tok[1], declared_vars);
        have_vars = true;
      } else if (tok[0] == "order" && tok.size() == 2) {
        number(tok[1], order);
      } else if (tok[0] == "nonnegative" && tok.size() == 1) {
        nonnegative = true;
      } else if (tok[0] == "edge" && tok.size() == 4) {
        EdgeLine e{};
        number(tok[1], e.var);
        number(tok[2], e.edge.i);
        number(tok[3], e.edge.j);
        if (e.edge.i >= e.edge.j) throw ParseError(lineno, "edge endpoints must be increasing");
        edges.push_back(e);
      } else if (tok[0] == "ancillas" && tok.size() == 2) {
        std::size_t first = 0;
        number(tok[1], first);
        first_ancilla = first;
      } else if (tok[0] == "unused" && tok.size() == 2) {
        Var v = 0;
        number(tok[1], v);
        unused.push_back(v);
      } else if (tok[0] == "fixed" && tok.size() == 4) {
        EdgeId e{};
        int c = 0;
        number(tok[1], e.i);
        number(tok[2], e.j);
        number(tok[3], c);
        if (e.i >= e.j || (c != 0 && c != 1)) throw ParseError(lineno, "malformed fixed edge");
        fixed.emplace_back(e, static_cast<std::uint8_t>(c));
      } else {
        throw ParseError(lineno, "malformed registry record");
      }
      continue;
    }
    const auto tok = detail::split(line);
    if (tok.empty()) continue;
    if (tok[0] == "format") {
      if (have_format || tok.size() != 2) throw ParseError(lineno, "bad or repeated format line");
      if (tok[1] == "qubo") file.format = Format::qubo;
      else if (tok[1] == "pubo") file.format = Format::pubo;
      else throw ParseError(lineno, "unknown format '" + std::string(tok[1]) + "'");
      have_format = true;
    } else if (tok[0] == "c") {
      if (have_offset || tok.size() != 2) throw ParseError(lineno, "bad or repeated offset line");
      Coeff c{};
      number(tok[1], c);
      poly.add_constant(c);
      have_offset = true;
    } else if (tok[0] == "t") {
      if (!have_format) throw ParseError(lineno, "term before format line");
      if (tok.size() < 2) throw ParseError(lineno, "term without coefficient");
      Coeff c{};
      number(tok[1], c);
      VarSet vars;
      for (std::size_t k = 2; k < tok.size(); ++k) {
        Var v = 0;
        number(tok[k], v);
        if (!vars.empty() && v <= vars.back())
          throw ParseError(lineno, "variable indices must be strictly increasing");
        vars.push_back(v);
      }
      if (file.format == Format::qubo && vars.size() > 2)
        throw ParseError(lineno, "term of degree " + std::to_string(vars.size()) + " in a qubo file");
      if (!vars.empty() && poly.coefficient(vars) != Coeff{})
        throw ParseError(lineno, "duplicate term " + to_string(vars));
      poly.add_sorted_term(std::move(vars), c);
    } else {
      throw ParseError(lineno, "unknown record '" + std::string(tok[0]) + "'");
    }
  }
  if (!have_format) throw Error("problem file has no format line");

  const std::size_t n = have_vars ? declared_vars : poly.num_vars();
  if (n < poly.num_vars()) throw Error("problem file: terms reference variables beyond 'vars'");
  poly.set_num_vars(n);
  poly.set_nonnegative(nonnegative);

  if (order == 0 && (!edges.empty() || !unused.empty() || !fixed.empty()))
    throw Error("problem file: edge records need an 'order' line");
  std::vector<VarTag> tags(n);
  if (first_ancilla) {
    if (*first_ancilla > n) throw Error("problem file: ancillas record out of range");
    for (std::size_t v = *first_ancilla; v < n; ++v) tags[v].role = VarRole::ancilla;
  }
  for (const auto& e : edges) {
    if (e.var >= n || e.edge.j >= order || tags[e.var].role != VarRole::plain)
      throw Error("problem file: edge record out of range or conflicting");
    tags[e.var] = {VarRole::edge, e.edge};
  }
  for (Var v : unused) {
    if (v >= n || tags[v].role != VarRole::plain)
      throw Error("problem file: unused record out of range or conflicting");
    tags[v] = {VarRole::unused, {}};
  }
  VarRegistry final_reg;
  final_reg.set_graph_order(order);
  for (const auto& t : tags) final_reg.add(t);
  for (const auto& [e, c] : fixed) final_reg.add_fixed_edge(e, c);

  file.problem = {std::move(poly), std::move(final_reg)};
  return file;
}

// ---------------------------------------------------------------------------
// Reduction map sidecar.

inline void write_reduction_map(std::ostream& os, const ReductionMap& map) {
  os << "original_vars " << map.original_vars << '\n';
  for (const auto& a : map.ancillas) {
    os << "anc " << a.index;
    switch (a.kind) {
      case AncillaRecord::Kind::triple:
        os << " triple " << a.members[0] << ' ' << a.members[1] << ' ' << a.members[2];
        break;
      case AncillaRecord::Kind::quad:
        os << " quad " << a.members[0] << ' ' << a.members[1] << ' ' << a.members[2] << ' '
           << a.members[3] << ' ' << int{a.slot};
        break;
      case AncillaRecord::Kind::pair:
        os << " pair " << a.members[0] << ' ' << a.members[1];
        break;
    }
    os << '\n';
  }
  for (const auto& g : map.gadgets)
    os << "gadget " << (g.kind == GadgetRecord::Kind::mct ? "mct" : "rosenberg") << ' '
       << g.members[0] << ' ' << g.members[1] << ' ' << g.members[2] << '\n';
}

inline ReductionMap read_reduction_map(std::istream& is) {
  ReductionMap map;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto tok = detail::split(line);
    auto num = [&](std::size_t k, auto& out) {
      if (k >= tok.size() || !detail::parse_number(tok[k], out))
        throw ParseError(lineno, "bad number");
    };
    if (tok[0] == "original_vars" && tok.size() == 2) {
      num(1, map.original_vars);
      have_header = true;
    } else if (tok[0] == "anc" && tok.size() >= 3) {
      AncillaRecord a;
      num(1, a.index);
      if (tok[2] == "triple" && tok.size() == 6) {
        a.kind = AncillaRecord::Kind::triple;
        for (int k = 0; k < 3; ++k) num(3 + k, a.members[k]);
      } else if (tok[2] == "quad" && tok.size() == 8) {
        a.kind = AncillaRecord::Kind::quad;
        for (int k = 0; k < 4; ++k) num(3 + k, a.members[k]);
        int slot = 0;
        num(7, slot);
        if (slot != 2 && slot != 3) throw ParseError(lineno, "quad slot must be 2 or 3");
        a.slot = static_cast<std::uint8_t>(slot);
      } else if (tok[2] == "pair" && tok.size() == 5) {
        a.kind = AncillaRecord::Kind::pair;
        num(3, a.members[0]);
        num(4, a.members[1]);
      } else {
        throw ParseError(lineno, "malformed ancilla record");
      }
      map.ancillas.push_back(a);
    } else if (tok[0] == "gadget" && tok.size() == 5) {
      GadgetRecord g;
      if (tok[1] == "mct") g.kind = GadgetRecord::Kind::mct;
      else if (tok[1] == "rosenberg") g.kind = GadgetRecord::Kind::rosenberg;
      else throw ParseError(lineno, "unknown gadget kind");
      for (int k = 0; k < 3; ++k) num(2 + k, g.members[k]);
      map.gadgets.push_back(g);
    } else {
      throw ParseError(lineno, "unknown record");
    }
  }
  if (!have_header) throw Error("reduction map has no original_vars line");
  return map;
}

// ---------------------------------------------------------------------------
// Precolour plan: "star <center> <leaf>... color <0|1>"

inline void write_plan(std::ostream& os, const PrecolorPlan& plan) {
  os << "star " << plan.center;
  for (Vertex l : plan.leaves) os << ' ' << l;
  os << " color " << int{plan.colour} << '\n';
}

inline PrecolorPlan read_plan(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto tok = detail::split(line);
    if (tok.size() < 4 || tok[0] != "star" || tok[tok.size() - 2] != "color")
      throw ParseError(lineno, "expected 'star <center> <leaf>... color <0|1>'");
    PrecolorPlan plan;
    if (!detail::parse_number(tok[1], plan.center)) throw ParseError(lineno, "bad center");
    for (std::size_t k = 2; k + 2 < tok.size(); ++k) {
      Vertex v = 0;
      if (!detail::parse_number(tok[k], v)) throw ParseError(lineno, "bad leaf");
      plan.leaves.push_back(v);
    }
    int c = -1;
    if (!detail::parse_number(tok.back(), c) || (c != 0 && c != 1))
      throw ParseError(lineno, "colour must be 0 or 1");
    plan.colour = static_cast<std::uint8_t>(c);
    return plan;
  }
  throw Error("plan file is empty");
}

}  // namespace ramseyqubo
