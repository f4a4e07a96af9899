/// @file poly.hpp
/// @brief Multilinear pseudo-Boolean polynomials over {0,1} variables.
///
/// A BinaryPolynomial stores one coefficient per variable set. Since x*x = x
/// on binary inputs every monomial is a set, kept as a strictly increasing
/// index vector. Terms live in an ordered map so iteration (and therefore
/// serialization) is deterministic. Zero coefficients are never stored.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ramseyqubo/error.hpp"

namespace ramseyqubo {

using Var = std::uint32_t;
using VarSet = std::vector<Var>;
using Assignment = std::vector<std::uint8_t>;

template <class Coeff>
concept Coefficient = std::is_arithmetic_v<Coeff> && std::is_signed_v<Coeff>;

inline std::string to_string(const VarSet& vars) {
  std::string s = "{";
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(vars[i]);
  }
  return s + '}';
}

template <Coefficient Coeff = std::int64_t>
class BinaryPolynomial {
 public:
  using coeff_type = Coeff;
  using TermMap = std::map<VarSet, Coeff>;

  BinaryPolynomial() = default;
  explicit BinaryPolynomial(std::size_t num_vars) : num_vars_(num_vars) {}

  static BinaryPolynomial constant(Coeff c) {
    BinaryPolynomial p;
    p.constant_ = c;
    return p;
  }

  /// Adds coeff * prod(vars). Repeated indices collapse (x*x = x); an empty
  /// set adds to the constant.
  void add_term(VarSet vars, Coeff coeff) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    add_sorted_term(std::move(vars), coeff);
  }

  /// Like add_term but the caller guarantees strictly increasing indices.
  void add_sorted_term(VarSet vars, Coeff coeff) {
    if (coeff == Coeff{}) return;
    if (vars.empty()) {
      constant_ += coeff;
      return;
    }
    num_vars_ = std::max<std::size_t>(num_vars_, vars.back() + std::size_t{1});
    auto [it, inserted] = terms_.try_emplace(std::move(vars), coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == Coeff{}) terms_.erase(it);
    }
  }

  void add_constant(Coeff c) { constant_ += c; }

  Coeff constant() const noexcept { return constant_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t num_terms() const noexcept { return terms_.size(); }

  /// Size of the variable registry; at least one past the largest referenced index.
  std::size_t num_vars() const noexcept { return num_vars_; }
  void set_num_vars(std::size_t n) {
    if (!terms_.empty() && n < max_referenced() + 1)
      throw Error("set_num_vars: " + std::to_string(n) + " does not cover variable " +
                  std::to_string(max_referenced()));
    num_vars_ = n;
  }

  bool is_zero() const noexcept { return terms_.empty() && constant_ == Coeff{}; }

  std::size_t degree() const noexcept {
    std::size_t d = 0;
    for (const auto& [vars, c] : terms_) d = std::max(d, vars.size());
    return d;
  }

  Coeff coefficient(const VarSet& vars) const {
    if (vars.empty()) return constant_;
    auto it = terms_.find(vars);
    return it == terms_.end() ? Coeff{} : it->second;
  }

  /// Marks the polynomial as bounded below by zero on {0,1}^n. Encoders that
  /// count forbidden substructures set this; solvers use it to stop at 0.
  bool nonnegative() const noexcept { return nonnegative_; }
  void set_nonnegative(bool v) noexcept { nonnegative_ = v; }

  Coeff max_abs_coefficient() const noexcept {
    Coeff m{};
    for (const auto& [vars, c] : terms_) m = std::max<Coeff>(m, c < 0 ? -c : c);
    return m;
  }

  Coeff sum_abs_coefficients() const noexcept {
    Coeff s = constant_ < 0 ? -constant_ : constant_;
    for (const auto& [vars, c] : terms_) s += c < 0 ? -c : c;
    return s;
  }

  Coeff operator()(const Assignment& a) const {
    if (a.size() < num_vars_)
      throw Error("evaluate: assignment has " + std::to_string(a.size()) + " bits, need " +
                  std::to_string(num_vars_));
    Coeff value = constant_;
    for (const auto& [vars, c] : terms_)
      if (std::all_of(vars.begin(), vars.end(), [&](Var v) { return a[v] != 0; })) value += c;
    return value;
  }

  BinaryPolynomial& operator+=(const BinaryPolynomial& o) {
    constant_ += o.constant_;
    for (const auto& [vars, c] : o.terms_) add_sorted_term(vars, c);
    num_vars_ = std::max(num_vars_, o.num_vars_);
    nonnegative_ = nonnegative_ && o.nonnegative_;
    return *this;
  }

  BinaryPolynomial& operator*=(Coeff k) {
    if (k == Coeff{}) {
      terms_.clear();
      constant_ = Coeff{};
      return *this;
    }
    constant_ *= k;
    for (auto& [vars, c] : terms_) c *= k;
    if (k < 0) nonnegative_ = false;
    return *this;
  }

  friend BinaryPolynomial operator+(BinaryPolynomial a, const BinaryPolynomial& b) {
    return a += b;
  }
  friend BinaryPolynomial operator*(BinaryPolynomial a, Coeff k) { return a *= k; }

  /// Multilinear product.
  friend BinaryPolynomial operator*(const BinaryPolynomial& a, const BinaryPolynomial& b) {
    BinaryPolynomial r(std::max(a.num_vars_, b.num_vars_));
    auto each = [](const BinaryPolynomial& p, auto&& f) {
      if (p.constant_ != Coeff{}) f(VarSet{}, p.constant_);
      for (const auto& [vars, c] : p.terms_) f(vars, c);
    };
    each(a, [&](const VarSet& va, Coeff ca) {
      each(b, [&](const VarSet& vb, Coeff cb) {
        VarSet u;
        u.reserve(va.size() + vb.size());
        std::set_union(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(u));
        r.add_sorted_term(std::move(u), ca * cb);
      });
    });
    return r;
  }

  /// Equality of the polynomial as a function description (terms, constant
  /// and registry size); the nonnegative flag is metadata and not compared.
  friend bool operator==(const BinaryPolynomial& a, const BinaryPolynomial& b) {
    return a.constant_ == b.constant_ && a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

 private:
  Var max_referenced() const {
    Var m = 0;
    for (const auto& [vars, c] : terms_) m = std::max(m, vars.back());
    return m;
  }

  TermMap terms_;
  Coeff constant_{};
  std::size_t num_vars_ = 0;
  bool nonnegative_ = false;
};

using Polynomial = BinaryPolynomial<std::int64_t>;

template <Coefficient Coeff>
Coeff evaluate(const BinaryPolynomial<Coeff>& p, const Assignment& a) {
  return p(a);
}

/// Fixes some variables to constants. The registry size is kept so the
/// result can still be evaluated against full-length assignments; the fixed
/// variables simply no longer appear.
template <Coefficient Coeff>
BinaryPolynomial<Coeff> substitute(const BinaryPolynomial<Coeff>& p,
                                   const std::map<Var, std::uint8_t>& fixes) {
  BinaryPolynomial<Coeff> r(p.num_vars());
  r.add_constant(p.constant());
  for (const auto& [vars, c] : p.terms()) {
    VarSet rest;
    rest.reserve(vars.size());
    bool zero = false;
    for (Var v : vars) {
      auto it = fixes.find(v);
      if (it == fixes.end()) {
        rest.push_back(v);
      } else if (it->second == 0) {
        zero = true;
        break;
      }
    }
    if (!zero) r.add_sorted_term(std::move(rest), c);
  }
  r.set_nonnegative(p.nonnegative());
  return r;
}

/// One factor of a product: x_v when positive, (1 - x_v) otherwise.
struct Literal {
  Var var = 0;
  bool positive = true;
};

inline constexpr std::size_t kMaxProductFactors = 32;

/// Expands prod(literals) into multilinear form.
template <Coefficient Coeff = std::int64_t>
BinaryPolynomial<Coeff> product_expand(const std::vector<Literal>& factors) {
  if (factors.size() > kMaxProductFactors)
    throw Error("product_expand: " + std::to_string(factors.size()) + " factors exceeds cap of " +
                std::to_string(kMaxProductFactors));
  VarSet positive, negative;
  for (const auto& f : factors) (f.positive ? positive : negative).push_back(f.var);
  VarSet all = positive;
  all.insert(all.end(), negative.begin(), negative.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw Error("product_expand: repeated variable");
  std::sort(positive.begin(), positive.end());
  std::sort(negative.begin(), negative.end());

  BinaryPolynomial<Coeff> r(all.empty() ? 0 : all.back() + std::size_t{1});
  // prod x_p * prod (1 - x_q) = sum over subsets S of the negatives of
  // (-1)^|S| * prod x_p * prod_{q in S} x_q
  const std::uint64_t subsets = std::uint64_t{1} << negative.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    VarSet vars = positive;
    int sign = 1;
    for (std::size_t q = 0; q < negative.size(); ++q)
      if (mask >> q & 1) {
        vars.push_back(negative[q]);
        sign = -sign;
      }
    r.add_term(std::move(vars), static_cast<Coeff>(sign));
  }
  return r;
}

}  // namespace ramseyqubo
