/// @file solve.hpp
/// @brief Simulated annealing on arbitrary-degree binary polynomials,
/// exhaustive minimization, and exact minimization over ancillas.

#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ramseyqubo/error.hpp"
#include "ramseyqubo/poly.hpp"
#include "ramseyqubo/qubo.hpp"

namespace ramseyqubo {

/// Flat term table with a per-variable index of the terms containing it.
template <Coefficient Coeff>
class CompiledPolynomial {
 public:
  explicit CompiledPolynomial(const BinaryPolynomial<Coeff>& p)
      : num_vars_(p.num_vars()), constant_(p.constant()) {
    term_begin_.reserve(p.num_terms() + 1);
    coeffs_.reserve(p.num_terms());
    std::vector<std::uint32_t> occurrences(num_vars_, 0);
    term_begin_.push_back(0);
    for (const auto& [vars, c] : p.terms()) {
      vars_.insert(vars_.end(), vars.begin(), vars.end());
      term_begin_.push_back(static_cast<std::uint32_t>(vars_.size()));
      coeffs_.push_back(c);
      for (Var v : vars) ++occurrences[v];
    }
    var_begin_.assign(num_vars_ + 1, 0);
    for (std::size_t v = 0; v < num_vars_; ++v) var_begin_[v + 1] = var_begin_[v] + occurrences[v];
    var_terms_.resize(var_begin_.back());
    std::vector<std::uint32_t> cursor(var_begin_.begin(), var_begin_.end() - 1);
    for (std::uint32_t t = 0; t < coeffs_.size(); ++t)
      for (Var v : term_vars(t)) var_terms_[cursor[v]++] = t;
  }

  std::size_t num_vars() const noexcept { return num_vars_; }
  std::size_t num_terms() const noexcept { return coeffs_.size(); }
  Coeff constant() const noexcept { return constant_; }
  Coeff coeff(std::uint32_t t) const noexcept { return coeffs_[t]; }

  std::span<const Var> term_vars(std::uint32_t t) const noexcept {
    return {vars_.data() + term_begin_[t], vars_.data() + term_begin_[t + 1]};
  }
  std::span<const std::uint32_t> terms_of(Var v) const noexcept {
    return {var_terms_.data() + var_begin_[v], var_terms_.data() + var_begin_[v + 1]};
  }

 private:
  std::size_t num_vars_;
  Coeff constant_;
  std::vector<Var> vars_;
  std::vector<std::uint32_t> term_begin_;
  std::vector<Coeff> coeffs_;
  std::vector<std::uint32_t> var_begin_;
  std::vector<std::uint32_t> var_terms_;
};

/// Current assignment plus, per term, how many of its variables are 0. A
/// term contributes iff that count is 0, so a flip of v only touches the
/// terms containing v.
template <Coefficient Coeff>
class FlipState {
 public:
  FlipState(const CompiledPolynomial<Coeff>& cp, Assignment bits)
      : cp_(&cp), bits_(std::move(bits)), zeros_(cp.num_terms(), 0) {
    if (bits_.size() != cp.num_vars()) throw Error("FlipState: assignment length mismatch");
    energy_ = cp.constant();
    for (std::uint32_t t = 0; t < cp.num_terms(); ++t) {
      std::uint32_t z = 0;
      for (Var v : cp.term_vars(t)) z += bits_[v] == 0;
      zeros_[t] = z;
      if (z == 0) energy_ += cp.coeff(t);
    }
  }

  const Assignment& bits() const noexcept { return bits_; }
  Coeff energy() const noexcept { return energy_; }

  /// Energy change if v were flipped.
  Coeff delta(Var v) const noexcept {
    const std::uint32_t own = bits_[v] == 0;
    Coeff d{};
    for (std::uint32_t t : cp_->terms_of(v))
      if (zeros_[t] == own) d += cp_->coeff(t);
    return bits_[v] ? -d : d;
  }

  void flip(Var v, Coeff delta) noexcept {
    if (bits_[v]) {
      for (std::uint32_t t : cp_->terms_of(v)) ++zeros_[t];
    } else {
      for (std::uint32_t t : cp_->terms_of(v)) --zeros_[t];
    }
    bits_[v] ^= 1;
    energy_ += delta;
  }
  void flip(Var v) noexcept { flip(v, delta(v)); }

 private:
  const CompiledPolynomial<Coeff>* cp_;
  Assignment bits_;
  std::vector<std::uint32_t> zeros_;
  Coeff energy_{};
};

/// Geometric cooling from t_start to t_end over `sweeps` sweeps; each sweep
/// proposes one single-bit flip per variable, in index order.
struct AnnealSchedule {
  double t_start = 10.0;
  double t_end = 0.05;
  std::size_t sweeps = 10'000;

  void validate() const {
    if (!(t_end > 0.0) || !(t_start > t_end))
      throw Error("AnnealSchedule: need t_start > t_end > 0");
    if (sweeps < 1) throw Error("AnnealSchedule: sweeps must be at least 1");
  }

  double cooling() const {
    return sweeps > 1 ? std::pow(t_end / t_start, 1.0 / static_cast<double>(sweeps - 1)) : 1.0;
  }

  /// t_start = max |coefficient| * degree, t_end = 0.05, 10^4 sweeps.
  template <Coefficient Coeff>
  static AnnealSchedule defaults_for(const BinaryPolynomial<Coeff>& p) {
    AnnealSchedule s;
    s.t_start = static_cast<double>(p.max_abs_coefficient()) * static_cast<double>(p.degree());
    s.t_start = std::max(s.t_start, 2 * s.t_end);
    return s;
  }
};

inline constexpr std::size_t kDefaultRestarts = 8;

template <Coefficient Coeff>
struct AnnealResult {
  Assignment best_assignment;
  Coeff best_energy{};
  std::uint64_t seed = 0;
  std::size_t restarts_used = 0;
  double wall_time = 0.0;                   // seconds
  std::vector<Coeff> energy_trace;          // best energy of each restart that ran
  std::size_t best_restart = 0;
};

namespace detail {

inline std::mt19937_64 restart_rng(std::uint64_t seed, std::size_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart),
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(restart) >> 32)};
  return std::mt19937_64(seq);
}

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Single-bit-flip Metropolis annealing. Restarts are independent, each with
/// its own stream derived from (seed, restart index), and may run on several
/// threads; the reported optimum is the lowest energy with the lowest
/// restart index, so the result does not depend on scheduling. When p is
/// marked nonnegative, reaching energy 0 ends the search. Without a time
/// limit the result is reproducible for a fixed (seed, restarts, schedule).
template <Coefficient Coeff>
AnnealResult<Coeff> anneal(const BinaryPolynomial<Coeff>& p, const AnnealSchedule& schedule,
                           std::size_t restarts, std::uint64_t seed,
                           std::optional<double> time_limit = std::nullopt,
                           std::size_t threads = 0) {
  using clock = std::chrono::steady_clock;
  schedule.validate();
  if (p.num_vars() == 0) throw Error("anneal: polynomial has no variables");
  if (restarts < 1) throw Error("anneal: restarts must be at least 1");
  if (time_limit && !(*time_limit > 0.0)) throw Error("anneal: time limit must be positive");

  const auto start = clock::now();
  const auto deadline =
      time_limit ? start + std::chrono::duration_cast<clock::duration>(
                               std::chrono::duration<double>(*time_limit))
                 : clock::time_point::max();
  const CompiledPolynomial<Coeff> cp(p);
  const std::size_t n = cp.num_vars();
  const double cooling = schedule.cooling();
  const bool stop_at_zero = p.nonnegative();

  struct Outcome {
    bool ran = false;
    Coeff best{};
    Assignment bits;
  };
  std::vector<Outcome> outcomes(restarts);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> zero_restart{restarts};  // lowest restart index that hit 0

  auto run = [&](std::size_t r) {
    auto rng = detail::restart_rng(seed, r);
    Assignment init(n);
    for (auto& b : init) b = static_cast<std::uint8_t>(rng() >> 63);
    FlipState<Coeff> state(cp, std::move(init));
    Outcome out{true, state.energy(), state.bits()};
    double temperature = schedule.t_start;
    for (std::size_t sweep = 0; sweep < schedule.sweeps; ++sweep) {
      if (stop_at_zero && out.best <= Coeff{}) break;
      if (zero_restart.load(std::memory_order_relaxed) < r || clock::now() > deadline) break;
      for (Var v = 0; v < n; ++v) {
        const Coeff d = state.delta(v);
        if (d <= Coeff{} || detail::uniform01(rng) < std::exp(-static_cast<double>(d) / temperature)) {
          state.flip(v, d);
          if (state.energy() < out.best) {
            out.best = state.energy();
            out.bits = state.bits();
          }
        }
      }
      temperature *= cooling;
    }
    if (stop_at_zero && out.best <= Coeff{}) {
      std::size_t cur = zero_restart.load();
      while (r < cur && !zero_restart.compare_exchange_weak(cur, r)) {
      }
    }
    outcomes[r] = std::move(out);
  };

  auto worker = [&] {
    for (std::size_t r; (r = next.fetch_add(1)) < restarts;) {
      if (zero_restart.load() < r || clock::now() > deadline) continue;
      run(r);
    }
  };

  std::size_t workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, restarts);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  AnnealResult<Coeff> result;
  result.seed = seed;
  bool have = false;
  for (std::size_t r = 0; r < restarts; ++r) {
    if (!outcomes[r].ran) continue;
    ++result.restarts_used;
    result.energy_trace.push_back(outcomes[r].best);
    if (!have || outcomes[r].best < result.best_energy) {
      have = true;
      result.best_energy = outcomes[r].best;
      result.best_assignment = outcomes[r].bits;
      result.best_restart = r;
    }
  }
  if (!have) throw Error("anneal: time limit expired before any restart ran");
  result.wall_time = std::chrono::duration<double>(clock::now() - start).count();
  if (p(result.best_assignment) != result.best_energy)
    throw std::logic_error("anneal: incremental energy drifted from full evaluation");
  return result;
}

template <Coefficient Coeff>
AnnealResult<Coeff> anneal(const BinaryPolynomial<Coeff>& p, std::uint64_t seed,
                           std::optional<double> time_limit = std::nullopt) {
  return anneal(p, AnnealSchedule::defaults_for(p), kDefaultRestarts, seed, time_limit);
}

inline constexpr std::size_t kBruteForceMaxVars = 28;

template <Coefficient Coeff>
struct BruteForceResult {
  Coeff min_value{};
  Assignment argmin;    // first minimizer in Gray-code order
  std::uint64_t count = 0;  // number of minimizers
};

/// Exact minimum over all 2^n assignments, visited in Gray-code order so
/// each step is a single incremental flip.
template <Coefficient Coeff>
BruteForceResult<Coeff> brute_force(const BinaryPolynomial<Coeff>& p) {
  const std::size_t n = p.num_vars();
  if (n > kBruteForceMaxVars)
    throw Error("brute_force: " + std::to_string(n) + " variables exceeds cap of " +
                std::to_string(kBruteForceMaxVars));
  const CompiledPolynomial<Coeff> cp(p);
  FlipState<Coeff> state(cp, Assignment(n, 0));
  BruteForceResult<Coeff> r{state.energy(), state.bits(), 1};
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    state.flip(static_cast<Var>(std::countr_zero(k)));
    const Coeff e = state.energy();
    if (e < r.min_value) {
      r.min_value = e;
      r.argmin = state.bits();
      r.count = 1;
    } else if (e == r.min_value) {
      ++r.count;
    }
  }
  return r;
}

namespace detail {

// Exact minimum of p over the variables in `free` (all others unreferenced).
// Splits into connected components of the term co-occurrence graph; small
// components are enumerated, larger ones branch on their most frequent
// variable and recurse.
template <Coefficient Coeff>
Coeff minimize_exact(const BinaryPolynomial<Coeff>& p, int depth = 0) {
  constexpr std::size_t kEnumerate = 20;
  constexpr int kMaxDepth = 40;

  std::map<Var, Var> parent;
  auto find = [&](Var v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [vars, c] : p.terms())
    for (Var v : vars) parent.try_emplace(v, v);
  for (const auto& [vars, c] : p.terms())
    for (std::size_t i = 1; i < vars.size(); ++i) {
      const Var a = find(vars[0]), b = find(vars[i]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }

  std::map<Var, BinaryPolynomial<Coeff>> components;
  std::map<Var, std::map<Var, Var>> local_index;
  for (auto& [v, _] : parent) {
    const Var root = find(v);
    auto& idx = local_index[root];
    idx.emplace(v, static_cast<Var>(idx.size()));
  }
  for (const auto& [vars, c] : p.terms()) {
    const Var root = find(vars[0]);
    const auto& idx = local_index[root];
    VarSet local;
    for (Var v : vars) local.push_back(idx.at(v));
    components[root].add_term(std::move(local), c);
  }

  Coeff total = p.constant();
  for (auto& [root, sub] : components) {
    sub.set_num_vars(local_index[root].size());
    if (sub.num_vars() <= kEnumerate) {
      total += brute_force(sub).min_value;
      continue;
    }
    if (depth >= kMaxDepth) throw Error("min_over_ancillas: residual problem too entangled");
    std::vector<std::size_t> occ(sub.num_vars(), 0);
    for (const auto& [vars, c] : sub.terms())
      for (Var v : vars) ++occ[v];
    const auto pivot = static_cast<Var>(std::max_element(occ.begin(), occ.end()) - occ.begin());
    const Coeff zero = minimize_exact(substitute(sub, {{pivot, 0}}), depth + 1);
    const Coeff one = minimize_exact(substitute(sub, {{pivot, 1}}), depth + 1);
    total += std::min(zero, one);
  }
  return total;
}

}  // namespace detail

/// Exact minimum of the problem over every completion of a fixed edge
/// colouring. `edge_assignment` lists the edge variables' values in index
/// order; all other variables are minimized over.
template <Coefficient Coeff>
Coeff min_over_ancillas(const QuboProblem<Coeff>& problem, const ReductionMap& map,
                        const Assignment& edge_assignment) {
  const auto edges = problem.registry().vars_with_role(VarRole::edge);
  if (map.original_vars != edges.size())
    throw Error("min_over_ancillas: reduction map does not match the problem");
  if (edge_assignment.size() != edges.size())
    throw Error("min_over_ancillas: expected " + std::to_string(edges.size()) +
                " edge values, got " + std::to_string(edge_assignment.size()) +
                (edge_assignment.size() > edges.size() ? " (assignment covers ancillas)" : ""));
  std::map<Var, std::uint8_t> fixes;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (edge_assignment[k] > 1) throw Error("min_over_ancillas: values must be 0 or 1");
    fixes.emplace(edges[k], edge_assignment[k]);
  }
  return detail::minimize_exact(substitute(problem.poly(), fixes));
}

}  // namespace ramseyqubo
