#pragma once
// Small finite graded modules for sweeps: exhaustive enumeration and random draws.

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "grf/cech.hpp"
#include "grf/frobenius.hpp"

namespace grf {

namespace detail {

// Sorted degree tuples of length dim with entries in [lo, hi].
inline std::vector<std::vector<long long>> degree_tuples(std::size_t dim, long long lo, long long hi) {
  std::vector<std::vector<long long>> out;
  std::vector<long long> cur;
  auto rec = [&](auto&& self, long long from) -> void {
    if (cur.size() == dim) {
      out.push_back(cur);
      return;
    }
    for (long long d = from; d <= hi; ++d) {
      cur.push_back(d);
      self(self, d);
      cur.pop_back();
    }
  };
  rec(rec, lo);
  return out;
}

inline std::vector<std::pair<std::size_t, std::size_t>> action_slots(const std::vector<long long>& degrees) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t r = 0; r < degrees.size(); ++r)
    for (std::size_t c = 0; c < degrees.size(); ++c)
      if (degrees[r] == degrees[c] + 1) slots.emplace_back(r, c);
  return slots;
}

}  // namespace detail

/// Every module of dimension 1..max_dim with sorted degrees in [lo, hi] and
/// commuting degree-raising actions (distinct matrices, not isomorphism classes).
inline std::vector<FiniteGradedModule> enumerate_modules(const RingSpec& ring, std::size_t max_dim, long long lo,
                                                         long long hi) {
  std::vector<FiniteGradedModule> out;
  const int n = ring.n();
  const std::uint32_t p = ring.p();
  for (std::size_t dim = 1; dim <= max_dim; ++dim)
    for (const auto& degrees : detail::degree_tuples(dim, lo, hi)) {
      auto slots = detail::action_slots(degrees);
      const std::size_t unknowns = slots.size() * static_cast<std::size_t>(n);
      std::vector<std::uint32_t> digits(unknowns, 0);
      while (true) {
        std::vector<FpMatrix> actions(n, FpMatrix(dim, dim, p));
        for (int i = 0; i < n; ++i)
          for (std::size_t k = 0; k < slots.size(); ++k)
            actions[i].set(slots[k].first, slots[k].second, digits[i * slots.size() + k]);
        bool commute = true;
        for (int i = 0; i < n && commute; ++i)
          for (int j = i + 1; j < n && commute; ++j) commute = actions[i] * actions[j] == actions[j] * actions[i];
        if (commute) out.emplace_back(ring, degrees, std::move(actions));
        std::size_t k = 0;
        while (k < unknowns && ++digits[k] == p) digits[k++] = 0;
        if (k == unknowns) break;
      }
    }
  return out;
}

/// A random module of dimension 1..max_dim with degrees in [lo, hi]; actions
/// are drawn until they commute, falling back to zero actions.
template <class Rng>
FiniteGradedModule random_module(const RingSpec& ring, Rng& rng, std::size_t max_dim, long long lo, long long hi) {
  std::uniform_int_distribution<std::size_t> dim_dist(1, max_dim);
  std::uniform_int_distribution<long long> deg_dist(lo, hi);
  std::uniform_int_distribution<std::uint32_t> coeff(0, ring.p() - 1);
  const std::size_t dim = dim_dist(rng);
  std::vector<long long> degrees(dim);
  for (auto& d : degrees) d = deg_dist(rng);
  std::sort(degrees.begin(), degrees.end());
  auto slots = detail::action_slots(degrees);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<FpMatrix> actions(ring.n(), FpMatrix(dim, dim, ring.p()));
    for (auto& a : actions)
      for (auto [r, c] : slots) a.set(r, c, coeff(rng));
    bool commute = true;
    for (int i = 0; i < ring.n() && commute; ++i)
      for (int j = i + 1; j < ring.n() && commute; ++j) commute = actions[i] * actions[j] == actions[j] * actions[i];
    if (commute) return FiniteGradedModule(ring, degrees, std::move(actions));
  }
  return FiniteGradedModule(ring, degrees, std::vector<FpMatrix>(ring.n(), FpMatrix(dim, dim, ring.p())));
}

/// A random monomial ideal with 1..max_gens generators of degree 1..max_degree.
template <class Rng>
MonomialIdeal random_ideal(const RingSpec& ring, Rng& rng, int max_gens, int max_degree) {
  std::uniform_int_distribution<int> count(1, max_gens), degree(1, max_degree), var(0, ring.n() - 1);
  std::vector<Exponent> gens(count(rng), Exponent(ring.n(), 0));
  for (auto& g : gens)
    for (int k = degree(rng); k > 0; --k) ++g[var(rng)];
  return MonomialIdeal(ring, gens);
}

/// A random chain of 1..max_stages stages, every slot in [0, n].
template <class Rng>
FunctorChain random_chain(const RingSpec& ring, Rng& rng, int max_stages, int max_gens, int max_degree) {
  std::uniform_int_distribution<int> stages(1, max_stages), slot(0, ring.n());
  FunctorChain chain{ring, {}, 0};
  for (int k = stages(rng); k > 0; --k) chain.stages.push_back({random_ideal(ring, rng, max_gens, max_degree), slot(rng)});
  chain.final_slot = slot(rng);
  return chain;
}

}  // namespace grf
