#pragma once
// Čech complexes of pattern modules on monomial generators, their cohomology,
// and stagewise composition of local cohomology functors.

#include <cstddef>
#include <string>
#include <vector>

#include "grf/pattern_module.hpp"

namespace grf {

struct CechComplex {
  RingSpec ring;
  std::vector<PatternModule> terms;
  // differentials[t][N] : terms[t](N) -> terms[t+1](N), for t + 1 < terms.size()
  std::vector<std::vector<FpMatrix>> differentials;

  std::size_t length() const noexcept { return terms.empty() ? 0 : terms.size() - 1; }

  /// d∘d = 0 and each differential commutes with the transitions, at every pattern.
  void validate() const {
    const int n = ring.n();
    for (std::size_t t = 0; t + 1 < terms.size(); ++t) {
      for (Pattern set = 0; set < terms[t].pattern_count(); ++set) {
        const FpMatrix& d = differentials[t][set];
        if (d.rows() != terms[t + 1].dim(set) || d.cols() != terms[t].dim(set))
          throw Error(Errc::DimensionMismatch, "differential " + std::to_string(t) + " at " + pattern_name(set, n));
        if (t + 2 < terms.size() && !(differentials[t + 1][set] * d).is_zero())
          throw Error(Errc::Internal, "d^2 != 0 at slot " + std::to_string(t) + ", pattern " + pattern_name(set, n));
        for (int i = 0; i < n; ++i) {
          if (!contains(set, i)) continue;
          Pattern to = without(set, i);
          if (!(differentials[t][to] * terms[t].transition(set, i) == terms[t + 1].transition(set, i) * d))
            throw Error(Errc::Internal, "differential " + std::to_string(t) + " does not commute with x" +
                                            std::to_string(i + 1) + " at " + pattern_name(set, n));
        }
      }
    }
  }
};

namespace detail {

inline std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t total, std::size_t size) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (current.size() == size) {
      out.push_back(current);
      return;
    }
    for (std::size_t k = start; k < total; ++k) {
      current.push_back(k);
      self(self, k + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace detail

/// Term t is the sum over t-subsets S of generators (lexicographic order) of
/// M localized at the support of lcm(m_S). The component S -> S ∪ {j} is the
/// localization map with sign (-1)^{#{s in S : s < j}}.
inline CechComplex cech_complex(const PatternModule& m, const MonomialIdeal& ideal) {
  require_same_ring(m.ring(), ideal.ring());
  const auto& gens = ideal.generators();
  if (gens.empty()) throw Error(Errc::EmptyIdeal, "Čech complex needs at least one generator");
  const RingSpec& ring = m.ring();
  const std::uint32_t p = ring.p();
  const std::size_t r = gens.size();

  std::vector<std::vector<std::vector<std::size_t>>> subsets(r + 1);
  std::vector<std::vector<Pattern>> supports(r + 1);
  CechComplex c;
  c.ring = ring;
  for (std::size_t t = 0; t <= r; ++t) {
    subsets[t] = detail::subsets_of_size(r, t);
    std::vector<PatternModule> parts;
    for (const auto& s : subsets[t]) {
      Pattern support = 0;
      for (auto k : s) support |= ideal.support(k);
      supports[t].push_back(support);
      parts.push_back(localize(m, support));
    }
    c.terms.push_back(direct_sum(ring, parts));
  }

  for (std::size_t t = 0; t < r; ++t) {
    std::vector<FpMatrix> per_pattern;
    for (Pattern set = 0; set < m.pattern_count(); ++set) {
      // block offsets inside the source and target terms
      std::vector<std::size_t> src_offset, dst_offset;
      std::size_t acc = 0;
      for (auto v : supports[t]) src_offset.push_back(acc), acc += m.dim(set & ~v);
      const std::size_t src_dim = acc;
      acc = 0;
      for (auto v : supports[t + 1]) dst_offset.push_back(acc), acc += m.dim(set & ~v);
      FpMatrix d(acc, src_dim, p);
      for (std::size_t a = 0; a < subsets[t].size(); ++a) {
        const auto& s = subsets[t][a];
        for (std::size_t b = 0; b < subsets[t + 1].size(); ++b) {
          const auto& u = subsets[t + 1][b];
          // u = s ∪ {j} ?
          std::size_t j = r, mismatches = 0, si = 0;
          for (auto x : u) {
            if (si < s.size() && s[si] == x) {
              ++si;
            } else {
              j = x;
              ++mismatches;
            }
          }
          if (mismatches != 1 || si != s.size()) continue;
          std::size_t below = 0;
          for (auto x : s)
            if (x < j) ++below;
          FpMatrix block = localization_map(m, set, supports[t][a], supports[t + 1][b]);
          if (below % 2) block = block.scaled(p - 1);
          d.paste(block, dst_offset[b], src_offset[a]);
        }
      }
      per_pattern.push_back(std::move(d));
    }
    c.differentials.push_back(std::move(per_pattern));
  }
  return c;
}

/// Patternwise ker(d^i) / im(d^{i-1}) with induced transitions.
inline PatternModule cohomology_at_slot(const CechComplex& c, std::size_t slot) {
  if (slot > c.length()) throw Error(Errc::InvalidSlot, "slot " + std::to_string(slot) + " beyond complex length");
  const RingSpec& ring = c.ring;
  const int n = ring.n();
  const std::uint32_t p = ring.p();
  const PatternModule& term = c.terms[slot];
  const std::size_t count = term.pattern_count();

  std::vector<Subquotient> parts;
  parts.reserve(count);
  for (Pattern set = 0; set < count; ++set) {
    const std::size_t dim = term.dim(set);
    FpMatrix cycles = slot < c.length() ? reduce(c.differentials[slot][set]).kernel : FpMatrix::identity(dim, p);
    FpMatrix boundaries = slot > 0 ? c.differentials[slot - 1][set] : FpMatrix(dim, 0, p);
    parts.emplace_back(cycles, boundaries);
  }

  std::vector<std::size_t> dims(count);
  std::vector<std::vector<FpMatrix>> t(count, std::vector<FpMatrix>(n));
  for (Pattern set = 0; set < count; ++set) dims[set] = parts[set].dimension();
  for (Pattern set = 0; set < count; ++set)
    for (int i = 0; i < n; ++i) {
      if (!contains(set, i)) continue;
      const Pattern to = without(set, i);
      if (dims[set] == 0 || dims[to] == 0) {
        t[set][i] = FpMatrix(dims[to], dims[set], p);
        continue;
      }
      t[set][i] = parts[to].coordinates(term.transition(set, i) * parts[set].representatives());
    }
  return PatternModule(ring, std::move(dims), std::move(t));
}

/// H^i_I(M); zero above the number of generators.
inline PatternModule local_cohomology(const PatternModule& m, const MonomialIdeal& ideal, std::size_t slot) {
  CechComplex c = cech_complex(m, ideal);
  if (slot > c.length()) return PatternModule::zero(m.ring());
  return cohomology_at_slot(c, slot);
}

struct ChainStage {
  MonomialIdeal ideal;
  int slot = 0;
};

/// H^{final_slot}_m(T_1(...T_s(R))). `stages` is stored in application order:
/// stages.front() is applied to R first.
struct FunctorChain {
  RingSpec ring;
  std::vector<ChainStage> stages;
  int final_slot = 0;

  void validate() const {
    auto check = [&](int slot) {
      if (slot < 0 || slot > ring.n())
        throw Error(Errc::InvalidSlot, "cohomological slot " + std::to_string(slot) + " outside [0, n]");
    };
    for (const auto& s : stages) {
      require_same_ring(ring, s.ideal.ring());
      if (s.ideal.generators().empty()) throw Error(Errc::EmptyIdeal, "chain stage with no generators");
      check(s.slot);
    }
    check(final_slot);
  }
};

/// All intermediate modules: result[0] = R, result[k] after k stages, last = final module.
inline std::vector<PatternModule> chain_modules(const FunctorChain& chain) {
  chain.validate();
  std::vector<PatternModule> out;
  out.push_back(localized_ring(chain.ring, 0));
  for (const auto& stage : chain.stages)
    out.push_back(local_cohomology(out.back(), stage.ideal, static_cast<std::size_t>(stage.slot)));
  out.push_back(local_cohomology(out.back(), MonomialIdeal::maximal(chain.ring), static_cast<std::size_t>(chain.final_slot)));
  return out;
}

inline PatternModule iterated_chain(const FunctorChain& chain) { return chain_modules(chain).back(); }

}  // namespace grf
