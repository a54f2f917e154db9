#pragma once
// Z^n-graded "straight" modules encoded by one F_p space per negativity pattern.
//
// A pattern is a subset of the variables, stored as a bitmask (bit i stands for
// x_{i+1}). The graded piece at a multidegree a is the space of the pattern
// {i : a_i < 0}. Multiplication by x_i is the identity unless it moves a_i from
// -1 to 0, in which case it is the transition t_i[N] : space(N) -> space(N \ {i}).

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grf/linalg.hpp"

namespace grf {

using Pattern = std::uint32_t;
using Multidegree = std::vector<long long>;
using Exponent = std::vector<int>;

constexpr bool contains(Pattern set, int i) { return (set >> i) & 1u; }
constexpr Pattern without(Pattern set, int i) { return set & ~(Pattern{1} << i); }
constexpr Pattern full_pattern(int n) { return (Pattern{1} << n) - 1; }
inline int pattern_size(Pattern set) { return std::popcount(set); }

inline Pattern pattern_of(std::span<const long long> a) {
  Pattern set = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < 0) set |= Pattern{1} << i;
  return set;
}

inline std::string pattern_name(Pattern set, int n) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < n; ++i)
    if (contains(set, i)) {
      if (!first) s += ",";
      s += std::to_string(i + 1);
      first = false;
    }
  return s + "}";
}

class PatternModule {
 public:
  PatternModule() = default;

  /// transitions[N][i] must be present (dims(N \ {i}) x dims(N)) for every i in N;
  /// entries for i not in N are ignored. Validates shapes and commuting squares.
  PatternModule(RingSpec ring, std::vector<std::size_t> dims, std::vector<std::vector<FpMatrix>> transitions)
      : ring_(std::move(ring)), dims_(std::move(dims)), transitions_(std::move(transitions)) {
    validate();
  }

  static PatternModule zero(const RingSpec& ring) {
    const std::size_t count = std::size_t{1} << ring.n();
    std::vector<std::vector<FpMatrix>> t(count, std::vector<FpMatrix>(ring.n()));
    for (Pattern set = 0; set < count; ++set)
      for (int i = 0; i < ring.n(); ++i)
        if (contains(set, i)) t[set][i] = FpMatrix(0, 0, ring.p());
    return PatternModule(ring, std::vector<std::size_t>(count, 0), std::move(t));
  }

  const RingSpec& ring() const noexcept { return ring_; }
  std::size_t pattern_count() const noexcept { return dims_.size(); }
  std::size_t dim(Pattern set) const { return dims_.at(set); }
  const FpMatrix& transition(Pattern set, int i) const { return transitions_.at(set).at(i); }

  bool is_zero() const {
    for (auto d : dims_)
      if (d) return false;
    return true;
  }

  friend bool operator==(const PatternModule& a, const PatternModule& b) {
    if (!(a.ring_ == b.ring_) || a.dims_ != b.dims_) return false;
    for (Pattern set = 0; set < a.dims_.size(); ++set)
      for (int i = 0; i < a.ring_.n(); ++i)
        if (contains(set, i) && !(a.transitions_[set][i] == b.transitions_[set][i])) return false;
    return true;
  }

  /// Throws Internal if a commuting square fails; shapes are checked too.
  void validate() const {
    const int n = ring_.n();
    const std::size_t count = std::size_t{1} << n;
    if (dims_.size() != count || transitions_.size() != count)
      throw Error(Errc::DimensionMismatch, "pattern module needs 2^n pattern spaces");
    for (Pattern set = 0; set < count; ++set) {
      if (static_cast<int>(transitions_[set].size()) != n)
        throw Error(Errc::DimensionMismatch, "transition list of pattern " + pattern_name(set, n));
      for (int i = 0; i < n; ++i) {
        if (!contains(set, i)) continue;
        const FpMatrix& t = transitions_[set][i];
        if (t.rows() != dims_[without(set, i)] || t.cols() != dims_[set] || t.prime() != ring_.p())
          throw Error(Errc::DimensionMismatch, "transition t_" + std::to_string(i + 1) + " at pattern " +
                                                   pattern_name(set, n) + " has shape " + t.shape());
      }
    }
    for (Pattern set = 0; set < count; ++set)
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          if (!contains(set, i) || !contains(set, j)) continue;
          FpMatrix lhs = transitions_[without(set, i)][j] * transitions_[set][i];
          FpMatrix rhs = transitions_[without(set, j)][i] * transitions_[set][j];
          if (!(lhs == rhs))
            throw Error(Errc::Internal, "commuting square fails at pattern " + pattern_name(set, n) + " for x" +
                                            std::to_string(i + 1) + ", x" + std::to_string(j + 1));
        }
  }

 private:
  RingSpec ring_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<FpMatrix>> transitions_;
};

class MonomialIdeal {
 public:
  MonomialIdeal() = default;

  MonomialIdeal(RingSpec ring, std::vector<Exponent> generators) : ring_(std::move(ring)), generators_(std::move(generators)) {
    for (const auto& g : generators_) {
      if (static_cast<int>(g.size()) != ring_.n())
        throw Error(Errc::InvalidInput, "monomial generator has " + std::to_string(g.size()) + " exponents, expected " +
                                            std::to_string(ring_.n()));
      bool positive = false;
      for (int e : g) {
        if (e < 0) throw Error(Errc::InvalidInput, "negative exponent in monomial generator");
        positive = positive || e > 0;
      }
      if (!positive) throw Error(Errc::InvalidInput, "empty monomial generator (all exponents zero)");
    }
  }

  static MonomialIdeal maximal(const RingSpec& ring) {
    std::vector<Exponent> gens;
    for (int i = 0; i < ring.n(); ++i) {
      Exponent e(ring.n(), 0);
      e[i] = 1;
      gens.push_back(e);
    }
    return MonomialIdeal(ring, std::move(gens));
  }

  const RingSpec& ring() const noexcept { return ring_; }
  const std::vector<Exponent>& generators() const noexcept { return generators_; }

  Pattern support(std::size_t k) const {
    Pattern set = 0;
    for (int i = 0; i < ring_.n(); ++i)
      if (generators_.at(k)[i] > 0) set |= Pattern{1} << i;
    return set;
  }

 private:
  RingSpec ring_;
  std::vector<Exponent> generators_;
};

/// R with the variables in `inverted` inverted.
inline PatternModule localized_ring(const RingSpec& ring, Pattern inverted) {
  const int n = ring.n();
  const std::size_t count = std::size_t{1} << n;
  std::vector<std::size_t> dims(count);
  for (Pattern set = 0; set < count; ++set) dims[set] = (set & ~inverted) == 0 ? 1 : 0;
  std::vector<std::vector<FpMatrix>> t(count, std::vector<FpMatrix>(n));
  for (Pattern set = 0; set < count; ++set)
    for (int i = 0; i < n; ++i)
      if (contains(set, i)) {
        Pattern to = without(set, i);
        t[set][i] = dims[set] && dims[to] ? FpMatrix::identity(1, ring.p()) : FpMatrix(dims[to], dims[set], ring.p());
      }
  return PatternModule(ring, std::move(dims), std::move(t));
}

inline PatternModule direct_sum(const PatternModule& a, const PatternModule& b) {
  require_same_ring(a.ring(), b.ring());
  const int n = a.ring().n();
  const std::size_t count = a.pattern_count();
  std::vector<std::size_t> dims(count);
  std::vector<std::vector<FpMatrix>> t(count, std::vector<FpMatrix>(n));
  for (Pattern set = 0; set < count; ++set) {
    dims[set] = a.dim(set) + b.dim(set);
    for (int i = 0; i < n; ++i)
      if (contains(set, i))
        t[set][i] = FpMatrix::block_diagonal({a.transition(set, i), b.transition(set, i)}, a.ring().p());
  }
  return PatternModule(a.ring(), std::move(dims), std::move(t));
}

/// Direct sum of a list; the zero module when the list is empty.
inline PatternModule direct_sum(const RingSpec& ring, const std::vector<PatternModule>& parts) {
  const int n = ring.n();
  const std::size_t count = std::size_t{1} << n;
  std::vector<std::size_t> dims(count, 0);
  std::vector<std::vector<FpMatrix>> t(count, std::vector<FpMatrix>(n));
  for (const auto& m : parts) require_same_ring(ring, m.ring());
  for (Pattern set = 0; set < count; ++set) {
    for (const auto& m : parts) dims[set] += m.dim(set);
    for (int i = 0; i < n; ++i) {
      if (!contains(set, i)) continue;
      std::vector<FpMatrix> blocks;
      for (const auto& m : parts) blocks.push_back(m.transition(set, i));
      t[set][i] = FpMatrix::block_diagonal(blocks, ring.p());
    }
  }
  return PatternModule(ring, std::move(dims), std::move(t));
}

/// M_V: the colimit along multiplication by the variables in V.
inline PatternModule localize(const PatternModule& m, Pattern inverted) {
  const int n = m.ring().n();
  const std::size_t count = m.pattern_count();
  std::vector<std::size_t> dims(count);
  std::vector<std::vector<FpMatrix>> t(count, std::vector<FpMatrix>(n));
  for (Pattern set = 0; set < count; ++set) dims[set] = m.dim(set & ~inverted);
  for (Pattern set = 0; set < count; ++set)
    for (int i = 0; i < n; ++i) {
      if (!contains(set, i)) continue;
      t[set][i] = contains(inverted, i) ? FpMatrix::identity(dims[set], m.ring().p())
                                        : m.transition(set & ~inverted, i);
    }
  return PatternModule(m.ring(), std::move(dims), std::move(t));
}

/// The natural map M_V -> M_W (V ⊆ W) at pattern N: space(N \ V) -> space(N \ W),
/// a composite of transitions in increasing variable order.
inline FpMatrix localization_map(const PatternModule& m, Pattern set, Pattern from, Pattern to) {
  Pattern current = set & ~from;
  const Pattern target = set & ~to;
  FpMatrix map = FpMatrix::identity(m.dim(current), m.ring().p());
  for (int i = 0; i < m.ring().n(); ++i) {
    if (contains(current, i) && !contains(target, i)) {
      map = m.transition(current, i) * map;
      current = without(current, i);
    }
  }
  return map;
}

inline std::size_t dim_at(const PatternModule& m, std::span<const long long> a) {
  if (static_cast<int>(a.size()) != m.ring().n())
    throw Error(Errc::InvalidInput, "multidegree has " + std::to_string(a.size()) + " coordinates");
  return m.dim(pattern_of(a));
}

/// Z-graded dimension at total degree d; nullopt stands for an infinite-dimensional piece.
using HilbertDim = std::optional<std::uint64_t>;

inline HilbertDim hilbert_dimension(const PatternModule& m, long long d) {
  const int n = m.ring().n();
  const Pattern full = full_pattern(n);
  for (Pattern set = 1; set < full; ++set)
    if (m.dim(set)) return std::nullopt;
  std::uint64_t value = m.dim(0) * binom_profile(d + n - 1, n - 1);
  if (full != 0) value += m.dim(full) * binom_profile(-d - 1, n - 1);
  return value;
}

/// True iff only the all-negative pattern carries a nonzero space (M is m-torsion).
inline bool is_zero_dimensional(const PatternModule& m) {
  const Pattern full = full_pattern(m.ring().n());
  for (Pattern set = 0; set < m.pattern_count(); ++set)
    if (set != full && m.dim(set)) return false;
  return true;
}

}  // namespace grf
