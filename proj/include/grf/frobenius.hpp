#pragma once
// Finite-dimensional Z-graded modules with explicit variable actions, the
// graded Frobenius pullback, the adjunction isomorphism between maps out of the
// restriction of scalars and maps into the pullback, and the degree-support
// vanishing threshold.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "grf/linalg.hpp"
#include "grf/pattern_module.hpp"

namespace grf {

class FiniteGradedModule {
 public:
  FiniteGradedModule() = default;

  FiniteGradedModule(RingSpec ring, std::vector<long long> degrees, std::vector<FpMatrix> actions)
      : ring_(std::move(ring)), degrees_(std::move(degrees)), actions_(std::move(actions)) {
    const std::size_t dim = degrees_.size();
    if (static_cast<int>(actions_.size()) != ring_.n())
      throw Error(Errc::DimensionMismatch, "need one action matrix per variable");
    for (int i = 0; i < ring_.n(); ++i) {
      const FpMatrix& a = actions_[i];
      if (a.rows() != dim || a.cols() != dim || a.prime() != ring_.p())
        throw Error(Errc::DimensionMismatch, "action of x" + std::to_string(i + 1) + " has shape " + a.shape());
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
          if (a(r, c) && degrees_[r] != degrees_[c] + 1)
            throw Error(Errc::DegreeIncompatible, "x" + std::to_string(i + 1) + " sends basis element " +
                                                      std::to_string(c) + " outside the next degree");
    }
    for (int i = 0; i < ring_.n(); ++i)
      for (int j = i + 1; j < ring_.n(); ++j)
        if (!(actions_[i] * actions_[j] == actions_[j] * actions_[i]))
          throw Error(Errc::NonCommutingActions,
                      "x" + std::to_string(i + 1) + " and x" + std::to_string(j + 1) + " do not commute");
  }

  const RingSpec& ring() const noexcept { return ring_; }
  std::size_t dim() const noexcept { return degrees_.size(); }
  const std::vector<long long>& degrees() const noexcept { return degrees_; }
  const std::vector<FpMatrix>& actions() const noexcept { return actions_; }
  const FpMatrix& action(int i) const { return actions_.at(i); }

  /// {d : M_d != 0}
  std::set<long long> degree_support() const { return {degrees_.begin(), degrees_.end()}; }

  std::size_t dim_in_degree(long long d) const {
    return static_cast<std::size_t>(std::count(degrees_.begin(), degrees_.end(), d));
  }

 private:
  RingSpec ring_;
  std::vector<long long> degrees_;
  std::vector<FpMatrix> actions_;
};

inline FiniteGradedModule build_module(const RingSpec& ring, std::vector<long long> degrees,
                                       std::vector<FpMatrix> actions) {
  return FiniteGradedModule(ring, std::move(degrees), std::move(actions));
}

/// k = R/m placed in the given degree.
inline FiniteGradedModule residue_field(const RingSpec& ring, long long degree = 0) {
  return FiniteGradedModule(ring, {degree}, std::vector<FpMatrix>(ring.n(), FpMatrix(1, 1, ring.p())));
}

namespace detail {

// Exponent vectors b ∈ N^n with |b| <= t, ordered by |b| and then lexicographically.
inline std::vector<Exponent> exponents_up_to(int n, int t) {
  std::vector<Exponent> out;
  for (int total = 0; total <= t; ++total) {
    Exponent e(n, 0);
    auto rec = [&](auto&& self, int var, int left) -> void {
      if (var == n - 1) {
        e[var] = left;
        out.push_back(e);
        return;
      }
      for (int v = left; v >= 0; --v) {
        e[var] = v;
        self(self, var + 1, left - v);
      }
    };
    rec(rec, 0, total);
  }
  return out;
}

}  // namespace detail

/// The span of y^b (|b| <= t) inside *E(j): deg y^b = j - |b|, x_i y^b = y^{b - e_i}.
inline FiniteGradedModule truncated_dual(const RingSpec& ring, int t, long long shift) {
  if (t < 0) throw Error(Errc::InvalidInput, "truncation must be non-negative");
  const int n = ring.n();
  auto basis = detail::exponents_up_to(n, t);
  std::map<Exponent, std::size_t> index;
  for (std::size_t k = 0; k < basis.size(); ++k) index[basis[k]] = k;
  std::vector<long long> degrees;
  for (const auto& b : basis) {
    long long total = 0;
    for (int v : b) total += v;
    degrees.push_back(shift - total);
  }
  std::vector<FpMatrix> actions(n, FpMatrix(basis.size(), basis.size(), ring.p()));
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (int i = 0; i < n; ++i) {
      if (basis[k][i] == 0) continue;
      Exponent lower = basis[k];
      --lower[i];
      actions[i].set(index.at(lower), k, 1);
    }
  return FiniteGradedModule(ring, std::move(degrees), std::move(actions));
}

/// (R/I)(-shift) for an m-primary monomial ideal I: basis the standard monomials,
/// the monomial x^b sitting in degree shift + |b|.
inline FiniteGradedModule monomial_quotient(const RingSpec& ring, const std::vector<Exponent>& generators,
                                            long long shift = 0) {
  const int n = ring.n();
  MonomialIdeal ideal(ring, generators);
  std::vector<int> bound(n, -1);
  for (const auto& g : generators) {
    int nonzero = 0, var = -1;
    for (int i = 0; i < n; ++i)
      if (g[i]) ++nonzero, var = i;
    if (nonzero == 1 && (bound[var] < 0 || g[var] < bound[var])) bound[var] = g[var];
  }
  for (int i = 0; i < n; ++i)
    if (bound[i] < 0) throw Error(Errc::InvalidInput, "quotient is infinite: no pure power of x" + std::to_string(i + 1));
  auto in_ideal = [&](const Exponent& b) {
    for (const auto& g : generators) {
      bool divides = true;
      for (int i = 0; i < n; ++i) divides = divides && g[i] <= b[i];
      if (divides) return true;
    }
    return false;
  };
  int max_total = 0;
  for (int v : bound) max_total += v;
  std::vector<Exponent> basis;
  for (auto& b : detail::exponents_up_to(n, max_total))
    if (!in_ideal(b)) basis.push_back(b);
  std::map<Exponent, std::size_t> index;
  for (std::size_t k = 0; k < basis.size(); ++k) index[basis[k]] = k;
  std::vector<long long> degrees;
  for (const auto& b : basis) {
    long long total = 0;
    for (int v : b) total += v;
    degrees.push_back(shift + total);
  }
  std::vector<FpMatrix> actions(n, FpMatrix(basis.size(), basis.size(), ring.p()));
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (int i = 0; i < n; ++i) {
      Exponent up = basis[k];
      ++up[i];
      if (auto it = index.find(up); it != index.end()) actions[i].set(it->second, k, 1);
    }
  return FiniteGradedModule(ring, std::move(degrees), std::move(actions));
}

/// Multi-indices ī ∈ [0, q)^n, encoded with i_1 most significant.
class MonomialBasisIndex {
 public:
  MonomialBasisIndex(int n, std::uint64_t q) : n_(n), q_(q) {
    count_ = 1;
    for (int i = 0; i < n; ++i) count_ *= q;
  }

  std::uint64_t count() const noexcept { return count_; }
  std::uint64_t q() const noexcept { return q_; }

  std::vector<std::uint64_t> decode(std::uint64_t code) const {
    std::vector<std::uint64_t> idx(n_);
    for (int i = n_ - 1; i >= 0; --i) {
      idx[i] = code % q_;
      code /= q_;
    }
    return idx;
  }

  std::uint64_t encode(const std::vector<std::uint64_t>& idx) const {
    std::uint64_t code = 0;
    for (int i = 0; i < n_; ++i) code = code * q_ + idx[i];
    return code;
  }

  /// The distinguished index (q-1, ..., q-1).
  std::uint64_t top() const noexcept { return count_ - 1; }

  static long long degree(const std::vector<std::uint64_t>& idx) {
    long long d = 0;
    for (auto v : idx) d += static_cast<long long>(v);
    return d;
  }

 private:
  int n_;
  std::uint64_t q_;
  std::uint64_t count_;
};

inline std::uint64_t frobenius_power(std::uint32_t p, int l) {
  std::uint64_t q = 1;
  for (int k = 0; k < l; ++k) q *= p;
  return q;
}

/// Upper bound on dim F^{*l}(N); the dense action matrices make larger pullbacks impractical.
inline constexpr std::uint64_t kDefaultPullbackCap = 4096;

/// F^{*l}(N) = ⊕_ī e_ī ⊗ N. Basis element e_ī ⊗ b has index code(ī) * dim N + b and
/// degree |ī| + p^l deg b. x_j raises i_j, wrapping to 0 and acting on N when i_j = q - 1.
inline FiniteGradedModule frobenius_pullback(const FiniteGradedModule& target, int l,
                                             std::uint64_t cap = kDefaultPullbackCap) {
  if (l < 1) throw Error(Errc::InvalidInput, "Frobenius power must be positive");
  const RingSpec& ring = target.ring();
  const int n = ring.n();
  const std::uint64_t q = frobenius_power(ring.p(), l);
  MonomialBasisIndex index(n, q);
  const std::size_t dn = target.dim();
  if (index.count() * std::max<std::size_t>(dn, 1) > cap)
    throw Error(Errc::SizeLimit, "F^{*" + std::to_string(l) + "} would have dimension " +
                                     std::to_string(index.count() * dn) + " > " + std::to_string(cap));
  const std::size_t dim = index.count() * dn;
  std::vector<long long> degrees(dim);
  std::vector<FpMatrix> actions(n, FpMatrix(dim, dim, ring.p()));
  for (std::uint64_t code = 0; code < index.count(); ++code) {
    auto idx = index.decode(code);
    const long long base = MonomialBasisIndex::degree(idx);
    for (std::size_t b = 0; b < dn; ++b) degrees[code * dn + b] = base + static_cast<long long>(q) * target.degrees()[b];
    for (int j = 0; j < n; ++j) {
      auto next = idx;
      if (idx[j] + 1 < q) {
        ++next[j];
        const std::uint64_t to = index.encode(next);
        for (std::size_t b = 0; b < dn; ++b) actions[j].set(to * dn + b, code * dn + b, 1);
      } else {
        next[j] = 0;
        const std::uint64_t to = index.encode(next);
        const FpMatrix& a = target.action(j);
        for (std::size_t b = 0; b < dn; ++b)
          for (std::size_t r = 0; r < dn; ++r)
            if (a(r, b)) actions[j].set(to * dn + r, code * dn + b, a(r, b));
      }
    }
  }
  return FiniteGradedModule(ring, std::move(degrees), std::move(actions));
}

/// An R-linear map source -> target raising degrees by `shift`.
struct GradedMap {
  std::shared_ptr<const FiniteGradedModule> source;
  std::shared_ptr<const FiniteGradedModule> target;
  FpMatrix matrix;  // target.dim() x source.dim()
  long long shift = 0;
};

inline bool respects_shift(const FiniteGradedModule& source, const FiniteGradedModule& target, const FpMatrix& matrix,
                           long long shift) {
  for (std::size_t r = 0; r < matrix.rows(); ++r)
    for (std::size_t c = 0; c < matrix.cols(); ++c)
      if (matrix(r, c) && target.degrees()[r] != source.degrees()[c] + shift) return false;
  return true;
}

inline bool is_linear(const FiniteGradedModule& source, const FiniteGradedModule& target, const FpMatrix& matrix) {
  for (int i = 0; i < source.ring().n(); ++i)
    if (!(matrix * source.action(i) == target.action(i) * matrix)) return false;
  return true;
}

namespace detail {

// Kernel of the linear system {X * left_i = right_i * X} restricted to the
// admissible entries, returned as matrices.
inline std::vector<FpMatrix> intertwiner_basis(std::size_t rows, std::size_t cols, std::uint32_t p,
                                               const std::vector<FpMatrix>& left, const std::vector<FpMatrix>& right,
                                               const std::vector<std::pair<std::size_t, std::size_t>>& unknowns) {
  std::vector<FpMatrix> basis;
  if (unknowns.empty()) return basis;
  // unknown u sits at (ru, cu). (X L)[r][c] = Σ_k X[r][k] L[k][c]; (R X)[r][c] = Σ_k R[r][k] X[k][c].
  const std::size_t eqs_per_action = rows * cols;
  FpMatrix system(eqs_per_action * left.size(), unknowns.size(), p);
  for (std::size_t a = 0; a < left.size(); ++a) {
    const FpMatrix& l = left[a];
    const FpMatrix& rt = right[a];
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      auto [ru, cu] = unknowns[u];
      for (std::size_t c = 0; c < cols; ++c)
        if (Residue v = l(cu, c)) system.add_to(a * eqs_per_action + ru * cols + c, u, v);
      for (std::size_t r = 0; r < rows; ++r)
        if (Residue v = rt(r, ru)) system.add_to(a * eqs_per_action + r * cols + cu, u, fp_neg(v, p));
    }
  }
  EchelonData e = reduce(system);
  for (std::size_t k = 0; k < e.kernel.cols(); ++k) {
    FpMatrix m(rows, cols, p);
    for (std::size_t u = 0; u < unknowns.size(); ++u) m.set(unknowns[u].first, unknowns[u].second, e.kernel(u, k));
    basis.push_back(std::move(m));
  }
  return basis;
}

}  // namespace detail

/// Basis of degree-δ R-linear maps source -> target.
inline std::vector<GradedMap> hom_space(const FiniteGradedModule& source, const FiniteGradedModule& target,
                                        long long shift) {
  require_same_ring(source.ring(), target.ring());
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  for (std::size_t r = 0; r < target.dim(); ++r)
    for (std::size_t c = 0; c < source.dim(); ++c)
      if (target.degrees()[r] == source.degrees()[c] + shift) unknowns.emplace_back(r, c);
  auto src = std::make_shared<const FiniteGradedModule>(source);
  auto dst = std::make_shared<const FiniteGradedModule>(target);
  std::vector<GradedMap> out;
  for (auto& m : detail::intertwiner_basis(target.dim(), source.dim(), source.ring().p(), source.actions(),
                                           target.actions(), unknowns))
    out.push_back(GradedMap{src, dst, std::move(m), shift});
  return out;
}

/// A linear map g from the restriction F^l_*(M) to N: g(x_i^{p^l} m) = x_i g(m).
/// Shift class δ means g sends M_d into N_e whenever p^l e + n(p^l - 1) = d + δ
/// and kills M_d when no such e exists; these are exactly the g whose adjoint
/// M -> F^{*l}(N) raises degrees by δ.
struct RestrictedMap {
  FpMatrix matrix;  // N.dim() x M.dim()
  int l = 1;
  long long shift = 0;
};

inline bool respects_restricted_class(const FiniteGradedModule& source, const FiniteGradedModule& target,
                                      const FpMatrix& matrix, int l, long long shift) {
  const long long q = static_cast<long long>(frobenius_power(source.ring().p(), l));
  const long long n = source.ring().n();
  for (std::size_t r = 0; r < matrix.rows(); ++r)
    for (std::size_t c = 0; c < matrix.cols(); ++c)
      if (matrix(r, c) && q * target.degrees()[r] + n * (q - 1) != source.degrees()[c] + shift) return false;
  return true;
}

inline bool is_restricted_linear(const FiniteGradedModule& source, const FiniteGradedModule& target,
                                 const FpMatrix& matrix, int l) {
  const std::uint64_t q = frobenius_power(source.ring().p(), l);
  for (int i = 0; i < source.ring().n(); ++i)
    if (!(matrix * matrix_power(source.action(i), q) == target.action(i) * matrix)) return false;
  return true;
}

/// Basis of restricted maps F^l_*(source) -> target in shift class δ.
inline std::vector<RestrictedMap> restricted_hom_space(const FiniteGradedModule& source,
                                                       const FiniteGradedModule& target, int l, long long shift) {
  require_same_ring(source.ring(), target.ring());
  const std::uint64_t q = frobenius_power(source.ring().p(), l);
  const long long qs = static_cast<long long>(q);
  const long long n = source.ring().n();
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  for (std::size_t r = 0; r < target.dim(); ++r)
    for (std::size_t c = 0; c < source.dim(); ++c)
      if (qs * target.degrees()[r] + n * (qs - 1) == source.degrees()[c] + shift) unknowns.emplace_back(r, c);
  std::vector<FpMatrix> powered;
  for (const auto& a : source.actions()) powered.push_back(matrix_power(a, q));
  std::vector<RestrictedMap> out;
  for (auto& m : detail::intertwiner_basis(target.dim(), source.dim(), source.ring().p(), powered, target.actions(),
                                           unknowns))
    out.push_back(RestrictedMap{std::move(m), l, shift});
  return out;
}

namespace detail {

// Matrix of m ↦ x^ī m on M.
inline FpMatrix monomial_action(const FiniteGradedModule& m, const std::vector<std::uint64_t>& exponent) {
  FpMatrix a = FpMatrix::identity(m.dim(), m.ring().p());
  for (int i = 0; i < m.ring().n(); ++i)
    if (exponent[i]) a = matrix_power(m.action(i), exponent[i]) * a;
  return a;
}

}  // namespace detail

/// f(m) = Σ_ī e_ī ⊗ g(e_{(q-1) - ī} m), as a map M -> F^{*l}(N) of degree g.shift.
inline GradedMap duality_forward(const FiniteGradedModule& source, const FiniteGradedModule& target,
                                 const RestrictedMap& g, std::uint64_t cap = kDefaultPullbackCap) {
  require_same_ring(source.ring(), target.ring());
  if (g.matrix.rows() != target.dim() || g.matrix.cols() != source.dim())
    throw Error(Errc::DimensionMismatch, "restricted map has shape " + g.matrix.shape());
  if (!is_restricted_linear(source, target, g.matrix, g.l))
    throw Error(Errc::PrecompositionNotLinear, "g(x^{p^l} m) != x g(m)");
  if (!respects_restricted_class(source, target, g.matrix, g.l, g.shift))
    throw Error(Errc::DegreeIncompatible, "restricted map outside shift class " + std::to_string(g.shift));
  auto pulled = std::make_shared<const FiniteGradedModule>(frobenius_pullback(target, g.l, cap));
  const int n = source.ring().n();
  const std::uint64_t q = frobenius_power(source.ring().p(), g.l);
  MonomialBasisIndex index(n, q);
  const std::size_t dn = target.dim();
  FpMatrix f(pulled->dim(), source.dim(), source.ring().p());
  for (std::uint64_t code = 0; code < index.count(); ++code) {
    auto idx = index.decode(code);
    std::vector<std::uint64_t> complement(n);
    for (int i = 0; i < n; ++i) complement[i] = q - 1 - idx[i];
    f.paste(g.matrix * detail::monomial_action(source, complement), code * dn, 0);
  }
  auto src = std::make_shared<const FiniteGradedModule>(source);
  if (!is_linear(*src, *pulled, f)) throw Error(Errc::Internal, "adjoint map is not R-linear");
  if (!respects_shift(*src, *pulled, f, g.shift)) throw Error(Errc::Internal, "adjoint map has the wrong degree");
  return GradedMap{src, pulled, std::move(f), g.shift};
}

/// g = p_{q-1} ∘ f: the e_{(q-1,...,q-1)} coordinate block of f.
inline RestrictedMap duality_backward(const FiniteGradedModule& source, const FiniteGradedModule& target,
                                      const GradedMap& f, int l) {
  const std::uint64_t q = frobenius_power(source.ring().p(), l);
  MonomialBasisIndex index(source.ring().n(), q);
  const std::size_t dn = target.dim();
  if (f.matrix.rows() != index.count() * dn || f.matrix.cols() != source.dim())
    throw Error(Errc::DimensionMismatch, "map into F^{*l}(N) has shape " + f.matrix.shape());
  return RestrictedMap{f.matrix.row_block(index.top() * dn, dn), l, f.shift};
}

/// The joint kernel of all variable actions, with a homogeneous basis.
inline FiniteGradedModule socle(const FiniteGradedModule& m) {
  const std::uint32_t p = m.ring().p();
  std::vector<long long> degrees;
  for (long long d : m.degree_support()) {
    std::vector<std::size_t> cols;
    for (std::size_t k = 0; k < m.dim(); ++k)
      if (m.degrees()[k] == d) cols.push_back(k);
    FpMatrix stacked(0, cols.size(), p);
    for (const auto& a : m.actions()) {
      FpMatrix block = a.select_columns(cols);
      FpMatrix next(stacked.rows() + block.rows(), cols.size(), p);
      next.paste(stacked, 0, 0);
      next.paste(block, stacked.rows(), 0);
      stacked = std::move(next);
    }
    const std::size_t kernel_dim = cols.size() - rank(stacked);
    degrees.insert(degrees.end(), kernel_dim, d);
  }
  const std::size_t dim = degrees.size();
  return FiniteGradedModule(m.ring(), std::move(degrees), std::vector<FpMatrix>(m.ring().n(), FpMatrix(dim, dim, p)));
}

/// Least s with p^l ∤ (d + n) for every l >= s and d in the support, i.e. with
/// (d - n(p^l - 1)) / p^l never an integer; 0 for an empty support.
inline unsigned vanishing_threshold(const std::set<long long>& support, int n, std::uint32_t p) {
  if (support.count(-n)) throw Error(Errc::MinusNInSupport, "degree -n = " + std::to_string(-n) + " is in the support");
  unsigned s = 0;
  for (long long d : support) s = std::max(s, p_adic_valuation(d + n, p) + 1);
  return s;
}

struct ShiftClassCheck {
  long long shift = 0;
  std::size_t restricted_dim = 0;
  std::size_t pullback_dim = 0;
  bool roundtrip = true;
};

struct DualityCheck {
  std::size_t pullback_dim = 0;
  std::vector<ShiftClassCheck> classes;  // only classes where either side is nonzero
  std::optional<long long> first_failure;
  bool ok() const { return !first_failure; }
};

/// Round trip of the adjunction in every shift class where either side can be
/// nonzero, with equal hom dimensions on the two sides.
inline DualityCheck check_duality(const FiniteGradedModule& source, const FiniteGradedModule& target, int l,
                                  std::uint64_t cap = kDefaultPullbackCap) {
  DualityCheck out;
  auto pulled = frobenius_pullback(target, l, cap);
  out.pullback_dim = pulled.dim();
  if (!source.dim() || !pulled.dim()) return out;
  auto [smin, smax] = std::minmax_element(source.degrees().begin(), source.degrees().end());
  auto [tmin, tmax] = std::minmax_element(pulled.degrees().begin(), pulled.degrees().end());
  for (long long shift = *tmin - *smax; shift <= *tmax - *smin; ++shift) {
    auto left = restricted_hom_space(source, target, l, shift);
    auto right = hom_space(source, pulled, shift);
    bool good = left.size() == right.size();
    for (const auto& g : left) {
      const GradedMap f = duality_forward(source, target, g, cap);
      good = good && is_linear(source, pulled, f.matrix) && respects_shift(source, pulled, f.matrix, shift) &&
             duality_backward(source, target, f, l).matrix == g.matrix;
    }
    for (const auto& f : right) {
      auto g = duality_backward(source, target, f, l);
      good = good && is_restricted_linear(source, target, g.matrix, l) &&
             duality_forward(source, target, g, cap).matrix == f.matrix;
    }
    if (!good && !out.first_failure) out.first_failure = shift;
    if (!left.empty() || !right.empty()) out.classes.push_back({shift, left.size(), right.size(), good});
  }
  return out;
}

/// True iff the only degree-preserving map M -> F^{*l}(N) is zero.
inline bool verify_vanishing(const FiniteGradedModule& source, const FiniteGradedModule& target, int l,
                             std::uint64_t cap = kDefaultPullbackCap) {
  return hom_space(source, frobenius_pullback(target, l, cap), 0).empty();
}

}  // namespace grf
