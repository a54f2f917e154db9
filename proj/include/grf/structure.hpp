#pragma once
// Checks that a computed module is isomorphic to *E(n)^c as a graded module.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grf/cech.hpp"
#include "grf/pattern_module.hpp"

namespace grf {

/// Inclusive range of total degrees.
struct DegreeWindow {
  long long lo = 0;
  long long hi = 0;

  /// Degrees -n down to -n-8.
  static DegreeWindow standard(int n) { return {-n - 8LL, -static_cast<long long>(n)}; }
};

struct StructureReport {
  bool zero_dimensional = false;
  std::uint64_t multiplicity = 0;
  std::optional<long long> socle_degree;
  bool hilbert_profile_ok = false;
  bool frobenius_identity_ok = false;
  bool pass = false;
  std::vector<std::string> reasons;  // empty on pass
  DegreeWindow window;
};

/// dim M_d = Σ dim M_{(d - |ī|)/p} over ī ∈ [0, p-1]^n with p | d - |ī|, for every d in
/// the window. `dim_of` must be defined on all degrees (the profile of an m-torsion module).
template <class DimFn>
bool frobenius_hilbert_identity(DimFn&& dim_of, int n, std::uint32_t p, DegreeWindow window,
                                long long* first_failure = nullptr) {
  const long long ps = p;
  // multiplicity of each total |ī|
  std::vector<std::uint64_t> count_by_total{1};
  for (int v = 0; v < n; ++v) {
    std::vector<std::uint64_t> next(count_by_total.size() + ps - 1, 0);
    for (std::size_t t = 0; t < count_by_total.size(); ++t)
      for (long long i = 0; i < ps; ++i) next[t + i] += count_by_total[t];
    count_by_total = std::move(next);
  }
  for (long long d = window.lo; d <= window.hi; ++d) {
    std::uint64_t rhs = 0;
    for (std::size_t t = 0; t < count_by_total.size(); ++t) {
      long long rest = d - static_cast<long long>(t);
      if (rest % ps != 0) continue;
      rhs += count_by_total[t] * static_cast<std::uint64_t>(dim_of(rest / ps));
    }
    if (static_cast<std::uint64_t>(dim_of(d)) != rhs) {
      if (first_failure) *first_failure = d;
      return false;
    }
  }
  return true;
}

inline bool frobenius_hilbert_identity(const PatternModule& m, DegreeWindow window, long long* first_failure = nullptr) {
  if (!is_zero_dimensional(m))
    throw Error(Errc::NotZeroDimensional, "Frobenius Hilbert identity needs an m-torsion module");
  return frobenius_hilbert_identity([&](long long d) { return *hilbert_dimension(m, d); }, m.ring().n(), m.ring().p(),
                                    window, first_failure);
}

/// Socle dimension at the representative multidegree of each pattern that can carry socle:
/// coordinates -1 on the pattern, 0 elsewhere. Elsewhere some x_i acts as the identity.
inline std::size_t socle_dimension(const PatternModule& m, Pattern set) {
  const int n = m.ring().n();
  const std::size_t dim = m.dim(set);
  if (dim == 0) return 0;
  // x_i with i outside the pattern is the identity on space(set).
  if (set != full_pattern(n)) return 0;
  FpMatrix stacked(0, dim, m.ring().p());
  for (int i = 0; i < n; ++i) {
    const FpMatrix& t = m.transition(set, i);
    FpMatrix next(stacked.rows() + t.rows(), dim, m.ring().p());
    next.paste(stacked, 0, 0);
    next.paste(t, stacked.rows(), 0);
    stacked = std::move(next);
  }
  return dim - rank(stacked);
}

inline StructureReport verify_injective_structure(const PatternModule& m, DegreeWindow window) {
  const int n = m.ring().n();
  StructureReport report;
  report.window = window;
  report.zero_dimensional = is_zero_dimensional(m);
  if (!report.zero_dimensional) {
    std::string where;
    for (Pattern set = 0; set < m.pattern_count(); ++set)
      if (set != full_pattern(n) && m.dim(set)) {
        where = pattern_name(set, n);
        break;
      }
    throw Error(Errc::NotZeroDimensional, "module is not supported on m: pattern " + where + " is nonzero");
  }
  const Pattern full = full_pattern(n);
  const std::uint64_t c = m.dim(full);
  report.multiplicity = c;

  report.hilbert_profile_ok = true;
  for (long long d = window.lo; d <= window.hi; ++d) {
    const std::uint64_t expected = c * binom_profile(-d - 1, n - 1);
    const std::uint64_t got = *hilbert_dimension(m, d);
    if (got != expected) {
      report.hilbert_profile_ok = false;
      report.reasons.push_back("Hilbert profile mismatch at degree " + std::to_string(d) + ": " + std::to_string(got) +
                               " != " + std::to_string(expected));
      break;
    }
  }

  // The socle lives in a single multidegree, (-1, ..., -1).
  const std::size_t socle_dim = socle_dimension(m, full);
  if (socle_dim > 0) report.socle_degree = -static_cast<long long>(n);
  if (c > 0 && (socle_dim != c || report.socle_degree != -static_cast<long long>(n)))
    report.reasons.push_back("socle has dimension " + std::to_string(socle_dim) + ", expected " + std::to_string(c) +
                             " in degree " + std::to_string(-n));
  if (c == 0 && socle_dim != 0) report.reasons.push_back("zero module reports a socle");

  long long failure = 0;
  report.frobenius_identity_ok = frobenius_hilbert_identity(m, window, &failure);
  if (!report.frobenius_identity_ok)
    report.reasons.push_back("Frobenius Hilbert identity fails at degree " + std::to_string(failure));

  report.pass = report.reasons.empty() && report.zero_dimensional && report.hilbert_profile_ok &&
                report.frobenius_identity_ok && (c == 0 || report.socle_degree == -static_cast<long long>(n));
  return report;
}

/// table[i][j] = multiplicity of H^i_m(H^{n-j}_I(R)), 0 <= i, j <= n.
using LyubeznikTable = std::vector<std::vector<std::uint64_t>>;

inline LyubeznikTable lyubeznik_table(const MonomialIdeal& ideal) {
  const RingSpec& ring = ideal.ring();
  const int n = ring.n();
  if (ideal.generators().empty()) throw Error(Errc::EmptyIdeal, "table needs a nonempty ideal");
  LyubeznikTable table(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  const PatternModule r = localized_ring(ring, 0);
  const MonomialIdeal maximal = MonomialIdeal::maximal(ring);
  for (int j = 0; j <= n; ++j) {
    const PatternModule inner = local_cohomology(r, ideal, static_cast<std::size_t>(n - j));
    if (inner.is_zero()) continue;
    const CechComplex outer = cech_complex(inner, maximal);
    for (int i = 0; i <= n; ++i) {
      const PatternModule h = cohomology_at_slot(outer, static_cast<std::size_t>(i));
      const StructureReport report = verify_injective_structure(h, DegreeWindow::standard(n));
      if (!report.pass) throw Error(Errc::Internal, "H^" + std::to_string(i) + "_m(H^" + std::to_string(n - j) +
                                                        "_I(R)) failed verification: " + report.reasons.front());
      table[i][j] = report.multiplicity;
    }
  }
  return table;
}

}  // namespace grf
