#pragma once
// Exact arithmetic over the prime field F_p and small dense linear algebra.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grf/error.hpp"

namespace grf {

using Residue = std::uint32_t;

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// The polynomial ring F_p[x_1, ..., x_n].
class RingSpec {
 public:
  static constexpr int kMaxVariables = 16;
  static constexpr std::uint32_t kMaxPrime = 1u << 16;

  RingSpec() = default;

  RingSpec(int n, std::uint32_t p, std::vector<std::string> names = {}) : n_(n), p_(p), names_(std::move(names)) {
    if (n < 1 || n > kMaxVariables)
      throw Error(Errc::InvalidRing, "number of variables must lie in [1, 16], got " + std::to_string(n));
    if (!is_prime(p)) throw Error(Errc::InvalidRing, std::to_string(p) + " is not prime");
    if (p >= kMaxPrime) throw Error(Errc::InvalidRing, "characteristic too large: " + std::to_string(p));
    if (names_.empty()) {
      for (int i = 1; i <= n; ++i) names_.push_back("x" + std::to_string(i));
    }
    if (static_cast<int>(names_.size()) != n)
      throw Error(Errc::InvalidRing, "expected " + std::to_string(n) + " variable names");
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j]) throw Error(Errc::InvalidRing, "duplicate variable name " + names_[i]);
  }

  int n() const noexcept { return n_; }
  std::uint32_t p() const noexcept { return p_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  // Names are cosmetic.
  friend bool operator==(const RingSpec& a, const RingSpec& b) { return a.n_ == b.n_ && a.p_ == b.p_; }

 private:
  int n_ = 1;
  std::uint32_t p_ = 2;
  std::vector<std::string> names_{"x1"};
};

inline void require_same_ring(const RingSpec& a, const RingSpec& b) {
  if (!(a == b))
    throw Error(Errc::RingMismatch, "ring (n=" + std::to_string(a.n()) + ", p=" + std::to_string(a.p()) +
                                        ") vs (n=" + std::to_string(b.n()) + ", p=" + std::to_string(b.p()) + ")");
}

inline Residue fp_reduce(long long v, std::uint32_t p) {
  long long r = v % static_cast<long long>(p);
  return static_cast<Residue>(r < 0 ? r + p : r);
}

inline Residue fp_mul(Residue a, Residue b, std::uint32_t p) {
  return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p);
}

inline Residue fp_add(Residue a, Residue b, std::uint32_t p) {
  Residue s = a + b;
  return s >= p ? s - p : s;
}

inline Residue fp_sub(Residue a, Residue b, std::uint32_t p) { return a >= b ? a - b : a + p - b; }

inline Residue fp_neg(Residue a, std::uint32_t p) { return a == 0 ? 0 : p - a; }

inline Residue fp_inv(Residue a, std::uint32_t p) {
  if (a == 0) throw Error(Errc::Internal, "inverse of zero");
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = a, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<Residue>(result);
}

/// Dense matrix over F_p. Column vectors are n x 1 matrices; a matrix acts on the left.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p) : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

  static FpMatrix identity(std::size_t n, std::uint32_t p) {
    FpMatrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1 % p;
    return m;
  }

  static FpMatrix from_rows(const std::vector<std::vector<long long>>& rows, std::uint32_t p) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    FpMatrix m(rows.size(), cols, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw Error(Errc::DimensionMismatch, "ragged matrix rows");
      for (std::size_t c = 0; c < cols; ++c) m.set(r, c, fp_reduce(rows[r][c], p));
    }
    return m;
  }

  static FpMatrix from_rows(std::initializer_list<std::initializer_list<long long>> rows, std::uint32_t p) {
    std::vector<std::vector<long long>> v;
    for (const auto& r : rows) v.emplace_back(r);
    return from_rows(v, p);
  }

  static FpMatrix column_vector(const std::vector<Residue>& v, std::uint32_t p) {
    FpMatrix m(v.size(), 1, p);
    for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i] % p);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint32_t prime() const noexcept { return p_; }

  Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Residue v) { data_[r * cols_ + c] = v; }
  void add_to(std::size_t r, std::size_t c, Residue v) { data_[r * cols_ + c] = fp_add(data_[r * cols_ + c], v, p_); }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Residue v) { return v == 0; });
  }

  std::vector<Residue> column(std::size_t c) const {
    std::vector<Residue> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  FpMatrix column_block(std::size_t first, std::size_t count) const {
    FpMatrix m(rows_, count, p_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < count; ++c) m.set(r, c, (*this)(r, first + c));
    return m;
  }

  FpMatrix row_block(std::size_t first, std::size_t count) const {
    FpMatrix m(count, cols_, p_);
    for (std::size_t r = 0; r < count; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m.set(r, c, (*this)(first + r, c));
    return m;
  }

  FpMatrix select_columns(const std::vector<std::size_t>& which) const {
    FpMatrix m(rows_, which.size(), p_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < which.size(); ++c) m.set(r, c, (*this)(r, which[c]));
    return m;
  }

  FpMatrix transpose() const {
    FpMatrix t(cols_, rows_, p_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, (*this)(r, c));
    return t;
  }

  FpMatrix scaled(Residue s) const {
    FpMatrix m = *this;
    for (auto& v : m.data_) v = fp_mul(v, s % p_, p_);
    return m;
  }

  friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
    if (a.cols_ != b.rows_)
      throw Error(Errc::DimensionMismatch, "product of " + a.shape() + " and " + b.shape());
    FpMatrix m(a.rows_, b.cols_, a.p_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        Residue x = a(r, k);
        if (x == 0) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) {
          Residue y = b(k, c);
          if (y) m.add_to(r, c, fp_mul(x, y, a.p_));
        }
      }
    return m;
  }

  friend FpMatrix operator+(const FpMatrix& a, const FpMatrix& b) {
    a.require_same_shape(b);
    FpMatrix m = a;
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] = fp_add(m.data_[i], b.data_[i], a.p_);
    return m;
  }

  friend FpMatrix operator-(const FpMatrix& a, const FpMatrix& b) {
    a.require_same_shape(b);
    FpMatrix m = a;
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] = fp_sub(m.data_[i], b.data_[i], a.p_);
    return m;
  }

  friend bool operator==(const FpMatrix& a, const FpMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// [a | b]
  static FpMatrix hstack(const FpMatrix& a, const FpMatrix& b) {
    if (a.rows_ != b.rows_) throw Error(Errc::DimensionMismatch, "hstack of " + a.shape() + " and " + b.shape());
    FpMatrix m(a.rows_, a.cols_ + b.cols_, a.p_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
      for (std::size_t c = 0; c < a.cols_; ++c) m.set(r, c, a(r, c));
      for (std::size_t c = 0; c < b.cols_; ++c) m.set(r, a.cols_ + c, b(r, c));
    }
    return m;
  }

  void paste(const FpMatrix& block, std::size_t row, std::size_t col) {
    for (std::size_t r = 0; r < block.rows_; ++r)
      for (std::size_t c = 0; c < block.cols_; ++c) set(row + r, col + c, block(r, c));
  }

  static FpMatrix block_diagonal(const std::vector<FpMatrix>& blocks, std::uint32_t p) {
    std::size_t rows = 0, cols = 0;
    for (const auto& b : blocks) rows += b.rows_, cols += b.cols_;
    FpMatrix m(rows, cols, p);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
      m.paste(b, r0, c0);
      r0 += b.rows_;
      c0 += b.cols_;
    }
    return m;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  std::vector<std::vector<Residue>> to_rows() const {
    std::vector<std::vector<Residue>> out(rows_, std::vector<Residue>(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out[r][c] = (*this)(r, c);
    return out;
  }

 private:
  void require_same_shape(const FpMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw Error(Errc::DimensionMismatch, "shapes " + shape() + " and " + b.shape());
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::uint32_t p_ = 2;
  std::vector<Residue> data_;
};

inline FpMatrix matrix_power(const FpMatrix& a, unsigned long long e) {
  FpMatrix result = FpMatrix::identity(a.rows(), a.prime());
  FpMatrix base = a;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

struct EchelonData {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  FpMatrix kernel;   // cols x (cols - rank); columns form a kernel basis
  FpMatrix reduced;  // reduced row echelon form
};

/// Gauss-Jordan elimination with leftmost pivot column and the first row
/// below the current one holding a nonzero entry. Kernel vectors are scaled
/// so their first nonzero coordinate is 1.
inline EchelonData reduce(const FpMatrix& a) {
  const std::uint32_t p = a.prime();
  EchelonData out;
  out.reduced = a;
  FpMatrix& m = out.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot_row = row;
    while (pivot_row < m.rows() && m(pivot_row, col) == 0) ++pivot_row;
    if (pivot_row == m.rows()) continue;
    if (pivot_row != row)
      for (std::size_t c = 0; c < m.cols(); ++c) {
        Residue t = m(row, c);
        m.set(row, c, m(pivot_row, c));
        m.set(pivot_row, c, t);
      }
    Residue inv = fp_inv(m(row, col), p);
    for (std::size_t c = col; c < m.cols(); ++c) m.set(row, c, fp_mul(m(row, c), inv, p));
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      Residue factor = m(r, col);
      if (factor == 0) continue;
      for (std::size_t c = col; c < m.cols(); ++c) m.set(r, c, fp_sub(m(r, c), fp_mul(factor, m(row, c), p), p));
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rank = out.pivots.size();

  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : out.pivots) is_pivot[c] = true;
  out.kernel = FpMatrix(m.cols(), m.cols() - out.rank, p);
  std::size_t k = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Residue> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t r = 0; r < out.rank; ++r) v[out.pivots[r]] = fp_neg(m(r, free), p);
    auto lead = std::find_if(v.begin(), v.end(), [](Residue x) { return x != 0; });
    Residue s = fp_inv(*lead, p);
    for (std::size_t i = 0; i < v.size(); ++i) out.kernel.set(i, k, fp_mul(v[i], s, p));
    ++k;
  }
  return out;
}

inline std::size_t rank(const FpMatrix& a) { return reduce(a).rank; }

/// Columns of `a` at the pivot positions: a basis of the column space.
inline FpMatrix column_space_basis(const FpMatrix& a) { return a.select_columns(reduce(a).pivots); }

/// Solves a * x = b (b may hold several right-hand sides as columns).
inline std::optional<FpMatrix> solve(const FpMatrix& a, const FpMatrix& b) {
  if (a.rows() != b.rows()) throw Error(Errc::DimensionMismatch, "solve with " + a.shape() + " and " + b.shape());
  const std::uint32_t p = a.prime();
  EchelonData e = reduce(FpMatrix::hstack(a, b));
  for (auto pc : e.pivots)
    if (pc >= a.cols()) return std::nullopt;
  FpMatrix x(a.cols(), b.cols(), p);
  for (std::size_t r = 0; r < e.rank; ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) x.set(e.pivots[r], c, e.reduced(r, a.cols() + c));
  return x;
}

/// A subquotient Z/B given a spanning set of the cycles Z and of the boundaries B ⊆ Z.
/// Representatives are the cycle columns that first extend a basis of B, in column order.
class Subquotient {
 public:
  Subquotient(const FpMatrix& cycles, const FpMatrix& boundaries) {
    boundary_ = column_space_basis(boundaries);
    EchelonData e = reduce(FpMatrix::hstack(boundary_, cycles));
    std::vector<std::size_t> picks;
    for (auto pc : e.pivots)
      if (pc >= boundary_.cols()) picks.push_back(pc - boundary_.cols());
    reps_ = cycles.select_columns(picks);
    basis_ = FpMatrix::hstack(boundary_, reps_);
  }

  std::size_t dimension() const noexcept { return reps_.cols(); }
  const FpMatrix& representatives() const noexcept { return reps_; }

  /// Coordinates (w.r.t. the representatives) of the classes of the columns of z.
  FpMatrix coordinates(const FpMatrix& z) const {
    auto x = solve(basis_, z);
    if (!x) throw Error(Errc::Internal, "vector does not lie in the cycle space");
    return x->row_block(boundary_.cols(), reps_.cols());
  }

 private:
  FpMatrix boundary_;
  FpMatrix reps_;
  FpMatrix basis_;
};

/// C(m, k) for m >= k >= 0, and 0 otherwise.
inline std::uint64_t binom_profile(long long m, long long k) {
  if (k < 0 || m < k) return 0;
  k = std::min(k, m - k);
  unsigned __int128 r = 1;
  for (long long i = 1; i <= k; ++i) r = r * static_cast<unsigned __int128>(m - k + i) / static_cast<unsigned __int128>(i);
  return static_cast<std::uint64_t>(r);
}

inline unsigned p_adic_valuation(long long m, std::uint32_t p) {
  if (m == 0) throw Error(Errc::ZeroValuation, "valuation of 0");
  unsigned e = 0;
  while (m % static_cast<long long>(p) == 0) {
    m /= static_cast<long long>(p);
    ++e;
  }
  return e;
}

}  // namespace grf
