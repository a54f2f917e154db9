#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "grf/linalg.hpp"

using namespace grf;

namespace {

FpMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, std::uint32_t p) {
  std::uniform_int_distribution<std::uint32_t> entry(0, p - 1);
  FpMatrix m(rows, cols, p);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, entry(rng));
  return m;
}

// All vectors of F_p^cols annihilated by `a`, by exhaustive enumeration.
std::vector<std::vector<Residue>> enumerate_kernel(const FpMatrix& a) {
  const std::uint32_t p = a.prime();
  std::vector<std::vector<Residue>> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < a.cols(); ++i) total *= p;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<Residue> v(a.cols());
    std::size_t c = code;
    for (auto& x : v) x = c % p, c /= p;
    if ((a * FpMatrix::column_vector(v, p)).is_zero()) out.push_back(v);
  }
  return out;
}

// Monomials x^a in n variables with every a_i >= 1 and total degree d.
std::uint64_t count_positive_monomials(int n, int d) {
  if (n == 0) return d == 0 ? 1 : 0;
  std::uint64_t total = 0;
  for (int first = 1; first <= d; ++first) total += count_positive_monomials(n - 1, d - first);
  return total;
}

}  // namespace

TEST(RingSpec, RejectsNonPrimeAndBadNames) {
  EXPECT_THROW(RingSpec(2, 4), Error);
  EXPECT_THROW(RingSpec(2, 1), Error);
  EXPECT_THROW(RingSpec(0, 2), Error);
  EXPECT_THROW(RingSpec(2, 3, {"x", "x"}), Error);
  EXPECT_THROW(RingSpec(2, 3, {"x"}), Error);
  RingSpec r(3, 5);
  EXPECT_EQ(r.names(), (std::vector<std::string>{"x1", "x2", "x3"}));
  try {
    RingSpec(2, 9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidRing);
  }
}

TEST(Reduce, EqualRowsOverF2) {
  auto e = reduce(FpMatrix::from_rows({{1, 1}, {1, 1}}, 2));
  EXPECT_EQ(e.rank, 1u);
  ASSERT_EQ(e.kernel.cols(), 1u);
  EXPECT_EQ(e.kernel.column(0), (std::vector<Residue>{1, 1}));
}

TEST(Reduce, IdentityOverF3) {
  auto e = reduce(FpMatrix::identity(2, 3));
  EXPECT_EQ(e.rank, 2u);
  EXPECT_EQ(e.kernel.cols(), 0u);
  EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0, 1}));
}

TEST(Reduce, KernelMatchesEnumerationOverF5) {
  FpMatrix a = FpMatrix::from_rows({{2, 1}, {4, 2}}, 5);
  auto kernel = enumerate_kernel(a);
  ASSERT_EQ(kernel.size(), 5u);  // a line in F_5^2
  // the nonzero kernel vector with leading coordinate 1
  std::vector<Residue> normalized;
  for (const auto& v : kernel)
    if (v[0] == 1) normalized = v;
  EXPECT_EQ(normalized, (std::vector<Residue>{1, 3}));

  auto e = reduce(a);
  EXPECT_EQ(e.rank, 1u);
  ASSERT_EQ(e.kernel.cols(), 1u);
  EXPECT_EQ(e.kernel.column(0), normalized);
}

TEST(Reduce, RandomMatricesSatisfyInvariants) {
  std::mt19937 rng(20261016);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 200; ++trial) {
      std::uniform_int_distribution<std::size_t> dim(0, 8);
      FpMatrix a = random_matrix(rng, dim(rng), dim(rng), p);
      auto e = reduce(a);
      EXPECT_EQ(e.rank + e.kernel.cols(), a.cols());
      EXPECT_TRUE((a * e.kernel).is_zero());
      EXPECT_EQ(rank(e.reduced), e.rank);

      auto again = reduce(a);
      EXPECT_EQ(again.pivots, e.pivots);
      EXPECT_EQ(again.kernel, e.kernel);

      std::vector<std::size_t> order(a.rows());
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      FpMatrix shuffled = a.transpose().select_columns(order).transpose();
      EXPECT_EQ(rank(shuffled), e.rank);
    }
  }
}

TEST(Reduce, SmallKernelsAgreeWithEnumeration) {
  std::mt19937 rng(7);
  for (std::uint32_t p : {2u, 3u}) {
    for (int trial = 0; trial < 50; ++trial) {
      std::uniform_int_distribution<std::size_t> dim(1, 4);
      FpMatrix a = random_matrix(rng, dim(rng), dim(rng), p);
      auto e = reduce(a);
      std::size_t expected = 1;
      for (std::size_t k = 0; k < e.kernel.cols(); ++k) expected *= p;
      EXPECT_EQ(enumerate_kernel(a).size(), expected);
    }
  }
}

TEST(Solve, FindsSolutionsOrReportsNone) {
  FpMatrix a = FpMatrix::from_rows({{1, 2}, {0, 1}, {1, 0}}, 5);
  FpMatrix x = FpMatrix::from_rows({{3}, {4}}, 5);
  auto got = solve(a, a * x);
  ASSERT_TRUE(got.has_value());
  EXPECT_EQ(*got, x);
  EXPECT_FALSE(solve(FpMatrix::from_rows({{1}, {1}}, 3), FpMatrix::from_rows({{1}, {2}}, 3)).has_value());
}

TEST(Subquotient, QuotientCoordinates) {
  const std::uint32_t p = 3;
  FpMatrix cycles = FpMatrix::identity(3, p);
  FpMatrix boundaries = FpMatrix::from_rows({{1}, {1}, {0}}, p);
  Subquotient q(cycles, boundaries);
  EXPECT_EQ(q.dimension(), 2u);
  // e_1 and e_2 are identified modulo the boundary
  EXPECT_EQ(q.coordinates(FpMatrix::from_rows({{1}, {0}, {0}}, p)),
            q.coordinates(FpMatrix::from_rows({{0}, {2}, {0}}, p)));
  EXPECT_TRUE(q.coordinates(boundaries).is_zero());
}

TEST(BinomProfile, Values) {
  EXPECT_EQ(binom_profile(3, 1), 3u);
  EXPECT_EQ(binom_profile(0, 1), 0u);
  EXPECT_EQ(binom_profile(-3, 1), 0u);
  EXPECT_EQ(binom_profile(0, 0), 1u);
  // monomials with all exponents >= 1 and total 6 in 3 variables
  EXPECT_EQ(count_positive_monomials(3, 6), 10u);
  EXPECT_EQ(binom_profile(5, 2), count_positive_monomials(3, 6));
  EXPECT_EQ(binom_profile(4, 2), 6u);
  EXPECT_EQ(binom_profile(4, 2), count_positive_monomials(3, 5));
}

TEST(BinomProfile, PascalRule) {
  for (long long m = 1; m <= 30; ++m)
    for (long long k = 1; k <= 30; ++k) EXPECT_EQ(binom_profile(m, k), binom_profile(m - 1, k) + binom_profile(m - 1, k - 1));
}

TEST(PAdicValuation, Values) {
  EXPECT_EQ(p_adic_valuation(8, 2), 3u);
  EXPECT_EQ(p_adic_valuation(5, 3), 0u);
  EXPECT_EQ(p_adic_valuation(50, 5), 2u);
  EXPECT_EQ(p_adic_valuation(-12, 2), 2u);
  try {
    p_adic_valuation(0, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroValuation);
  }
}

TEST(PAdicValuation, DefiningProperty) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (long long m = -200; m <= 200; ++m) {
      if (m == 0) continue;
      unsigned e = p_adic_valuation(m, p);
      long long pe = 1;
      for (unsigned k = 0; k < e; ++k) pe *= p;
      EXPECT_EQ(m % pe, 0);
      EXPECT_NE(m % (pe * p), 0);
    }
}
