#include <gtest/gtest.h>

#include <bit>
#include <vector>

#include "grf/structure.hpp"

using namespace grf;

namespace {

FunctorChain chain_of(const RingSpec& ring, std::vector<std::pair<std::vector<Exponent>, int>> stages, int final_slot) {
  FunctorChain chain{ring, {}, final_slot};
  for (auto& [gens, slot] : stages) chain.stages.push_back({MonomialIdeal(ring, gens), slot});
  return chain;
}

}  // namespace

TEST(VerifyStructure, TopCohomologyOfR) {
  for (int n = 1; n <= 4; ++n) {
    RingSpec ring(n, 3);
    auto h = local_cohomology(localized_ring(ring, 0), MonomialIdeal::maximal(ring), n);
    auto report = verify_injective_structure(h, DegreeWindow::standard(n));
    EXPECT_TRUE(report.pass);
    EXPECT_EQ(report.multiplicity, 1u);
    EXPECT_EQ(report.socle_degree, -n);
  }
}

TEST(VerifyStructure, RejectsModulesNotSupportedAtTheMaximalIdeal) {
  RingSpec ring(2, 2);
  auto h = local_cohomology(localized_ring(ring, 0), MonomialIdeal(ring, {{1, 0}}), 1);
  try {
    verify_injective_structure(h, DegreeWindow::standard(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotZeroDimensional);
  }
}

TEST(VerifyStructure, ZeroModule) {
  RingSpec ring(3, 5);
  auto report = verify_injective_structure(PatternModule::zero(ring), DegreeWindow::standard(3));
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.multiplicity, 0u);
  EXPECT_FALSE(report.socle_degree.has_value());
}

TEST(VerifyStructure, DirectSumsMultiplyTheProfile) {
  RingSpec ring(2, 2);
  auto e = local_cohomology(localized_ring(ring, 0), MonomialIdeal::maximal(ring), 2);
  auto e3 = direct_sum(ring, {e, e, e});
  auto report = verify_injective_structure(e3, {-15, 2});
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.multiplicity, 3u);
  EXPECT_EQ(*hilbert_dimension(e3, -5), 12u);
}

TEST(FrobeniusIdentity, InjectiveHullProfiles) {
  auto profile = [](int n, std::uint64_t c) { return [=](long long d) { return c * binom_profile(-d - 1, n - 1); }; };
  EXPECT_TRUE(frobenius_hilbert_identity(profile(1, 1), 1, 2, {-9, -1}));
  EXPECT_TRUE(frobenius_hilbert_identity(profile(2, 1), 2, 2, {-10, -2}));
  for (std::uint32_t p : {2u, 3u, 5u})
    for (int n = 1; n <= 4; ++n) EXPECT_TRUE(frobenius_hilbert_identity(profile(n, 2), n, p, {-n - 20LL, 5}));
}

TEST(FrobeniusIdentity, DetectsWrongProfile) {
  for (int n = 1; n <= 3; ++n) {
    auto broken = [n](long long d) -> std::uint64_t {
      if (d == -n) return 1;
      if (d == -n - 1) return 5;
      return binom_profile(-d - 1, n - 1);
    };
    long long failure = 0;
    EXPECT_FALSE(frobenius_hilbert_identity(broken, n, 2, {-n - 8LL, -n}, &failure));
    // the first failing degree found by scanning upward from the window bottom
    long long scan = 0;
    for (long long d = -n - 8; d <= -n; ++d) {
      std::uint64_t rhs = 0;
      for (std::uint64_t code = 0; code < (1u << n); ++code) {
        long long total = std::popcount(static_cast<unsigned>(code));
        long long rest = d - total;
        if (rest % 2 == 0) rhs += broken(rest / 2);
      }
      if (broken(d) != rhs) {
        scan = d;
        break;
      }
    }
    EXPECT_EQ(failure, scan);
  }
}

TEST(FrobeniusIdentity, NeedsTorsionModule) {
  RingSpec ring(2, 2);
  EXPECT_THROW(frobenius_hilbert_identity(localized_ring(ring, 0), {-5, -2}), Error);
}

TEST(LyubeznikTable, PrincipalVariableIdeal) {
  RingSpec ring(2, 2);
  auto t = lyubeznik_table(MonomialIdeal(ring, {{1, 0}}));
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; j <= 2; ++j) EXPECT_EQ(t[i][j], (i == 1 && j == 1) ? 1u : 0u) << i << "," << j;
}

TEST(LyubeznikTable, MaximalIdeal) {
  RingSpec ring(2, 3);
  auto t = lyubeznik_table(MonomialIdeal::maximal(ring));
  std::uint64_t total = 0;
  for (const auto& row : t)
    for (auto v : row) total += v;
  EXPECT_EQ(total, 1u);
  EXPECT_EQ(t[0][0], 1u);
}

TEST(LyubeznikTable, MatchesChainMultiplicities) {
  RingSpec ring(3, 2);
  MonomialIdeal ideal(ring, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  auto t = lyubeznik_table(ideal);
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j) {
      auto m = iterated_chain(chain_of(ring, {{ideal.generators(), 3 - j}}, i));
      EXPECT_EQ(t[i][j], m.dim(full_pattern(3)));
    }
}
