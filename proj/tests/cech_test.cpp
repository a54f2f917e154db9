#include <gtest/gtest.h>

#include <vector>

#include "grf/cech.hpp"

using namespace grf;

namespace {

constexpr Pattern P(std::initializer_list<int> vars) {
  Pattern s = 0;
  for (int v : vars) s |= Pattern{1} << (v - 1);
  return s;
}

void expect_only(const PatternModule& m, std::vector<std::pair<Pattern, std::size_t>> nonzero) {
  for (Pattern set = 0; set < m.pattern_count(); ++set) {
    std::size_t expected = 0;
    for (auto [s, d] : nonzero)
      if (s == set) expected = d;
    EXPECT_EQ(m.dim(set), expected) << "pattern " << pattern_name(set, m.ring().n());
  }
}

FunctorChain chain_of(const RingSpec& ring, std::vector<std::pair<std::vector<Exponent>, int>> stages, int final_slot) {
  FunctorChain chain{ring, {}, final_slot};
  for (auto& [gens, slot] : stages) chain.stages.push_back({MonomialIdeal(ring, gens), slot});
  return chain;
}

}  // namespace

TEST(CechComplex, TermsForMaximalIdealInTwoVariables) {
  RingSpec ring(2, 3);
  auto r = localized_ring(ring, 0);
  auto c = cech_complex(r, MonomialIdeal::maximal(ring));
  ASSERT_EQ(c.terms.size(), 3u);
  EXPECT_EQ(c.terms[0], r);
  EXPECT_EQ(c.terms[1], direct_sum(localized_ring(ring, P({1})), localized_ring(ring, P({2}))));
  EXPECT_EQ(c.terms[2], localized_ring(ring, P({1, 2})));
  // pattern ∅: R -> R_x1 ⊕ R_x2 -> R_x1x2 is (1,1) then (-1, 1)
  EXPECT_EQ(c.differentials[0][0], FpMatrix::from_rows({{1}, {1}}, 3));
  EXPECT_EQ(c.differentials[1][0], FpMatrix::from_rows({{-1, 1}}, 3));
  c.validate();
}

TEST(CechComplex, SquareZeroForEdgeIdeal) {
  RingSpec ring(3, 5);
  MonomialIdeal ideal(ring, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
  auto c = cech_complex(localized_ring(ring, 0), ideal);
  ASSERT_EQ(c.length(), 3u);
  for (std::size_t t = 0; t + 2 < c.terms.size(); ++t)
    for (Pattern set = 0; set < 8; ++set) EXPECT_TRUE((c.differentials[t + 1][set] * c.differentials[t][set]).is_zero());
  EXPECT_NO_THROW(c.validate());
}

TEST(CechComplex, SingleGeneratorIsTwoTerm) {
  RingSpec ring(2, 2);
  auto r = localized_ring(ring, 0);
  auto c = cech_complex(r, MonomialIdeal(ring, {{2, 1}}));
  ASSERT_EQ(c.terms.size(), 2u);
  EXPECT_EQ(c.terms[1], localized_ring(ring, P({1, 2})));
}

TEST(CechComplex, EmptyIdealRejected) {
  RingSpec ring(2, 2);
  try {
    cech_complex(localized_ring(ring, 0), MonomialIdeal(ring, {}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EmptyIdeal);
  }
}

TEST(Cohomology, SingleVariable) {
  RingSpec ring(2, 3);
  auto c = cech_complex(localized_ring(ring, 0), MonomialIdeal(ring, {{1, 0}}));
  EXPECT_TRUE(cohomology_at_slot(c, 0).is_zero());
  expect_only(cohomology_at_slot(c, 1), {{P({1}), 1}});
}

TEST(Cohomology, TopLocalCohomologyOfPlane) {
  RingSpec ring(2, 2);
  auto c = cech_complex(localized_ring(ring, 0), MonomialIdeal::maximal(ring));
  expect_only(cohomology_at_slot(c, 2), {{P({1, 2}), 1}});
}

TEST(Cohomology, ZeroDifferentialsGiveTerms) {
  RingSpec ring(2, 3);
  CechComplex c;
  c.ring = ring;
  c.terms = {localized_ring(ring, P({1})), localized_ring(ring, P({1, 2}))};
  c.differentials.emplace_back();
  for (Pattern set = 0; set < 4; ++set) c.differentials[0].emplace_back(c.terms[1].dim(set), c.terms[0].dim(set), 3);
  c.validate();
  EXPECT_EQ(cohomology_at_slot(c, 0), c.terms[0]);
  EXPECT_EQ(cohomology_at_slot(c, 1), c.terms[1]);
}

TEST(LocalCohomology, Examples) {
  for (int n = 1; n <= 4; ++n) {
    RingSpec ring(n, 2);
    auto top = local_cohomology(localized_ring(ring, 0), MonomialIdeal::maximal(ring), n);
    expect_only(top, {{full_pattern(n), 1}});
  }
  RingSpec ring(2, 5);
  auto r = localized_ring(ring, 0);
  EXPECT_TRUE(local_cohomology(r, MonomialIdeal(ring, {{1, 0}}), 0).is_zero());
  expect_only(local_cohomology(r, MonomialIdeal(ring, {{1, 1}}), 1), {{P({1}), 1}, {P({2}), 1}, {P({1, 2}), 1}});
}

TEST(LocalCohomology, GrothendieckVanishing) {
  for (int n = 1; n <= 3; ++n) {
    RingSpec ring(n, 3);
    auto r = localized_ring(ring, 0);
    auto m = MonomialIdeal::maximal(ring);
    for (int i = 0; i <= n + 1; ++i) {
      auto h = local_cohomology(r, m, i);
      if (i == n)
        expect_only(h, {{full_pattern(n), 1}});
      else
        EXPECT_TRUE(h.is_zero()) << "n=" << n << " i=" << i;
    }
  }
  RingSpec ring(3, 2);
  std::vector<std::vector<Exponent>> ideals = {
      {{1, 1, 0}}, {{1, 0, 0}, {0, 2, 1}}, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}, {{2, 0, 0}, {1, 1, 1}}};
  for (const auto& gens : ideals) {
    MonomialIdeal ideal(ring, gens);
    for (std::size_t i = gens.size() + 1; i <= 4; ++i)
      EXPECT_TRUE(local_cohomology(localized_ring(ring, 0), ideal, i).is_zero());
  }
}

TEST(LocalCohomology, InducedTransitionsOfPrincipalIdeal) {
  // H^1_{(x1 x2)}(R) = R_{x1x2}/R: x1 sends x1^-1 x2^-1 to x2^-1, which survives.
  RingSpec ring(2, 3);
  auto h = local_cohomology(localized_ring(ring, 0), MonomialIdeal(ring, {{1, 1}}), 1);
  EXPECT_EQ(rank(h.transition(P({1, 2}), 0)), 1u);
  EXPECT_EQ(rank(h.transition(P({1, 2}), 1)), 1u);
  EXPECT_EQ(rank(h.transition(P({1}), 0)), 0u);
}

TEST(IteratedChain, WorkedFixtures) {
  RingSpec ring(2, 2);
  expect_only(iterated_chain(chain_of(ring, {{{{1, 0}}, 1}}, 1)), {{P({1, 2}), 1}});
  EXPECT_TRUE(iterated_chain(chain_of(ring, {{{{1, 0}}, 1}}, 0)).is_zero());
  expect_only(iterated_chain(chain_of(ring, {{{{1, 1}}, 1}}, 1)), {{P({1, 2}), 1}});
}

TEST(IteratedChain, FinalModulesAreTorsion) {
  RingSpec ring(3, 3);
  std::vector<std::vector<Exponent>> ideals = {
      {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}, {{1, 0, 0}, {0, 1, 0}}, {{2, 1, 0}, {0, 0, 3}}, {{1, 1, 1}}};
  for (const auto& a : ideals)
    for (const auto& b : ideals)
      for (int s1 = 0; s1 <= 3; ++s1)
        for (int s2 = 0; s2 <= 3; ++s2)
          for (int f = 0; f <= 3; ++f) {
            auto out = chain_modules(chain_of(ring, {{a, s1}, {b, s2}}, f));
            for (const auto& m : out) EXPECT_NO_THROW(m.validate());
            EXPECT_TRUE(is_zero_dimensional(out.back()));
          }
}

TEST(FunctorChain, SlotValidation) {
  RingSpec ring(2, 2);
  EXPECT_THROW(iterated_chain(chain_of(ring, {{{{1, 0}}, 3}}, 1)), Error);
  EXPECT_THROW(iterated_chain(chain_of(ring, {}, -1)), Error);
}
