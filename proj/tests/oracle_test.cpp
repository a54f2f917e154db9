#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "grf/cech.hpp"
#include "grf/oracle.hpp"

using namespace grf;

namespace {

FunctorChain chain_of(const RingSpec& ring, std::vector<std::pair<std::vector<Exponent>, int>> stages, int final_slot) {
  FunctorChain chain{ring, {}, final_slot};
  for (auto& [gens, slot] : stages) chain.stages.push_back({MonomialIdeal(ring, gens), slot});
  return chain;
}

std::vector<Multidegree> box_points(int n, long long lo, long long hi) {
  std::vector<Multidegree> out{{}};
  for (int i = 0; i < n; ++i) {
    std::vector<Multidegree> next;
    for (const auto& a : out)
      for (long long v = lo; v <= hi; ++v) {
        auto b = a;
        b.push_back(v);
        next.push_back(b);
      }
    out = std::move(next);
  }
  return out;
}

void expect_agreement(const FunctorChain& chain, const std::vector<Multidegree>& points, long long bound) {
  auto module = iterated_chain(chain);
  auto brute = oracle_dimensions(chain, points, bound);
  for (std::size_t k = 0; k < points.size(); ++k) EXPECT_EQ(brute[k], dim_at(module, points[k]));
}

}  // namespace

TEST(Oracle, WorkedFixtures) {
  for (int n = 1; n <= 3; ++n) {
    RingSpec ring(n, 2);
    EXPECT_EQ(oracle_dimension(chain_of(ring, {}, n), Multidegree(n, -1), 3), 1u);
  }
  RingSpec ring(2, 2);
  auto x1 = chain_of(ring, {{{{1, 0}}, 1}}, 1);
  EXPECT_EQ(oracle_dimension(x1, {-1, -1}, 4), 1u);
  EXPECT_EQ(oracle_dimension(x1, {-1, 0}, 4), 0u);
  EXPECT_EQ(oracle_dimension(chain_of(ring, {{{{1, 1}}, 1}}, 1), {-2, -1}, 4), 1u);
  EXPECT_EQ(oracle_dimension(chain_of(ring, {{{{1, 0}}, 1}}, 0), {-1, -1}, 4), 0u);
}

TEST(Oracle, AgreesOnWholeBoxInTwoVariables) {
  RingSpec ring(2, 3);
  auto points = box_points(2, -4, 4);
  expect_agreement(chain_of(ring, {{{{1, 1}}, 1}}, 1), points, 4);
  expect_agreement(chain_of(ring, {{{{2, 0}, {0, 1}}, 1}}, 1), points, 4);
  expect_agreement(chain_of(ring, {{{{1, 1}}, 1}, {{{1, 0}}, 1}}, 0), points, 4);
}

TEST(Oracle, AgreesOnSampledChainsInThreeVariables) {
  RingSpec ring(3, 2);
  std::mt19937 rng(99);
  std::uniform_int_distribution<long long> coord(-4, 4);
  std::vector<Multidegree> points;
  for (int k = 0; k < 12; ++k) points.push_back({coord(rng), coord(rng), coord(rng)});
  points.push_back({-1, -1, -1});
  points.push_back({-3, -1, -2});
  std::vector<Exponent> edges = {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
  for (int slot = 1; slot <= 2; ++slot)
    for (int f = 0; f <= 3; ++f) expect_agreement(chain_of(ring, {{edges, slot}}, f), points, 4);
  expect_agreement(chain_of(ring, {{{{1, 0, 0}, {0, 1, 1}}, 2}, {{{1, 1, 0}}, 1}}, 0), points, 4);
}

TEST(Oracle, PointOutsideBoxRejected) {
  RingSpec ring(2, 2);
  try {
    oracle_dimension(chain_of(ring, {}, 2), {-5, 0}, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BoxTooSmall);
  }
}

TEST(Oracle, UnstableRepresentativeDetected) {
  // With no stabilization steps the localization of H^1_{(x1)}(R) at x1 looks nonzero
  // at (-1, 0), and one more multiplication by x1 kills it.
  RingSpec ring(2, 2);
  ChainOracle oracle(chain_of(ring, {{{{1, 0}}, 1}}, 1), 0);
  EXPECT_THROW(oracle.dimension({-1, 0}), Error);
}
