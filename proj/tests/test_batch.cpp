#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include <lbound/batch.hpp>

#include "oracle.hpp"

using namespace lbound;
using oracle::Mp;

namespace {

// L(1, chi) = -(1/q) sum chi(a) psi(a/q) in 256-bit arithmetic, quadratic time.
std::pair<Mp, Mp> reference_l_value(const UnitGroup& g, const Character& chi) {
  const long q = static_cast<long>(g.q());
  const long lam = static_cast<long>(g.exponent());
  Mp re, im;
  for (long a = 1; a < q; ++a) {
    const auto k = chi_numerator(g, chi, static_cast<u64>(a));
    if (!k) continue;
    const Mp psi = oracle::digamma_rational(a, q);
    const auto [c, s] = oracle::root(static_cast<long>(*k), lam);
    re = re - psi * c;
    im = im - psi * s;
  }
  const Mp qq(static_cast<double>(q));
  return {re / qq, im / qq};
}

}  // namespace

TEST(Batch, ClosedForms) {
  auto r3 = l_values(3, 1e-12);
  ASSERT_EQ(r3.size(), 1U);
  const Ball pi = pi_ball();
  EXPECT_TRUE((r3[0].absL - pi / (Ball(3.0) * sqrt(Ball(3.0)))).contains_zero());
  EXPECT_NEAR(r3[0].absL.mid(), 0.6045997881, 1e-10);
  EXPECT_NEAR(r3[0].excess.mid(), 0.2383956919, 1e-9);

  auto r4 = l_values(4, 1e-12);
  ASSERT_EQ(r4.size(), 1U);
  EXPECT_TRUE((r4[0].absL - pi / Ball(4.0)).contains_zero());
  EXPECT_NEAR(r4[0].L.re.mid(), M_PI / 4, 1e-12);

  auto r5 = l_values(5, 1e-12);
  ASSERT_EQ(r5.size(), 3U);
  const Ball s5 = sqrt(Ball(5.0));
  const Ball expected = Ball(2.0) / s5 * log((Ball(1.0) + s5) / Ball(2.0));
  int even = 0;
  for (const auto& r : r5) {
    if (r.parity != Parity::even) continue;
    ++even;
    EXPECT_TRUE((r.absL - expected).contains_zero());
    EXPECT_NEAR(r.L.re.mid(), 0.4304089410, 1e-10);
  }
  EXPECT_EQ(even, 1);
}

TEST(Batch, NoPrimitiveCharacters) {
  EXPECT_TRUE(l_values(6, 1e-9).empty());
  EXPECT_TRUE(l_values(10, 1e-9).empty());
  EXPECT_THROW(l_values(2, 1e-9), std::invalid_argument);
  EXPECT_THROW(l_values(7, 1e-30), ToleranceError);
}

TEST(Batch, IndicatorCoefficients) {
  for (u64 q : {7ULL, 12ULL, 35ULL, 64ULL}) {
    const UnitGroup g(q);
    for (u64 n0 : {u64{1}, q - 1}) {
      CoefficientVector c{q, std::vector<Ball>(q)};
      c.a[n0] = Ball(1.0);
      const auto sums = dft_all_characters(g, c);
      for (u64 i = 0; i < g.phi(); ++i) {
        const auto v = chi_value(g, make_character(g, i), n0);
        ASSERT_TRUE(sums[i].overlaps(v)) << q << " " << n0 << " " << i;
      }
    }
  }
}

TEST(Batch, DftMatchesDirectSum) {
  for (u64 q = 3; q <= 200; ++q) {
    const UnitGroup g(q);
    const auto c = build_coefficients(g, 1e-13);
    const auto sums = dft_all_characters(g, c);
    for (u64 i = 0; i < g.phi(); ++i) {
      const auto d = direct_sum(g, c, make_character(g, i));
      ASSERT_TRUE(sums[i].overlaps(d)) << "q=" << q << " index=" << i;
    }
  }
}

TEST(Batch, HighPrecisionReference) {
  for (u64 q : {16ULL, 27ULL, 97ULL}) {
    const UnitGroup g(q);
    const auto c = build_coefficients(g, 1e-13);
    const auto sums = dft_all_characters(g, c);
    for (u64 i = 1; i < g.phi(); ++i) {  // L(1, chi) formula needs chi non-principal
      const auto [re, im] = reference_l_value(g, make_character(g, i));
      ASSERT_TRUE(oracle::contains(sums[i].re, re)) << q << " " << i;
      ASSERT_TRUE(oracle::contains(sums[i].im, im)) << q << " " << i;
      EXPECT_LT(sums[i].re.rad(), 1e-12);
    }
  }
}

TEST(Batch, ConjugateCharactersGiveConjugateValues) {
  for (u64 q : {5ULL, 31ULL, 63ULL, 200ULL, 1001ULL}) {
    const UnitGroup g(q);
    const auto recs = l_values(q, 1e-9);
    std::map<u64, const LValueRecord*> by_index;
    for (const auto& r : recs) by_index[r.index] = &r;
    for (const auto& r : recs) {
      const auto* other = by_index.at(conjugate_index(g, r.index));
      EXPECT_TRUE(r.L.re.overlaps(other->L.re));
      EXPECT_TRUE(r.L.im.overlaps(-other->L.im));
      EXPECT_EQ(r.parity, other->parity);
    }
  }
}

TEST(Batch, OnlyPrimitiveRecords) {
  for (u64 q = 3; q <= 100; ++q) {
    const UnitGroup g(q);
    const auto recs = l_values(q, 1e-9);
    u64 primitive = 0;
    for (u64 i = 0; i < g.phi(); ++i) primitive += conductor_of(g, make_character(g, i)) == q;
    ASSERT_EQ(recs.size(), primitive) << q;
    for (const auto& r : recs) ASSERT_EQ(conductor_of(g, make_character(g, r.index)), q);
  }
}

TEST(Batch, ToleranceIsMetAtLargeModulus) {
  const auto recs = l_values(99999, 1e-9);
  ASSERT_FALSE(recs.empty());
  for (const auto& r : recs) ASSERT_LE(r.absL.rad(), 1e-9);
}
