#include <gtest/gtest.h>

#include <numeric>
#include <vector>

#include <lbound/arith.hpp>

using namespace lbound;

namespace {

std::vector<u64> phi_sieve(u64 n) {
  std::vector<u64> phi(n + 1);
  std::iota(phi.begin(), phi.end(), 0);
  for (u64 p = 2; p <= n; ++p)
    if (phi[p] == p)
      for (u64 k = p; k <= n; k += p) phi[k] -= phi[k] / p;
  return phi;
}

u64 brute_order(u64 g, u64 m) {
  u64 x = g % m, k = 1;
  while (x != 1) {
    x = x * g % m;
    ++k;
  }
  return k;
}

}  // namespace

TEST(Arith, Factorize) {
  auto f = factorize(12);
  ASSERT_EQ(f.factors.size(), 2U);
  EXPECT_EQ(f.factors[0].p, 2U);
  EXPECT_EQ(f.factors[0].e, 2U);
  EXPECT_EQ(f.factors[1].p, 3U);
  EXPECT_EQ(f.factors[1].e, 1U);

  f = factorize(3);
  ASSERT_EQ(f.factors.size(), 1U);
  EXPECT_EQ(f.factors[0].p, 3U);

  f = factorize(2000000);
  ASSERT_EQ(f.factors.size(), 2U);
  EXPECT_EQ(f.factors[0].p, 2U);
  EXPECT_EQ(f.factors[0].e, 7U);
  EXPECT_EQ(f.factors[1].p, 5U);
  EXPECT_EQ(f.factors[1].e, 6U);
}

TEST(Arith, PhiMatchesSieve) {
  const auto phi = phi_sieve(20000);
  for (u64 q = 1; q <= 20000; ++q) ASSERT_EQ(euler_phi(q), phi[q]) << q;
}

TEST(Arith, ModularHelpers) {
  EXPECT_EQ(pow_mod(2, 10, 1000), 24U);
  EXPECT_EQ(mul_mod(1ULL << 62, 4, 1000000007ULL), static_cast<u64>((static_cast<unsigned __int128>(1ULL << 62) * 4) % 1000000007ULL));
  for (u64 m = 2; m < 200; ++m)
    for (u64 a = 1; a < m; ++a)
      if (std::gcd(a, m) == 1) ASSERT_EQ(a * inverse_mod(a, m) % m, 1U);
}

TEST(UnitGroup, Examples) {
  const UnitGroup g9(9);
  ASSERT_EQ(g9.components().size(), 1U);
  EXPECT_EQ(g9.components()[0].modulus_part, 9U);
  EXPECT_EQ(g9.components()[0].generator, 2U);
  EXPECT_EQ(g9.components()[0].order, 6U);
  EXPECT_EQ(g9.dlog(1), std::vector<u64>{0});
  EXPECT_EQ(g9.dlog(4), std::vector<u64>{2});

  const UnitGroup g8(8);
  ASSERT_EQ(g8.components().size(), 2U);
  EXPECT_EQ(g8.components()[0].modulus_part, 8U);
  EXPECT_EQ(g8.components()[0].generator, 7U);
  EXPECT_EQ(g8.components()[0].order, 2U);
  EXPECT_EQ(g8.components()[1].generator, 5U);
  EXPECT_EQ(g8.components()[1].order, 2U);

  const UnitGroup g15(15);
  ASSERT_EQ(g15.components().size(), 2U);
  EXPECT_EQ(g15.components()[0].modulus_part, 3U);
  EXPECT_EQ(g15.components()[0].generator, 2U);
  EXPECT_EQ(g15.components()[0].order, 2U);
  EXPECT_EQ(g15.components()[1].modulus_part, 5U);
  EXPECT_EQ(g15.components()[1].generator, 2U);
  EXPECT_EQ(g15.components()[1].order, 4U);
  EXPECT_EQ(g15.dlog(14), (std::vector<u64>{1, 2}));
  EXPECT_EQ(g15.reconstruct({1, 2}), 14U);
}

TEST(UnitGroup, RejectsSmallAndNonUnits) {
  EXPECT_THROW(UnitGroup(2), std::invalid_argument);
  EXPECT_THROW(UnitGroup(9).dlog(3), std::invalid_argument);
  EXPECT_EQ(UnitGroup(9).flat_index(6), -1);
}

TEST(UnitGroup, RoundTripAndOrders) {
  const auto phi = phi_sieve(1000);
  for (u64 q = 3; q <= 1000; ++q) {
    const UnitGroup g(q);
    ASSERT_EQ(g.phi(), phi[q]) << q;
    u64 prod = 1;
    for (const auto& c : g.components()) {
      prod *= c.order;
      // Generators have the stated order modulo their part; lifts are 1 elsewhere.
      ASSERT_EQ(brute_order(c.generator, c.modulus_part), c.order) << q;
      ASSERT_EQ(c.lifted % c.modulus_part, c.generator % c.modulus_part);
      const u64 rest = q / c.modulus_part;
      if (rest > 1) ASSERT_EQ(c.lifted % rest, 1U);
    }
    ASSERT_EQ(prod, phi[q]);
    std::vector<bool> seen(g.phi(), false);
    for (u64 n = 1; n < q; ++n) {
      if (std::gcd(n, q) != 1) continue;
      const auto e = g.dlog(n);
      ASSERT_EQ(g.reconstruct(e), n) << "q=" << q << " n=" << n;
      const auto idx = g.flat_index(n);
      ASSERT_GE(idx, 0);
      ASSERT_EQ(g.unflatten(static_cast<u64>(idx)), e);
      ASSERT_EQ(g.flatten(e), static_cast<u64>(idx));
      ASSERT_FALSE(seen[static_cast<std::size_t>(idx)]);
      seen[static_cast<std::size_t>(idx)] = true;
    }
  }
}

TEST(UnitGroup, Deterministic) {
  for (u64 q : {3ULL, 16ULL, 97ULL, 360ULL, 1001ULL}) {
    const UnitGroup a(q), b(q);
    ASSERT_EQ(a.components().size(), b.components().size());
    for (std::size_t k = 0; k < a.components().size(); ++k) {
      EXPECT_EQ(a.components()[k].generator, b.components()[k].generator);
      EXPECT_EQ(a.components()[k].dlog, b.components()[k].dlog);
    }
  }
}
