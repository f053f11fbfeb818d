#include <gtest/gtest.h>

#include <cmath>

#include <lbound/bounds.hpp>

using namespace lbound;

namespace {

struct TableEntry {
  double q;
  long even_micro;  // published values, in units of 1e-6
  long odd_micro;
  double even_ref;  // 30-digit evaluations of the closed forms
  double odd_ref;
};

constexpr TableEntry kTable[] = {
    {1e4, 395781, 840076, 0.39578066022, 0.84007523617},
    {1e5, 375558, 838539, 0.37555702698, 0.83853882672},
    {1e6, 369162, 838382, 0.36916175259, 0.83838199203},
    {2e6, 368296, 838374, 0.36829547507, 0.83837322812},
};

long micro(double v) { return std::lround(v * 1e6); }

}  // namespace

TEST(Bounds, ConstantsMatchReference) {
  for (const auto& e : kTable) {
    EXPECT_NEAR(c_even(e.q).mid(), e.even_ref, 1e-10) << e.q;
    EXPECT_NEAR(c_odd(e.q).mid(), e.odd_ref, 1e-10) << e.q;
    EXPECT_LT(c_even(e.q).rad(), 1e-14);
  }
}

TEST(Bounds, TableIsUpwardRounding) {
  for (const auto& e : kTable) {
    EXPECT_EQ(micro(round_up_6(c_even(e.q))), e.even_micro) << e.q;
    EXPECT_EQ(micro(round_up_6(c_odd(e.q))), e.odd_micro) << e.q;
    const double de = e.even_micro * 1e-6 - c_even(e.q).mid();
    const double dodd = e.odd_micro * 1e-6 - c_odd(e.q).mid();
    EXPECT_GE(de, 0.0);
    EXPECT_LT(de, 1e-6);
    EXPECT_GE(dodd, 0.0);
    EXPECT_LT(dodd, 1e-6);
  }
}

TEST(Bounds, Limits) {
  EXPECT_NEAR(c_even_limit().mid(), std::log(3.0) / 3.0, 1e-15);
  EXPECT_NEAR(c_even_limit().mid(), 0.366205, 1e-6);
  EXPECT_NEAR(c_odd_limit().mid(), 0.838365, 1e-6);
  // Both approach their limits from above and decrease.
  double pe = HUGE_VAL, po = HUGE_VAL;
  for (double q = 1e3; q <= 1e9; q *= 1.7) {
    const double e = c_even(q).mid(), o = c_odd(q).mid();
    EXPECT_GT(e, c_even_limit().mid());
    EXPECT_GT(o, c_odd_limit().mid());
    EXPECT_LT(e, pe);
    EXPECT_LT(o, po);
    pe = e;
    po = o;
  }
}

TEST(Bounds, TheoremConstantsDominateAt2e6) {
  EXPECT_LE(c_even(2e6).upper(), kTheoremEven);
  EXPECT_LE(c_odd(2e6).upper(), kTheoremOdd);
}

TEST(Bounds, CheckTheoremExamples) {
  const auto r3 = l_values(3, 1e-12);
  const auto rep3 = check_theorem(r3.at(0));
  EXPECT_EQ(rep3.verdict, Verdict::pass);
  EXPECT_TRUE(rep3.theorem_applies);
  EXPECT_NEAR(rep3.margin.mid(), 0.838374 - 0.2383956919, 1e-9);

  auto worst = [](u64 q, Parity p) {
    const auto recs = l_values(q, 1e-9);
    const LValueRecord* best = nullptr;
    for (const auto& r : recs)
      if (r.parity == p && (!best || r.excess.mid() > best->excess.mid())) best = &r;
    return *best;
  };
  const auto e249 = worst(249, Parity::even);
  EXPECT_LT(e249.excess.upper(), 0.271789);
  EXPECT_GT(e249.excess.lower(), 0.27);
  EXPECT_EQ(check_theorem(e249).verdict, Verdict::pass);
  const auto o111 = worst(111, Parity::odd);
  EXPECT_LT(o111.excess.upper(), 0.815651);
  EXPECT_GT(o111.excess.lower(), 0.815);
  EXPECT_EQ(check_theorem(o111).verdict, Verdict::pass);

  // Per-conductor constants are tighter but still hold at these moduli.
  EXPECT_EQ(check_theorem(e249, ConstantChoice::per_conductor).verdict, Verdict::pass);
}

TEST(Bounds, ClassifyMargin) {
  EXPECT_EQ(classify_margin(Ball(1e-3, 1e-9)), Verdict::pass);
  EXPECT_EQ(classify_margin(Ball(-1e-3, 1e-9)), Verdict::fail);
  EXPECT_EQ(classify_margin(Ball(1e-10, 1e-9)), Verdict::indeterminate);
}
