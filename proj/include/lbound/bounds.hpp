#pragma once

// Explicit upper bounds |L(1, chi)| <= (1/3) log q + C for primitive chi with 3 | q.
//
//   C_even(q) = (1/3) log 3 + q^{-1/2} ((5/3) log 2 + log 5 + (4/3) log pi - 4/3)
//   C_odd(q)  = 5/3 - (1/3) log 12 + q^{-1} (pi/2 + 2/3 + 14 pi^2/9 - 14 pi^3 / (9 sqrt q))
//
// and the uniform constants 0.368296 (even) and 0.838374 (odd), which are
// the values of these functions at q = 2 * 10^6 rounded up.

#include <cmath>
#include <string>

#include "ball.hpp"
#include "batch.hpp"
#include "characters.hpp"

namespace lbound {

inline constexpr double kTheoremEven = 0.368296;
inline constexpr double kTheoremOdd = 0.838374;

// Decimal literals as enclosures of the exact decimals.
inline Ball decimal_ball(double v) { return {v, detail::rounding(v)}; }

inline Ball c_even_limit() { return log(Ball(3.0)) / Ball(3.0); }

inline Ball c_odd_limit() { return ratio(5.0, 3.0) - log(Ball(12.0)) / Ball(3.0); }

inline Ball c_even(double q) {
  const Ball pi = pi_ball();
  const Ball inner = ratio(5.0, 3.0) * log(Ball(2.0)) + log(Ball(5.0)) + ratio(4.0, 3.0) * log(pi) - ratio(4.0, 3.0);
  return c_even_limit() + inner / sqrt(Ball(q));
}

inline Ball c_odd(double q) {
  const Ball pi = pi_ball();
  const Ball pi2 = sqr(pi);
  const Ball inner = pi / Ball(2.0) + ratio(2.0, 3.0) + Ball(14.0) * pi2 / Ball(9.0) -
                     Ball(14.0) * pi2 * pi / (Ball(9.0) * sqrt(Ball(q)));
  return c_odd_limit() + inner / Ball(q);
}

// Smallest multiple of 10^-6 not below the upper end of b, as printed in tables.
inline double round_up_6(const Ball& b) { return std::ceil(b.upper() * 1e6) / 1e6; }

enum class ConstantChoice { theorem, per_conductor };

enum class Verdict { pass, fail, indeterminate };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "indeterminate";
  }
}

struct BoundReport {
  u64 q = 0;
  u64 index = 0;
  Parity parity = Parity::even;
  Ball constant_used;
  Ball bound;   // (1/3) log q + constant
  Ball margin;  // bound - |L|
  Verdict verdict = Verdict::indeterminate;
  bool theorem_applies = false;  // primitive with 3 | q
};

inline Ball bound_constant(u64 q, Parity parity, ConstantChoice choice) {
  if (choice == ConstantChoice::theorem) return decimal_ball(parity == Parity::even ? kTheoremEven : kTheoremOdd);
  return parity == Parity::even ? c_even(static_cast<double>(q)) : c_odd(static_cast<double>(q));
}

inline Verdict classify_margin(const Ball& margin) {
  if (margin.mid() - margin.rad() > 0.0) return Verdict::pass;
  if (margin.mid() + margin.rad() < 0.0) return Verdict::fail;
  return Verdict::indeterminate;
}

inline BoundReport check_theorem(const LValueRecord& rec, ConstantChoice choice = ConstantChoice::theorem) {
  BoundReport r;
  r.q = rec.q;
  r.index = rec.index;
  r.parity = rec.parity;
  r.constant_used = bound_constant(rec.q, rec.parity, choice);
  r.bound = third_log(rec.q) + r.constant_used;
  r.margin = r.bound - rec.absL;
  r.verdict = classify_margin(r.margin);
  r.theorem_applies = rec.q % 3 == 0;
  return r;
}

}  // namespace lbound
