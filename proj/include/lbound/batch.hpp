#pragma once

// L(1, chi) for every character mod q at once.
//
// For non-principal chi,
//
//   L(1, chi) = -(1/q) sum_{a=1}^{q} chi(a) psi(a/q),
//
// so with coefficients a(n) = -psi(n/q)/q on the units, every L-value is one
// entry of the character transform sum_n a(n) chi(n). Indexing units by their
// discrete-log tuple turns that transform into a multidimensional DFT over
// the exponent lattice of (Z/qZ)^*.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "arith.hpp"
#include "ball.hpp"
#include "characters.hpp"
#include "fft.hpp"
#include "special.hpp"

namespace lbound {

struct CoefficientVector {
  u64 q = 0;
  std::vector<Ball> a;  // indexed by residue n mod q; zero on non-units
};

// a(n) = -psi(n/q)/q on units, each with radius at most `tol`.
inline CoefficientVector build_coefficients(const UnitGroup& g, double tol) {
  const u64 q = g.q();
  CoefficientVector c{q, std::vector<Ball>(q)};
  const double qd = static_cast<double>(q);
  for (u64 n = 1; n < q; ++n) {
    if (!g.is_unit(n)) continue;
    const Ball v = -digamma_rational(static_cast<double>(n), qd) / Ball(qd);
    detail::require_tolerance(v, tol, "build_coefficients");
    c.a[n] = v;
  }
  return c;
}

inline CoefficientVector build_coefficients(u64 q, double tol) { return build_coefficients(UnitGroup(q), tol); }

// sum_n a(n) chi(n) for every character, in enumeration order.
inline std::vector<ComplexBall> dft_all_characters(const UnitGroup& g, const CoefficientVector& c) {
  if (c.q != g.q() || c.a.size() != g.q()) throw std::invalid_argument("dft_all_characters: coefficient vector is for a different modulus");
  std::vector<std::size_t> dims;
  for (const auto& comp : g.components()) dims.push_back(comp.order);
  LatticeFft fft(dims);

  std::vector<cplx> data(g.phi(), cplx(0.0, 0.0));
  double sum_sq = 0.0;
  double rad_sum = 0.0;
  for (u64 n = 1; n < g.q(); ++n) {
    const auto idx = g.flat_index(n);
    if (idx < 0) continue;
    data[static_cast<std::size_t>(idx)] = c.a[n].mid();
    sum_sq += c.a[n].mid() * c.a[n].mid();
    rad_sum += c.a[n].rad();
  }
  fft.transform(data);
  const double err = detail::up(fft.envelope(detail::up(std::sqrt(sum_sq * (1.0 + (data.size() + 2.0) * detail::kEps)))) + rad_sum);
  std::vector<ComplexBall> out(g.phi());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = {Ball(data[i].real(), err), Ball(data[i].imag(), err)};
  return out;
}

// Naive O(phi(q)) evaluation of one character sum in ball arithmetic.
inline ComplexBall direct_sum(const UnitGroup& g, const CoefficientVector& c, const Character& chi) {
  ComplexBall sum;
  for (u64 n = 1; n < g.q(); ++n) {
    const auto k = chi_numerator(g, chi, n);
    if (!k) continue;
    sum += root_of_unity(*k, g.exponent()) * c.a[n];
  }
  return sum;
}

struct LValueRecord {
  u64 q = 0;
  u64 index = 0;
  Parity parity = Parity::even;
  ComplexBall L;
  Ball absL;
  Ball excess;  // |L(1, chi)| - (1/3) log q
};

inline Ball third_log(u64 q) { return log(Ball(static_cast<double>(q))) / Ball(3.0); }

// Whether any character mod q is primitive (false exactly for q == 2 mod 4).
inline bool has_primitive_characters(u64 q) { return q >= 3 && q % 4 != 2; }

// Records for the primitive characters mod q. Every L-value must come out
// with radius at most `tol`; otherwise ToleranceError is thrown.
inline std::vector<LValueRecord> l_values(u64 q, double tol) {
  if (q < 3) throw std::invalid_argument("l_values: q must be at least 3");
  if (!(tol > 0.0)) throw std::invalid_argument("l_values: tolerance must be positive");
  std::vector<LValueRecord> out;
  if (!has_primitive_characters(q)) return out;
  const UnitGroup g(q);
  const auto coeffs = build_coefficients(g, HUGE_VAL);
  const auto sums = dft_all_characters(g, coeffs);
  const Ball shift = third_log(q);
  for (u64 i = 0; i < g.phi(); ++i) {
    const Character chi = make_character(g, i);
    if (!chi.primitive) continue;
    LValueRecord r;
    r.q = q;
    r.index = i;
    r.parity = chi.parity;
    r.L = sums[i];
    r.absL = sums[i].abs();
    r.excess = r.absL - shift;
    detail::require_tolerance(r.absL, tol, "l_values");
    out.push_back(r);
  }
  return out;
}

}  // namespace lbound
