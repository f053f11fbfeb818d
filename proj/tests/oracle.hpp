#pragma once

// High-precision reference values via MPFR, independent of the double-based
// library code under test.

#include <gmp.h>
#include <mpfr.h>

#include <cmath>
#include <utility>

#include <lbound/ball.hpp>

namespace oracle {

inline constexpr mpfr_prec_t kPrec = 256;

class Mp {
 public:
  Mp() { mpfr_init2(v_, kPrec); mpfr_set_zero(v_, 1); }
  explicit Mp(double d) { mpfr_init2(v_, kPrec); mpfr_set_d(v_, d, MPFR_RNDN); }
  Mp(const Mp& o) { mpfr_init2(v_, kPrec); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Mp& operator=(const Mp& o) { mpfr_set(v_, o.v_, MPFR_RNDN); return *this; }
  ~Mp() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  friend Mp operator+(const Mp& a, const Mp& b) { Mp r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Mp operator-(const Mp& a, const Mp& b) { Mp r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Mp operator*(const Mp& a, const Mp& b) { Mp r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
  friend Mp operator/(const Mp& a, const Mp& b) { Mp r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }

 private:
  mpfr_t v_;
};

template <int (*F)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)>
Mp apply(const Mp& x) {
  Mp r;
  F(r.get(), x.get(), MPFR_RNDN);
  return r;
}

inline Mp pi() { Mp r; mpfr_const_pi(r.get(), MPFR_RNDN); return r; }
inline Mp euler() { Mp r; mpfr_const_euler(r.get(), MPFR_RNDN); return r; }
inline Mp log(const Mp& x) { return apply<mpfr_log>(x); }
inline Mp exp(const Mp& x) { return apply<mpfr_exp>(x); }
inline Mp sqrt(const Mp& x) { return apply<mpfr_sqrt>(x); }
inline Mp sin(const Mp& x) { return apply<mpfr_sin>(x); }
inline Mp cos(const Mp& x) { return apply<mpfr_cos>(x); }
inline Mp digamma(const Mp& x) { return apply<mpfr_digamma>(x); }

inline Mp rational(long num, long den) { return Mp(static_cast<double>(num)) / Mp(static_cast<double>(den)); }

// psi(num/den) computed from the exact rational argument.
inline Mp digamma_rational(long num, long den) { return digamma(rational(num, den)); }

// cos and sin of 2 pi k / m.
inline std::pair<Mp, Mp> root(long k, long m) {
  k %= m;
  if ((4 * k) % m == 0) {
    const double c[4] = {1, 0, -1, 0}, s[4] = {0, 1, 0, -1};
    const long quarter = 4 * k / m;
    return {Mp(c[quarter]), Mp(s[quarter])};
  }
  const Mp angle = Mp(2.0) * pi() * rational(k % m, m);
  return {cos(angle), sin(angle)};
}

inline bool contains(const lbound::Ball& b, const Mp& x) {
  return mpfr_cmp_d(x.get(), b.lower()) >= 0 && mpfr_cmp_d(x.get(), b.upper()) <= 0;
}

// |b.mid - x| in double (rounded).
inline double distance(const lbound::Ball& b, const Mp& x) { return std::fabs((Mp(b.mid()) - x).to_double()); }

}  // namespace oracle
