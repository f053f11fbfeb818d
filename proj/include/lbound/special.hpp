#pragma once

// Special functions behind the L(1, chi) computation and the lemma checks:
// digamma and trigamma, the kernel j(t), and the weights F3, F4.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ball.hpp"
#include "quadrature.hpp"

namespace lbound {

class ToleranceError : public std::runtime_error {
 public:
  ToleranceError(const std::string& what, double achieved) : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

namespace detail {

// Below this point the recurrences shift the argument upward before the
// asymptotic series is applied.
inline constexpr double kAsymptoticShift = 10.0;

// B_{2k} = num / den for k = 1..11.
inline constexpr std::array<std::array<double, 2>, 11> kBernoulli{{{1, 6},
                                                                  {-1, 30},
                                                                  {1, 42},
                                                                  {-1, 30},
                                                                  {5, 66},
                                                                  {-691, 2730},
                                                                  {7, 6},
                                                                  {-3617, 510},
                                                                  {43867, 798},
                                                                  {-174611, 330},
                                                                  {854513, 138}}};

// sum_{k=1}^{10} B_{2k} / (2k) z^k by Horner, z = 1/y^2.
inline Ball digamma_series(const Ball& z) {
  Ball acc(0.0);
  for (int k = 10; k >= 1; --k) {
    const auto& b = kBernoulli[k - 1];
    acc = (acc + ratio(b[0], b[1] * 2.0 * k)) * z;
  }
  return acc;
}

// psi(y) for y >= 10 through the B_20 term; the remainder is bounded by the
// first omitted term.
inline Ball digamma_asymptotic(const Ball& y) {
  const Ball z = Ball(1.0) / sqr(y);
  Ball r = log(y) - Ball(0.5) / y - digamma_series(z);
  const double ylo = y.lower();
  const double omitted = (kBernoulli[10][0] / kBernoulli[10][1]) / 22.0 / std::pow(ylo, 22);
  return r.widened(omitted);
}

// psi'(y) for y >= 10: 1/y + 1/(2y^2) + sum_{k=1}^{10} B_{2k} / y^{2k+1}.
inline Ball trigamma_series_tail(const Ball& y) {
  const Ball z = Ball(1.0) / sqr(y);
  Ball acc(0.0);
  for (int k = 10; k >= 1; --k) {
    const auto& b = kBernoulli[k - 1];
    acc = (acc + ratio(b[0], b[1])) * z;
  }
  const double ylo = y.lower();
  const double omitted = (kBernoulli[10][0] / kBernoulli[10][1]) / std::pow(ylo, 23);
  return (acc / y).widened(omitted);
}

inline Ball trigamma_asymptotic(const Ball& y) {
  return Ball(1.0) / y + Ball(0.5) / sqr(y) + trigamma_series_tail(y);
}

inline void require_tolerance(const Ball& b, double tol, const char* what) {
  if (b.rad() > tol) {
    throw ToleranceError(std::string(what) + ": requested tolerance " + std::to_string(tol) +
                             " not attainable, achieved radius " + std::to_string(b.rad()),
                         b.rad());
  }
}

}  // namespace detail

// psi(num/den) for positive integers num, den below 2^53. The recurrence
// terms den/(num + k den) are exact ratios, so small arguments cost no
// precision beyond one rounding per term.
inline Ball digamma_rational(double num, double den) {
  if (!(num > 0.0 && den > 0.0)) throw std::domain_error("digamma_rational: arguments must be positive");
  const double x = num / den;
  const int shift = x >= detail::kAsymptoticShift ? 0 : static_cast<int>(std::ceil(detail::kAsymptoticShift - x));
  Ball correction(0.0);
  for (int k = 0; k < shift; ++k) correction += ratio(den, num + k * den);
  const Ball y = ratio(num + shift * den, den);
  return detail::digamma_asymptotic(y) - correction;
}

inline Ball digamma_rational(double num, double den, double tol) {
  Ball r = digamma_rational(num, den);
  detail::require_tolerance(r, tol, "digamma");
  return r;
}

// psi(x) for an exact double x > 0.
inline Ball digamma(double x, double tol) {
  if (!(x > 0.0)) throw std::domain_error("digamma: x must be positive, got " + std::to_string(x));
  if (!(tol > 0.0)) throw std::invalid_argument("digamma: tolerance must be positive");
  const int shift = x >= detail::kAsymptoticShift ? 0 : static_cast<int>(std::ceil(detail::kAsymptoticShift - x));
  Ball correction(0.0);
  for (int k = 0; k < shift; ++k) correction += Ball(1.0) / (Ball(x) + Ball(k));
  const Ball y = Ball(x) + Ball(shift);
  Ball r = detail::digamma_asymptotic(y) - correction;
  detail::require_tolerance(r, tol, "digamma");
  return r;
}

inline Ball trigamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("trigamma: x must be positive");
  const int shift = x >= detail::kAsymptoticShift ? 0 : static_cast<int>(std::ceil(detail::kAsymptoticShift - x));
  Ball correction(0.0);
  for (int k = 0; k < shift; ++k) correction += Ball(1.0) / sqr(Ball(x) + Ball(k));
  return detail::trigamma_asymptotic(Ball(x) + Ball(shift)) + correction;
}

// ---------------------------------------------------------------------------
// F4(t) = 1 - (sin(pi t) / (pi t))^2.

// (sin(pi t) / (pi t))^2, the quantity 1 - F4(t).
inline Ball sinc_squared(const Ball& t) {
  if (t.mid() == 0.0 && t.rad() == 0.0) return Ball(1.0);
  if (t.contains_zero()) throw std::domain_error("sinc_squared: argument ball contains 0");
  return sqr(sinpi(t) / (pi_ball() * t));
}

inline Ball f4(double t) {
  if (t == 0.0) return Ball(0.0);
  return Ball(1.0) - sinc_squared(Ball(t));
}

// ---------------------------------------------------------------------------
// F3(t) = (sin(pi t)/pi)^2 (2/t + sum_{m != 0} sgn(m) / (t - m)^2).

// Truncation default for f3: max(100, ceil(10/t)), raised to at least 2t + 1
// so the tail bound below applies.
inline long f3_default_terms(double t) {
  return static_cast<long>(std::max({100.0, std::ceil(10.0 / t), std::ceil(2.0 * t) + 1.0}));
}

// Truncated symmetric sum over 1 <= |m| <= M. For m > M >= 2t each pair
// 1/(m-t)^2 - 1/(m+t)^2 = 4mt/(m^2-t^2)^2 lies in (0, (64 t / 9) m^-3], so
// the tail is in [0, min(1/(M - t), 32 t / (9 M^2))].
inline Ball f3(double t, long terms) {
  if (!(t > 0.0)) throw std::domain_error("f3: t must be positive");
  if (t == std::floor(t)) return Ball(1.0);
  const long m_max = std::max(terms, static_cast<long>(std::ceil(2.0 * t)) + 1);
  const Ball tb(t);
  Ball bracket = Ball(2.0) / tb;
  for (long m = m_max; m >= 1; --m) {
    const Ball mb(static_cast<double>(m));
    bracket += Ball(1.0) / sqr(tb - mb) - Ball(1.0) / sqr(tb + mb);
  }
  const double M = static_cast<double>(m_max);
  const double tail = std::min(1.0 / (M - t), 32.0 * t / (9.0 * M * M));
  bracket += Ball(0.5 * tail, detail::up(0.5 * tail));
  return sqr(sinpi(t) / pi_ball()) * bracket;
}

inline Ball f3(double t) { return f3(t, f3_default_terms(t)); }

// 1 - F3(t) in closed form. With sum_{m>=1} (t-m)^-2 = psi'(1-t),
// sum_{m>=1} (t+m)^-2 = psi'(1+t) and the reflection formula for psi',
//
//   1 - F3(t) = (sin(pi t)/pi)^2 (2 psi'(t) - 2/t - 1/t^2),
//
// which is free of cancellation against 1 and decays like t^-3. The bracket
// E(t) satisfies 0 <= E(t) <= 1/(3 t^3).
inline Ball one_minus_f3(const Ball& t) {
  const double x = t.mid();
  if (!(t.lower() > 0.0)) throw std::domain_error("one_minus_f3: t must be positive");
  const Ball s = sinpi(t);
  if (s.mid() == 0.0 && s.rad() == 0.0) return Ball(0.0);
  Ball e;
  const Ball xb(x);
  if (x >= detail::kAsymptoticShift) {
    e = detail::trigamma_series_tail(xb) * Ball(2.0);
  } else {
    const int shift = static_cast<int>(std::ceil(detail::kAsymptoticShift - x));
    const Ball y = xb + Ball(shift);
    e = Ball(2.0) * detail::trigamma_asymptotic(y) + Ball(1.0) / sqr(xb) - Ball(2.0) / xb;
    for (int j = 1; j < shift; ++j) e += Ball(2.0) / sqr(xb + Ball(j));
  }
  // |E'(t)| <= 4/t^2 + 4/t^3 on the input ball.
  if (t.rad() > 0.0) {
    const double lo = t.lower();
    e = e.widened(t.rad() * (4.0 / (lo * lo) + 4.0 / (lo * lo * lo)));
  }
  return sqr(s / pi_ball()) * e;
}

inline Ball one_minus_f3(double t) { return one_minus_f3(Ball(t)); }

// ---------------------------------------------------------------------------
// j(t) = 2 int_t^1 (pi (1-u) cot(pi u) + 1) du.
//
// The integrand equals 1/u + (1-u) h(u) with h(u) = pi cot(pi u) - 1/u smooth
// on [0, 1), so j(t) = -2 log t + 2 int_t^1 g(u) du, g(u) = (1-u) h(u).

namespace detail {

// zeta(2k), k = 1..7.
inline constexpr std::array<double, 7> kZetaEven{1.6449340668482264, 1.0823232337111382, 1.0173430619844491,
                                                 1.0040773561979443, 1.0009945751278181, 1.0002460865533080,
                                                 1.0000612481350587};

// Absolute error of one evaluation of j_remainder_integrand.
inline constexpr double kJIntegrandError = 5e-14;

}  // namespace detail

// g(u) = (1-u)(pi cot(pi u) - 1/u), continuous on [0, 1] with g(0) = 0, g(1) = -1.
inline double j_remainder_integrand(double u) {
  if (u < 0.05) {
    // pi cot(pi u) - 1/u = -2 sum_k zeta(2k) u^(2k-1).
    const double u2 = u * u;
    double acc = 0.0;
    for (std::size_t k = detail::kZetaEven.size(); k-- > 0;) acc = acc * u2 + detail::kZetaEven[k];
    return (1.0 - u) * (-2.0 * u * acc);
  }
  if (u <= 0.5) return (1.0 - u) * (M_PI * std::cos(M_PI * u) / std::sin(M_PI * u) - 1.0 / u);
  // (1-u) pi cot(pi u) = -pi v cot(pi v) with v = 1 - u.
  const double v = 1.0 - u;
  if (v == 0.0) return -1.0;
  const double pv = M_PI * v;
  return -pv * std::cos(pv) / std::sin(pv) - v / u;
}

inline Ball j_func(double t, double tol = 1e-12) {
  if (!(t > 0.0) || t > 1.0) throw std::domain_error("j_func: t must lie in (0, 1], got " + std::to_string(t));
  if (t == 1.0) return Ball(0.0);
  QuadratureOptions opt;
  opt.eval_error = detail::kJIntegrandError;
  const Ball tail = integrate(j_remainder_integrand, t, 1.0, 0.5 * tol, opt);
  return Ball(-2.0) * log(Ball(t)) + Ball(2.0) * tail;
}

// log(x / sin x) for 0 <= x <= pi/2, accurate to a few ulp of 1.
inline double log_x_over_sin(double x) {
  if (x < 1e-4) {
    const double x2 = x * x;
    return x2 / 6.0 + x2 * x2 / 180.0;
  }
  return -std::log(std::sin(x) / x);
}

}  // namespace lbound
