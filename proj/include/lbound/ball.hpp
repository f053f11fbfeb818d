#pragma once

// Midpoint-radius ("ball") arithmetic over double.
//
// A Ball [m +/- r] stands for every real x with |x - m| <= r. Each operation
// returns a ball that contains the exact result for every choice of inputs
// inside the operand balls. Rounding of the midpoint computation is absorbed
// into the radius, and radii themselves are accumulated with upward slack.
//
// Elementary functions (log, exp, sin, cos) come from the C library. glibc
// documents errors below 1 ulp for these on x86-64; we charge 2 ulp of the
// result per call.

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace lbound {

namespace detail {

inline constexpr double kEps = DBL_EPSILON;  // 2^-52, twice the unit roundoff
inline constexpr double kTiny = std::numeric_limits<double>::denorm_min();
inline constexpr double kLibmUlps = 2.0;

// Upward slack for a nonnegative quantity computed with a handful of
// round-to-nearest operations.
inline double up(double x) { return x * (1.0 + 8.0 * kEps) + kTiny; }
inline double down(double x) { return x * (1.0 - 8.0 * kEps) - kTiny; }

// Bound on |fl(z) - z| for a correctly rounded result fl(z) = x: half an ulp
// of x, at most 2^-53 |x| (plus the subnormal spacing).
inline double rounding(double x) { return 0.5 * kEps * std::fabs(x) + kTiny; }

inline double libm_error(double x) { return kLibmUlps * kEps * std::fabs(x) + kTiny; }

}  // namespace detail

class Ball {
 public:
  constexpr Ball() = default;
  constexpr Ball(double mid) : mid_(mid) {}  // NOLINT: exact doubles convert implicitly
  Ball(double mid, double rad) : mid_(mid), rad_(rad) {
    if (!(rad >= 0.0)) throw std::invalid_argument("Ball radius must be non-negative");
  }

  double mid() const { return mid_; }
  double rad() const { return rad_; }
  double lower() const { return std::nextafter(mid_ - detail::up(rad_), -HUGE_VAL); }
  double upper() const { return std::nextafter(mid_ + detail::up(rad_), HUGE_VAL); }
  double mag() const { return detail::up(std::fabs(mid_) + rad_); }

  bool contains(double x) const { return std::fabs(x - mid_) <= rad_; }
  bool contains_zero() const { return std::fabs(mid_) <= rad_; }
  bool overlaps(const Ball& o) const { return std::fabs(mid_ - o.mid_) <= detail::up(rad_ + o.rad_); }
  bool is_positive() const { return mid_ > rad_; }
  bool is_negative() const { return mid_ < -rad_; }

  // Ball containing x + [-err, err].
  Ball widened(double err) const { return {mid_, detail::up(rad_ + err)}; }

  Ball operator-() const { return {-mid_, rad_}; }

  friend Ball operator+(const Ball& a, const Ball& b) {
    const double m = a.mid_ + b.mid_;
    return {m, detail::up(a.rad_ + b.rad_ + detail::rounding(m))};
  }
  friend Ball operator-(const Ball& a, const Ball& b) {
    const double m = a.mid_ - b.mid_;
    return {m, detail::up(a.rad_ + b.rad_ + detail::rounding(m))};
  }
  friend Ball operator*(const Ball& a, const Ball& b) {
    const double m = a.mid_ * b.mid_;
    const double r = std::fabs(a.mid_) * b.rad_ + std::fabs(b.mid_) * a.rad_ + a.rad_ * b.rad_;
    return {m, detail::up(r + detail::rounding(m))};
  }
  friend Ball operator/(const Ball& a, const Ball& b) {
    const double bm = std::fabs(b.mid_);
    if (!(bm > b.rad_)) throw std::domain_error("Ball division by a ball containing zero");
    const double m = a.mid_ / b.mid_;
    // |x/y - am/bm| <= (|am| rb + ra |bm|) / (|bm| (|bm| - rb)).
    const double denom = detail::down(bm * detail::down(bm - b.rad_));
    const double r = (std::fabs(a.mid_) * b.rad_ + a.rad_ * bm) / denom;
    return {m, detail::up(r + detail::rounding(m))};
  }

  Ball& operator+=(const Ball& o) { return *this = *this + o; }
  Ball& operator-=(const Ball& o) { return *this = *this - o; }
  Ball& operator*=(const Ball& o) { return *this = *this * o; }
  Ball& operator/=(const Ball& o) { return *this = *this / o; }

  friend std::ostream& operator<<(std::ostream& os, const Ball& b) {
    return os << '[' << b.mid_ << " +/- " << b.rad_ << ']';
  }

 private:
  double mid_ = 0.0;
  double rad_ = 0.0;
};

// Ball enclosing the rational num/den for integers exactly representable in a double.
inline Ball ratio(double num, double den) { return Ball(num) / Ball(den); }

inline Ball sqr(const Ball& x) {
  const double m = x.mid() * x.mid();
  const double r = 2.0 * std::fabs(x.mid()) * x.rad() + x.rad() * x.rad();
  return {m, detail::up(r + detail::rounding(m))};
}

inline Ball abs(const Ball& x) { return {std::fabs(x.mid()), x.rad()}; }

namespace detail {

// Enclosure for a non-decreasing function evaluated with libm-grade accuracy:
// compare the images of the two endpoints against the image of the midpoint.
template <class F>
Ball monotone(F f, double lo, double mid, double hi, double (*err)(double)) {
  const double fm = f(mid);
  if (lo == hi) return {fm, up(err(fm))};
  const double flo = f(lo);
  const double fhi = f(hi);
  const double spread = std::max(fhi - fm + err(fhi), fm - flo + err(flo));
  return {fm, up(std::max(spread, 0.0) + err(fm))};
}

inline double sqrt_error(double x) { return rounding(x); }

}  // namespace detail

inline Ball sqrt(const Ball& x) {
  if (x.mid() < 0.0 || x.mid() + x.rad() < 0.0) throw std::domain_error("sqrt of negative ball");
  const double lo = x.rad() == 0.0 ? x.mid() : std::max(x.lower(), 0.0);
  const double hi = x.rad() == 0.0 ? x.mid() : x.upper();
  return detail::monotone([](double v) { return std::sqrt(v); }, lo, x.mid(), hi,
                          &detail::sqrt_error);
}

inline Ball log(const Ball& x) {
  if (x.rad() == 0.0) {
    if (!(x.mid() > 0.0)) throw std::domain_error("log of a ball not strictly positive");
    return detail::monotone([](double v) { return std::log(v); }, x.mid(), x.mid(), x.mid(),
                            &detail::libm_error);
  }
  const double lo = x.lower();
  if (!(lo > 0.0)) throw std::domain_error("log of a ball not strictly positive");
  return detail::monotone([](double v) { return std::log(v); }, lo, x.mid(), x.upper(),
                          &detail::libm_error);
}

inline Ball exp(const Ball& x) {
  const double lo = x.rad() == 0.0 ? x.mid() : x.lower();
  const double hi = x.rad() == 0.0 ? x.mid() : x.upper();
  return detail::monotone([](double v) { return std::exp(v); }, lo, x.mid(), hi, &detail::libm_error);
}

// sin and cos are 1-Lipschitz.
inline Ball sin(const Ball& x) {
  const double m = std::sin(x.mid());
  return {m, detail::up(std::min(x.rad(), 2.0) + detail::libm_error(m))};
}

inline Ball cos(const Ball& x) {
  const double m = std::cos(x.mid());
  return {m, detail::up(std::min(x.rad(), 2.0) + detail::libm_error(m))};
}

// Enclosures of pi and the Euler constant.
inline Ball pi_ball() { return {3.141592653589793, 2.0e-16}; }
inline Ball euler_gamma_ball() { return {0.5772156649015329, 1.0e-16}; }

inline Ball log_ball(double exact_value) { return log(Ball(exact_value)); }

// sin(pi * t) for an exactly representable t. Range reduction by an exact
// fmod keeps the argument error proportional to the reduced angle.
inline Ball sinpi(double t) {
  double r = std::fmod(t, 2.0);  // exact, r in (-2, 2)
  if (r > 1.0) r -= 2.0;         // exact
  if (r < -1.0) r += 2.0;
  const double sign = r < 0.0 ? -1.0 : 1.0;
  r = std::fabs(r);  // sin(pi t) = sign * sin(pi r), r in [0, 1]
  if (r == 0.0 || r == 1.0) return Ball(0.0);
  if (r > 0.5) r = 1.0 - r;  // exact by Sterbenz
  if (r == 0.5) return Ball(sign);
  const double x = M_PI * r;
  const double s = std::sin(x);
  // |pi r - fl(M_PI * r)| <= 2 eps * pi r; sin is 1-Lipschitz.
  const double err = 2.0 * detail::kEps * x + detail::libm_error(s);
  return {sign * s, detail::up(err)};
}

inline Ball sinpi(const Ball& t) {
  Ball s = sinpi(t.mid());
  return s.widened(std::min(M_PI * t.rad(), 2.0));
}

// ---------------------------------------------------------------------------

struct ComplexBall {
  Ball re;
  Ball im;

  ComplexBall() = default;
  ComplexBall(Ball r, Ball i = Ball()) : re(r), im(i) {}  // NOLINT

  ComplexBall conj() const { return {re, -im}; }

  friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) { return {a.re + b.re, a.im + b.im}; }
  friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) { return {a.re - b.re, a.im - b.im}; }
  friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexBall operator*(const ComplexBall& a, const Ball& s) { return {a.re * s, a.im * s}; }
  ComplexBall& operator+=(const ComplexBall& o) { return *this = *this + o; }

  bool overlaps(const ComplexBall& o) const { return re.overlaps(o.re) && im.overlaps(o.im); }

  // |z| as |mid| +/- (rad_re + rad_im).
  Ball abs() const {
    const double m = std::hypot(re.mid(), im.mid());
    return {m, detail::up(re.rad() + im.rad() + detail::rounding(m))};
  }

  friend std::ostream& operator<<(std::ostream& os, const ComplexBall& z) {
    return os << '(' << z.re << ", " << z.im << ')';
  }
};

}  // namespace lbound
