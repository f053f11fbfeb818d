#pragma once

// Adaptive Simpson quadrature returning a Ball.
//
// The radius is the sum of per-panel Richardson estimates |S2 - S1| / 15
// inflated by a safety factor of 10, plus the integrand evaluation error times
// the interval length, plus accumulated rounding. The Richardson estimate is
// asymptotically sharp for smooth integrands; the inflation makes it a
// practical (not formally proven) enclosure. Singular endpoints must be
// removed by the caller.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

#include "ball.hpp"

namespace lbound {

inline constexpr double kQuadratureSafety = 10.0;

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, Ball achieved) : std::runtime_error(what), achieved_(achieved) {}
  const Ball& achieved() const { return achieved_; }

 private:
  Ball achieved_;
};

struct QuadratureOptions {
  double eval_error = 0.0;  // absolute error of each integrand evaluation
  int max_depth = 48;
  int min_depth = 4;
};

namespace detail {

template <class F>
class Simpson {
 public:
  Simpson(F& f, const QuadratureOptions& opt) : f_(f), opt_(opt) {}

  void run(double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f_(a), fm = f_(m), fb = f_(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(a, b, fa, fm, fb, whole, tol, 0);
  }

  double sum = 0.0;
  double abs_sum = 0.0;
  double err = 0.0;
  long panels = 0;
  bool converged = true;

 private:
  void step(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f_(lm), frm = f_(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    const bool fine = depth >= opt_.min_depth && std::fabs(delta) <= 15.0 * tol;
    const bool stuck = depth >= opt_.max_depth || lm <= a || rm >= b;
    if (fine || stuck) {
      if (!fine) converged = false;
      const double contrib = left + right + delta / 15.0;
      sum += contrib;
      abs_sum += std::fabs(left) + std::fabs(right) + std::fabs(whole);
      err += std::fabs(delta) / 15.0;
      ++panels;
      return;
    }
    step(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1);
    step(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }

  F& f_;
  const QuadratureOptions& opt_;
};

}  // namespace detail

// Integrand returning double.
template <class F>
  requires std::is_convertible_v<std::invoke_result_t<F&, double>, double>
Ball integrate(F&& f, double a, double b, double tol, const QuadratureOptions& opt = {}) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate: tolerance must be positive");
  if (a > b) return -integrate(std::forward<F>(f), b, a, tol, opt);
  if (a == b) return Ball(0.0);
  auto g = [&f](double x) { return static_cast<double>(f(x)); };
  detail::Simpson<decltype(g)> s(g, opt);
  s.run(a, b, tol);
  const double rad = kQuadratureSafety * s.err + opt.eval_error * (b - a) +
                     4.0 * detail::kEps * s.abs_sum + detail::rounding(s.sum);
  Ball result(s.sum, detail::up(rad));
  if (!s.converged) {
    throw QuadratureError("integrate: depth limit reached on [" + std::to_string(a) + ", " + std::to_string(b) +
                              "], achieved radius " + std::to_string(result.rad()),
                          result);
  }
  return result;
}

// Integrand returning Ball: the quadrature runs on midpoints and the largest
// integrand radius seen is charged over the whole interval.
template <class F>
  requires std::is_same_v<std::invoke_result_t<F&, double>, Ball>
Ball integrate(F&& f, double a, double b, double tol, QuadratureOptions opt = {}) {
  double max_rad = 0.0;
  auto mid = [&](double x) {
    const Ball v = f(x);
    max_rad = std::max(max_rad, v.rad());
    return v.mid();
  };
  // Radii are only known after the run, so integrate first and widen after.
  Ball r = integrate(mid, a, b, tol, opt);
  return r.widened(max_rad * std::fabs(b - a));
}

}  // namespace lbound
