#pragma once

// Numerical checks of the analytic identities and inequalities that the
// bounds rest on. Identities yield residual balls (which must contain 0 and
// be small); inequalities yield margin balls (which must be strictly
// positive beyond their radius).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "ball.hpp"
#include "quadrature.hpp"
#include "special.hpp"

namespace lbound {

inline constexpr double kIdentityThreshold = 1e-6;
inline constexpr double kJIntegralThreshold = 1e-8;

struct CheckResult {
  std::string name;
  std::size_t points = 0;
  Ball worst;           // largest residual or smallest margin
  double worst_at = 0;  // grid coordinate of the worst point
  bool pass = false;
};

namespace detail {

// Runs fn(i) for i in [0, n) on up to `threads` workers.
inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += threads) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

inline double magnitude(const Ball& b) { return std::fabs(b.mid()) + b.rad(); }
inline double lower_end(const Ball& b) { return b.mid() - b.rad(); }

}  // namespace detail

// ---------------------------------------------------------------------------
// j(t): integral identity and sandwich.

// int_a^1 j(t) dt = 2 - 2a + 2a log a + 2 int_a^1 (u - a) g(u) du, where
// j(t) = -2 log t + 2 int_t^1 g. At a = 0 the log part integrates to 2.
inline Ball j_integral_from(double a, double tol = 1e-13) {
  if (a < 0.0 || a > 1.0) throw std::domain_error("j_integral_from: a must lie in [0, 1]");
  QuadratureOptions opt;
  opt.eval_error = detail::kJIntegrandError;
  const Ball inner = integrate([a](double u) { return (u - a) * j_remainder_integrand(u); }, a, 1.0, tol, opt);
  Ball closed = Ball(2.0) - Ball(2.0) * Ball(a);
  if (a > 0.0) closed += Ball(2.0) * Ball(a) * log(Ball(a));
  return closed + Ball(2.0) * inner;
}

// int_0^1 j(t) dt - 1.
inline Ball check_j_integral(double tol = 1e-13) { return j_integral_from(0.0, tol) - Ball(1.0); }

struct SandwichPoint {
  double t = 0;
  Ball j;
  Ball lower_margin;  // j(t) - (-2 log t - 2 (log 2 pi - 1))
  Ball upper_margin;  // -2 log t - j(t)
};

inline SandwichPoint j_sandwich_at(double t) {
  SandwichPoint p;
  p.t = t;
  p.j = j_func(t);
  const Ball upper = Ball(-2.0) * log(Ball(t));
  const Ball lower = upper - Ball(2.0) * (log(Ball(2.0) * pi_ball()) - Ball(1.0));
  p.lower_margin = p.j - lower;
  p.upper_margin = upper - p.j;
  return p;
}

inline std::vector<SandwichPoint> check_j_sandwich(const std::vector<double>& grid, unsigned threads = 1) {
  for (double t : grid)
    if (!(t > 0.0 && t < 1.0)) throw std::domain_error("check_j_sandwich: grid points must lie in (0, 1)");
  std::vector<SandwichPoint> out(grid.size());
  detail::parallel_for(grid.size(), threads, [&](std::size_t i) { out[i] = j_sandwich_at(grid[i]); });
  return out;
}

// ---------------------------------------------------------------------------
// sum_{n>=1} (1 - F3(delta n)) / n = -log delta - 1 + delta on (0, 1].

// Terms are bounded by 1/(3 pi^2 delta^3 n^4), so the tail past N is at most
// 1/(9 pi^2 delta^3 N^3).
inline double f3_tail_bound(double delta, double n_terms) {
  return 1.0 / (9.0 * M_PI * M_PI * delta * delta * delta * n_terms * n_terms * n_terms);
}

// Truncation: at most `max_terms`, and no further than needed for a tail
// below 1e-12.
inline Ball check_f3_identity(double delta, long max_terms = 1'000'000) {
  if (!(delta > 0.0 && delta <= 1.0)) throw std::domain_error("check_f3_identity: delta must lie in (0, 1]");
  const double wanted = std::ceil(std::cbrt(1.0 / (9.0 * M_PI * M_PI * std::pow(delta, 3) * 1e-12)));
  const long n_terms = std::max(1L, std::min<long>(max_terms, static_cast<long>(wanted)));
  Ball sum(0.0);
  const Ball d(delta);
  for (long n = n_terms; n >= 1; --n) {
    const double nd = static_cast<double>(n);
    sum += one_minus_f3(d * Ball(nd)) / Ball(nd);
  }
  const double tail = f3_tail_bound(delta, static_cast<double>(n_terms));
  sum += Ball(0.5 * tail, detail::up(0.5 * tail));
  const Ball rhs = -log(d) - Ball(1.0) + d;
  return sum - rhs;
}

// ---------------------------------------------------------------------------
// sum_{n>=1} (1 - F4(delta n)) / n
//   = -log delta + 3/2 - log 2 pi + 2 int_0^1 (1-t) log(pi delta t / sin(pi delta t)) dt.

// 2 int_0^1 (1-t) log(pi delta t / sin(pi delta t)) dt, for 0 < delta <= 1/2.
inline Ball log_sine_integral(double delta, double tol = 1e-14) {
  if (!(delta > 0.0 && delta <= 0.5)) throw std::domain_error("log_sine_integral: delta must lie in (0, 1/2]");
  QuadratureOptions opt;
  opt.eval_error = 8.0 * detail::kEps;
  const double w = M_PI * delta;
  const Ball r = integrate([w](double t) { return (1.0 - t) * log_x_over_sin(w * t); }, 0.0, 1.0, tol, opt);
  return Ball(2.0) * r;
}

// Terms are at most 1/(pi^2 delta^2 n^3); the tail past N is at most
// 1/(2 pi^2 delta^2 N^2).
inline Ball check_f4_identity(double delta, long max_terms = 10'000'000) {
  if (!(delta > 0.0 && delta <= 0.5)) throw std::domain_error("check_f4_identity: delta must lie in (0, 1/2]");
  const double wanted = std::ceil(1.0 / (M_PI * delta * std::sqrt(2.0 * 1e-10)));
  const long n_terms = std::max(1L, std::min<long>(max_terms, static_cast<long>(wanted)));
  Ball sum(0.0);
  const Ball d(delta);
  for (long n = n_terms; n >= 1; --n) {
    const double nd = static_cast<double>(n);
    sum += sinc_squared(d * Ball(nd)) / Ball(nd);
  }
  const double nt = static_cast<double>(n_terms);
  const double tail = 1.0 / (2.0 * M_PI * M_PI * delta * delta * nt * nt);
  sum += Ball(0.5 * tail, detail::up(0.5 * tail));
  const Ball rhs = -log(d) + Ball(1.5) - log(Ball(2.0) * pi_ball()) + log_sine_integral(delta);
  return sum - rhs;
}

// pi^3 delta^2 / 12 - 2 int_0^1 (1-t) log(pi delta t / sin(pi delta t)) dt.
inline Ball check_log_sine_bound(double delta) {
  const Ball d(delta);
  const Ball pi = pi_ball();
  return sqr(pi) * pi * sqr(d) / Ball(12.0) - log_sine_integral(delta);
}

// ---------------------------------------------------------------------------
// int_0^1 (1-t) (log(x/sin x) - (1/3) log|3x / sin 3x|) dt, x = pi delta t,
// bounded by pi^3 delta^2 / 36 + pi^2 delta^2 / 27.
//
// With sin 3x = sin x (3 - 4 sin^2 x) the integrand becomes
// (2/3) log(x/sin x) + (1/3) log|(4/3) sin^2 x - 1|. The second logarithm
// vanishes at x = pi/3 (t0 = 1/(3 delta)); writing
//   (4/3) sin^2 x - 1 = (8/3) (sin x + sqrt3/2) cos((x + pi/3)/2) sin(y),  y = (x - pi/3)/2,
// isolates log|y| = log(pi delta / 2) + log|t - t0|, whose weighted integral
// is elementary.

namespace detail {

// int_0^1 (1-t) log|t - t0| dt.
inline Ball weighted_log_integral(double t0) {
  // Antiderivatives in s = t - t0 of log|s| and s log|s|.
  auto a = [](double s) { return s == 0.0 ? Ball(0.0) : Ball(s) * log(Ball(std::fabs(s))) - Ball(s); };
  auto b = [](double s) {
    if (s == 0.0) return Ball(0.0);
    const Ball s2 = sqr(Ball(s));
    return s2 / Ball(2.0) * log(Ball(std::fabs(s))) - s2 / Ball(4.0);
  };
  const double hi = 1.0 - t0;
  const double lo = -t0;
  return Ball(1.0 - t0) * (a(hi) - a(lo)) - (b(hi) - b(lo));
}

}  // namespace detail

inline Ball triple_angle_lhs(double delta, double tol = 1e-13) {
  if (!(delta > 0.0 && delta <= 0.5)) throw std::domain_error("triple_angle_lhs: delta must lie in (0, 1/2]");
  const double w = M_PI * delta;
  const double s3 = std::sqrt(3.0) / 2.0;
  auto smooth = [w, s3](double t) {
    const double x = w * t;
    const double y = 0.5 * (x - M_PI / 3.0);
    const double v = std::log(8.0 / 3.0) + std::log(std::sin(x) + s3) + std::log(std::cos(0.5 * (x + M_PI / 3.0))) -
                     log_x_over_sin(std::fabs(y));
    return (1.0 - t) * v;
  };
  QuadratureOptions opt;
  opt.eval_error = 32.0 * detail::kEps;
  const Ball smooth_part = integrate(smooth, 0.0, 1.0, tol, opt);
  const double t0 = 1.0 / (3.0 * delta);
  const Ball log_part = log(Ball(w) / Ball(2.0)) / Ball(2.0) + detail::weighted_log_integral(t0);
  const Ball second = (smooth_part + log_part) / Ball(3.0);
  // t0 is rounded once; the shifted logarithmic singularity moves the
  // integral by far less than this allowance.
  return (log_sine_integral(delta) / Ball(3.0) + second).widened(1e-14);
}

inline Ball check_triple_angle_bound(double delta) {
  const Ball d2 = sqr(Ball(delta));
  const Ball pi = pi_ball();
  const Ball rhs = sqr(pi) * pi * d2 / Ball(36.0) + sqr(pi) * d2 / Ball(27.0);
  return rhs - triple_angle_lhs(delta);
}

// ---------------------------------------------------------------------------
// sum_{m <= X, 3 does not divide m} (m/X - 1)^2 <= 2X/9 - 14/X^2 + 14/(3X).

struct ExactMargin {
  std::int64_t numerator = 0;  // margin = numerator / denominator
  std::int64_t denominator = 1;
  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

// Integer X: multiply through by 9 X^2 and compare integers.
inline ExactMargin inner_sum_margin_exact(std::int64_t X) {
  if (X < 5) throw std::domain_error("inner_sum_margin_exact: X must be at least 5");
  std::int64_t s = 0;
  for (std::int64_t m = 1; m <= X; ++m)
    if (m % 3 != 0) s += (X - m) * (X - m);
  return {2 * X * X * X - 126 + 42 * X - 9 * s, 9 * X * X};
}

inline Ball check_inner_sum_bound(double X) {
  if (!(X >= 5.0)) throw std::domain_error("check_inner_sum_bound: X must be at least 5");
  const Ball xb(X);
  Ball sum(0.0);
  for (long m = 1; m <= static_cast<long>(std::floor(X)); ++m) {
    if (m % 3 == 0) continue;
    sum += sqr(Ball(static_cast<double>(m)) / xb - Ball(1.0));
  }
  const Ball bound = Ball(2.0) * xb / Ball(9.0) - Ball(14.0) / sqr(xb) + Ball(14.0) / (Ball(3.0) * xb);
  return bound - sum;
}

// sum_{m <= X, 3 does not divide m} j(m/X) <= 2X/3 + (5/3) log 2 + log 5 + (4/3)(log pi - 1).
inline Ball check_even_j_sum(double X) {
  if (!(X >= 5.0)) throw std::domain_error("check_even_j_sum: X must be at least 5");
  Ball sum(0.0);
  for (long m = 1; m <= static_cast<long>(std::floor(X)); ++m) {
    if (m % 3 == 0) continue;
    const double t = static_cast<double>(m) / X;
    // t is rounded; j is decreasing with |j'(t)| <= 2/t + 2 near t.
    sum += j_func(std::min(t, 1.0)).widened(detail::kEps * t * (2.0 / t + 2.0));
  }
  const Ball bound = Ball(2.0) * Ball(X) / Ball(3.0) + ratio(5.0, 3.0) * log(Ball(2.0)) + log(Ball(5.0)) +
                     ratio(4.0, 3.0) * (log(pi_ball()) - Ball(1.0));
  return bound - sum;
}

// ---------------------------------------------------------------------------
// Default grids and the full suite.

// {k/n : 1 <= k <= n-1} restricted to (lo, hi].
inline std::vector<double> unit_grid(int n, double lo, double hi) {
  std::vector<double> g;
  for (int k = 1; k < n; ++k) {
    const double x = static_cast<double>(k) / n;
    if (x > lo && x <= hi) g.push_back(x);
  }
  return g;
}

namespace detail {

inline CheckResult identity_check(std::string name, const std::vector<double>& grid, unsigned threads,
                                  const std::function<Ball(double)>& residual, double threshold) {
  std::vector<Ball> r(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) { r[i] = residual(grid[i]); });
  CheckResult c{std::move(name), grid.size(), Ball(0.0), 0.0, true};
  double worst = -1.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!r[i].contains_zero() || magnitude(r[i]) > threshold) c.pass = false;
    if (magnitude(r[i]) > worst) {
      worst = magnitude(r[i]);
      c.worst = r[i];
      c.worst_at = grid[i];
    }
  }
  return c;
}

inline CheckResult inequality_check(std::string name, const std::vector<double>& grid, unsigned threads,
                                    const std::function<Ball(double)>& margin) {
  std::vector<Ball> r(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) { r[i] = margin(grid[i]); });
  CheckResult c{std::move(name), grid.size(), Ball(0.0), 0.0, true};
  double worst = HUGE_VAL;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(lower_end(r[i]) > 0.0)) c.pass = false;
    if (lower_end(r[i]) < worst) {
      worst = lower_end(r[i]);
      c.worst = r[i];
      c.worst_at = grid[i];
    }
  }
  return c;
}

}  // namespace detail

inline std::vector<CheckResult> run_lemma_suite(int grid_n = 100, unsigned threads = 1) {
  std::vector<CheckResult> out;

  {
    const Ball r = check_j_integral();
    out.push_back({"j_integral", 1, r, 0.0, r.contains_zero() && detail::magnitude(r) <= kJIntegralThreshold});
  }

  const auto t_grid = unit_grid(grid_n, 0.0, 1.0);
  const auto sandwich = check_j_sandwich(t_grid, threads);
  {
    CheckResult lo{"j_sandwich_lower", sandwich.size(), Ball(0.0), 0.0, true};
    CheckResult hi{"j_sandwich_upper", sandwich.size(), Ball(0.0), 0.0, true};
    double wl = HUGE_VAL, wh = HUGE_VAL;
    for (const auto& p : sandwich) {
      if (!(detail::lower_end(p.lower_margin) > 0.0)) lo.pass = false;
      if (!(detail::lower_end(p.upper_margin) > 0.0)) hi.pass = false;
      if (detail::lower_end(p.lower_margin) < wl) {
        wl = detail::lower_end(p.lower_margin);
        lo.worst = p.lower_margin;
        lo.worst_at = p.t;
      }
      if (detail::lower_end(p.upper_margin) < wh) {
        wh = detail::lower_end(p.upper_margin);
        hi.worst = p.upper_margin;
        hi.worst_at = p.t;
      }
    }
    out.push_back(lo);
    out.push_back(hi);
  }

  out.push_back(detail::identity_check("f3_identity", unit_grid(grid_n, 0.0, 1.0), threads,
                                       [](double d) { return check_f3_identity(d); }, kIdentityThreshold));
  const auto half_grid = unit_grid(grid_n, 0.0, 0.5);
  out.push_back(detail::identity_check("f4_identity", half_grid, threads,
                                       [](double d) { return check_f4_identity(d); }, kIdentityThreshold));
  out.push_back(detail::inequality_check("log_sine_bound", half_grid, threads, check_log_sine_bound));
  out.push_back(detail::inequality_check("triple_angle_bound", half_grid, threads, check_triple_angle_bound));

  {
    CheckResult c{"inner_sum_bound", 0, Ball(0.0), 0.0, true};
    double worst = HUGE_VAL;
    for (std::int64_t X = 5; X <= 10'000; ++X) {
      const auto m = inner_sum_margin_exact(X);
      ++c.points;
      if (m.numerator < 0) c.pass = false;
      if (m.value() < worst) {
        worst = m.value();
        c.worst = Ball(m.value(), detail::rounding(m.value()));
        c.worst_at = static_cast<double>(X);
      }
    }
    out.push_back(c);
  }

  const std::vector<double> j_sum_grid{5.0, 6.0, 7.5, 10.0, 12.5, 20.0, 33.3, 50.0, 100.0, 250.0, 500.0};
  out.push_back(detail::inequality_check("even_j_sum_bound", j_sum_grid, threads, check_even_j_sum));
  return out;
}

}  // namespace lbound
