#pragma once

// Roots of unity e(k/m) = exp(2 pi i k / m) as complex balls.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "ball.hpp"

namespace lbound {

// Radius attached to every non-trivial root: 2 ulp of 1.
inline constexpr double kRootRadius = 2.0 * detail::kEps;

namespace detail {

struct RootValue {
  std::complex<double> z;
  bool exact;  // k/m is a multiple of 1/4, so both coordinates are exact
};

// e(k/m) from an angle reduced to [0, pi/4], so the argument error stays
// below one ulp of the reduced angle.
inline RootValue root_value(std::uint64_t k, std::uint64_t m) {
  k %= m;
  if (k == 0) return {{1.0, 0.0}, true};
  // Quadrant and position inside the quadrant, in units of 1/(4m) turns.
  const unsigned __int128 k4 = static_cast<unsigned __int128>(k) * 4;
  const auto quadrant = static_cast<unsigned>(k4 / m);
  auto j = static_cast<std::uint64_t>(k4 - static_cast<unsigned __int128>(quadrant) * m);
  bool swap = false;
  if (2 * static_cast<unsigned __int128>(j) > m) {
    j = m - j;
    swap = true;
  }
  double c = 1.0;
  double s = 0.0;
  if (j != 0) {
    const double angle = (M_PI / 2.0) * (static_cast<double>(j) / static_cast<double>(m));
    c = std::cos(angle);
    s = std::sin(angle);
  }
  const double x = swap ? s : c;
  const double y = swap ? c : s;
  std::complex<double> z;
  switch (quadrant) {
    case 0: z = {x, y}; break;
    case 1: z = {-y, x}; break;
    case 2: z = {-x, -y}; break;
    default: z = {y, -x}; break;
  }
  return {z, j == 0};
}

}  // namespace detail

inline std::complex<double> root_of_unity_mid(std::uint64_t k, std::uint64_t m) {
  return detail::root_value(k, m).z;
}

inline ComplexBall root_of_unity(std::uint64_t k, std::uint64_t m) {
  const auto v = detail::root_value(k, m);
  const double r = v.exact ? 0.0 : kRootRadius;
  return {Ball(v.z.real(), r), Ball(v.z.imag(), r)};
}

// All m-th roots of unity, shared by character evaluation and the FFT.
class RootTable {
 public:
  explicit RootTable(std::uint64_t m) : m_(m), mids_(m) {
    for (std::uint64_t k = 0; k < m; ++k) mids_[k] = root_of_unity_mid(k, m);
  }
  std::uint64_t size() const { return m_; }
  const std::complex<double>& mid(std::uint64_t k) const { return mids_[k % m_]; }
  ComplexBall operator[](std::uint64_t k) const { return root_of_unity(k % m_, m_); }

 private:
  std::uint64_t m_;
  std::vector<std::complex<double>> mids_;
};

}  // namespace lbound
