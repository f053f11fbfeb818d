#pragma once

// Arbitrary-length DFT with the positive exponent convention
//
//   X[k] = sum_j x[j] e(jk/n),
//
// by recursive mixed-radix decimation in time for prime factors up to
// kMaxDirectRadix and Bluestein's chirp-z algorithm for the cofactor built
// from larger primes. A multidimensional driver applies one 1-D transform per
// lattice axis.
//
// Rounding is not tracked per element. Each plan reports an error depth D
// (log2 n for a pure radix-2 transform, larger for direct butterflies and for
// Bluestein). The norm-wise bound ||computed - exact||_2 <= c D eps ||X||_2,
// with ||X||_2 = sqrt(N) ||x||_2, also bounds every single entry, so callers
// add 4 D eps sqrt(N) ||x||_2 to each output.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "roots.hpp"

namespace lbound {

using cplx = std::complex<double>;

inline constexpr std::uint64_t kMaxDirectRadix = 13;
inline constexpr double kFftEnvelopeConstant = 4.0;

class FftPlan {
 public:
  explicit FftPlan(std::size_t n) : n_(n), twiddle_(n == 0 ? 1 : n) {
    if (n == 0) throw std::invalid_argument("FftPlan: length must be positive");
    std::size_t rest = n;
    for (std::size_t p = 2; p <= kMaxDirectRadix && rest > 1; ++p) {
      while (rest % p == 0) {
        radices_.push_back(p);
        rest /= p;
        depth_ += p == 2 ? 1.0 : static_cast<double>(p);
      }
    }
    if (rest > 1) {
      bluestein_ = std::make_unique<Bluestein>(rest);
      depth_ += bluestein_->depth();
    }
    for (std::size_t k = 0; k < n; ++k) twiddle_[k] = root_of_unity_mid(k, n);
  }

  std::size_t size() const { return n_; }
  double error_depth() const { return depth_; }

  // In-place transform; inverse = true uses e(-jk/n) (no scaling).
  void transform(std::span<cplx> data, bool inverse = false) const {
    if (data.size() != n_) throw std::invalid_argument("FftPlan: length mismatch");
    if (n_ == 1) return;
    std::vector<cplx> out(n_);
    recurse(data.data(), 1, out.data(), n_, 0, inverse);
    std::copy(out.begin(), out.end(), data.begin());
  }

 private:
  class Bluestein;

  // DFT of in[0], in[stride], ..., in[(n-1) stride] written to out[0..n).
  void recurse(const cplx* in, std::size_t stride, cplx* out, std::size_t n, std::size_t level, bool inverse) const {
    if (n == 1) {
      out[0] = in[0];
      return;
    }
    if (level == radices_.size()) {
      std::vector<cplx> buf(n);
      for (std::size_t j = 0; j < n; ++j) buf[j] = in[j * stride];
      bluestein_->transform(buf, inverse);
      std::copy(buf.begin(), buf.end(), out);
      return;
    }
    const std::size_t p = radices_[level];
    const std::size_t m = n / p;
    for (std::size_t r = 0; r < p; ++r) recurse(in + r * stride, stride * p, out + r * m, m, level + 1, inverse);
    // X[k + s m] = sum_r e(rs/p) (e(rk/n) Y_r[k]); r k < n, so no reduction is needed.
    const std::size_t scale = n_ / n;
    const std::size_t small_scale = n_ / p;
    cplx dft[kMaxDirectRadix][kMaxDirectRadix];
    for (std::size_t r = 0; r < p; ++r)
      for (std::size_t t = 0; t < p; ++t) {
        const cplx w = twiddle_[(r * t % p) * small_scale];
        dft[r][t] = inverse ? std::conj(w) : w;
      }
    cplx small[kMaxDirectRadix];
    for (std::size_t k = 0; k < m; ++k) {
      small[0] = out[k];
      for (std::size_t r = 1; r < p; ++r) {
        const cplx w = twiddle_[r * k * scale];
        small[r] = (inverse ? std::conj(w) : w) * out[r * m + k];
      }
      if (p == 2) {
        out[k] = small[0] + small[1];
        out[k + m] = small[0] - small[1];
        continue;
      }
      for (std::size_t t = 0; t < p; ++t) {
        cplx acc = small[0];
        for (std::size_t r = 1; r < p; ++r) acc += dft[r][t] * small[r];
        out[k + t * m] = acc;
      }
    }
  }

  class Bluestein {
   public:
    explicit Bluestein(std::size_t n) : n_(n), m_(std::bit_ceil(2 * n - 1)), chirp_(n), kernel_(m_) {
      sub_ = std::make_unique<FftPlan>(m_);
      // chirp[j] = e(j^2 / (2n)), so e(jk/n) = chirp[j] chirp[k] conj(chirp[k-j]).
      const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
      for (std::size_t j = 0; j < n; ++j) {
        const std::uint64_t jj = static_cast<std::uint64_t>(j) * j % two_n;
        chirp_[j] = root_of_unity_mid(jj, two_n);
      }
      kernel_[0] = std::conj(chirp_[0]);
      for (std::size_t j = 1; j < n; ++j) kernel_[j] = kernel_[m_ - j] = std::conj(chirp_[j]);
      sub_->transform(kernel_);
    }

    double depth() const {
      // Two forward transforms, one inverse, three chirp multiplications,
      // and the 2x padding.
      return 2.0 * (3.0 * sub_->error_depth() + 6.0);
    }

    void transform(std::vector<cplx>& x, bool inverse) const {
      // DFT with e(-jk/n) is conj(DFT(conj x)).
      std::vector<cplx> a(m_, cplx(0.0, 0.0));
      for (std::size_t j = 0; j < n_; ++j) a[j] = (inverse ? std::conj(x[j]) : x[j]) * chirp_[j];
      sub_->transform(a);
      for (std::size_t j = 0; j < m_; ++j) a[j] *= kernel_[j];
      sub_->transform(a, true);
      const double scale = 1.0 / static_cast<double>(m_);  // exact, m is a power of two
      for (std::size_t k = 0; k < n_; ++k) {
        const cplx v = a[k] * scale * chirp_[k];
        x[k] = inverse ? std::conj(v) : v;
      }
    }

   private:
    std::size_t n_;
    std::size_t m_;
    std::vector<cplx> chirp_;
    std::vector<cplx> kernel_;  // FFT of the conjugate chirp, wrapped
    std::unique_ptr<FftPlan> sub_;
  };

  std::size_t n_;
  std::vector<std::size_t> radices_;
  std::unique_ptr<Bluestein> bluestein_;
  std::vector<cplx> twiddle_;
  double depth_ = 0.0;
};

// Row-major multidimensional transform over an integer lattice with the given
// axis lengths (axis 0 most significant).
class LatticeFft {
 public:
  explicit LatticeFft(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    total_ = 1;
    for (std::size_t d : dims_) total_ *= d;
    for (std::size_t d : dims_) {
      auto it = plans_.find(d);
      if (it == plans_.end()) it = plans_.emplace(d, std::make_shared<FftPlan>(d)).first;
      axis_plans_.push_back(it->second);
      depth_ += it->second->error_depth();
    }
  }

  std::size_t size() const { return total_; }
  double error_depth() const { return depth_; }

  // Envelope on |computed - exact| per output entry for input of 2-norm l2.
  double envelope(double l2) const {
    return detail::up(kFftEnvelopeConstant * std::max(depth_, 1.0) * detail::kEps *
                      std::sqrt(static_cast<double>(total_)) * l2);
  }

  void transform(std::span<cplx> data) const {
    if (data.size() != total_) throw std::invalid_argument("LatticeFft: dimension mismatch");
    std::size_t stride = total_;
    std::vector<cplx> line;
    for (std::size_t axis = 0; axis < dims_.size(); ++axis) {
      const std::size_t n = dims_[axis];
      stride /= n;
      if (n == 1) continue;
      line.resize(n);
      const std::size_t block = n * stride;
      for (std::size_t base = 0; base < total_; base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
          for (std::size_t j = 0; j < n; ++j) line[j] = data[base + off + j * stride];
          axis_plans_[axis]->transform(line);
          for (std::size_t j = 0; j < n; ++j) data[base + off + j * stride] = line[j];
        }
      }
    }
  }

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
  std::map<std::size_t, std::shared_ptr<FftPlan>> plans_;
  std::vector<std::shared_ptr<FftPlan>> axis_plans_;
  double depth_ = 0.0;
};

}  // namespace lbound
