#pragma once

// Integer arithmetic: factorization, the cyclic decomposition of (Z/qZ)^*
// and discrete-logarithm tables against a fixed generator set.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lbound {

using u64 = std::uint64_t;

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m); }

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

// Inverse of a modulo m; requires gcd(a, m) = 1.
inline u64 inverse_mod(u64 a, u64 m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  if (r != 1) throw std::invalid_argument("inverse_mod: not invertible");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<u64>(t);
}

struct PrimePower {
  u64 p = 0;
  unsigned e = 0;
  u64 value() const {
    u64 v = 1;
    for (unsigned i = 0; i < e; ++i) v *= p;
    return v;
  }
  bool operator==(const PrimePower&) const = default;
};

struct Factorization {
  u64 q = 1;
  std::vector<PrimePower> factors;  // primes ascending

  u64 phi() const {
    u64 r = 1;
    for (const auto& f : factors) r *= f.value() / f.p * (f.p - 1);
    return r;
  }
  std::vector<u64> divisors() const {
    std::vector<u64> divs{1};
    for (const auto& f : factors) {
      const std::size_t n = divs.size();
      u64 pk = 1;
      for (unsigned k = 1; k <= f.e; ++k) {
        pk *= f.p;
        for (std::size_t i = 0; i < n; ++i) divs.push_back(divs[i] * pk);
      }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
  }
};

// Trial division; intended for q up to ~10^12.
inline Factorization factorize(u64 q) {
  if (q == 0) throw std::invalid_argument("factorize: q must be positive");
  Factorization f{q, {}};
  u64 n = q;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.push_back({p, e});
  }
  if (n > 1) f.factors.push_back({n, 1});
  return f;
}

inline u64 euler_phi(u64 q) { return factorize(q).phi(); }

// Smallest primitive root modulo an odd prime p.
inline u64 smallest_primitive_root(u64 p) {
  if (p == 2) return 1;
  const auto fac = factorize(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (const auto& f : fac.factors) {
      if (pow_mod(g, (p - 1) / f.p, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root found");
}

// One cyclic factor of (Z/qZ)^*. The generator is given modulo the
// prime-power part it lives on; `lifted` is its CRT lift to a residue mod q
// that is 1 modulo every other prime-power part.
struct UnitComponent {
  enum class Kind { odd_prime_power, minus_one, five, four };

  Kind kind = Kind::odd_prime_power;
  u64 p = 0;
  unsigned e = 0;
  u64 modulus_part = 0;
  u64 generator = 0;
  u64 order = 0;
  u64 lifted = 0;
  std::vector<std::int64_t> dlog;  // indexed by residue mod modulus_part; -1 on non-units
};

class UnitGroup {
 public:
  explicit UnitGroup(u64 q) : q_(q), fac_(factorize(q)) {
    if (q < 3) throw std::invalid_argument("unit_group: q must be at least 3, got " + std::to_string(q));
    for (const auto& f : fac_.factors) add_prime_power(f);
    phi_ = 1;
    for (const auto& c : comps_) phi_ *= c.order;
    exponent_ = 1;
    for (const auto& c : comps_) exponent_ = std::lcm(exponent_, c.order);
    strides_.assign(comps_.size(), 1);
    for (std::size_t k = comps_.size(); k-- > 1;) strides_[k - 1] = strides_[k] * comps_[k].order;
  }

  u64 q() const { return q_; }
  u64 phi() const { return phi_; }
  // Least common multiple of the component orders (the group exponent).
  u64 exponent() const { return exponent_; }
  const Factorization& factorization() const { return fac_; }
  const std::vector<UnitComponent>& components() const { return comps_; }
  // Row-major strides of the exponent lattice; component 0 is most significant.
  const std::vector<u64>& strides() const { return strides_; }

  bool is_unit(u64 n) const { return std::gcd(n % q_, q_) == 1; }
  // True when q is twice an odd number, so that evenness of n is not
  // visible to any component.
  bool lone_two() const { return lone_two_; }

  std::vector<u64> dlog(u64 n) const {
    n %= q_;
    if (!is_unit(n)) throw std::invalid_argument("dlog: " + std::to_string(n) + " is not a unit mod " + std::to_string(q_));
    std::vector<u64> e(comps_.size());
    for (std::size_t k = 0; k < comps_.size(); ++k)
      e[k] = static_cast<u64>(comps_[k].dlog[n % comps_[k].modulus_part]);
    return e;
  }

  // Flat lattice index of dlog(n), or -1 for a non-unit.
  std::int64_t flat_index(u64 n) const {
    n %= q_;
    if (lone_two_ && n % 2 == 0) return -1;
    std::int64_t idx = 0;
    for (std::size_t k = 0; k < comps_.size(); ++k) {
      const auto d = comps_[k].dlog[n % comps_[k].modulus_part];
      if (d < 0) return -1;
      idx += d * static_cast<std::int64_t>(strides_[k]);
    }
    return idx;
  }

  std::vector<u64> unflatten(u64 index) const {
    std::vector<u64> e(comps_.size());
    for (std::size_t k = 0; k < comps_.size(); ++k) {
      e[k] = index / strides_[k];
      index %= strides_[k];
    }
    return e;
  }

  u64 flatten(const std::vector<u64>& exps) const {
    u64 idx = 0;
    for (std::size_t k = 0; k < comps_.size(); ++k) idx += (exps[k] % comps_[k].order) * strides_[k];
    return idx;
  }

  // Product of lifted generators raised to the given exponents, mod q.
  u64 reconstruct(const std::vector<u64>& exps) const {
    u64 r = 1 % q_;
    for (std::size_t k = 0; k < comps_.size(); ++k) r = mul_mod(r, pow_mod(comps_[k].lifted, exps[k], q_), q_);
    return r;
  }

 private:
  u64 lift(u64 g, u64 part) const {
    const u64 rest = q_ / part;
    if (rest == 1) return g % q_;
    // x = 1 + rest * t with rest * t == g - 1 (mod part).
    const u64 t = mul_mod((g + part - 1) % part, inverse_mod(rest % part, part), part);
    return (1 + rest * t) % q_;
  }

  void add_prime_power(const PrimePower& f) {
    const u64 pe = f.value();
    if (f.p == 2) {
      if (f.e == 1) {
        lone_two_ = true;
        return;
      }
      if (f.e == 2) {
        UnitComponent c{UnitComponent::Kind::four, 2, 2, 4, 3, 2, lift(3, 4), {-1, 0, -1, 1}};
        comps_.push_back(std::move(c));
        return;
      }
      UnitComponent sign{UnitComponent::Kind::minus_one, 2, f.e, pe, pe - 1, 2, lift(pe - 1, pe), {}};
      UnitComponent five{UnitComponent::Kind::five, 2, f.e, pe, 5, pe / 4, lift(5, pe), {}};
      sign.dlog.assign(pe, -1);
      five.dlog.assign(pe, -1);
      u64 x = 1;
      for (u64 k = 0; k < pe / 4; ++k) {
        sign.dlog[x] = 0;
        five.dlog[x] = static_cast<std::int64_t>(k);
        sign.dlog[pe - x] = 1;
        five.dlog[pe - x] = static_cast<std::int64_t>(k);
        x = x * 5 % pe;
      }
      comps_.push_back(std::move(sign));
      comps_.push_back(std::move(five));
      return;
    }
    u64 g = smallest_primitive_root(f.p);
    if (f.e >= 2 && pow_mod(g, f.p - 1, f.p * f.p) == 1) g += f.p;
    const u64 order = pe / f.p * (f.p - 1);
    UnitComponent c{UnitComponent::Kind::odd_prime_power, f.p, f.e, pe, g, order, lift(g, pe), {}};
    c.dlog.assign(pe, -1);
    u64 x = 1;
    for (u64 k = 0; k < order; ++k) {
      c.dlog[x] = static_cast<std::int64_t>(k);
      x = mul_mod(x, g, pe);
    }
    comps_.push_back(std::move(c));
  }

  u64 q_;
  bool lone_two_ = false;  // 2 || q: no component sees the parity of n
  Factorization fac_;
  std::vector<UnitComponent> comps_;
  std::vector<u64> strides_;
  u64 phi_ = 1;
  u64 exponent_ = 1;
};

inline UnitGroup unit_group(u64 q) { return UnitGroup(q); }

}  // namespace lbound
