#pragma once

// Dirichlet characters modulo q, indexed by exponent tuples against the
// generators of a UnitGroup:
//
//   chi(n) = e( sum_k exps[k] * dlog_k(n) / order_k ),   chi(n) = 0 if gcd(n, q) > 1.
//
// Characters are enumerated in lexicographic exponent order, which is also
// the flat lattice order used by the batch transform, so index 0 is always
// the principal character.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "arith.hpp"
#include "ball.hpp"
#include "roots.hpp"

namespace lbound {

enum class Parity { even, odd };

inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

struct Character {
  u64 q = 0;
  u64 index = 0;
  std::vector<u64> exps;
  Parity parity = Parity::even;
  u64 conductor = 1;
  bool primitive = false;

  bool is_principal() const {
    for (u64 e : exps)
      if (e != 0) return false;
    return true;
  }
};

namespace detail {

inline unsigned valuation(u64 n, u64 p) {
  unsigned v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// Conductor and parity from the exponent tuple, one prime-power part at a time.
inline void classify(const UnitGroup& g, Character& chi) {
  const auto& comps = g.components();
  u64 conductor = 1;
  bool odd = false;
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const auto& c = comps[k];
    const u64 x = chi.exps[k];
    switch (c.kind) {
      case UnitComponent::Kind::odd_prime_power: {
        // Trivial on units = 1 mod p^f exactly when p^(e-f) divides x.
        if (x != 0) {
          const unsigned f = c.e - std::min(valuation(x, c.p), c.e - 1);
          for (unsigned i = 0; i < f; ++i) conductor *= c.p;
        }
        // -1 = g^(order/2) and order is even.
        if (x % 2 == 1) odd = !odd;
        break;
      }
      case UnitComponent::Kind::four:
        if (x != 0) {
          conductor *= 4;
          odd = !odd;
        }
        break;
      case UnitComponent::Kind::minus_one: {
        const u64 b = chi.exps[k + 1];
        if (x != 0) odd = !odd;
        if (b != 0) {
          const unsigned f = c.e - valuation(b, 2);
          for (unsigned i = 0; i < f; ++i) conductor *= 2;
        } else if (x != 0) {
          conductor *= 4;
        }
        break;
      }
      case UnitComponent::Kind::five:
        break;  // folded into the preceding minus_one component
    }
  }
  chi.conductor = conductor;
  chi.parity = odd ? Parity::odd : Parity::even;
  chi.primitive = conductor == g.q();
}

}  // namespace detail

inline Character make_character(const UnitGroup& g, u64 index) {
  if (index >= g.phi()) throw std::out_of_range("character index " + std::to_string(index) + " out of range");
  Character chi;
  chi.q = g.q();
  chi.index = index;
  chi.exps = g.unflatten(index);
  detail::classify(g, chi);
  return chi;
}

inline std::vector<Character> enumerate_characters(const UnitGroup& g) {
  std::vector<Character> out;
  out.reserve(g.phi());
  for (u64 i = 0; i < g.phi(); ++i) out.push_back(make_character(g, i));
  return out;
}

// Index of the complex-conjugate character.
inline u64 conjugate_index(const UnitGroup& g, u64 index) {
  auto exps = g.unflatten(index);
  const auto& comps = g.components();
  for (std::size_t k = 0; k < comps.size(); ++k) exps[k] = (comps[k].order - exps[k]) % comps[k].order;
  return g.flatten(exps);
}

// chi(n) = e(k / exponent) for the returned k, or nullopt on non-units.
// Exact integer arithmetic; the basis of every other evaluation.
inline std::optional<u64> chi_numerator(const UnitGroup& g, const Character& chi, u64 n) {
  n %= g.q();
  if (g.lone_two() && n % 2 == 0) return std::nullopt;
  const auto& comps = g.components();
  const u64 lambda = g.exponent();
  u64 k = 0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto d = comps[c].dlog[n % comps[c].modulus_part];
    if (d < 0) return std::nullopt;
    k = (k + mul_mod(mul_mod(chi.exps[c], static_cast<u64>(d), lambda), lambda / comps[c].order, lambda)) % lambda;
  }
  return k;
}

inline ComplexBall chi_value(const UnitGroup& g, const Character& chi, u64 n) {
  const auto k = chi_numerator(g, chi, n);
  if (!k) return {Ball(0.0), Ball(0.0)};
  return root_of_unity(*k, g.exponent());
}

// Smallest f | q such that chi is trivial on every unit n == 1 (mod f),
// found by testing each divisor in increasing order.
inline u64 conductor_of(const UnitGroup& g, const Character& chi) {
  const u64 q = g.q();
  for (u64 f : g.factorization().divisors()) {
    bool induced = true;
    for (u64 n = 1; n < q && induced; n += f) {
      if (std::gcd(n, q) != 1) continue;
      if (*chi_numerator(g, chi, n) != 0) induced = false;
    }
    if (induced) return f;
  }
  return q;
}

inline ComplexBall gauss_sum(const UnitGroup& g, const Character& chi) {
  if (!chi.primitive) throw std::invalid_argument("gauss_sum: character is not primitive");
  const u64 q = g.q();
  const u64 lambda = g.exponent();
  const u64 denom = lambda * q;
  ComplexBall sum;
  for (u64 a = 1; a < q; ++a) {
    const auto k = chi_numerator(g, chi, a);
    if (!k) continue;
    // chi(a) e(a/q) = e((k q + a lambda) / (lambda q)).
    sum += root_of_unity((*k * q + a * lambda) % denom, denom);
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Primitive-character counting.

enum class Restriction { all, multiple_of_3 };

inline bool admissible(u64 q, Restriction r) { return r == Restriction::all || q % 3 == 0; }

// Number of primitive characters mod q, i.e. sum_{d | q} mu(d) phi(q/d).
// Multiplicative with value p - 2 at p and p^(k-2) (p-1)^2 at p^k, k >= 2.
inline u64 primitive_count(const Factorization& f) {
  u64 r = 1;
  for (const auto& pp : f.factors) {
    if (pp.e == 1) {
      r *= pp.p - 2;
    } else {
      r *= pp.value() / (pp.p * pp.p) * (pp.p - 1) * (pp.p - 1);
    }
  }
  return r;
}

// Sum of primitive_count(q) over admissible 1 <= q <= Q, via a
// smallest-prime-factor sieve.
inline u64 count_primitive(u64 Q, Restriction restriction) {
  if (Q == 0) return 0;
  std::vector<std::uint32_t> spf(Q + 1, 0);
  for (u64 p = 2; p <= Q; ++p) {
    if (spf[p] != 0) continue;
    for (u64 m = p; m <= Q; m += p)
      if (spf[m] == 0) spf[m] = static_cast<std::uint32_t>(p);
  }
  u64 total = 0;
  for (u64 q = 1; q <= Q; ++q) {
    if (!admissible(q, restriction)) continue;
    u64 r = 1;
    u64 x = q;
    while (x > 1 && r != 0) {
      const u64 p = spf[x];
      u64 pk = 1;
      unsigned e = 0;
      while (x % p == 0) {
        x /= p;
        pk *= p;
        ++e;
      }
      r *= e == 1 ? p - 2 : pk / (p * p) * (p - 1) * (p - 1);
    }
    total += r;
  }
  return total;
}

}  // namespace lbound
