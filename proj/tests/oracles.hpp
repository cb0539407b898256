#pragma once

// Brute-force oracles shared by the unit tests and the acceptance binary.
// They avoid the descent and norm machinery under test.

#include <map>

#include "lfk/field.hpp"
#include "lfk/fp_linalg.hpp"
#include "lfk/local_element.hpp"

namespace lfk::oracle {

// Hensel oracle: a unit u is a p-th power iff some y0 mod pi^{2e+1} has
// v(y0^p - u) > 2e.
inline bool hensel_is_pth_power(const FieldContext& K, const LocalElement& x) {
  const std::int64_t v = x.valuation();
  if (v % K.p() != 0) return false;
  const LocalElement u = x.shifted(-v);
  const std::int64_t depth = 2 * K.e() + 1;
  std::int64_t count = 1;
  for (std::int64_t i = 0; i < depth; ++i) count *= K.q();
  for (std::int64_t code = 0; code < count; ++code) {
    std::int64_t c = code;
    LocalElement y0 = K.zero();
    for (std::int64_t i = 0; i < depth; ++i) {
      const ResidueElement d = K.residue_field().element(c % K.q());
      c /= K.q();
      if (!d.is_zero()) y0 = y0 + K.monomial(d, i);
    }
    if (y0.is_zero() || y0.valuation() != 0) continue;
    const LocalElement diff = y0.pow(K.p()) - u;
    if (diff.is_zero() || diff.valuation() > 2 * K.e()) return true;
  }
  return false;
}

// Naive wp-subtraction on a raw coefficient table over F_p (f = 1).
// Returns -1 for trivial, otherwise the level delta.
inline std::int64_t naive_as_level(std::int64_t p, std::map<std::int64_t, std::int64_t> coeff) {
  while (true) {
    std::int64_t lowest = 1;
    for (auto& [n, a] : coeff) {
      a = ((a % p) + p) % p;
      if (a != 0 && n < lowest) lowest = n;
    }
    if (lowest >= 0) break;
    const std::int64_t m = -lowest;
    const std::int64_t a = coeff[lowest];
    if (m % p != 0) return m;
    // wp(a t^{-m/p}) = a t^{-m} - a t^{-m/p} since a^p = a in F_p.
    coeff[lowest] -= a;
    coeff[-(m / p)] += a;
  }
  return coeff[0] % p != 0 ? 0 : -1;
}

inline bool is_square_mod_64(std::int64_t a) {
  for (std::int64_t x = 0; x < 64; ++x)
    if ((x * x - a) % 64 == 0) return true;
  return false;
}

// Break of Q2(sqrt a) for a squarefree integer, read off the discriminant:
// a = 1 mod 4 gives disc 1, otherwise v(disc) = 2 (a = 3 mod 4) or 3 (a even),
// and v(disc) = break + 1 for a ramified quadratic extension.
inline std::int64_t q2_break_oracle(std::int64_t a) {
  if (a % 2 == 0) return 2;
  if (((a % 4) + 4) % 4 == 1) return -1;
  return 1;
}

// Square class of a nonzero integer n with v_2(n) <= 3, known mod 64, as
// coordinates against (2, -1, 5).
inline FpVector q2_class(std::int64_t n) {
  std::int64_t v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  const std::int64_t u = ((n % 8) + 8) % 8;
  const std::int64_t a = (u == 7 || u == 3) ? 1 : 0;
  const std::int64_t b = (u == 5 || u == 3) ? 1 : 0;
  return FpVector(2, {v % 2, a, b});
}

// Oracle: classes of x^2 - a y^2 over all residues mod 2^6.
inline FpSubspace q2_norm_oracle(std::int64_t a) {
  std::vector<FpVector> rows;
  for (std::int64_t x = 0; x < 64; ++x)
    for (std::int64_t y = 0; y < 64; ++y) {
      const std::int64_t n = ((x * x - a * y * y) % 64 + 64) % 64;
      if (n == 0 || n % 16 == 0) continue;  // valuation > 3: class not determined
      rows.push_back(q2_class(n));
    }
  return rref(2, 3, rows);
}

}  // namespace lfk::oracle
