#pragma once

// Mantissa kernels behind LocalElement. Not part of the public interface.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "lfk/field.hpp"

namespace lfk {

struct FieldContext::AdicRing {
  using Mant = std::vector<mpz_class>;
  using Digits = std::vector<Residue>;

  bool char_p = false;
  std::int64_t p = 2;
  int f = 1;
  const ResidueField* k = nullptr;

  // ---- characteristic 0: o / p^M = W[pi]/(eis), W = (Z/p^M)[g]/(m(g)) ----
  std::int64_t e = 1;
  std::int64_t M = 1;
  std::vector<mpz_class> ppow;  // p^0 .. p^M
  std::vector<mpz_class> gmod;  // lifted residue modulus, f + 1 entries
  std::vector<mpz_class> eis;   // a_0 .. a_{e-1}: pi^e = -sum a_j pi^j
  Mant eps_inv;                 // (pi^e / p)^{-1}

  const mpz_class& modulus() const { return ppow[M]; }
  std::size_t size() const { return static_cast<std::size_t>(e * f); }

  Mant zero_mant() const { return Mant(size(), 0); }
  Mant lift(const ResidueElement& r) const;
  ResidueElement residue(const Mant& m) const;
  void reduce_mod_n(Mant& m) const;
  /// Reduce modulo pi^R (canonical representative).
  void canonicalize(Mant& m, std::int64_t R) const;
  /// min_j e*v_p(c_j) + j, capped at R.
  std::int64_t valuation(const Mant& m, std::int64_t R) const;
  Mant add(const Mant& a, const Mant& b) const;
  Mant sub(const Mant& a, const Mant& b) const;
  Mant mul(const Mant& a, const Mant& b) const;
  Mant times_pi(const Mant& a, std::int64_t k) const;
  /// a / pi^k for a known modulo pi^R with v(a) >= k; result modulo pi^{R-k}.
  Mant div_pi(const Mant& a, std::int64_t k, std::int64_t R) const;
  /// Inverse of a unit modulo pi^R.
  Mant unit_inverse(const Mant& a, std::int64_t R) const;

  // ---- characteristic p: digits of k[[t]] / t^R, f coordinates each ----
  Digits series_mul(const Digits& a, const Digits& b, std::int64_t R) const;
  Digits series_inverse(const Digits& a, std::int64_t R) const;
};

}  // namespace lfk
