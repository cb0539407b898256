#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lfk/fp_linalg.hpp"

namespace lfk {

/// Element of k = F_p[g]/(m(g)), coordinates in the power basis 1, g, ..., g^{f-1}.
struct ResidueElement {
  FpVector coords;

  bool is_zero() const { return coords.is_zero(); }
  friend bool operator==(const ResidueElement&, const ResidueElement&) = default;
};

/// The residue field k = F_q, q = p^f.
class ResidueField {
 public:
  /// `modulus` is monic of degree f, coefficients low to high. Throws
  /// DomainError when it is not irreducible over F_p.
  ResidueField(std::int64_t p, std::vector<Residue> modulus);

  /// Lexicographically least monic irreducible of degree f, comparing the
  /// coefficient lists (c0, c1, ..., c_{f-1}).
  static std::vector<Residue> default_modulus(std::int64_t p, int f);
  static bool is_irreducible(std::int64_t p, const std::vector<Residue>& monic);

  std::int64_t p() const { return p_; }
  int degree() const { return f_; }
  std::int64_t order() const { return q_; }
  const std::vector<Residue>& modulus() const { return modulus_; }

  ResidueElement zero() const;
  ResidueElement one() const;
  ResidueElement from_int(std::int64_t a) const;
  /// g^s, the s-th power-basis vector.
  ResidueElement basis(int s) const;
  ResidueElement from_coords(std::vector<Residue> c) const;
  /// Element number n in a fixed enumeration of k (base-p digits as coordinates).
  ResidueElement element(std::int64_t n) const;

  ResidueElement add(const ResidueElement& a, const ResidueElement& b) const;
  ResidueElement sub(const ResidueElement& a, const ResidueElement& b) const;
  ResidueElement neg(const ResidueElement& a) const;
  ResidueElement mul(const ResidueElement& a, const ResidueElement& b) const;
  ResidueElement scale(const ResidueElement& a, Residue s) const;
  ResidueElement pow(ResidueElement a, std::int64_t n) const;
  ResidueElement inv(const ResidueElement& a) const;
  ResidueElement frobenius(const ResidueElement& a) const { return pow(a, p_); }
  /// Inverse Frobenius a -> a^{p^{f-1}}.
  ResidueElement pth_root(const ResidueElement& a) const;
  /// Absolute trace k -> F_p.
  Residue trace(const ResidueElement& a) const;

  std::string to_string(const ResidueElement& a) const;

 private:
  std::int64_t p_;
  int f_;
  std::int64_t q_;
  std::vector<Residue> modulus_;
};

}  // namespace lfk
