#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "lfk/residue_field.hpp"

namespace lfk {

class FieldContext;

/// An element of a p-field known modulo pi^precision().
///
/// Stored as pi^valuation * (unit mantissa known to relative precision).
/// A result whose digits all cancel below the known precision is an inexact
/// zero: is_zero() holds but valuation() throws PrecisionExhausted. The only
/// exact value is zero() itself. The owning FieldContext must outlive every
/// element created from it.
class LocalElement {
 public:
  static constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max() / 4;

  LocalElement() = default;

  const FieldContext& field() const { return *ctx_; }
  const FieldContext* field_ptr() const { return ctx_; }

  bool is_zero() const { return val_ == kInfinity; }
  bool is_exact_zero() const { return val_ == kInfinity && prec_ == kInfinity; }
  /// kInfinity for exact zero; throws PrecisionExhausted for inexact zero.
  std::int64_t valuation() const;
  /// Valuation, or the known precision for an inexact zero (a lower bound).
  std::int64_t valuation_bound() const { return is_zero() ? prec_ : val_; }
  /// Absolute precision: the element is known modulo pi^precision().
  std::int64_t precision() const { return prec_; }
  std::int64_t relative_precision() const { return is_zero() ? 0 : prec_ - val_; }

  /// Residue of x / pi^v(x). Throws for zero.
  ResidueElement leading_coefficient() const;
  /// pi-adic digit at absolute position n in the canonical expansion
  /// sum d_n pi^n with d_n a canonical lift of k.
  ResidueElement digit(std::int64_t n) const;
  /// Residue in k of an integral element.
  ResidueElement residue() const { return digit(0); }

  LocalElement operator-() const;
  LocalElement& operator+=(const LocalElement& y) { return *this = *this + y; }
  LocalElement& operator-=(const LocalElement& y) { return *this = *this - y; }
  LocalElement& operator*=(const LocalElement& y) { return *this = *this * y; }
  friend LocalElement operator+(const LocalElement& x, const LocalElement& y);
  friend LocalElement operator-(const LocalElement& x, const LocalElement& y) { return x + (-y); }
  friend LocalElement operator*(const LocalElement& x, const LocalElement& y);
  friend LocalElement operator/(const LocalElement& x, const LocalElement& y) { return x * y.inv(); }

  LocalElement inv() const;
  LocalElement pow(std::int64_t n) const;
  /// Multiplication by pi^k.
  LocalElement shifted(std::int64_t k) const;
  /// Lowers the absolute precision to min(precision(), absolute).
  LocalElement truncated(std::int64_t absolute) const;
  /// Formal t-derivative (characteristic p only).
  LocalElement derivative() const;

  /// Exact comparison of known digits; both must carry the same precision.
  bool same_as(const LocalElement& y) const;
  /// True when x - y vanishes modulo pi^min(prec_x, prec_y).
  bool congruent(const LocalElement& y) const { return (*this - y).is_zero(); }

  /// Digit expansion "d*pi^n + ... + O(pi^P)" (t instead of pi in char p).
  std::string to_string() const;

 private:
  friend class FieldContext;
  friend struct ElementAccess;
  const FieldContext* ctx_ = nullptr;
  std::int64_t val_ = kInfinity;
  std::int64_t prec_ = kInfinity;
  // Char 0: e*f coefficients of g^s pi^j (index j*f+s) over Z/p^M,
  // canonical modulo pi^{relative precision}. Char p: relative-precision
  // many t-adic digits, f coordinates each.
  std::vector<mpz_class> adic_;
  std::vector<Residue> series_;
};

/// Val of x; kInfinity for exact zero.
inline std::int64_t val(const LocalElement& x) { return x.valuation(); }

/// Residue-level trace S : k -> F_p.
Residue residue_trace(const FieldContext& ctx, const ResidueElement& r);

/// Characteristic p: S(coefficient of t^-1 in x * u'/u). Bilinear in
/// (x, u) with u multiplicative.
Residue series_residue_and_dlog(const LocalElement& x, const LocalElement& u);

/// Parses an element literal: integers, pi, t (char p), g (residue
/// generator), + - * ^ ( ), ',' as a term separator, and O(pi^n) / O(t^n).
LocalElement parse_element(const FieldContext& ctx, std::string_view text);

}  // namespace lfk
