#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lfk/class_spaces.hpp"
#include "lfk/field.hpp"
#include "lfk/local_element.hpp"

namespace lfk {

/// A one-dimensional subspace of Kbar^x (mult) or Kbar^+ (add).
struct Line {
  SpaceKind space = SpaceKind::mult;
  /// Adapted-basis product (mult) or sum (add) of `coords`.
  LocalElement generator;
  /// Coordinates normalized so that the first nonzero entry is 1.
  FpVector coords;
  /// delta(D): pc - j for mult lines in Ubar_j \ Ubar_{j+1}, the pole order for add lines.
  std::int64_t level = 0;

  std::string label() const;
};

/// Line spanned by the class with these coordinates. Throws DomainError for
/// the zero vector.
Line make_line(const AdaptedBasis& basis, const FpVector& coords);
/// Line spanned by the class of x. Throws DomainError when the class is trivial.
Line line_of(const AdaptedBasis& basis, const LocalElement& x);

/// Every line of the basis space, ordered by normalized coordinate vector.
std::vector<Line> line_catalog(const AdaptedBasis& basis);

enum class ExtensionKind { kummer, artin_schreier };

/// Element of E = K[X]/(F) as coefficients of 1, X, ..., X^{p-1}.
using ExtElement = std::vector<LocalElement>;

/// E = K[X]/(X^p - a) (Kummer) or K[X]/(X^p - X - x) (Artin-Schreier).
class DegreePExtension {
 public:
  DegreePExtension(const FieldContext& base, ExtensionKind kind, Line line);

  const FieldContext& base() const { return *ctx_; }
  ExtensionKind kind() const { return kind_; }
  const Line& line() const { return line_; }
  /// a (Kummer) or x (Artin-Schreier).
  const LocalElement& parameter() const { return line_.generator; }
  bool is_unramified() const { return unramified_; }
  std::int64_t degree() const { return p_; }
  std::string defining_polynomial() const;

  ExtElement from_base(const LocalElement& c) const;
  /// The class of X (alpha or y).
  ExtElement generator() const;
  ExtElement add(const ExtElement& a, const ExtElement& b) const;
  ExtElement sub(const ExtElement& a, const ExtElement& b) const;
  ExtElement mul(const ExtElement& a, const ExtElement& b) const;
  ExtElement scale(const ExtElement& a, const LocalElement& c) const;
  ExtElement pow(const ExtElement& a, std::int64_t n) const;
  bool is_zero(const ExtElement& a) const;
  std::string to_string(const ExtElement& a) const;

  /// N_{E|K}(z): determinant of multiplication by z (= Res(F, z) for monic F).
  LocalElement norm(const ExtElement& z) const;
  /// Normalized valuation of E (image Z).
  std::int64_t valuation(const ExtElement& z) const;
  /// sigma^s where sigma(alpha) = zeta alpha (Kummer) or sigma(y) = y + 1.
  ExtElement galois_apply(const ExtElement& z, std::int64_t s = 1) const;

  /// Cached uniformizer (pi_K when unramified).
  const ExtElement& uniformizer() const { return uniformizer_; }
  /// The n-th uniformizer in a fixed list of alternates (n = 0 is uniformizer()).
  ExtElement alternate_uniformizer(int n) const;
  /// v_E(sigma^s(pi) - pi) - 1, or -1 when unramified.
  std::int64_t ramification_break(std::int64_t s = 1) const;
  std::int64_t break_with(const ExtElement& pi_e, std::int64_t s) const;

  /// Residue-field generator for unramified E: (alpha - 1) / pi^c or y.
  ExtElement residue_generator() const;

 private:
  ExtElement find_uniformizer() const;

  const FieldContext* ctx_;
  ExtensionKind kind_;
  Line line_;
  std::int64_t p_;
  bool unramified_ = false;
  ExtElement uniformizer_;
  std::int64_t break_ = -1;
};

/// Extension attached to a line: Kummer for mult (needs mu_p), Artin-Schreier
/// for add.
DegreePExtension attach_extension(const FieldContext& base, const Line& line);

}  // namespace lfk
