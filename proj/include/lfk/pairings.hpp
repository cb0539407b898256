#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "lfk/class_spaces.hpp"
#include "lfk/extensions.hpp"
#include "lfk/fp_linalg.hpp"

namespace lfk {

/// Image of N_{E|K}(E^x) in Kbar^x, spanned by the norms of a fixed
/// generator schedule of E^x:
///   ramified:   pi_E and 1 + g^s pi_E^m for 1 <= m <= p * (top + 1),
///   unramified: 1 + g^s rho^i pi^m for i < p, 1 <= m <= top,
/// where top is pc (char 0) or the basis window (char p) and rho generates
/// the residue extension. The codimension is checked to be exactly 1.
FpSubspace norm_class_subgroup(const DegreePExtension& E, const AdaptedBasis& mult_basis);

/// Artin-Schreier symbol at kernel level: S(res(x du/u)) in F_p.
Residue schmid_pairing(const LocalElement& x, const LocalElement& u);

/// Quadratic Hilbert symbol over Q_2 by the classical exponent formula.
int hilbert_symbol_q2(const LocalElement& a, const LocalElement& b);

/// Caches the adapted bases, the line catalog, the attached extensions and
/// their norm groups for one field. Not thread-safe.
class PairingContext {
 public:
  /// `window` is used in characteristic p only.
  PairingContext(const FieldContext& ctx, std::int64_t window);

  const FieldContext& field() const { return *ctx_; }
  const AdaptedBasis& mult_basis() const { return mult_; }
  /// Basis the lines live in: mult (char 0) or add (char p).
  const AdaptedBasis& line_basis() const { return ctx_->char_p() ? *add_ : mult_; }
  std::optional<std::int64_t> window() const { return mult_.window(); }

  const std::vector<Line>& lines();
  Line line(const FpVector& coords) const { return make_line(line_basis(), coords); }
  const DegreePExtension& extension(const Line& line);
  const FpSubspace& norm_group(const Line& line);

  /// Whether b pairs trivially with the line: b in N(E_line) K^xp. In
  /// characteristic p the Schmid formula decides and, when `cross_check`
  /// holds, must agree with norm membership (InternalError otherwise).
  bool pairs_trivially(const Line& a, const LocalElement& b, bool cross_check = true);
  bool pairs_trivially(const Line& a, const FpVector& b_coords);

  /// Span of the lines D with U inside N(E_D) (the orthogonal of U read
  /// off the catalog), together with a flag saying whether those lines
  /// exhaust a subspace.
  std::pair<FpSubspace, bool> orthogonal_by_catalog(const FpSubspace& U);

 private:
  static std::vector<Residue> key(const Line& line);

  const FieldContext* ctx_;
  AdaptedBasis mult_;
  std::optional<AdaptedBasis> add_;
  std::optional<std::vector<Line>> lines_;
  std::map<std::vector<Residue>, std::unique_ptr<DegreePExtension>> extensions_;
  std::map<std::vector<Residue>, FpSubspace> norm_groups_;
};

/// Gram matrix of the hilbertian pairing on the mult basis, rows = norm
/// side, columns = line side. Char p: Schmid values against the additive
/// basis. Char 0: kernels come from norm groups; the per-column scalars are
/// fixed by requiring the kernel of each sum of two basis functionals to be
/// the norm group of the sum line. Returns nullopt if no scalar fits.
std::optional<std::vector<FpVector>> gram_matrix(PairingContext& pc);

}  // namespace lfk
