#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lfk/field.hpp"
#include "lfk/fp_linalg.hpp"
#include "lfk/local_element.hpp"

namespace lfk {

enum class SpaceKind { mult, add };
enum class ClassStatus { trivial, nontrivial };

std::string to_string(SpaceKind s);
std::string to_string(ClassStatus s);

struct BasisVector {
  std::string label;
  LocalElement element;
  /// Mult: filtration index j (0 for the valuation generator).
  /// Add: pole order delta (0 for the constant generator).
  std::int64_t level = 0;
};

/// Basis of Kbar^x or Kbar^+ adapted to the filtration, so that every
/// filtration step is spanned by a run of consecutive basis vectors.
///
///  mult, char 0: pi, then 1 - g^s pi^m for every jump level m (p does not
///    divide m, m <= b_p(e)), then 1 + eta pi^pc when mu_p is in K.
///  mult, char p: t, then 1 - g^s t^m for p not dividing m, m <= window.
///    Coordinates are taken modulo Ubar_{window+1}.
///  add, char p: eta (a constant with S(eta) != 0), then g^s t^-m for p
///    not dividing m, m <= window.
class AdaptedBasis {
 public:
  AdaptedBasis(const FieldContext& ctx, SpaceKind space, std::optional<std::int64_t> window);

  const FieldContext& field() const { return *ctx_; }
  SpaceKind space() const { return space_; }
  std::optional<std::int64_t> window() const { return window_; }
  const std::vector<BasisVector>& vectors() const { return vectors_; }
  std::size_t dim() const { return vectors_.size(); }
  std::int64_t p() const { return ctx_->p(); }

  /// Residue eta used by the top generator (mult: level pc, add: level 0).
  const std::optional<ResidueElement>& eta() const { return eta_; }

  /// Mult: Ubar_i (Ubar_0 is everything). Add: image of p^j (j <= 0 gives
  /// the classes of pole order <= -j, j >= 1 gives zero).
  FpSubspace filtration_step(std::int64_t i) const;

  /// Product (mult) or sum (add) of the basis vectors with these exponents.
  LocalElement combine(const FpVector& coords) const;

  /// Index range [first, last) of basis vectors at a given level.
  std::pair<std::size_t, std::size_t> level_range(std::int64_t level) const;

 private:
  const FieldContext* ctx_;
  SpaceKind space_;
  std::optional<std::int64_t> window_;
  std::vector<BasisVector> vectors_;
  std::optional<ResidueElement> eta_;
};

struct UnitClassReduction {
  ClassStatus status = ClassStatus::trivial;
  /// Class lies in Ubar_j but not Ubar_{j+1}; j = 0 when v(u) is not a
  /// multiple of p. Trivial classes report threshold + 1.
  std::int64_t level_index = 0;
  /// pc - j for mult lines; -1 for the trivial class.
  std::int64_t level_delta = -1;
  /// Canonical member of the class: the adapted-basis product with the
  /// coordinates below. 1 for the trivial class.
  LocalElement normalized_rep;
  /// y with y^p * normalized_rep = u to the working precision (char 0 only,
  /// when requested).
  std::optional<LocalElement> certificate;
  FpVector coords;
  /// Number of p-th power kills performed below the threshold.
  std::int64_t kill_steps = 0;
};

struct ASClassReduction {
  ClassStatus status = ClassStatus::trivial;
  /// Pole order of the class; 0 for the unramified class, -1 when trivial.
  std::int64_t level_delta = -1;
  LocalElement normalized_rep;
  /// y with wp(y) + normalized_rep = x to the working precision.
  std::optional<LocalElement> certificate;
  FpVector coords;
  std::int64_t kill_steps = 0;
};

/// Class descent in Kbar^x. In characteristic p the basis window bounds the
/// descent and components in Ubar_{window+1} are dropped.
UnitClassReduction unit_class_reduce(const AdaptedBasis& basis, const LocalElement& u, bool with_certificate = true);
UnitClassReduction unit_class_reduce(const LocalElement& u);

/// Class descent in Kbar^+ (characteristic p). Throws OutOfWindow when the
/// class has a component beyond the basis window.
ASClassReduction as_class_reduce(const AdaptedBasis& basis, const LocalElement& x, bool with_certificate = true);
ASClassReduction as_class_reduce(const LocalElement& x);

AdaptedBasis adapted_basis(const FieldContext& ctx, SpaceKind space, std::optional<std::int64_t> window = std::nullopt);

FpVector coordinates(const AdaptedBasis& basis, const LocalElement& x);

/// wp(z) = z^p - z.
LocalElement wp(const LocalElement& z);

struct FiltrationStep {
  std::int64_t index = 0;
  /// Mult: dim Ubar_i / Ubar_{i+1}. Add: dim pbar^i / pbar^{i+1}.
  std::int64_t codim = 0;
};

/// Codimensions of consecutive filtration steps for i in [lo, hi], read from
/// the adapted basis and cross-checked by descending `samples` random
/// elements of each U_i (resp. p^i); a mismatch raises InternalError.
std::vector<FiltrationStep> filtration_dims(const AdaptedBasis& basis, std::int64_t lo, std::int64_t hi,
                                            std::uint64_t seed = 1, int samples = 8);

}  // namespace lfk
