#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lfk/fp_linalg.hpp"
#include "lfk/local_element.hpp"
#include "lfk/residue_field.hpp"

namespace lfk {

/// i-th positive integer not divisible by p: i + floor((i-1)/(p-1)).
std::int64_t bp_index(std::int64_t p, std::int64_t i);

bool is_prime(std::int64_t n);

struct FieldDescriptor {
  bool char_p = false;
  std::int64_t p = 2;
  int f = 1;
  /// Monic, low to high; empty selects ResidueField::default_modulus.
  std::vector<Residue> residue_poly;
  /// Char 0 only: monic Eisenstein polynomial, low to high, integer
  /// coefficients. Empty means unramified (pi = p).
  std::vector<std::int64_t> eisenstein_poly;
  std::int64_t default_precision = 64;

  /// Canonical descriptor text, e.g. "Qp p=3 f=1 eis=3,3,1 prec=64".
  std::string to_string() const;
};

/// Parses the descriptor grammar
///   Qp p=<prime> f=<int> [eis=<c0,...,1>] [resf=<c0,...,1>] [prec=<int>]
///   Fq((t)) p=<prime> f=<int> [resf=<c0,...,1>] [prec=<int>]
/// Errors carry the character offset and the expected token.
FieldDescriptor parse_descriptor(std::string_view text);

/// Empirical description of how (1 + b pi^step)^p moves the coefficient at
/// level m: column s is the residue change for b = lift(g^s).
struct KillMap {
  std::int64_t level = 0;
  std::int64_t step = 0;
  std::vector<FpVector> columns;
  bool surjective = false;
};

/// An immutable p-field together with its derived constants.
class FieldContext {
 public:
  static constexpr std::int64_t kInfiniteE = LocalElement::kInfinity;

  const FieldDescriptor& descriptor() const { return desc_; }
  bool char_p() const { return desc_.char_p; }
  std::int64_t p() const { return desc_.p; }
  int f() const { return residue_.degree(); }
  std::int64_t q() const { return residue_.order(); }
  /// Absolute ramification index; kInfiniteE in characteristic p.
  std::int64_t e() const { return e_; }
  std::optional<std::int64_t> c() const { return c_; }
  std::optional<std::int64_t> pc() const { return pc_; }
  bool mu_p_present() const { return zeta_.has_value(); }
  /// Fixed primitive p-th root of unity; only when mu_p_present().
  const LocalElement& zeta() const;
  std::int64_t default_precision() const { return desc_.default_precision; }
  /// Largest relative precision an element of this field can carry.
  std::int64_t max_relative_precision() const { return rel_cap_; }
  const ResidueField& residue_field() const { return residue_; }

  /// dim of Kbar^x = K^x / K^{x p}: e f + 1 + [mu_p in K]. Char 0 only.
  std::int64_t class_space_dim() const;
  /// Level above which Ubar_i vanishes (pc, or b_p(e) without mu_p). Char 0 only.
  std::int64_t triviality_threshold() const;
  /// Levels m where the unit filtration jumps by f (p does not divide m and m <= b_p(e) in char 0).
  bool is_jump_level(std::int64_t m) const;

  // Element factories. Nonzero constants carry relative precision `prec`
  // (default_precision() when prec <= 0).
  LocalElement zero() const;
  LocalElement one(std::int64_t prec = 0) const;
  LocalElement from_int(std::int64_t n, std::int64_t prec = 0) const;
  LocalElement from_mpz(const mpz_class& n, std::int64_t prec = 0) const;
  /// Canonical lift of r (coordinates in [0, p)) times pi^n.
  LocalElement monomial(const ResidueElement& r, std::int64_t n, std::int64_t prec = 0) const;
  LocalElement lift(const ResidueElement& r, std::int64_t prec = 0) const { return monomial(r, 0, prec); }
  LocalElement uniformizer(std::int64_t prec = 0) const;
  /// Multiplicative section of o -> k. Throws DomainError for r = 0.
  LocalElement teichmuller(const ResidueElement& r, std::int64_t prec = 0) const;

  /// Kill map at a level that is not a jump level; empty at jump levels.
  const KillMap& kill_map(std::int64_t level) const;

  // Internal mantissa arithmetic used by LocalElement (char 0: coefficients
  // of g^s pi^j over Z/p^M; char p: t-adic digits in k).
  struct AdicRing;
  const AdicRing& adic() const { return *adic_; }

  ~FieldContext();
  FieldContext(const FieldContext&) = delete;
  FieldContext& operator=(const FieldContext&) = delete;

 private:
  friend std::shared_ptr<const FieldContext> make_field(const FieldDescriptor&);
  explicit FieldContext(FieldDescriptor d);
  void detect_mu_p();
  void build_kill_maps();
  KillMap compute_kill_map(std::int64_t level) const;

  FieldDescriptor desc_;
  ResidueField residue_;
  std::int64_t e_ = kInfiniteE;
  std::optional<std::int64_t> c_;
  std::optional<std::int64_t> pc_;
  std::int64_t rel_cap_ = 0;
  std::unique_ptr<AdicRing> adic_;
  std::optional<LocalElement> zeta_;
  std::vector<KillMap> kill_maps_;
  KillMap char_p_kill_;
  KillMap empty_kill_;
};

using FieldPtr = std::shared_ptr<const FieldContext>;

/// Builds a context: checks irreducibility and the Eisenstein condition,
/// derives e, c, pc, q and decides mu_p by a certified Hensel lift.
FieldPtr make_field(const FieldDescriptor& d);
FieldPtr make_field(std::string_view descriptor_text);

}  // namespace lfk
