#include "lfk/class_spaces.hpp"

#include <algorithm>

#include "lfk/errors.hpp"
#include "lfk/sampling.hpp"

namespace lfk {

std::string to_string(SpaceKind s) { return s == SpaceKind::mult ? "mult" : "add"; }
std::string to_string(ClassStatus s) { return s == ClassStatus::trivial ? "trivial" : "nontrivial"; }

LocalElement wp(const LocalElement& z) { return z.pow(z.field().p()) - z; }

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t p) {
  const std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

// "g^s" as a coefficient label; empty for 1.
std::string coeff_label(int s) {
  if (s == 0) return "";
  if (s == 1) return "g*";
  return "g^" + std::to_string(s) + "*";
}

std::string power_label(const char* sym, std::int64_t m) {
  if (m == 1) return sym;
  return std::string(sym) + "^" + std::to_string(m);
}

ResidueElement combine_residue(const ResidueField& k, const FpVector& sol, std::size_t offset, std::size_t count) {
  std::vector<Residue> c(static_cast<std::size_t>(k.degree()), 0);
  for (std::size_t i = 0; i < count; ++i) c[i] = sol[offset + i];
  return k.from_coords(c);
}

}  // namespace

// ------------------------------------------------------------------ basis

AdaptedBasis::AdaptedBasis(const FieldContext& ctx, SpaceKind space, std::optional<std::int64_t> window)
    : ctx_(&ctx), space_(space), window_(window) {
  const auto& k = ctx.residue_field();
  const std::int64_t p = ctx.p();
  const int f = ctx.f();
  const char* sym = ctx.char_p() ? "t" : "pi";
  if (window && *window < 0) throw DomainError("window must be non-negative");

  if (space == SpaceKind::add) {
    if (!ctx.char_p()) throw UnsupportedCase("the additive class space is only used in characteristic p");
    if (!window) throw DomainError("the additive class space needs a window");
    for (int s = 0; s < f && !eta_; ++s)
      if (k.trace(k.basis(s)) != 0) eta_ = k.basis(s);
    if (!eta_) throw InternalError("no basis element of k has nonzero trace");
    vectors_.push_back({k.to_string(*eta_), ctx.lift(*eta_), 0});
    for (std::int64_t m = 1; m <= *window; ++m) {
      if (m % p == 0) continue;
      for (int s = 0; s < f; ++s)
        vectors_.push_back({coeff_label(s) + power_label(sym, -m), ctx.monomial(k.basis(s), -m), m});
    }
    return;
  }

  if (ctx.char_p()) {
    if (!window) throw DomainError("the multiplicative class space in characteristic p needs a window");
  } else if (window) {
    window_.reset();
  }
  vectors_.push_back({sym, ctx.uniformizer(), 0});
  const std::int64_t top = ctx.char_p() ? *window : bp_index(p, ctx.e());
  for (std::int64_t m = 1; m <= top; ++m) {
    if (!ctx.is_jump_level(m)) continue;
    for (int s = 0; s < f; ++s)
      vectors_.push_back({"1-" + coeff_label(s) + power_label(sym, m), ctx.one() - ctx.monomial(k.basis(s), m), m});
  }
  if (!ctx.char_p() && ctx.mu_p_present()) {
    const std::int64_t pc = *ctx.pc();
    const KillMap& km = ctx.kill_map(pc);
    const FpSubspace image = rref(p, static_cast<std::size_t>(f), km.columns);
    for (int s = 0; s < f && !eta_; ++s)
      if (!image.contains(k.basis(s).coords)) eta_ = k.basis(s);
    if (!eta_) throw InternalError("level-pc kill map is onto although mu_p is present");
    const int s = static_cast<int>(eta_->coords.leading_index());
    vectors_.push_back({"1+" + coeff_label(s) + power_label(sym, pc), ctx.one() + ctx.monomial(*eta_, pc), pc});
  }
}

FpSubspace AdaptedBasis::filtration_step(std::int64_t i) const {
  const std::int64_t p = ctx_->p();
  std::vector<std::size_t> idx;
  for (std::size_t r = 0; r < vectors_.size(); ++r) {
    const std::int64_t lv = vectors_[r].level;
    const bool in = space_ == SpaceKind::mult ? (i <= 0 || lv >= i) : (i <= 0 && lv <= -i);
    if (in) idx.push_back(r);
  }
  return FpSubspace::coordinate(p, vectors_.size(), idx);
}

LocalElement AdaptedBasis::combine(const FpVector& coords) const {
  if (coords.size() != vectors_.size()) throw MalformedInput("coordinate vector does not match the basis dimension");
  if (space_ == SpaceKind::mult) {
    LocalElement acc = ctx_->one();
    for (std::size_t r = 0; r < vectors_.size(); ++r)
      if (coords[r] != 0) acc = acc * vectors_[r].element.pow(coords[r]);
    return acc;
  }
  LocalElement acc = ctx_->zero();
  for (std::size_t r = 0; r < vectors_.size(); ++r)
    if (coords[r] != 0) acc = acc + vectors_[r].element * ctx_->from_int(coords[r]);
  return acc;
}

std::pair<std::size_t, std::size_t> AdaptedBasis::level_range(std::int64_t level) const {
  std::size_t first = vectors_.size(), last = vectors_.size();
  for (std::size_t r = 0; r < vectors_.size(); ++r) {
    if (vectors_[r].level != level) continue;
    if (first == vectors_.size()) first = r;
    last = r + 1;
  }
  if (first == vectors_.size()) return {0, 0};
  return {first, last};
}

AdaptedBasis adapted_basis(const FieldContext& ctx, SpaceKind space, std::optional<std::int64_t> window) {
  return AdaptedBasis(ctx, space, window);
}

// ------------------------------------------------------------------ unit descent

UnitClassReduction unit_class_reduce(const AdaptedBasis& basis, const LocalElement& x, bool with_certificate) {
  if (basis.space() != SpaceKind::mult) throw DomainError("unit_class_reduce needs a multiplicative basis");
  const FieldContext& ctx = basis.field();
  if (x.field_ptr() != &ctx) throw MalformedInput("element and basis belong to different fields");
  if (x.is_exact_zero()) throw DomainError("zero has no class in K^x/K^xp");
  const auto& k = ctx.residue_field();
  const std::int64_t p = ctx.p();
  const int f = ctx.f();
  const bool charp = ctx.char_p();
  const std::int64_t limit = charp ? *basis.window() : ctx.triviality_threshold();

  UnitClassReduction out;
  out.coords = FpVector(p, basis.dim());
  const std::int64_t v = x.valuation();
  const std::int64_t r = floor_mod(v, p);
  out.coords.set(0, r);
  LocalElement u = x.shifted(-v);
  LocalElement y = ctx.one().shifted((v - r) / p);
  {
    const ResidueElement b = k.pth_root(u.leading_coefficient());
    const LocalElement w = ctx.lift(b);
    u = u * w.pow(p).inv();
    y = y * w;
  }

  const LocalElement one = ctx.one();
  auto step = [&](std::int64_t m, bool record) -> bool {
    const LocalElement d = u - one;
    if (d.is_zero()) return false;
    const std::int64_t vd = d.valuation();
    if (vd > m) return true;
    if (vd < m) throw InternalError("descent left a coefficient below level " + std::to_string(m));
    const ResidueElement a = d.leading_coefficient();
    std::vector<FpVector> cols;
    std::int64_t kill_step = 0;
    if (charp) {
      if (m % p == 0) {
        cols = ctx.kill_map(m).columns;
        kill_step = m / p;
      }
    } else {
      const KillMap& km = ctx.kill_map(m);
      cols = km.columns;
      kill_step = km.step;
    }
    const std::size_t nk = cols.size();
    const auto [first, last] = record ? basis.level_range(m) : std::pair<std::size_t, std::size_t>{0, 0};
    for (std::size_t i = first; i < last; ++i)
      cols.push_back((basis.vectors()[i].element - one).leading_coefficient().coords);
    const auto sol = solve(cols, a.coords);
    if (!sol) throw InternalError("no kill or basis element reaches the coefficient at level " + std::to_string(m));
    const ResidueElement beta = combine_residue(k, *sol, 0, nk);
    if (!beta.is_zero()) {
      const LocalElement F = one + ctx.monomial(beta, kill_step);
      u = u * F.pow(p).inv();
      y = y * F;
      if (record) ++out.kill_steps;
    }
    for (std::size_t i = first; i < last; ++i) {
      const Residue c = (*sol)[nk + (i - first)];
      if (c == 0) continue;
      u = u * basis.vectors()[i].element.pow(c).inv();
      out.coords.set(i, c);
    }
    return true;
  };

  for (std::int64_t m = 1; m <= limit; ++m) {
    if (!step(m, true)) {
      if (u.precision() <= limit)
        throw PrecisionExhausted("precision " + std::to_string(u.precision()) + " cannot decide the class up to level " +
                                 std::to_string(limit));
      break;
    }
  }
  (void)f;

  out.normalized_rep = basis.combine(out.coords);
  if (out.coords.is_zero()) {
    out.status = ClassStatus::trivial;
    out.level_index = limit + 1;
  } else {
    out.status = ClassStatus::nontrivial;
    std::int64_t j = limit + 1;
    for (std::size_t i = 0; i < basis.dim(); ++i)
      if (out.coords[i] != 0) j = std::min(j, basis.vectors()[i].level);
    out.level_index = j;
  }
  if (!charp && ctx.pc()) out.level_delta = *ctx.pc() - out.level_index;

  if (with_certificate && !charp) {
    for (std::int64_t m = limit + 1; m < ctx.max_relative_precision(); ++m)
      if (!step(m, false)) break;
    out.certificate = y;
  }
  return out;
}

UnitClassReduction unit_class_reduce(const LocalElement& u) {
  if (u.field().char_p())
    throw UnsupportedCase("unit_class_reduce without a window is only defined in characteristic 0");
  return unit_class_reduce(AdaptedBasis(u.field(), SpaceKind::mult, std::nullopt), u);
}

// ------------------------------------------------------------------ additive descent

ASClassReduction as_class_reduce(const AdaptedBasis& basis, const LocalElement& x, bool with_certificate) {
  if (basis.space() != SpaceKind::add) throw DomainError("as_class_reduce needs an additive basis");
  const FieldContext& ctx = basis.field();
  if (x.field_ptr() != &ctx) throw MalformedInput("element and basis belong to different fields");
  const auto& k = ctx.residue_field();
  const std::int64_t p = ctx.p();
  const int f = ctx.f();
  const std::int64_t W = *basis.window();

  ASClassReduction out;
  out.coords = FpVector(p, basis.dim());
  LocalElement rest = x;
  LocalElement y = ctx.zero();
  if (x.is_exact_zero()) {
    out.normalized_rep = ctx.zero();
    out.certificate = ctx.zero();
    return out;
  }
  if (x.precision() <= 0) throw PrecisionExhausted("constant term of the Artin-Schreier class is not determined");

  while (!rest.is_zero() && rest.valuation() < 0) {
    const std::int64_t m = -rest.valuation();
    const ResidueElement a = rest.leading_coefficient();
    if (m % p == 0) {
      const LocalElement z = ctx.monomial(k.pth_root(a), -m / p);
      rest = rest - wp(z);
      y = y + z;
      ++out.kill_steps;
      continue;
    }
    if (m > W) throw OutOfWindow("class has pole order " + std::to_string(m) + " beyond the window " + std::to_string(W));
    if (out.level_delta < 0) out.level_delta = m;
    const auto [first, last] = basis.level_range(m);
    for (std::size_t i = first; i < last; ++i) out.coords.set(i, a.coords[i - first]);
    rest = rest - ctx.monomial(a, -m);
  }

  // Constant term: k / wp(k) has dimension 1, detected by the trace.
  const ResidueElement a0 = rest.is_zero() ? k.zero() : rest.digit(0);
  if (!a0.is_zero()) {
    std::vector<FpVector> cols;
    for (int s = 0; s < f; ++s) cols.push_back(k.sub(k.frobenius(k.basis(s)), k.basis(s)).coords);
    cols.push_back(basis.eta()->coords);
    const auto sol = solve(cols, a0.coords);
    if (!sol) throw InternalError("constant term is not reached by wp(k) + F_p eta");
    const ResidueElement beta = combine_residue(k, *sol, 0, static_cast<std::size_t>(f));
    if (!beta.is_zero()) {
      const LocalElement b = ctx.lift(beta);
      rest = rest - wp(b);
      y = y + b;
      ++out.kill_steps;
    }
    const Residue c = (*sol)[static_cast<std::size_t>(f)];
    if (c != 0) {
      out.coords.set(0, c);
      rest = rest - basis.vectors()[0].element * ctx.from_int(c);
      if (out.level_delta < 0) out.level_delta = 0;
    }
  }

  out.status = out.coords.is_zero() ? ClassStatus::trivial : ClassStatus::nontrivial;
  out.normalized_rep = basis.combine(out.coords);
  if (with_certificate) {
    // rest lies in t k[[t]]: rest = wp(-sum rest^{p^i}).
    const std::int64_t target = x.precision();
    LocalElement z = rest;
    while (!z.is_zero() && z.valuation() < target) {
      y = y - z;
      z = z.pow(p);
    }
    out.certificate = y.truncated(target);
  }
  return out;
}

ASClassReduction as_class_reduce(const LocalElement& x) {
  const FieldContext& ctx = x.field();
  if (!ctx.char_p()) throw UnsupportedCase("Artin-Schreier classes need characteristic p");
  const std::int64_t W = x.is_zero() ? 0 : std::max<std::int64_t>(0, -x.valuation());
  return as_class_reduce(AdaptedBasis(ctx, SpaceKind::add, W), x);
}

FpVector coordinates(const AdaptedBasis& basis, const LocalElement& x) {
  if (basis.space() == SpaceKind::mult) return unit_class_reduce(basis, x, false).coords;
  return as_class_reduce(basis, x, false).coords;
}

// ------------------------------------------------------------------ filtration audit

std::vector<FiltrationStep> filtration_dims(const AdaptedBasis& basis, std::int64_t lo, std::int64_t hi,
                                            std::uint64_t seed, int samples) {
  const FieldContext& ctx = basis.field();
  const std::int64_t p = ctx.p();
  const bool mult = basis.space() == SpaceKind::mult;
  Rng rng(seed);
  std::vector<FiltrationStep> out;
  for (std::int64_t i = lo; i <= hi; ++i) {
    if (basis.window()) {
      const std::int64_t reach = mult ? i : -i;
      if (reach > *basis.window()) throw OutOfWindow("filtration index " + std::to_string(i) + " outside the window");
    }
    // Basis vectors sitting exactly at step i.
    std::int64_t level = mult ? i : -i;
    std::int64_t codim = 0;
    if (mult ? i >= 0 : i <= 0) {
      const auto [first, last] = basis.level_range(level);
      codim = static_cast<std::int64_t>(last - first);
    }
    // Cross-check: random elements of U_i (p^i) land in the predicted step
    // and fill the graded piece.
    if (mult ? i >= 1 : true) {
      const FpSubspace step = basis.filtration_step(i);
      const FpSubspace next = basis.filtration_step(i + 1);
      std::vector<FpVector> seen;
      for (int n = 0; n < samples; ++n) {
        const LocalElement z = mult ? random_unit_in(ctx, rng, i) : random_element(ctx, rng, i, 12);
        if (!mult && z.is_zero()) continue;
        const FpVector c = coordinates(basis, z);
        if (!step.contains(c))
          throw InternalError("random element of level " + std::to_string(i) + " has a class outside the predicted step");
        seen.push_back(c);
      }
      for (const auto& v : next.basis()) seen.push_back(v);
      const auto got = static_cast<std::int64_t>(rref(p, basis.dim(), seen).dim() - next.dim());
      if (got != codim)
        throw InternalError("graded piece at " + std::to_string(i) + " has sampled dimension " + std::to_string(got) +
                            " but the basis predicts " + std::to_string(codim));
    }
    out.push_back({i, codim});
  }
  return out;
}

}  // namespace lfk
