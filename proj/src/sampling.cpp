#include "lfk/sampling.hpp"

namespace lfk {

ResidueElement random_residue(const FieldContext& ctx, Rng& rng, bool nonzero) {
  const std::int64_t q = ctx.q();
  const std::int64_t lo = nonzero ? 1 : 0;
  std::uniform_int_distribution<std::int64_t> pick(lo, q - 1);
  return ctx.residue_field().element(pick(rng));
}

LocalElement random_element(const FieldContext& ctx, Rng& rng, std::int64_t lo, std::int64_t terms, bool exact_valuation) {
  LocalElement acc = ctx.zero();
  for (std::int64_t n = 0; n < terms; ++n) {
    const ResidueElement d = random_residue(ctx, rng, exact_valuation && n == 0);
    if (!d.is_zero()) acc = acc + ctx.monomial(d, lo + n);
  }
  return acc;
}

LocalElement random_unit_in(const FieldContext& ctx, Rng& rng, std::int64_t level, std::int64_t terms) {
  return ctx.one() + random_element(ctx, rng, level, terms);
}

LocalElement random_nonzero(const FieldContext& ctx, Rng& rng, std::int64_t span, std::int64_t terms) {
  std::uniform_int_distribution<std::int64_t> v(-span, span);
  return random_element(ctx, rng, v(rng), terms, true);
}

}  // namespace lfk
