#pragma once

#include <cstdint>
#include <random>

#include "lfk/field.hpp"
#include "lfk/local_element.hpp"

namespace lfk {

/// Deterministic source for every randomized check.
using Rng = std::mt19937_64;

ResidueElement random_residue(const FieldContext& ctx, Rng& rng, bool nonzero = false);

/// sum_{n=lo}^{lo+terms-1} d_n pi^n with uniform digits; the leading digit is
/// nonzero when `exact_valuation` holds.
LocalElement random_element(const FieldContext& ctx, Rng& rng, std::int64_t lo, std::int64_t terms,
                            bool exact_valuation = false);

/// 1 + (random element of valuation >= level).
LocalElement random_unit_in(const FieldContext& ctx, Rng& rng, std::int64_t level, std::int64_t terms = 12);

/// Random nonzero element with valuation in [-span, span].
LocalElement random_nonzero(const FieldContext& ctx, Rng& rng, std::int64_t span = 3, std::int64_t terms = 12);

}  // namespace lfk
