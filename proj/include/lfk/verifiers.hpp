#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lfk/field.hpp"

namespace lfk {

using ordered_json = nlohmann::ordered_json;

struct VerifyOptions {
  /// Char p window: pole orders and unit levels up to this bound.
  std::int64_t window = 9;
  std::uint64_t seed = 1;
  /// Adds runtime_ms to reports (off by default so reports are reproducible).
  bool record_runtime = false;
};

struct VerificationReport {
  std::string claim_id;
  std::string statement;
  std::string field;
  std::optional<std::int64_t> window;
  std::uint64_t seed = 0;
  bool pass = true;
  ordered_json witnesses = ordered_json::array();
  std::optional<ordered_json> counterexample;
  std::optional<double> runtime_ms;

  ordered_json to_json() const;
};

/// Claim ids that apply to this field, in report order.
std::vector<std::string> applicable_claims(const FieldContext& ctx);

/// Runs one claim. Throws DomainError for an unknown id and UnsupportedCase
/// for a claim that does not apply to the field.
VerificationReport verify_claim(const FieldContext& ctx, const std::string& claim_id, const VerifyOptions& opts);

/// Smallest default precision the verifiers accept for this field and claim.
std::int64_t required_precision(const FieldContext& ctx, const std::string& claim_id, const VerifyOptions& opts);

VerificationReport verify_constants(const FieldContext& ctx, const VerifyOptions& opts);
VerificationReport verify_filtration(const FieldContext& ctx, const VerifyOptions& opts);
VerificationReport verify_additive_filtration(const FieldContext& ctx, const VerifyOptions& opts);
VerificationReport verify_breaks(const FieldContext& ctx, const VerifyOptions& opts);
VerificationReport verify_norm_groups(const FieldContext& ctx, const VerifyOptions& opts);
VerificationReport verify_reciprocity(const FieldContext& ctx, const VerifyOptions& opts);
VerificationReport verify_orthogonality_kummer(const FieldContext& ctx, const VerifyOptions& opts);
VerificationReport verify_orthogonality_as(const FieldContext& ctx, const VerifyOptions& opts);

}  // namespace lfk
