#include "doctest.h"
#include "lfk/errors.hpp"
#include "lfk/verifiers.hpp"

using namespace lfk;

TEST_CASE("claim selection") {
  CHECK(applicable_claims(*make_field("Qp p=2 f=1")).size() == 6);
  CHECK(applicable_claims(*make_field("Qp p=3 f=1")) == std::vector<std::string>{"S1.7", "S2.10"});
  CHECK(applicable_claims(*make_field("Fq((t)) p=2 f=1")).front() == "S2.10");
}

TEST_CASE("report layout") {
  auto K = make_field("Qp p=2 f=1");
  VerifyOptions opts;
  const auto r = verify_claim(*K, "S1.7", opts);
  CHECK(r.pass);
  const auto j = r.to_json();
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"claim_id", "statement", "field", "seed", "status", "witnesses"});
  opts.record_runtime = true;
  CHECK(verify_claim(*K, "S1.7", opts).to_json().contains("runtime_ms"));

  auto F = make_field("Fq((t)) p=2 f=1");
  const auto rf = verify_claim(*F, "S3.16", VerifyOptions{});
  CHECK(rf.to_json()["window"] == 9);
}

TEST_CASE("verifier errors") {
  auto K = make_field("Qp p=2 f=1 prec=4");
  CHECK_THROWS_AS(verify_claim(*K, "S2.10", VerifyOptions{}), PrecisionExhausted);
  auto Q2 = make_field("Qp p=2 f=1");
  CHECK_THROWS_AS(verify_claim(*Q2, "S9.99", VerifyOptions{}), DomainError);
  CHECK_THROWS_AS(verify_claim(*Q2, "S8.34", VerifyOptions{}), UnsupportedCase);
  CHECK_THROWS_AS(verify_claim(*Q2, "S5.28", VerifyOptions{}), UnsupportedCase);
  CHECK_THROWS_AS(verify_claim(*make_field("Qp p=3 f=1"), "S5.27", VerifyOptions{}), UnsupportedCase);
}

TEST_CASE("reports are reproducible") {
  auto K = make_field("Qp p=3 f=1 eis=3,3,1");
  VerifyOptions opts;
  opts.seed = 9;
  for (const auto& id : applicable_claims(*K)) {
    const auto a = verify_claim(*K, id, opts).to_json().dump();
    const auto b = verify_claim(*K, id, opts).to_json().dump();
    CHECK(a == b);
  }
}

TEST_CASE("small windows still pass") {
  auto K = make_field("Fq((t)) p=2 f=1");
  VerifyOptions opts;
  opts.window = 4;
  for (const auto& id : applicable_claims(*K)) CHECK_MESSAGE(verify_claim(*K, id, opts).pass, id);
}
