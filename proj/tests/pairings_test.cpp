#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "lfk/errors.hpp"
#include "lfk/pairings.hpp"
#include "lfk/sampling.hpp"

using namespace lfk;
using namespace lfk::oracle;

TEST_CASE("Q2 norm groups match exhaustive enumeration") {
  auto K = make_field("Qp p=2 f=1");
  PairingContext pc(*K, 9);
  const auto& B = pc.mult_basis();
  for (std::int64_t a : {5, -1, 2, -2, -5, 10, -10}) {
    const Line L = line_of(B, K->from_int(a));
    CHECK(pc.norm_group(L) == q2_norm_oracle(a));
  }
  CHECK(pc.norm_group(line_of(B, K->from_int(5))) == rref(2, 3, std::vector<FpVector>{FpVector(2, {0, 1, 0}), FpVector(2, {0, 0, 1})}));
  CHECK(pc.norm_group(line_of(B, K->from_int(-1))) == rref(2, 3, std::vector<FpVector>{FpVector(2, {1, 0, 0}), FpVector(2, {0, 0, 1})}));
  CHECK(pc.norm_group(line_of(B, K->from_int(2))) == rref(2, 3, std::vector<FpVector>{FpVector(2, {0, 1, 0}), FpVector(2, {1, 0, 0})}));
}

TEST_CASE("Q2 pairing examples and Hilbert symbol") {
  auto K = make_field("Qp p=2 f=1");
  PairingContext pc(*K, 9);
  const Line five = line_of(pc.mult_basis(), K->from_int(5));
  CHECK(pc.pairs_trivially(five, K->from_int(-1)));
  CHECK_FALSE(pc.pairs_trivially(five, K->from_int(2)));
  CHECK(hilbert_symbol_q2(K->from_int(-1), K->from_int(-1)) == -1);
  CHECK(hilbert_symbol_q2(K->from_int(2), K->from_int(5)) == -1);
  Rng rng(3);
  for (int n = 0; n < 30; ++n) {
    const auto a = random_nonzero(*K, rng), b = random_nonzero(*K, rng);
    CHECK(hilbert_symbol_q2(a, -a) == 1);
    CHECK(hilbert_symbol_q2(a, b) == hilbert_symbol_q2(b, a));
    const auto c = random_nonzero(*K, rng);
    CHECK(hilbert_symbol_q2(a, b * c) == hilbert_symbol_q2(a, b) * hilbert_symbol_q2(a, c));
  }
  // symbol vs kernel pairing on every line x every nonzero class, and symmetry
  const auto& lines = pc.lines();
  for (const auto& a : lines)
    for (const auto& b : lines) {
      const bool triv = pc.pairs_trivially(a, b.generator);
      CHECK(triv == (hilbert_symbol_q2(a.generator, b.generator) == 1));
      CHECK(triv == pc.pairs_trivially(b, a.generator));
    }
  CHECK_THROWS_AS(hilbert_symbol_q2(make_field("Qp p=3 f=1")->one(), make_field("Qp p=3 f=1")->one()), UnsupportedCase);
}

TEST_CASE("Schmid formula examples and agreement with norms") {
  auto K = make_field("Fq((t)) p=2 f=1");
  const auto t = K->uniformizer();
  CHECK(schmid_pairing(K->one(), t) == 1);
  CHECK(schmid_pairing(parse_element(*K, "t^-1"), t) == 0);
  CHECK(schmid_pairing(K->zero(), t) == 0);
  CHECK(schmid_pairing(parse_element(*K, "t^-1"), K->one() + t) == 1);

  PairingContext pc(*K, 9);
  const Line one = line_of(pc.line_basis(), K->one());
  CHECK_FALSE(pc.pairs_trivially(one, t));
  Rng rng(17);
  const auto& lines = pc.lines();
  for (int n = 0; n < 60; ++n) {
    const Line& a = lines[rng() % lines.size()];
    const auto b = random_nonzero(*K, rng, 2, 14);
    CHECK_NOTHROW(pc.pairs_trivially(a, b, true));
  }
  // dlog additivity
  for (int n = 0; n < 20; ++n) {
    const auto x = random_element(*K, rng, -6, 10), u = random_nonzero(*K, rng), w = random_nonzero(*K, rng);
    CHECK(schmid_pairing(x, u * w) == (schmid_pairing(x, u) + schmid_pairing(x, w)) % 2);
  }
}

TEST_CASE("Gram matrices") {
  auto K = make_field("Qp p=3 f=1 eis=3,3,1");
  PairingContext pc(*K, 9);
  const auto G = gram_matrix(pc);
  REQUIRE(G.has_value());
  // rank d: the pairing is nondegenerate
  CHECK(rref(*G).dim() == 4);
  // every line's kernel from the Gram matrix equals its norm group
  for (const auto& D : pc.lines()) {
    FpVector col(3, 4);
    for (std::size_t r = 0; r < 4; ++r) col.set(r, (*G)[r].dot(D.coords));
    const FpSubspace& H = pc.norm_group(D);
    for (const auto& h : H.basis()) CHECK(h.dot(col) == 0);
  }
}
