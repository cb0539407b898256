#include "doctest.h"
#include "lfk/errors.hpp"
#include "lfk/field.hpp"

using namespace lfk;

TEST_CASE("b_p index") {
  CHECK(bp_index(2, 2) == 3);
  CHECK(bp_index(3, 4) == 5);
  CHECK(bp_index(5, 4) == 4);
}

TEST_CASE("Q2 basics") {
  auto K = make_field("Qp p=2 f=1");
  CHECK(K->e() == 1);
  CHECK(K->from_int(12).valuation() == 2);
  const auto nine = K->from_int(3).pow(2);
  CHECK((nine - K->one()).valuation() == 3);
  CHECK(K->mu_p_present());
  CHECK(K->class_space_dim() == 3);
  const auto x = K->from_int(3).inv() * K->from_int(3);
  CHECK(x.same_as(K->one()));
  CHECK(parse_element(*K, "1 + pi^2").same_as(K->from_int(5)));
  CHECK(K->from_int(5).to_string() == "1 + pi^2 + O(pi^64)");
  CHECK(parse_element(*K, K->from_int(-1).to_string()).same_as(K->from_int(-1)));
  CHECK_THROWS_AS(parse_element(*K, "1 + + "), MalformedInput);
  CHECK_THROWS_AS(parse_element(*K, "g"), MalformedInput);
}

TEST_CASE("Q3(zeta3) constants") {
  auto K = make_field("Qp p=3 f=1 eis=3,3,1");
  CHECK(K->e() == 2);
  CHECK(K->c() == 1);
  CHECK(K->pc() == 3);
  CHECK(K->mu_p_present());
  CHECK(K->from_int(3).valuation() == 2);
  const auto z = K->zeta();
  CHECK((z.pow(3) - K->one()).is_zero());
  CHECK((z - K->one()).valuation() == 1);
  CHECK(K->class_space_dim() == 4);
}

TEST_CASE("F2((t)) basics") {
  auto K = make_field("Fq((t)) p=2 f=1");
  const auto t = K->uniformizer();
  const auto a = (K->one() + t).pow(2);
  CHECK(a.same_as(K->one() + t * t));
  CHECK((K->one() + t).inv().digit(5).coords[0] == 1);
  CHECK(parse_element(*K, "t^-3 + 1 + t").valuation() == -3);
}

TEST_CASE("residue extension f=2") {
  auto K = make_field("Qp p=2 f=2");
  const auto g = parse_element(*K, "g");
  const auto r = g.residue();
  CHECK(K->residue_field().mul(r, K->residue_field().mul(r, r)) == K->residue_field().one());
  CHECK((g * g.inv()).same_as(K->one()));
  CHECK(K->teichmuller(r).pow(3).same_as(K->one()));
}
