#include <map>

#include "doctest.h"
#include "oracles.hpp"
#include "lfk/class_spaces.hpp"
#include "lfk/errors.hpp"
#include "lfk/sampling.hpp"

using namespace lfk;
using namespace lfk::oracle;

TEST_CASE("Q2 unit descent examples") {
  auto K = make_field("Qp p=2 f=1");
  const auto r17 = unit_class_reduce(K->from_int(17));
  CHECK(r17.status == ClassStatus::trivial);
  REQUIRE(r17.certificate.has_value());
  CHECK((r17.certificate->pow(2) * r17.normalized_rep - K->from_int(17)).is_zero());

  const auto r5 = unit_class_reduce(K->from_int(5));
  CHECK(r5.status == ClassStatus::nontrivial);
  CHECK(r5.level_index == 2);
  CHECK_FALSE(is_square_mod_64(5));

  const auto rm1 = unit_class_reduce(K->from_int(-1));
  CHECK(rm1.status == ClassStatus::nontrivial);
  CHECK(rm1.level_index == 1);
  CHECK(rm1.level_delta == 1);

  const auto r12 = unit_class_reduce(K->from_int(12));
  CHECK(r12.level_index == 1);  // 12 = 4 * 3, class of 3 = -1 * 5 * square
  CHECK((r12.certificate->pow(2) * r12.normalized_rep - K->from_int(12)).is_zero());
}

TEST_CASE("adapted bases") {
  auto Q2 = make_field("Qp p=2 f=1");
  const auto B = adapted_basis(*Q2, SpaceKind::mult);
  REQUIRE(B.dim() == 3);
  CHECK(B.vectors()[0].element.same_as(Q2->from_int(2)));
  CHECK(B.vectors()[1].element.same_as(Q2->from_int(-1)));
  CHECK(B.vectors()[2].element.same_as(Q2->from_int(5)));
  CHECK(B.vectors()[1].level == 1);
  CHECK(B.vectors()[2].level == 2);

  auto Q3z = make_field("Qp p=3 f=1 eis=3,3,1");
  CHECK(adapted_basis(*Q3z, SpaceKind::mult).dim() == 4);

  auto F2 = make_field("Fq((t)) p=2 f=1");
  const auto A = adapted_basis(*F2, SpaceKind::add, 5);
  REQUIRE(A.dim() == 4);
  CHECK(A.vectors()[0].element.same_as(F2->one()));
  CHECK(A.vectors()[1].element.same_as(parse_element(*F2, "t^-1")));
  CHECK(A.vectors()[2].element.same_as(parse_element(*F2, "t^-3")));
  CHECK(A.vectors()[3].element.same_as(parse_element(*F2, "t^-5")));

  // independence: every nonzero combination is a nontrivial class
  for (std::int64_t code = 1; code < 16; ++code) {
    FpVector c(2, 4);
    for (int i = 0; i < 4; ++i) c.set(i, (code >> i) & 1);
    CHECK(as_class_reduce(A, A.combine(c)).status == ClassStatus::nontrivial);
  }
  for (std::int64_t code = 1; code < 8; ++code) {
    FpVector c(2, 3);
    for (int i = 0; i < 3; ++i) c.set(i, (code >> i) & 1);
    CHECK(unit_class_reduce(B, B.combine(c)).status == ClassStatus::nontrivial);
  }
}

TEST_CASE("coordinates") {
  auto Q2 = make_field("Qp p=2 f=1");
  const auto B = adapted_basis(*Q2, SpaceKind::mult);
  CHECK(coordinates(B, Q2->from_int(45)) == FpVector(2, {0, 0, 1}));
  CHECK(coordinates(B, Q2->one()).is_zero());
  CHECK(coordinates(B, Q2->from_int(-2)) == FpVector(2, {1, 1, 0}));

  auto F2 = make_field("Fq((t)) p=2 f=1");
  const auto A = adapted_basis(*F2, SpaceKind::add, 5);
  CHECK(coordinates(A, parse_element(*F2, "t^-2")) == FpVector(2, {0, 1, 0, 0}));
  CHECK_THROWS_AS(coordinates(A, parse_element(*F2, "t^-7")), OutOfWindow);
}

TEST_CASE("Artin-Schreier descent examples") {
  auto F2 = make_field("Fq((t)) p=2 f=1");
  const auto r = as_class_reduce(parse_element(*F2, "t^-2"));
  CHECK(r.status == ClassStatus::nontrivial);
  CHECK(r.level_delta == 1);
  CHECK((wp(*r.certificate) + r.normalized_rep - parse_element(*F2, "t^-2")).is_zero());
  CHECK(as_class_reduce(F2->uniformizer()).status == ClassStatus::trivial);
  const auto r1 = as_class_reduce(F2->one());
  CHECK(r1.status == ClassStatus::nontrivial);
  CHECK(r1.level_delta == 0);

  auto F4 = make_field("Fq((t)) p=2 f=2");
  const auto g = parse_element(*F4, "g");
  // S(1) = 0 in F4, so 1 is in wp(k)
  CHECK(as_class_reduce(F4->one()).status == ClassStatus::trivial);
  CHECK(as_class_reduce(g).status == ClassStatus::nontrivial);
}

TEST_CASE("filtration dims") {
  auto Q2 = make_field("Qp p=2 f=1");
  const auto d2 = filtration_dims(adapted_basis(*Q2, SpaceKind::mult), 1, 3);
  CHECK(d2[0].codim == 1);
  CHECK(d2[1].codim == 1);
  CHECK(d2[2].codim == 0);

  auto Q3z = make_field("Qp p=3 f=1 eis=3,3,1");
  const auto d3 = filtration_dims(adapted_basis(*Q3z, SpaceKind::mult), 1, 4);
  std::vector<std::int64_t> got;
  for (const auto& s : d3) got.push_back(s.codim);
  CHECK(got == std::vector<std::int64_t>{1, 1, 1, 0});

  auto F2 = make_field("Fq((t)) p=2 f=1");
  const auto da = filtration_dims(adapted_basis(*F2, SpaceKind::add, 5), -4, 0);
  got.clear();
  for (const auto& s : da) got.push_back(s.codim);
  CHECK(got == std::vector<std::int64_t>{0, 1, 0, 1, 1});
}

TEST_CASE("descent agrees with the Hensel oracle") {
  for (const char* desc : {"Qp p=2 f=1", "Qp p=2 f=2", "Qp p=3 f=1 eis=3,3,1"}) {
    auto K = make_field(desc);
    const auto B = adapted_basis(*K, SpaceKind::mult);
    Rng rng(2024);
    int trivial = 0;
    for (int n = 0; n < 60; ++n) {
      LocalElement x = random_nonzero(*K, rng, 3, 12);
      if (n % 3 == 0) x = x.pow(K->p());  // make sure both outcomes occur
      const auto red = unit_class_reduce(B, x);
      CHECK((red.status == ClassStatus::trivial) == hensel_is_pth_power(*K, x));
      trivial += red.status == ClassStatus::trivial;
      REQUIRE(red.certificate.has_value());
      CHECK((red.certificate->pow(K->p()) * red.normalized_rep - x).is_zero());
    }
    CHECK(trivial >= 20);
  }
}

TEST_CASE("linearity of coordinates") {
  auto K = make_field("Qp p=3 f=1 eis=3,3,1");
  const auto B = adapted_basis(*K, SpaceKind::mult);
  Rng rng(5);
  for (int n = 0; n < 20; ++n) {
    const auto x = random_nonzero(*K, rng), y = random_nonzero(*K, rng);
    CHECK(coordinates(B, x * y) == coordinates(B, x) + coordinates(B, y));
  }
}

TEST_CASE("AS descent agrees with naive wp subtraction") {
  for (std::int64_t p : {2, 3}) {
    auto K = make_field("Fq((t)) p=" + std::to_string(p) + " f=1");
    Rng rng(77 + p);
    for (int n = 0; n < 50; ++n) {
      std::map<std::int64_t, std::int64_t> coeff;
      LocalElement x = K->zero();
      for (std::int64_t e = -12; e <= 3; ++e) {
        const std::int64_t a = static_cast<std::int64_t>(rng() % p);
        if (a == 0 || rng() % 2) continue;
        coeff[e] = a;
        x = x + K->monomial(K->residue_field().from_int(a), e);
      }
      const auto red = as_class_reduce(x);
      CHECK(red.level_delta == naive_as_level(p, coeff));
    }
  }
}
