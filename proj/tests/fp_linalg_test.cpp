#include <random>
#include <set>

#include "doctest.h"
#include "lfk/errors.hpp"
#include "lfk/fp_linalg.hpp"

using namespace lfk;

namespace {

// Oracle: enumerate every F_p-combination of the rows.
std::set<std::vector<Residue>> brute_span(std::int64_t p, std::size_t dim, const std::vector<FpVector>& rows) {
  std::set<std::vector<Residue>> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < rows.size(); ++i) total *= static_cast<std::size_t>(p);
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<Residue> v(dim, 0);
    std::size_t c = code;
    for (const auto& r : rows) {
      const Residue a = static_cast<Residue>(c % p);
      c /= p;
      for (std::size_t j = 0; j < dim; ++j) v[j] = (v[j] + a * r[j]) % p;
    }
    out.insert(v);
  }
  return out;
}

FpVector random_vector(std::mt19937_64& rng, std::int64_t p, std::size_t dim) {
  FpVector v(p, dim);
  for (std::size_t j = 0; j < dim; ++j) v.set(j, static_cast<std::int64_t>(rng() % p));
  return v;
}

}  // namespace

TEST_CASE("rref matches brute-force span enumeration") {
  std::mt19937_64 rng(7);
  for (std::int64_t p : {2, 3, 5}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t dim = 1 + rng() % 4;
      const std::size_t nrows = rng() % 4;
      std::vector<FpVector> rows;
      for (std::size_t i = 0; i < nrows; ++i) rows.push_back(random_vector(rng, p, dim));
      const FpSubspace s = rref(p, dim, rows);
      const auto span = brute_span(p, dim, rows);
      const auto basis_span = brute_span(p, dim, s.basis());
      CHECK(span == basis_span);
      std::size_t expect = 1;
      for (std::size_t i = 0; i < s.dim(); ++i) expect *= static_cast<std::size_t>(p);
      CHECK(span.size() == expect);
      // canonical: permuting rows gives the identical basis
      std::vector<FpVector> rev(rows.rbegin(), rows.rend());
      CHECK(rref(p, dim, rev) == s);
    }
  }
}

TEST_CASE("intersection and sum agree with enumeration") {
  std::mt19937_64 rng(11);
  for (std::int64_t p : {2, 3}) {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t dim = 2 + rng() % 3;
      std::vector<FpVector> ra, rb;
      for (std::size_t i = 0; i < 2; ++i) ra.push_back(random_vector(rng, p, dim));
      for (std::size_t i = 0; i < 2; ++i) rb.push_back(random_vector(rng, p, dim));
      const FpSubspace a = rref(p, dim, ra), b = rref(p, dim, rb);
      const auto sa = brute_span(p, dim, ra), sb = brute_span(p, dim, rb);
      std::set<std::vector<Residue>> both;
      for (const auto& v : sa)
        if (sb.count(v)) both.insert(v);
      CHECK(brute_span(p, dim, intersect(a, b).basis()) == both);
      CHECK(sum(a, b).dim() + intersect(a, b).dim() == a.dim() + b.dim());
    }
  }
}

TEST_CASE("solve, null space and left kernel") {
  const std::int64_t p = 3;
  std::vector<FpVector> cols = {FpVector(p, {1, 0, 1}), FpVector(p, {0, 1, 1}), FpVector(p, {1, 1, 2})};
  const auto x = solve(cols, FpVector(p, {2, 1, 0}));
  REQUIRE(x.has_value());
  FpVector check(p, 3);
  for (std::size_t j = 0; j < cols.size(); ++j) check += cols[j].scaled((*x)[j]);
  CHECK(check == FpVector(p, {2, 1, 0}));
  CHECK_FALSE(solve(cols, FpVector(p, {1, 1, 1})).has_value());
  CHECK(null_space(p, cols).dim() == 1);

  std::vector<FpVector> table = {FpVector(p, {1, 0}), FpVector(p, {0, 1}), FpVector(p, {1, 1})};
  const FpSubspace k = left_kernel(table, FpSubspace::full(p, 3));
  CHECK(k.dim() == 1);
  CHECK(k.contains(FpVector(p, {1, 1, 2})));
}

TEST_CASE("mixed moduli are rejected") {
  std::vector<FpVector> rows = {FpVector(2, {1, 0}), FpVector(3, {1, 0})};
  CHECK_THROWS_AS(rref(rows), MalformedInput);
}
