#include "adic_ring.hpp"

#include "lfk/errors.hpp"

namespace lfk {

using Mant = FieldContext::AdicRing::Mant;
using Digits = FieldContext::AdicRing::Digits;

Mant FieldContext::AdicRing::lift(const ResidueElement& r) const {
  Mant m = zero_mant();
  for (int s = 0; s < f; ++s) m[s] = static_cast<long>(r.coords[s]);
  return m;
}

ResidueElement FieldContext::AdicRing::residue(const Mant& m) const {
  std::vector<Residue> c(f);
  for (int s = 0; s < f; ++s) {
    mpz_class r = m[s] % p;
    if (r < 0) r += p;
    c[s] = r.get_si();
  }
  return k->from_coords(std::move(c));
}

void FieldContext::AdicRing::reduce_mod_n(Mant& m) const {
  for (auto& c : m) {
    mpz_mod(c.get_mpz_t(), c.get_mpz_t(), modulus().get_mpz_t());
  }
}

void FieldContext::AdicRing::canonicalize(Mant& m, std::int64_t R) const {
  for (std::int64_t j = 0; j < e; ++j) {
    std::int64_t n = R - j <= 0 ? 0 : (R - j + e - 1) / e;
    if (n > M) n = M;
    for (int s = 0; s < f; ++s) {
      auto& c = m[j * f + s];
      if (n == 0)
        c = 0;
      else
        mpz_mod(c.get_mpz_t(), c.get_mpz_t(), ppow[n].get_mpz_t());
    }
  }
}

std::int64_t FieldContext::AdicRing::valuation(const Mant& m, std::int64_t R) const {
  std::int64_t best = R;
  mpz_class tmp;
  const mpz_class pz = p;
  for (std::int64_t j = 0; j < e; ++j) {
    for (int s = 0; s < f; ++s) {
      const auto& c = m[j * f + s];
      if (c == 0) continue;
      const auto vp = static_cast<std::int64_t>(mpz_remove(tmp.get_mpz_t(), c.get_mpz_t(), pz.get_mpz_t()));
      best = std::min(best, e * vp + j);
    }
  }
  return best;
}

Mant FieldContext::AdicRing::add(const Mant& a, const Mant& b) const {
  Mant r(size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
  reduce_mod_n(r);
  return r;
}

Mant FieldContext::AdicRing::sub(const Mant& a, const Mant& b) const {
  Mant r(size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
  reduce_mod_n(r);
  return r;
}

Mant FieldContext::AdicRing::mul(const Mant& a, const Mant& b) const {
  const std::int64_t je = 2 * e - 1;
  const int sf = 2 * f - 1;
  std::vector<mpz_class> prod(static_cast<std::size_t>(je * sf), 0);
  for (std::int64_t j1 = 0; j1 < e; ++j1)
    for (int s1 = 0; s1 < f; ++s1) {
      const auto& x = a[j1 * f + s1];
      if (x == 0) continue;
      for (std::int64_t j2 = 0; j2 < e; ++j2)
        for (int s2 = 0; s2 < f; ++s2) {
          const auto& y = b[j2 * f + s2];
          if (y == 0) continue;
          mpz_addmul(prod[(j1 + j2) * sf + s1 + s2].get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        }
    }
  // Reduce each pi-coefficient modulo the lifted residue polynomial (monic).
  for (std::int64_t j = 0; j < je; ++j) {
    mpz_class* row = &prod[j * sf];
    for (int s = sf - 1; s >= f; --s) {
      if (row[s] == 0) continue;
      const mpz_class lead = row[s];
      for (int i = 0; i <= f; ++i) row[s - f + i] -= lead * gmod[i];
    }
  }
  // Reduce pi-degree with pi^e = -sum a_i pi^i.
  for (std::int64_t j = je - 1; j >= e; --j) {
    for (int s = 0; s < f; ++s) {
      mpz_class lead = prod[j * sf + s];
      if (lead == 0) continue;
      mpz_mod(lead.get_mpz_t(), lead.get_mpz_t(), modulus().get_mpz_t());
      for (std::int64_t i = 0; i < e; ++i)
        if (eis[i] != 0) mpz_submul(prod[(j - e + i) * sf + s].get_mpz_t(), lead.get_mpz_t(), eis[i].get_mpz_t());
      prod[j * sf + s] = 0;
    }
  }
  Mant r(size());
  for (std::int64_t j = 0; j < e; ++j)
    for (int s = 0; s < f; ++s) r[j * f + s] = prod[j * sf + s];
  reduce_mod_n(r);
  return r;
}

Mant FieldContext::AdicRing::times_pi(const Mant& a, std::int64_t k) const {
  Mant cur = a;
  for (std::int64_t step = 0; step < k; ++step) {
    Mant next = zero_mant();
    for (std::int64_t j = 0; j + 1 < e; ++j)
      for (int s = 0; s < f; ++s) next[(j + 1) * f + s] = cur[j * f + s];
    for (int s = 0; s < f; ++s) {
      const auto& top = cur[(e - 1) * f + s];
      if (top == 0) continue;
      for (std::int64_t i = 0; i < e; ++i) next[i * f + s] -= top * eis[i];
    }
    reduce_mod_n(next);
    cur = std::move(next);
  }
  return cur;
}

Mant FieldContext::AdicRing::div_pi(const Mant& a, std::int64_t k, std::int64_t R) const {
  if (k == 0) {
    Mant r = a;
    canonicalize(r, R);
    return r;
  }
  const std::int64_t whole = (k + e - 1) / e;
  Mant t = times_pi(a, whole * e - k);
  canonicalize(t, R + whole * e - k);
  for (auto& c : t) {
    if (!mpz_divisible_p(c.get_mpz_t(), ppow[whole].get_mpz_t()))
      throw InternalError("division by a power of pi that does not divide the mantissa");
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), ppow[whole].get_mpz_t());
  }
  for (std::int64_t i = 0; i < whole; ++i) t = mul(t, eps_inv);
  canonicalize(t, R - k);
  return t;
}

Mant FieldContext::AdicRing::unit_inverse(const Mant& a, std::int64_t R) const {
  const ResidueElement r = residue(a);
  if (r.is_zero()) throw InternalError("unit_inverse of a non-unit");
  Mant x = lift(k->inv(r));
  Mant two = zero_mant();
  two[0] = 2;
  // Newton: x <- x (2 - a x) doubles the number of correct digits.
  for (std::int64_t known = 1; known < R; known *= 2) {
    x = mul(x, sub(two, mul(a, x)));
  }
  canonicalize(x, R);
  return x;
}

Digits FieldContext::AdicRing::series_mul(const Digits& a, const Digits& b, std::int64_t R) const {
  const std::int64_t na = static_cast<std::int64_t>(a.size()) / f;
  const std::int64_t nb = static_cast<std::int64_t>(b.size()) / f;
  Digits out(static_cast<std::size_t>(R * f), 0);
  if (f == 1) {
    // Lazy reduction: p is small, accumulate in 64 bits and reduce periodically.
    std::vector<std::int64_t> acc(static_cast<std::size_t>(R), 0);
    const std::int64_t limit = std::numeric_limits<std::int64_t>::max() / 4;
    const std::int64_t step_max = (p - 1) * (p - 1);
    for (std::int64_t i = 0; i < na && i < R; ++i) {
      const std::int64_t x = a[i];
      if (x == 0) continue;
      const std::int64_t jmax = std::min(nb, R - i);
      for (std::int64_t j = 0; j < jmax; ++j) {
        std::int64_t& slot = acc[i + j];
        slot += x * b[j];
        if (slot > limit - step_max) slot %= p;
      }
    }
    for (std::int64_t i = 0; i < R; ++i) out[i] = acc[i] % p;
    return out;
  }
  const int sf = 2 * f - 1;
  std::vector<std::int64_t> acc(static_cast<std::size_t>(R * sf), 0);
  for (std::int64_t i = 0; i < na && i < R; ++i)
    for (std::int64_t j = 0; j < nb && i + j < R; ++j)
      for (int s1 = 0; s1 < f; ++s1) {
        const std::int64_t x = a[i * f + s1];
        if (x == 0) continue;
        for (int s2 = 0; s2 < f; ++s2) {
          auto& slot = acc[(i + j) * sf + s1 + s2];
          slot = (slot + x * b[j * f + s2]) % p;
        }
      }
  const auto& g = k->modulus();
  for (std::int64_t i = 0; i < R; ++i) {
    std::int64_t* row = &acc[i * sf];
    for (int s = sf - 1; s >= f; --s) {
      const std::int64_t lead = row[s] % p;
      if (lead == 0) continue;
      for (int t = 0; t <= f; ++t) row[s - f + t] = ((row[s - f + t] - lead * g[t]) % p + p) % p;
    }
    for (int s = 0; s < f; ++s) out[i * f + s] = ((row[s] % p) + p) % p;
  }
  return out;
}

Digits FieldContext::AdicRing::series_inverse(const Digits& a, std::int64_t R) const {
  // Solve a * b = 1 digit by digit: b_n = -a_0^{-1} sum_{i>=1} a_i b_{n-i}.
  const std::int64_t na = static_cast<std::int64_t>(a.size()) / f;
  auto digit = [&](const Digits& d, std::int64_t i) {
    std::vector<Residue> c(d.begin() + i * f, d.begin() + (i + 1) * f);
    return k->from_coords(std::move(c));
  };
  const ResidueElement a0inv = k->inv(digit(a, 0));
  Digits b(static_cast<std::size_t>(R * f), 0);
  std::vector<ResidueElement> bd;
  bd.reserve(R);
  for (std::int64_t n = 0; n < R; ++n) {
    ResidueElement acc = n == 0 ? k->one() : k->zero();
    for (std::int64_t i = 1; i <= n && i < na; ++i) acc = k->sub(acc, k->mul(digit(a, i), bd[n - i]));
    ResidueElement bn = k->mul(a0inv, acc);
    for (int s = 0; s < f; ++s) b[n * f + s] = bn.coords[s];
    bd.push_back(std::move(bn));
  }
  return b;
}

}  // namespace lfk
