#include "lfk/residue_field.hpp"

#include <sstream>

#include "lfk/errors.hpp"

namespace lfk {

namespace {

using Poly = std::vector<Residue>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b.
Poly poly_mod(Poly a, const Poly& b, std::int64_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const Residue lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = fp::sub(a[shift + i], fp::mul(lead, b[i], p), p);
    trim(a);
  }
  return a;
}

}  // namespace

bool ResidueField::is_irreducible(std::int64_t p, const Poly& monic) {
  if (monic.size() < 2 || monic.back() != 1) return false;
  const int f = static_cast<int>(monic.size()) - 1;
  // Trial division by every monic polynomial of degree 1..f/2.
  for (int d = 1; 2 * d <= f; ++d) {
    std::int64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::int64_t n = 0; n < count; ++n) {
      Poly divisor(d + 1, 0);
      std::int64_t m = n;
      for (int i = 0; i < d; ++i, m /= p) divisor[i] = m % p;
      divisor[d] = 1;
      if (poly_mod(monic, divisor, p).empty()) return false;
    }
  }
  return true;
}

std::vector<Residue> ResidueField::default_modulus(std::int64_t p, int f) {
  if (f < 1) throw DomainError("residual degree must be positive");
  if (f == 1) return {0, 1};
  std::int64_t count = 1;
  for (int i = 0; i < f; ++i) count *= p;
  // Lexicographic order on (c0, ..., c_{f-1}) means c0 is the most significant digit.
  for (std::int64_t n = 0; n < count; ++n) {
    Poly candidate(f + 1, 0);
    std::int64_t m = n;
    for (int i = f - 1; i >= 0; --i, m /= p) candidate[i] = m % p;
    candidate[f] = 1;
    if (is_irreducible(p, candidate)) return candidate;
  }
  throw InternalError("no irreducible polynomial found");
}

ResidueField::ResidueField(std::int64_t p, std::vector<Residue> modulus) : p_(p), modulus_(std::move(modulus)) {
  for (auto& c : modulus_) c = fp::reduce(c, p_);
  if (modulus_.size() < 2 || modulus_.back() != 1) throw DomainError("residue polynomial must be monic of degree >= 1");
  if (!is_irreducible(p_, modulus_)) throw DomainError("residue polynomial is reducible over F_" + std::to_string(p));
  f_ = static_cast<int>(modulus_.size()) - 1;
  q_ = 1;
  for (int i = 0; i < f_; ++i) q_ *= p_;
}

ResidueElement ResidueField::zero() const { return {FpVector(p_, f_)}; }
ResidueElement ResidueField::one() const { return from_int(1); }
ResidueElement ResidueField::from_int(std::int64_t a) const {
  ResidueElement r = zero();
  r.coords.set(0, a);
  return r;
}
ResidueElement ResidueField::basis(int s) const { return {FpVector::unit(p_, f_, s)}; }

ResidueElement ResidueField::from_coords(std::vector<Residue> c) const {
  if (static_cast<int>(c.size()) != f_) throw MalformedInput("residue element needs exactly f coordinates");
  return {FpVector(p_, std::move(c))};
}

ResidueElement ResidueField::element(std::int64_t n) const {
  ResidueElement r = zero();
  for (int i = 0; i < f_; ++i, n /= p_) r.coords.set(i, n % p_);
  return r;
}

ResidueElement ResidueField::add(const ResidueElement& a, const ResidueElement& b) const { return {a.coords + b.coords}; }
ResidueElement ResidueField::sub(const ResidueElement& a, const ResidueElement& b) const { return {a.coords - b.coords}; }
ResidueElement ResidueField::neg(const ResidueElement& a) const { return {a.coords.scaled(p_ - 1)}; }
ResidueElement ResidueField::scale(const ResidueElement& a, Residue s) const { return {a.coords.scaled(s)}; }

ResidueElement ResidueField::mul(const ResidueElement& a, const ResidueElement& b) const {
  Poly prod(2 * f_ - 1, 0);
  for (int i = 0; i < f_; ++i) {
    if (a.coords[i] == 0) continue;
    for (int j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + a.coords[i] * b.coords[j]) % p_;
  }
  Poly r = poly_mod(std::move(prod), modulus_, p_);
  r.resize(f_, 0);
  return {FpVector(p_, std::move(r))};
}

ResidueElement ResidueField::pow(ResidueElement a, std::int64_t n) const {
  if (n < 0) {
    a = inv(a);
    n = -n;
  }
  ResidueElement acc = one();
  while (n > 0) {
    if (n & 1) acc = mul(acc, a);
    a = mul(a, a);
    n >>= 1;
  }
  return acc;
}

ResidueElement ResidueField::inv(const ResidueElement& a) const {
  if (a.is_zero()) throw DomainError("inverse of zero in the residue field");
  return pow(a, q_ - 2);
}

ResidueElement ResidueField::pth_root(const ResidueElement& a) const {
  ResidueElement r = a;
  for (int i = 1; i < f_; ++i) r = frobenius(r);
  return r;
}

Residue ResidueField::trace(const ResidueElement& a) const {
  ResidueElement acc = a;
  ResidueElement conj = a;
  for (int i = 1; i < f_; ++i) {
    conj = frobenius(conj);
    acc = add(acc, conj);
  }
  for (int i = 1; i < f_; ++i)
    if (acc.coords[i] != 0) throw InternalError("trace left the prime field");
  return acc.coords[0];
}

std::string ResidueField::to_string(const ResidueElement& a) const {
  if (f_ == 1) return std::to_string(a.coords[0]);
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < f_; ++i) {
    const Residue c = a.coords[i];
    if (c == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << '*';
    os << 'g';
    if (i > 1) os << '^' << i;
  }
  if (first) return "0";
  return os.str();
}

}  // namespace lfk
