#include "lfk/fp_linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "lfk/errors.hpp"

namespace lfk {

namespace fp {
Residue inv(Residue a, std::int64_t p) {
  a = reduce(a, p);
  if (a == 0) throw DomainError("inverse of zero in F_" + std::to_string(p));
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return reduce(t, p);
}
}  // namespace fp

FpVector::FpVector(std::int64_t p, std::size_t dim) : p_(p), coords_(dim, 0) {}

FpVector::FpVector(std::int64_t p, std::vector<Residue> coords) : p_(p), coords_(std::move(coords)) {
  for (auto& c : coords_) c = fp::reduce(c, p_);
}

FpVector FpVector::unit(std::int64_t p, std::size_t dim, std::size_t index) {
  FpVector v(p, dim);
  v.coords_.at(index) = 1;
  return v;
}

bool FpVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](Residue c) { return c == 0; });
}

std::size_t FpVector::leading_index() const {
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i] != 0) return i;
  return coords_.size();
}

static void check_compatible(const FpVector& a, const FpVector& b) {
  if (a.modulus() != b.modulus() || a.size() != b.size())
    throw MalformedInput("F_p vectors with mismatched modulus or length");
}

FpVector& FpVector::operator+=(const FpVector& other) {
  check_compatible(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = fp::add(coords_[i], other.coords_[i], p_);
  return *this;
}

FpVector& FpVector::operator-=(const FpVector& other) {
  check_compatible(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = fp::sub(coords_[i], other.coords_[i], p_);
  return *this;
}

FpVector FpVector::scaled(Residue s) const {
  FpVector out = *this;
  s = fp::reduce(s, p_);
  for (auto& c : out.coords_) c = fp::mul(c, s, p_);
  return out;
}

Residue FpVector::dot(const FpVector& other) const {
  check_compatible(*this, other);
  Residue acc = 0;
  for (std::size_t i = 0; i < coords_.size(); ++i) acc = (acc + coords_[i] * other.coords_[i]) % p_;
  return acc;
}

std::ostream& operator<<(std::ostream& os, const FpVector& v) {
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os << ')';
}

FpSubspace::FpSubspace(std::int64_t p, std::size_t ambient_dim) : p_(p), ambient_dim_(ambient_dim) {}

FpSubspace FpSubspace::full(std::int64_t p, std::size_t ambient_dim) {
  std::vector<FpVector> rows;
  for (std::size_t i = 0; i < ambient_dim; ++i) rows.push_back(FpVector::unit(p, ambient_dim, i));
  return rref(p, ambient_dim, rows);
}

FpSubspace FpSubspace::coordinate(std::int64_t p, std::size_t ambient_dim,
                                  std::span<const std::size_t> indices) {
  std::vector<FpVector> rows;
  for (auto i : indices) rows.push_back(FpVector::unit(p, ambient_dim, i));
  return rref(p, ambient_dim, rows);
}

// Reduce v against the echelon basis; the remainder is zero iff v is in the span.
static FpVector reduce_against(const std::vector<FpVector>& basis, const std::vector<std::size_t>& pivots,
                               FpVector v, FpVector* coefficients) {
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const Residue c = v[pivots[r]];
    if (c == 0) continue;
    v -= basis[r].scaled(c);
    if (coefficients) coefficients->set(r, c);
  }
  return v;
}

bool FpSubspace::contains(const FpVector& v) const {
  if (v.modulus() != p_ || v.size() != ambient_dim_)
    throw MalformedInput("membership test with mismatched modulus or dimension");
  return reduce_against(basis_, pivots_, v, nullptr).is_zero();
}

bool FpSubspace::contains(const FpSubspace& other) const {
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const FpVector& v) { return contains(v); });
}

std::optional<FpVector> FpSubspace::express(const FpVector& v) const {
  FpVector coefficients(p_, basis_.size());
  if (!reduce_against(basis_, pivots_, v, &coefficients).is_zero()) return std::nullopt;
  return coefficients;
}

std::ostream& operator<<(std::ostream& os, const FpSubspace& s) {
  os << '<';
  for (std::size_t i = 0; i < s.basis().size(); ++i) os << (i ? " " : "") << s.basis()[i];
  return os << '>';
}

FpSubspace rref(std::int64_t p, std::size_t ambient_dim, std::span<const FpVector> rows) {
  std::vector<FpVector> m(rows.begin(), rows.end());
  for (const auto& r : m)
    if (r.modulus() != p || r.size() != ambient_dim)
      throw MalformedInput("rref: rows with mixed modulus or length");

  FpSubspace out(p, ambient_dim);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ambient_dim && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[rank], m[pivot]);
    m[rank] = m[rank].scaled(fp::inv(m[rank][col], p));
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != rank && m[r][col] != 0) m[r] -= m[rank].scaled(m[r][col]);
    out.pivots_.push_back(col);
    ++rank;
  }
  m.resize(rank);
  out.basis_ = std::move(m);
  return out;
}

FpSubspace rref(std::span<const FpVector> rows) {
  if (rows.empty()) throw MalformedInput("rref: cannot infer modulus and dimension from no rows");
  return rref(rows.front().modulus(), rows.front().size(), rows);
}

bool member(const FpSubspace& space, const FpVector& v) { return space.contains(v); }

static void check_compatible(const FpSubspace& a, const FpSubspace& b) {
  if (a.modulus() != b.modulus() || a.ambient_dim() != b.ambient_dim())
    throw MalformedInput("subspaces with mismatched modulus or ambient dimension");
}

FpSubspace sum(const FpSubspace& a, const FpSubspace& b) {
  check_compatible(a, b);
  std::vector<FpVector> rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  return rref(a.modulus(), a.ambient_dim(), rows);
}

FpSubspace intersect(const FpSubspace& a, const FpSubspace& b) {
  check_compatible(a, b);
  const auto p = a.modulus();
  // x in a ∩ b  <=>  x = sum s_i a_i = sum t_j b_j; solve for (s, t).
  std::vector<FpVector> columns;
  for (const auto& v : a.basis()) columns.push_back(v);
  for (const auto& v : b.basis()) columns.push_back(v.scaled(p - 1));
  if (columns.empty()) return FpSubspace(p, a.ambient_dim());
  const FpSubspace kernel = null_space(p, columns);
  std::vector<FpVector> rows;
  for (const auto& k : kernel.basis()) {
    FpVector x(p, a.ambient_dim());
    for (std::size_t i = 0; i < a.dim(); ++i) x += a.basis()[i].scaled(k[i]);
    rows.push_back(std::move(x));
  }
  return rref(p, a.ambient_dim(), rows);
}

FpSubspace left_kernel(std::span<const FpVector> table, const FpSubspace& restrict_to) {
  const auto p = restrict_to.modulus();
  if (table.size() != restrict_to.ambient_dim())
    throw MalformedInput("left_kernel: table has " + std::to_string(table.size()) + " rows, ambient dimension is " +
                         std::to_string(restrict_to.ambient_dim()));
  const std::size_t ncols = table.empty() ? 0 : table.front().size();
  for (const auto& row : table)
    if (row.size() != ncols || row.modulus() != p) throw MalformedInput("left_kernel: ragged pairing table");
  if (restrict_to.dim() == 0) return restrict_to;

  // Image of each restrict_to basis vector under v -> v * table.
  std::vector<FpVector> images;
  for (const auto& v : restrict_to.basis()) {
    FpVector img(p, ncols);
    for (std::size_t r = 0; r < table.size(); ++r)
      if (v[r] != 0) img += table[r].scaled(v[r]);
    images.push_back(std::move(img));
  }
  if (ncols == 0) return restrict_to;
  const FpSubspace kernel = null_space(p, images);
  std::vector<FpVector> rows;
  for (const auto& k : kernel.basis()) {
    FpVector x(p, restrict_to.ambient_dim());
    for (std::size_t i = 0; i < restrict_to.dim(); ++i) x += restrict_to.basis()[i].scaled(k[i]);
    rows.push_back(std::move(x));
  }
  return rref(p, restrict_to.ambient_dim(), rows);
}

// Gaussian elimination on the augmented system [columns | rhs].
std::optional<FpVector> solve(std::span<const FpVector> columns, const FpVector& rhs) {
  const auto p = rhs.modulus();
  const std::size_t n = rhs.size();
  const std::size_t k = columns.size();
  for (const auto& c : columns)
    if (c.size() != n || c.modulus() != p) throw MalformedInput("solve: column shape mismatch");
  std::vector<FpVector> rows;
  for (std::size_t i = 0; i < n; ++i) {
    FpVector row(p, k + 1);
    for (std::size_t j = 0; j < k; ++j) row.set(j, columns[j][i]);
    row.set(k, rhs[i]);
    rows.push_back(std::move(row));
  }
  const FpSubspace reduced = rref(p, k + 1, rows);
  FpVector x(p, k);
  for (std::size_t r = 0; r < reduced.dim(); ++r) {
    const auto pc = reduced.pivots()[r];
    if (pc == k) return std::nullopt;
    x.set(pc, reduced.basis()[r][k]);
  }
  return x;
}

FpSubspace null_space(std::int64_t p, std::span<const FpVector> columns) {
  const std::size_t k = columns.size();
  if (k == 0) return FpSubspace(p, 0);
  const std::size_t n = columns.front().size();
  std::vector<FpVector> rows;
  for (std::size_t i = 0; i < n; ++i) {
    FpVector row(p, k);
    for (std::size_t j = 0; j < k; ++j) {
      if (columns[j].size() != n || columns[j].modulus() != p)
        throw MalformedInput("null_space: column shape mismatch");
      row.set(j, columns[j][i]);
    }
    rows.push_back(std::move(row));
  }
  const FpSubspace reduced = rref(p, k, rows);
  std::vector<bool> is_pivot(k, false);
  for (auto pc : reduced.pivots()) is_pivot[pc] = true;
  std::vector<FpVector> kernel;
  for (std::size_t free = 0; free < k; ++free) {
    if (is_pivot[free]) continue;
    FpVector x(p, k);
    x.set(free, 1);
    for (std::size_t r = 0; r < reduced.dim(); ++r) x.set(reduced.pivots()[r], p - reduced.basis()[r][free]);
    kernel.push_back(std::move(x));
  }
  return rref(p, k, kernel);
}

}  // namespace lfk
