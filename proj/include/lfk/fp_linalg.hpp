#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace lfk {

using Residue = std::int64_t;

/// Arithmetic helpers on canonical residues in [0, p).
namespace fp {
inline Residue reduce(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}
inline Residue add(Residue a, Residue b, std::int64_t p) { return (a + b) % p; }
inline Residue sub(Residue a, Residue b, std::int64_t p) { return (a - b + p) % p; }
inline Residue mul(Residue a, Residue b, std::int64_t p) { return (a * b) % p; }
Residue inv(Residue a, std::int64_t p);
}  // namespace fp

/// A vector over F_p with coordinates stored as canonical residues.
class FpVector {
 public:
  FpVector() = default;
  FpVector(std::int64_t p, std::size_t dim);
  FpVector(std::int64_t p, std::vector<Residue> coords);

  static FpVector unit(std::int64_t p, std::size_t dim, std::size_t index);

  std::int64_t modulus() const { return p_; }
  std::size_t size() const { return coords_.size(); }
  Residue operator[](std::size_t i) const { return coords_[i]; }
  void set(std::size_t i, std::int64_t value) { coords_[i] = fp::reduce(value, p_); }
  std::span<const Residue> coords() const { return coords_; }

  bool is_zero() const;
  /// Index of the first nonzero coordinate, or size() for the zero vector.
  std::size_t leading_index() const;

  FpVector& operator+=(const FpVector& other);
  FpVector& operator-=(const FpVector& other);
  FpVector scaled(Residue s) const;
  friend FpVector operator+(FpVector a, const FpVector& b) { return a += b; }
  friend FpVector operator-(FpVector a, const FpVector& b) { return a -= b; }
  friend bool operator==(const FpVector&, const FpVector&) = default;

  Residue dot(const FpVector& other) const;

 private:
  std::int64_t p_ = 2;
  std::vector<Residue> coords_;
};

std::ostream& operator<<(std::ostream& os, const FpVector& v);

/// Row space of a matrix over F_p, held in reduced row echelon form.
/// Two subspaces are equal iff their basis matrices are equal.
class FpSubspace {
 public:
  FpSubspace(std::int64_t p, std::size_t ambient_dim);

  static FpSubspace full(std::int64_t p, std::size_t ambient_dim);
  /// Span of the given unit vectors.
  static FpSubspace coordinate(std::int64_t p, std::size_t ambient_dim,
                               std::span<const std::size_t> indices);

  std::int64_t modulus() const { return p_; }
  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t codim() const { return ambient_dim_ - basis_.size(); }
  const std::vector<FpVector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const FpVector& v) const;
  bool contains(const FpSubspace& other) const;
  /// Coefficients of v against basis(), if v lies in the span.
  std::optional<FpVector> express(const FpVector& v) const;

  friend bool operator==(const FpSubspace& a, const FpSubspace& b) {
    return a.p_ == b.p_ && a.ambient_dim_ == b.ambient_dim_ && a.basis_ == b.basis_;
  }

 private:
  friend FpSubspace rref(std::int64_t p, std::size_t ambient_dim, std::span<const FpVector> rows);
  std::int64_t p_;
  std::size_t ambient_dim_;
  std::vector<FpVector> basis_;
  std::vector<std::size_t> pivots_;
};

std::ostream& operator<<(std::ostream& os, const FpSubspace& s);

/// Canonical row space. Throws MalformedInput on mixed moduli or lengths.
FpSubspace rref(std::int64_t p, std::size_t ambient_dim, std::span<const FpVector> rows);
FpSubspace rref(std::span<const FpVector> rows);

bool member(const FpSubspace& space, const FpVector& v);
FpSubspace sum(const FpSubspace& a, const FpSubspace& b);
FpSubspace intersect(const FpSubspace& a, const FpSubspace& b);

/// {v in restrict_to : v * table = 0}, where table[r] is the row of pairing
/// values of the r-th ambient basis vector against every column.
FpSubspace left_kernel(std::span<const FpVector> table, const FpSubspace& restrict_to);

/// All x with sum_j x_j * columns[j] = rhs, as one particular solution.
std::optional<FpVector> solve(std::span<const FpVector> columns, const FpVector& rhs);

/// Null space {x : sum_j x_j * columns[j] = 0} inside F_p^{columns.size()}.
FpSubspace null_space(std::int64_t p, std::span<const FpVector> columns);

}  // namespace lfk
