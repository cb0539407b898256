#include "lfk/extensions.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "lfk/errors.hpp"

namespace lfk {

// ------------------------------------------------------------------ lines

std::string Line::label() const {
  std::ostringstream os;
  os << to_string(space) << '(';
  for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
  os << ')';
  return os.str();
}

Line make_line(const AdaptedBasis& basis, const FpVector& coords) {
  if (coords.size() != basis.dim()) throw MalformedInput("line coordinates do not match the basis dimension");
  const std::size_t lead = coords.leading_index();
  if (lead == coords.size()) throw DomainError("the zero class does not span a line");
  const FieldContext& ctx = basis.field();
  Line line;
  line.space = basis.space();
  line.coords = coords.scaled(fp::inv(coords[lead], ctx.p()));
  line.generator = basis.combine(line.coords);
  if (basis.space() == SpaceKind::add) {
    std::int64_t delta = 0;
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (coords[i] != 0) delta = std::max(delta, basis.vectors()[i].level);
    line.level = delta;
  } else {
    std::int64_t j = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (coords[i] != 0) j = std::min(j, basis.vectors()[i].level);
    // In characteristic p mult lines only index the filtration; keep j.
    line.level = ctx.pc() ? *ctx.pc() - j : j;
  }
  return line;
}

Line line_of(const AdaptedBasis& basis, const LocalElement& x) {
  const FpVector c = coordinates(basis, x);
  if (c.is_zero()) throw DomainError("the class of " + x.to_string() + " is trivial and spans no line");
  return make_line(basis, c);
}

std::vector<Line> line_catalog(const AdaptedBasis& basis) {
  const std::int64_t p = basis.p();
  const std::size_t d = basis.dim();
  std::vector<Line> out;
  // Normalized vectors: leading coordinate 1 at position `lead`, free after it.
  for (std::size_t lead = 0; lead < d; ++lead) {
    const std::size_t free = d - lead - 1;
    std::int64_t count = 1;
    for (std::size_t i = 0; i < free; ++i) count *= p;
    for (std::int64_t code = 0; code < count; ++code) {
      FpVector v(p, d);
      v.set(lead, 1);
      std::int64_t c = code;
      for (std::size_t i = d; i-- > lead + 1;) {
        v.set(i, c % p);
        c /= p;
      }
      out.push_back(make_line(basis, v));
    }
  }
  return out;
}

// ------------------------------------------------------------------ extension

DegreePExtension::DegreePExtension(const FieldContext& base, ExtensionKind kind, Line line)
    : ctx_(&base), kind_(kind), line_(std::move(line)), p_(base.p()) {
  if (line_.coords.is_zero()) throw DomainError("trivial line");
  if (kind == ExtensionKind::kummer) {
    if (base.char_p()) throw UnsupportedCase("Kummer extensions of degree p need characteristic 0");
    if (!base.mu_p_present())
      throw UnsupportedCase("Kummer extension needs mu_p in K; the descent through K(zeta_p) is not supported");
    if (line_.space != SpaceKind::mult) throw DomainError("Kummer extensions are attached to mult lines");
  } else {
    if (!base.char_p()) throw UnsupportedCase("Artin-Schreier extensions need characteristic p");
    if (line_.space != SpaceKind::add) throw DomainError("Artin-Schreier extensions are attached to add lines");
  }
  unramified_ = line_.level == 0;
  if (unramified_) {
    // An unramified line must be Ubar_pc (mult) or the constant class (add).
    bool only_top = true;
    const std::size_t top = line_.space == SpaceKind::mult ? line_.coords.size() - 1 : 0;
    for (std::size_t i = 0; i < line_.coords.size(); ++i) only_top = only_top && (i == top || line_.coords[i] == 0);
    if (!only_top) throw InternalError("level-0 line is not the unramified class");
    uniformizer_ = from_base(base.uniformizer());
    break_ = -1;
  } else {
    uniformizer_ = find_uniformizer();
    break_ = break_with(uniformizer_, 1);
  }
}

std::string DegreePExtension::defining_polynomial() const {
  std::ostringstream os;
  os << "X^" << p_ << (kind_ == ExtensionKind::kummer ? " - (" : " - X - (") << parameter().to_string() << ")";
  return os.str();
}

ExtElement DegreePExtension::from_base(const LocalElement& c) const {
  ExtElement z(static_cast<std::size_t>(p_), ctx_->zero());
  z[0] = c;
  return z;
}

ExtElement DegreePExtension::generator() const {
  ExtElement z(static_cast<std::size_t>(p_), ctx_->zero());
  z[1] = ctx_->one();
  return z;
}

ExtElement DegreePExtension::add(const ExtElement& a, const ExtElement& b) const {
  ExtElement z(a.size(), ctx_->zero());
  for (std::size_t i = 0; i < a.size(); ++i) z[i] = a[i] + b[i];
  return z;
}

ExtElement DegreePExtension::sub(const ExtElement& a, const ExtElement& b) const {
  ExtElement z(a.size(), ctx_->zero());
  for (std::size_t i = 0; i < a.size(); ++i) z[i] = a[i] - b[i];
  return z;
}

ExtElement DegreePExtension::scale(const ExtElement& a, const LocalElement& c) const {
  ExtElement z(a.size(), ctx_->zero());
  for (std::size_t i = 0; i < a.size(); ++i) z[i] = a[i] * c;
  return z;
}

ExtElement DegreePExtension::mul(const ExtElement& a, const ExtElement& b) const {
  const auto p = static_cast<std::size_t>(p_);
  std::vector<LocalElement> c(2 * p - 1, ctx_->zero());
  for (std::size_t i = 0; i < p; ++i) {
    if (a[i].is_exact_zero()) continue;
    for (std::size_t j = 0; j < p; ++j)
      if (!b[j].is_exact_zero()) c[i + j] = c[i + j] + a[i] * b[j];
  }
  for (std::size_t i = 2 * p - 2; i >= p; --i) {
    const LocalElement h = c[i];
    if (h.is_exact_zero()) continue;
    c[i] = ctx_->zero();
    if (kind_ == ExtensionKind::kummer) {
      c[i - p] = c[i - p] + h * parameter();
    } else {
      c[i - p + 1] = c[i - p + 1] + h;
      c[i - p] = c[i - p] + h * parameter();
    }
  }
  c.resize(p);
  return c;
}

ExtElement DegreePExtension::pow(const ExtElement& a, std::int64_t n) const {
  if (n < 0) throw DomainError("negative powers in E are not supported");
  ExtElement acc = from_base(ctx_->one());
  ExtElement base = a;
  while (n > 0) {
    if (n & 1) acc = mul(acc, base);
    n >>= 1;
    if (n) base = mul(base, base);
  }
  return acc;
}

bool DegreePExtension::is_zero(const ExtElement& a) const {
  for (const auto& c : a)
    if (!c.is_zero()) return false;
  return true;
}

std::string DegreePExtension::to_string(const ExtElement& a) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_exact_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << '(' << a[i].to_string() << ')';
    if (i == 1) os << "*X";
    if (i > 1) os << "*X^" << i;
  }
  return first ? "0" : os.str();
}

LocalElement DegreePExtension::norm(const ExtElement& z) const {
  const auto p = static_cast<std::size_t>(p_);
  // Column j of the multiplication matrix is z * X^j.
  std::vector<ExtElement> cols;
  cols.push_back(z);
  for (std::size_t j = 1; j < p; ++j) cols.push_back(mul(cols.back(), generator()));
  // Division-free Laplace expansion along rows, memoized on used columns.
  const std::size_t full = (std::size_t{1} << p) - 1;
  std::vector<std::optional<LocalElement>> memo(full + 1);
  memo[full] = ctx_->one();
  for (std::size_t mask = full; mask-- > 0;) {
    const auto row = static_cast<std::size_t>(__builtin_popcountll(mask));
    LocalElement acc = ctx_->zero();
    std::size_t position = 0;
    for (std::size_t c = 0; c < p; ++c) {
      if (mask & (std::size_t{1} << c)) continue;
      const std::size_t next = mask | (std::size_t{1} << c);
      const LocalElement& entry = cols[c][row];
      if (memo[next] && !entry.is_exact_zero()) {
        const LocalElement term = entry * *memo[next];
        acc = position % 2 == 0 ? acc + term : acc - term;
      }
      ++position;
    }
    memo[mask] = acc;
  }
  return *memo[0];
}

std::int64_t DegreePExtension::valuation(const ExtElement& z) const {
  const LocalElement n = norm(z);
  if (n.is_exact_zero()) throw DomainError("valuation of zero in E");
  const std::int64_t v = n.valuation();
  if (!unramified_) return v;
  if (v % p_ != 0) throw InternalError("norm from an unramified extension has valuation prime to p");
  return v / p_;
}

ExtElement DegreePExtension::galois_apply(const ExtElement& z, std::int64_t s) const {
  s %= p_;
  if (s < 0) s += p_;
  if (kind_ == ExtensionKind::kummer) {
    ExtElement out(z.size(), ctx_->zero());
    const LocalElement zs = ctx_->zeta().pow(s);
    LocalElement w = ctx_->one();
    for (std::size_t i = 0; i < z.size(); ++i) {
      out[i] = z[i].is_exact_zero() ? z[i] : z[i] * w;
      w = w * zs;
    }
    return out;
  }
  // y -> y + s, evaluated by Horner in E.
  ExtElement image = generator();
  image[0] = ctx_->from_int(s);
  ExtElement acc = from_base(ctx_->zero());
  for (std::size_t i = z.size(); i-- > 0;) acc = add(mul(acc, image), from_base(z[i]));
  return acc;
}

ExtElement DegreePExtension::residue_generator() const {
  if (!unramified_) throw DomainError("residue generator is only used for unramified extensions");
  if (kind_ == ExtensionKind::artin_schreier) return generator();
  const ExtElement am1 = sub(generator(), from_base(ctx_->one()));
  return scale(am1, ctx_->one().shifted(-*ctx_->c()));
}

ExtElement DegreePExtension::find_uniformizer() const {
  std::vector<ExtElement> candidates;
  const ExtElement X = generator();
  candidates.push_back(X);
  if (kind_ == ExtensionKind::kummer) {
    LocalElement z = ctx_->one();
    for (std::int64_t i = 0; i < p_; ++i) {
      candidates.push_back(sub(X, from_base(z)));
      z = z * ctx_->zeta();
    }
  } else {
    for (std::int64_t r = 1; r < p_; ++r) candidates.push_back(sub(X, from_base(ctx_->from_int(r))));
  }
  for (const auto& g : candidates) {
    const std::int64_t v = valuation(g);
    const std::int64_t r = ((v % p_) + p_) % p_;
    if (r == 0) continue;
    // pi_E = g^s pi_K^t with s v + p t = 1.
    std::int64_t s = 1;
    while ((s * r) % p_ != 1) ++s;
    const std::int64_t t = (1 - s * v) / p_;
    const ExtElement pe = scale(pow(g, s), ctx_->one().shifted(t));
    if (valuation(pe) != 1) throw InternalError("uniformizer candidate has valuation " + std::to_string(valuation(pe)));
    return pe;
  }
  throw InternalError("no generator-based element of valuation prime to p; precision or irreducibility problem");
}

ExtElement DegreePExtension::alternate_uniformizer(int n) const {
  if (n == 0) return uniformizer_;
  // pi_E * (1 + pi_E^n) for n >= 1.
  const ExtElement one = from_base(ctx_->one());
  return mul(uniformizer_, add(one, pow(uniformizer_, n)));
}

std::int64_t DegreePExtension::break_with(const ExtElement& pi_e, std::int64_t s) const {
  if (unramified_) return -1;
  const ExtElement d = sub(galois_apply(pi_e, s), pi_e);
  return valuation(d) - 1;
}

std::int64_t DegreePExtension::ramification_break(std::int64_t s) const {
  if (s % p_ == 1 || (s % p_ + p_) % p_ == 1) return break_;
  return break_with(uniformizer_, s);
}

DegreePExtension attach_extension(const FieldContext& base, const Line& line) {
  return DegreePExtension(base, line.space == SpaceKind::mult ? ExtensionKind::kummer : ExtensionKind::artin_schreier, line);
}

}  // namespace lfk
