#include "lfk/local_element.hpp"

#include <algorithm>

#include "adic_ring.hpp"
#include "lfk/errors.hpp"
#include "lfk/field.hpp"

namespace lfk {

struct ElementAccess {
  static LocalElement zero_at(const FieldContext* ctx, std::int64_t prec) {
    LocalElement z;
    z.ctx_ = ctx;
    z.prec_ = prec;
    return z;
  }

  // Builds pi^v * m where m is known modulo pi^R but need not be a unit.
  static LocalElement normalize_adic(const FieldContext* ctx, std::int64_t v, std::int64_t R,
                                     FieldContext::AdicRing::Mant m) {
    const auto& a = ctx->adic();
    if (R <= 0) return zero_at(ctx, v + R);
    R = std::min(R, ctx->max_relative_precision());
    a.canonicalize(m, R);
    const std::int64_t w = a.valuation(m, R);
    if (w >= R) return zero_at(ctx, v + R);
    LocalElement x;
    x.ctx_ = ctx;
    x.val_ = v + w;
    x.prec_ = v + R;
    x.adic_ = w == 0 ? std::move(m) : a.div_pi(m, w, R);
    return x;
  }

  static LocalElement normalize_series(const FieldContext* ctx, std::int64_t v, std::int64_t R,
                                       FieldContext::AdicRing::Digits d) {
    const int f = ctx->f();
    if (R <= 0) return zero_at(ctx, v + R);
    d.resize(static_cast<std::size_t>(R * f), 0);
    std::int64_t w = 0;
    while (w < R) {
      bool nz = false;
      for (int s = 0; s < f; ++s) nz = nz || d[w * f + s] != 0;
      if (nz) break;
      ++w;
    }
    if (w >= R) return zero_at(ctx, v + R);
    LocalElement x;
    x.ctx_ = ctx;
    x.val_ = v + w;
    x.prec_ = v + R;
    x.series_.assign(d.begin() + w * f, d.end());
    return x;
  }
};

namespace {

void check_same_field(const LocalElement& x, const LocalElement& y) {
  if (x.field_ptr() != y.field_ptr()) throw MalformedInput("arithmetic between elements of different fields");
}

}  // namespace

std::int64_t LocalElement::valuation() const {
  if (val_ == kInfinity && prec_ != kInfinity)
    throw PrecisionExhausted("valuation of a value that vanishes to the known precision O(pi^" +
                             std::to_string(prec_) + ")");
  return val_;
}

ResidueElement LocalElement::leading_coefficient() const {
  if (is_zero()) throw DomainError("leading coefficient of zero");
  if (ctx_->char_p()) {
    const int f = ctx_->f();
    return ctx_->residue_field().from_coords(std::vector<Residue>(series_.begin(), series_.begin() + f));
  }
  return ctx_->adic().residue(adic_);
}

ResidueElement LocalElement::digit(std::int64_t n) const {
  const auto& k = ctx_->residue_field();
  if (n >= prec_) throw PrecisionExhausted("digit " + std::to_string(n) + " beyond precision " + std::to_string(prec_));
  if (is_zero() || n < val_) return k.zero();
  if (ctx_->char_p()) {
    const int f = ctx_->f();
    const auto off = static_cast<std::size_t>((n - val_) * f);
    return k.from_coords(std::vector<Residue>(series_.begin() + off, series_.begin() + off + f));
  }
  LocalElement rest = *this;
  for (std::int64_t i = val_; i <= n; ++i) {
    if (rest.is_zero() || rest.val_ > i) {
      if (i == n) return k.zero();
      continue;
    }
    const ResidueElement d = rest.leading_coefficient();
    if (i == n) return d;
    rest = rest - ctx_->monomial(d, i, rest.prec_ - i);
  }
  return k.zero();
}

LocalElement LocalElement::operator-() const {
  if (is_zero()) return *this;
  LocalElement r = *this;
  if (ctx_->char_p()) {
    const auto p = ctx_->p();
    for (auto& c : r.series_) c = c == 0 ? 0 : p - c;
  } else {
    const auto& a = ctx_->adic();
    for (auto& c : r.adic_) c = -c;
    a.reduce_mod_n(r.adic_);
    a.canonicalize(r.adic_, prec_ - val_);
  }
  return r;
}

LocalElement operator+(const LocalElement& x, const LocalElement& y) {
  if (x.is_exact_zero()) return y;
  if (y.is_exact_zero()) return x;
  check_same_field(x, y);
  const FieldContext* ctx = x.ctx_;
  const std::int64_t P = std::min(x.prec_, y.prec_);
  if (x.is_zero() && y.is_zero()) return ElementAccess::zero_at(ctx, P);
  if (x.is_zero()) return y.truncated(P);
  if (y.is_zero()) return x.truncated(P);
  const std::int64_t v = std::min(x.val_, y.val_);
  const std::int64_t R = P - v;
  if (R <= 0) return ElementAccess::zero_at(ctx, P);

  if (ctx->char_p()) {
    const int f = ctx->f();
    const auto p = ctx->p();
    std::vector<Residue> sum(static_cast<std::size_t>(R * f), 0);
    for (const LocalElement* z : {&x, &y}) {
      const std::int64_t off = z->val_ - v;
      const std::int64_t n = static_cast<std::int64_t>(z->series_.size()) / f;
      for (std::int64_t i = 0; i < n && off + i < R; ++i)
        for (int s = 0; s < f; ++s) {
          auto& slot = sum[(off + i) * f + s];
          slot = (slot + z->series_[i * f + s]) % p;
        }
    }
    return ElementAccess::normalize_series(ctx, v, R, std::move(sum));
  }
  const auto& a = ctx->adic();
  auto term = [&](const LocalElement& z) {
    const std::int64_t off = z.val_ - v;
    if (off >= R) return a.zero_mant();
    return a.times_pi(z.adic_, off);
  };
  return ElementAccess::normalize_adic(ctx, v, R, a.add(term(x), term(y)));
}

LocalElement operator*(const LocalElement& x, const LocalElement& y) {
  if (x.is_exact_zero()) return x;
  if (y.is_exact_zero()) return y;
  check_same_field(x, y);
  const FieldContext* ctx = x.ctx_;
  if (x.is_zero() && y.is_zero()) return ElementAccess::zero_at(ctx, x.prec_ + y.prec_);
  if (x.is_zero()) return ElementAccess::zero_at(ctx, x.prec_ + y.val_);
  if (y.is_zero()) return ElementAccess::zero_at(ctx, y.prec_ + x.val_);
  const std::int64_t R = std::min(x.prec_ - x.val_, y.prec_ - y.val_);
  LocalElement r;
  r.ctx_ = ctx;
  r.val_ = x.val_ + y.val_;
  r.prec_ = r.val_ + R;
  if (ctx->char_p()) {
    r.series_ = ctx->adic().series_mul(x.series_, y.series_, R);
  } else {
    const auto& a = ctx->adic();
    r.adic_ = a.mul(x.adic_, y.adic_);
    a.canonicalize(r.adic_, R);
  }
  return r;
}

LocalElement LocalElement::inv() const {
  if (is_exact_zero()) throw DomainError("inverse of zero");
  if (is_zero()) throw PrecisionExhausted("inverse of a value that vanishes to the known precision");
  const std::int64_t R = prec_ - val_;
  LocalElement r;
  r.ctx_ = ctx_;
  r.val_ = -val_;
  r.prec_ = r.val_ + R;
  if (ctx_->char_p())
    r.series_ = ctx_->adic().series_inverse(series_, R);
  else
    r.adic_ = ctx_->adic().unit_inverse(adic_, R);
  return r;
}

LocalElement LocalElement::pow(std::int64_t n) const {
  if (n == 0) return ctx_->one(is_zero() ? 0 : prec_ - val_);
  if (n < 0) return inv().pow(-n);
  LocalElement base = *this;
  LocalElement acc;
  bool have = false;
  while (n > 0) {
    if (n & 1) {
      acc = have ? acc * base : base;
      have = true;
    }
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return acc;
}

LocalElement LocalElement::shifted(std::int64_t k) const {
  LocalElement r = *this;
  if (is_exact_zero()) return r;
  if (!is_zero()) r.val_ += k;
  r.prec_ += k;
  return r;
}

LocalElement LocalElement::truncated(std::int64_t absolute) const {
  if (absolute >= prec_) return *this;
  if (is_zero() || val_ >= absolute) return ElementAccess::zero_at(ctx_, absolute);
  LocalElement r = *this;
  r.prec_ = absolute;
  const std::int64_t R = absolute - val_;
  if (ctx_->char_p())
    r.series_.resize(static_cast<std::size_t>(R * ctx_->f()));
  else
    ctx_->adic().canonicalize(r.adic_, R);
  return r;
}

LocalElement LocalElement::derivative() const {
  if (!ctx_->char_p()) throw UnsupportedCase("formal derivative is only defined in characteristic p");
  if (is_exact_zero()) return *this;
  if (is_zero()) return ElementAccess::zero_at(ctx_, prec_ - 1);
  const int f = ctx_->f();
  const auto p = ctx_->p();
  const std::int64_t R = prec_ - val_;
  // d/dt sum c_i t^{v+i} = sum (v+i) c_i t^{v+i-1}; known modulo t^{prec-1}.
  std::vector<Residue> d(static_cast<std::size_t>(R * f), 0);
  for (std::int64_t i = 0; i < R; ++i) {
    const std::int64_t n = ((val_ + i) % p + p) % p;
    for (int s = 0; s < f; ++s) d[i * f + s] = (series_[i * f + s] * n) % p;
  }
  return ElementAccess::normalize_series(ctx_, val_ - 1, R, std::move(d));
}

bool LocalElement::same_as(const LocalElement& y) const {
  return ctx_ == y.ctx_ && val_ == y.val_ && prec_ == y.prec_ && adic_ == y.adic_ && series_ == y.series_;
}

Residue residue_trace(const FieldContext& ctx, const ResidueElement& r) { return ctx.residue_field().trace(r); }

Residue series_residue_and_dlog(const LocalElement& x, const LocalElement& u) {
  const FieldContext& ctx = u.field();
  if (!ctx.char_p()) throw UnsupportedCase("the residue pairing formula is implemented in characteristic p only");
  if (u.is_zero()) throw DomainError("logarithmic derivative of zero");
  if (x.is_exact_zero()) return 0;
  // u = t^v w: u'/u = v/t + w'/w.
  const std::int64_t v = u.valuation();
  const LocalElement w = u.shifted(-v);
  LocalElement dlog = w.derivative() * w.inv();
  if (v % ctx.p() != 0) dlog = dlog + ctx.from_int(v, w.relative_precision() + 1).shifted(-1);
  const LocalElement prod = x * dlog;
  if (prod.precision() <= -1)
    throw PrecisionExhausted("coefficient of t^-1 in x du/u is not determined at the working precision");
  return ctx.residue_field().trace(prod.digit(-1));
}

}  // namespace lfk
