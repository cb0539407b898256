#include "lfk/field.hpp"

#include <cctype>
#include <sstream>

#include "adic_ring.hpp"
#include "lfk/errors.hpp"

namespace lfk {

std::int64_t bp_index(std::int64_t p, std::int64_t i) {
  if (i < 1) throw DomainError("b_p index needs i >= 1, got " + std::to_string(i));
  if (p < 2) throw DomainError("b_p index needs a prime p");
  return i + (i - 1) / (p - 1);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------- descriptor

namespace {

std::string join(const auto& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

[[noreturn]] void parse_fail(std::string_view text, std::size_t pos, const std::string& what) {
  std::ostringstream os;
  os << "field descriptor, offset " << pos << ": " << what << " in \"" << text << "\"";
  throw MalformedInput(os.str());
}

std::int64_t parse_int(std::string_view text, std::size_t pos, std::string_view token) {
  if (token.empty()) parse_fail(text, pos, "expected an integer");
  std::size_t i = 0;
  bool neg = false;
  if (token[0] == '-' || token[0] == '+') {
    neg = token[0] == '-';
    i = 1;
  }
  if (i == token.size()) parse_fail(text, pos, "expected digits after sign");
  std::int64_t value = 0;
  for (; i < token.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(token[i])))
      parse_fail(text, pos + i, std::string("expected a digit, found '") + token[i] + "'");
    value = value * 10 + (token[i] - '0');
    if (value > (std::int64_t{1} << 40)) parse_fail(text, pos, "integer too large");
  }
  return neg ? -value : value;
}

std::vector<std::int64_t> parse_list(std::string_view text, std::size_t pos, std::string_view token) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = token.find(',', start);
    const auto piece = token.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(parse_int(text, pos + start, piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string FieldDescriptor::to_string() const {
  std::ostringstream os;
  os << (char_p ? "Fq((t))" : "Qp") << " p=" << p << " f=" << f;
  if (!char_p && !eisenstein_poly.empty()) os << " eis=" << join(eisenstein_poly);
  if (!residue_poly.empty()) os << " resf=" << join(residue_poly);
  os << " prec=" << default_precision;
  return os.str();
}

FieldDescriptor parse_descriptor(std::string_view text) {
  FieldDescriptor d;
  bool seen_kind = false, seen_p = false, seen_f = false;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size()) break;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::string_view token = text.substr(start, i - start);
    if (!seen_kind) {
      if (token == "Qp")
        d.char_p = false;
      else if (token == "Fq((t))")
        d.char_p = true;
      else
        parse_fail(text, start, "expected field kind 'Qp' or 'Fq((t))'");
      seen_kind = true;
      continue;
    }
    const std::size_t eq = token.find('=');
    if (eq == std::string_view::npos) parse_fail(text, start, "expected key=value (p, f, eis, resf, prec)");
    const auto key = token.substr(0, eq);
    const auto value = token.substr(eq + 1);
    const std::size_t vpos = start + eq + 1;
    if (key == "p") {
      d.p = parse_int(text, vpos, value);
      if (!is_prime(d.p)) parse_fail(text, vpos, "p must be prime");
      seen_p = true;
    } else if (key == "f") {
      d.f = static_cast<int>(parse_int(text, vpos, value));
      if (d.f < 1) parse_fail(text, vpos, "f must be positive");
      seen_f = true;
    } else if (key == "eis") {
      if (d.char_p) parse_fail(text, start, "eis= is only valid for Qp");
      d.eisenstein_poly = parse_list(text, vpos, value);
    } else if (key == "resf") {
      const auto coeffs = parse_list(text, vpos, value);
      d.residue_poly.assign(coeffs.begin(), coeffs.end());
    } else if (key == "prec") {
      d.default_precision = parse_int(text, vpos, value);
      if (d.default_precision < 1) parse_fail(text, vpos, "prec must be positive");
    } else {
      parse_fail(text, start, "unknown key '" + std::string(key) + "', expected p, f, eis, resf or prec");
    }
  }
  if (!seen_kind) parse_fail(text, 0, "expected field kind 'Qp' or 'Fq((t))'");
  if (!seen_p) parse_fail(text, text.size(), "missing p=<prime>");
  if (!seen_f) parse_fail(text, text.size(), "missing f=<int>");
  if (!d.residue_poly.empty() && static_cast<int>(d.residue_poly.size()) != d.f + 1)
    parse_fail(text, text.size(), "resf must have degree f");
  return d;
}

// ------------------------------------------------------------------ context

FieldContext::~FieldContext() = default;

FieldContext::FieldContext(FieldDescriptor d)
    : desc_(std::move(d)),
      residue_(desc_.p, desc_.residue_poly.empty() ? ResidueField::default_modulus(desc_.p, desc_.f)
                                                   : desc_.residue_poly) {
  if (!is_prime(desc_.p)) throw DomainError("p must be prime");
  if (desc_.default_precision < 1) throw DomainError("precision must be positive");
  if (desc_.residue_poly.empty()) desc_.residue_poly = residue_.modulus();

  adic_ = std::make_unique<AdicRing>();
  auto& a = *adic_;
  a.char_p = desc_.char_p;
  a.p = desc_.p;
  a.f = residue_.degree();
  a.k = &residue_;

  if (desc_.char_p) {
    e_ = kInfiniteE;
    rel_cap_ = std::max<std::int64_t>(desc_.default_precision, 1) * 4;
    char_p_kill_.level = 0;
    char_p_kill_.step = 0;
    for (int s = 0; s < f(); ++s) char_p_kill_.columns.push_back(residue_.frobenius(residue_.basis(s)).coords);
    char_p_kill_.surjective = true;
    return;
  }

  if (desc_.eisenstein_poly.empty()) desc_.eisenstein_poly = {-desc_.p, 1};
  const auto& eis = desc_.eisenstein_poly;
  if (eis.size() < 2 || eis.back() != 1) throw DomainError("Eisenstein polynomial must be monic of degree >= 1");
  const std::int64_t p = desc_.p;
  for (std::size_t j = 0; j + 1 < eis.size(); ++j)
    if (eis[j] % p != 0) throw DomainError("not Eisenstein: coefficient of x^" + std::to_string(j) + " is a unit");
  if (eis[0] % (p * p) == 0) throw DomainError("not Eisenstein: constant coefficient divisible by p^2");

  e_ = static_cast<std::int64_t>(eis.size()) - 1;
  if (e_ % (p - 1) == 0) {
    c_ = e_ / (p - 1);
    pc_ = e_ + *c_;
  }
  a.e = e_;
  a.M = (desc_.default_precision + e_ - 1) / e_ + 3;
  rel_cap_ = e_ * (a.M - 1);
  a.ppow.resize(a.M + 1);
  a.ppow[0] = 1;
  for (std::int64_t i = 1; i <= a.M; ++i) a.ppow[i] = a.ppow[i - 1] * static_cast<long>(p);
  for (auto c : residue_.modulus()) a.gmod.emplace_back(static_cast<long>(c));
  for (std::int64_t j = 0; j < e_; ++j) a.eis.emplace_back(static_cast<long>(eis[j]));
  // pi^e = p * eps with eps = sum_j (-a_j / p) pi^j.
  AdicRing::Mant eps = a.zero_mant();
  for (std::int64_t j = 0; j < e_; ++j) eps[j * a.f] = -a.eis[j] / static_cast<long>(p);
  a.reduce_mod_n(eps);
  a.eps_inv = a.unit_inverse(eps, a.e * a.M);
}

const LocalElement& FieldContext::zeta() const {
  if (!zeta_) throw UnsupportedCase("the field contains no primitive p-th root of unity");
  return *zeta_;
}

std::int64_t FieldContext::class_space_dim() const {
  if (char_p()) throw UnsupportedCase("Kbar^x is infinite-dimensional in characteristic p");
  return e_ * f() + 1 + (mu_p_present() ? 1 : 0);
}

std::int64_t FieldContext::triviality_threshold() const {
  if (char_p()) throw UnsupportedCase("the unit filtration never becomes trivial in characteristic p");
  return mu_p_present() ? *pc_ : bp_index(p(), e_);
}

bool FieldContext::is_jump_level(std::int64_t m) const {
  if (m < 1 || m % p() == 0) return false;
  return char_p() || m <= bp_index(p(), e_);
}

// ------------------------------------------------------------------ factories

static std::int64_t clamp_prec(const FieldContext& ctx, std::int64_t prec) {
  if (prec <= 0) prec = ctx.default_precision();
  return std::min(prec, ctx.max_relative_precision());
}

LocalElement FieldContext::zero() const {
  LocalElement z;
  z.ctx_ = this;
  return z;
}

LocalElement FieldContext::one(std::int64_t prec) const { return monomial(residue_.one(), 0, prec); }

LocalElement FieldContext::from_int(std::int64_t n, std::int64_t prec) const { return from_mpz(mpz_class(static_cast<long>(n)), prec); }

LocalElement FieldContext::from_mpz(const mpz_class& n, std::int64_t prec) const {
  if (n == 0) return zero();
  if (char_p()) {
    mpz_class r = n % static_cast<long>(p());
    if (r < 0) r += static_cast<long>(p());
    if (r == 0) return zero();
    return monomial(residue_.from_int(r.get_si()), 0, prec);
  }
  // v_p(n) copies of p = pi^e / eps.
  mpz_class m = n, tmp;
  const mpz_class pz = static_cast<long>(p());
  const auto vp = static_cast<std::int64_t>(mpz_remove(tmp.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t()));
  m = tmp;
  const std::int64_t R = clamp_prec(*this, prec);
  LocalElement x;
  x.ctx_ = this;
  x.val_ = 0;
  x.prec_ = R;
  x.adic_ = adic_->zero_mant();
  x.adic_[0] = m;
  adic_->reduce_mod_n(x.adic_);
  adic_->canonicalize(x.adic_, R);
  if (vp == 0) return x;
  LocalElement eps_inv;
  eps_inv.ctx_ = this;
  eps_inv.val_ = 0;
  eps_inv.prec_ = R;
  eps_inv.adic_ = adic_->eps_inv;
  adic_->canonicalize(eps_inv.adic_, R);
  return (x * eps_inv.pow(vp)).shifted(e_ * vp);
}

LocalElement FieldContext::monomial(const ResidueElement& r, std::int64_t n, std::int64_t prec) const {
  if (r.is_zero()) return zero();
  const std::int64_t R = clamp_prec(*this, prec);
  LocalElement x;
  x.ctx_ = this;
  x.val_ = n;
  x.prec_ = n + R;
  if (char_p()) {
    x.series_.assign(static_cast<std::size_t>(R * f()), 0);
    for (int s = 0; s < f(); ++s) x.series_[s] = r.coords[s];
  } else {
    x.adic_ = adic_->lift(r);
    adic_->canonicalize(x.adic_, R);
  }
  return x;
}

LocalElement FieldContext::uniformizer(std::int64_t prec) const { return monomial(residue_.one(), 1, prec); }

LocalElement FieldContext::teichmuller(const ResidueElement& r, std::int64_t prec) const {
  if (r.is_zero()) throw DomainError("Teichmuller lift of zero");
  if (char_p()) return lift(r, prec);
  // Newton on X^{q-1} - 1, whose roots reduce to distinct elements of k^x.
  LocalElement x = lift(r, prec);
  const LocalElement one_ = one(prec);
  const LocalElement qm1 = from_int(q() - 1, prec);
  for (std::int64_t known = 1; known < x.relative_precision() + 1; known *= 2) {
    const LocalElement fx = x.pow(q() - 1) - one_;
    if (fx.is_zero()) break;
    x = x - fx / (qm1 * x.pow(q() - 2));
  }
  if (!(x.pow(q() - 1) - one_).is_zero()) throw PrecisionExhausted("Teichmuller lift did not converge");
  return x;
}

// ------------------------------------------------------------------ mu_p

void FieldContext::detect_mu_p() {
  if (char_p() || !c_) return;
  const std::int64_t p = desc_.p;
  const std::int64_t c = *c_;
  if (desc_.default_precision <= *pc_)
    throw PrecisionExhausted("precision " + std::to_string(desc_.default_precision) +
                             " too small to certify the Hensel lift of the cyclotomic polynomial (need > pc = " +
                             std::to_string(*pc_) + ")");
  // g(z) = Phi_p(1 + pi^c z) / pi^{(p-1)c} = sum_{k=1}^p binom(p,k) pi^{c(k-p)} z^{k-1}.
  // Its reduction is z^{p-1} + gamma with gamma = residue of p / pi^e, so a
  // residue root is simple and Newton converges.
  const std::int64_t R = rel_cap_;
  std::vector<LocalElement> coeff;  // coefficient of z^{k-1}
  mpz_class binom = 1;
  for (std::int64_t k = 1; k <= p; ++k) {
    binom = binom * static_cast<long>(p - k + 1) / static_cast<long>(k);
    coeff.push_back(from_mpz(binom, R).shifted(c * (k - p)));
  }
  auto eval = [&](const LocalElement& z) {
    LocalElement acc = zero();
    for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * z + *it;
    return acc;
  };
  auto eval_deriv = [&](const LocalElement& z) {
    LocalElement acc = zero();
    for (std::int64_t i = static_cast<std::int64_t>(coeff.size()) - 1; i >= 1; --i)
      acc = acc * z + coeff[i] * from_int(i, R);
    return acc;
  };
  std::optional<LocalElement> z;
  for (std::int64_t n = 1; n < q() && !z; ++n) {
    const LocalElement cand = lift(residue_.element(n), R);
    const LocalElement g = eval(cand);
    if (g.is_zero() || g.valuation() > 0) z = cand;
  }
  if (!z) return;
  for (int iter = 0; iter < 200; ++iter) {
    const LocalElement g = eval(*z);
    if (g.is_zero()) break;
    const LocalElement dg = eval_deriv(*z);
    if (dg.is_zero() || dg.valuation() != 0) throw InternalError("Hensel step for mu_p lost its simple root");
    *z = *z - g / dg;
  }
  if (!eval(*z).is_zero()) throw PrecisionExhausted("Hensel lift of the cyclotomic polynomial did not converge");
  LocalElement zeta = one(R) + z->shifted(c);
  zeta_ = zeta.truncated(desc_.default_precision);
}

// ------------------------------------------------------------------ kill maps

KillMap FieldContext::compute_kill_map(std::int64_t level) const {
  KillMap km;
  km.level = level;
  if (level * (p() - 1) < p() * e_) {
    if (level % p() != 0) return km;
    km.step = level / p();
  } else if (level * (p() - 1) > p() * e_) {
    km.step = level - e_;
  } else {
    km.step = *c_;
  }
  const std::int64_t R = rel_cap_;
  std::vector<FpVector> cols;
  for (int s = 0; s < f(); ++s) {
    const LocalElement w = (one(R) + monomial(residue_.basis(s), km.step, R)).pow(p()) - one(R);
    if (w.valuation_bound() < level) throw InternalError("kill step does not reach its level");
    cols.push_back(w.is_zero() || w.valuation() > level ? residue_.zero().coords : w.leading_coefficient().coords);
  }
  km.columns = cols;
  km.surjective = null_space(p(), cols).dim() == 0;
  return km;
}

void FieldContext::build_kill_maps() {
  if (char_p()) return;
  kill_maps_.resize(static_cast<std::size_t>(rel_cap_));
  for (std::int64_t m = 1; m < rel_cap_; ++m)
    if (!is_jump_level(m)) kill_maps_[m] = compute_kill_map(m);
}

const KillMap& FieldContext::kill_map(std::int64_t level) const {
  if (char_p()) return level % p() == 0 ? char_p_kill_ : empty_kill_;
  if (level < 1 || level >= static_cast<std::int64_t>(kill_maps_.size()))
    throw PrecisionExhausted("level " + std::to_string(level) + " beyond the working precision");
  return kill_maps_[level];
}

FieldPtr make_field(const FieldDescriptor& d) {
  std::shared_ptr<FieldContext> ctx(new FieldContext(d));
  ctx->detect_mu_p();
  ctx->build_kill_maps();
  if (ctx->mu_p_present()) {
    const auto& km = ctx->kill_map(*ctx->pc());
    if (km.surjective) throw InternalError("mu_p present but the level-pc kill map is surjective");
  }
  return ctx;
}

FieldPtr make_field(std::string_view descriptor_text) { return make_field(parse_descriptor(descriptor_text)); }

}  // namespace lfk
