#include "lfk/pairings.hpp"

#include "lfk/errors.hpp"

namespace lfk {

FpSubspace norm_class_subgroup(const DegreePExtension& E, const AdaptedBasis& mult_basis) {
  const FieldContext& K = E.base();
  if (&mult_basis.field() != &K || mult_basis.space() != SpaceKind::mult)
    throw DomainError("norm groups are expressed in the multiplicative basis of the base field");
  const std::int64_t p = K.p();
  const int f = K.f();
  const auto& k = K.residue_field();
  const std::int64_t top = K.char_p() ? *mult_basis.window() : *K.pc();
  if (K.char_p() && E.line().level > top)
    throw OutOfWindow("line of level " + std::to_string(E.line().level) + " lies outside the window " +
                      std::to_string(top));

  std::vector<FpVector> rows;
  auto add_norm = [&](const ExtElement& z) { rows.push_back(coordinates(mult_basis, E.norm(z))); };
  const ExtElement one = E.from_base(K.one());
  std::vector<LocalElement> theta;
  for (int s = 0; s < f; ++s) theta.push_back(K.lift(k.basis(s)));

  if (!E.is_unramified()) {
    const ExtElement& pe = E.uniformizer();
    add_norm(pe);
    ExtElement pm = one;
    for (std::int64_t m = 1; m <= p * (top + 1); ++m) {
      pm = E.mul(pm, pe);
      for (const auto& th : theta) add_norm(E.add(one, E.scale(pm, th)));
    }
  } else {
    const ExtElement rho = E.residue_generator();
    std::vector<ExtElement> rho_pow{one};
    for (std::int64_t i = 1; i < p; ++i) rho_pow.push_back(E.mul(rho_pow.back(), rho));
    LocalElement pim = K.one();
    for (std::int64_t m = 1; m <= top; ++m) {
      pim = pim * K.uniformizer();
      for (const auto& r : rho_pow)
        for (const auto& th : theta) add_norm(E.add(one, E.scale(r, th * pim)));
    }
  }
  FpSubspace span = rref(p, mult_basis.dim(), rows);
  if (span.codim() != 1)
    throw InternalError("norm group of " + E.defining_polynomial() + " has codimension " +
                        std::to_string(span.codim()) + ", expected 1");
  return span;
}

Residue schmid_pairing(const LocalElement& x, const LocalElement& u) { return series_residue_and_dlog(x, u); }

int hilbert_symbol_q2(const LocalElement& a, const LocalElement& b) {
  const FieldContext& K = a.field();
  if (K.char_p() || K.p() != 2 || K.f() != 1 || K.e() != 1)
    throw UnsupportedCase("hilbert_symbol_q2 is defined over Q_2 only");
  if (b.field_ptr() != &K) throw MalformedInput("symbol arguments from different fields");
  if (a.is_zero() || b.is_zero()) throw DomainError("Hilbert symbol of zero");
  auto split = [](const LocalElement& x) {
    const std::int64_t v = x.valuation();
    const LocalElement u = x.shifted(-v);
    std::int64_t m8 = 0;
    for (int i = 0; i < 3; ++i) m8 += u.digit(i).coords[0] << i;
    return std::pair<std::int64_t, std::int64_t>{v, m8};
  };
  const auto [alpha, u] = split(a);
  const auto [beta, w] = split(b);
  auto eps = [](std::int64_t z) { return ((z - 1) / 2) % 2; };
  auto omega = [](std::int64_t z) { return ((z * z - 1) / 8) % 2; };
  const std::int64_t ex = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
  return (((ex % 2) + 2) % 2) == 0 ? 1 : -1;
}

// ------------------------------------------------------------------ context

PairingContext::PairingContext(const FieldContext& ctx, std::int64_t window)
    : ctx_(&ctx), mult_(ctx, SpaceKind::mult, ctx.char_p() ? std::optional<std::int64_t>(window) : std::nullopt) {
  if (ctx.char_p()) {
    add_.emplace(ctx, SpaceKind::add, window);
  } else if (!ctx.mu_p_present()) {
    throw UnsupportedCase("the Kummer pairing needs mu_p in K");
  }
}

std::vector<Residue> PairingContext::key(const Line& line) {
  const auto c = line.coords.coords();
  return {c.begin(), c.end()};
}

const std::vector<Line>& PairingContext::lines() {
  if (!lines_) lines_ = line_catalog(line_basis());
  return *lines_;
}

const DegreePExtension& PairingContext::extension(const Line& line) {
  auto& slot = extensions_[key(line)];
  if (!slot) slot = std::make_unique<DegreePExtension>(attach_extension(*ctx_, line));
  return *slot;
}

const FpSubspace& PairingContext::norm_group(const Line& line) {
  const auto k = key(line);
  auto it = norm_groups_.find(k);
  if (it == norm_groups_.end()) it = norm_groups_.emplace(k, norm_class_subgroup(extension(line), mult_)).first;
  return it->second;
}

bool PairingContext::pairs_trivially(const Line& a, const FpVector& b_coords) { return member(norm_group(a), b_coords); }

bool PairingContext::pairs_trivially(const Line& a, const LocalElement& b, bool cross_check) {
  if (!ctx_->char_p()) return pairs_trivially(a, coordinates(mult_, b));
  const bool schmid = schmid_pairing(a.generator, b) == 0;
  if (cross_check) {
    const bool by_norm = pairs_trivially(a, coordinates(mult_, b));
    if (by_norm != schmid)
      throw InternalError("Schmid formula and norm membership disagree for line " + a.label() + " and " + b.to_string());
  }
  return schmid;
}

std::pair<FpSubspace, bool> PairingContext::orthogonal_by_catalog(const FpSubspace& U) {
  std::vector<FpVector> hits;
  for (const auto& D : lines())
    if (norm_group(D).contains(U)) hits.push_back(D.coords);
  FpSubspace span = rref(ctx_->p(), line_basis().dim(), hits);
  std::int64_t expect = 0, pk = 1;
  for (std::size_t i = 0; i < span.dim(); ++i) pk *= ctx_->p();
  expect = (pk - 1) / (ctx_->p() - 1);
  return {span, static_cast<std::int64_t>(hits.size()) == expect};
}

// ------------------------------------------------------------------ Gram

namespace {

// Functional (as a vector) whose kernel is the hyperplane H, leading entry 1.
FpVector functional_of(const FpSubspace& H) {
  std::vector<FpVector> cols;
  // w . h = 0 for every basis row h: null space of the transposed system.
  const std::size_t n = H.ambient_dim();
  for (std::size_t j = 0; j < n; ++j) {
    FpVector c(H.modulus(), H.dim());
    for (std::size_t r = 0; r < H.dim(); ++r) c.set(r, H.basis()[r][j]);
    cols.push_back(c);
  }
  const FpSubspace ns = null_space(H.modulus(), cols);
  if (ns.dim() != 1) throw InternalError("norm group is not a hyperplane");
  return ns.basis()[0];
}

}  // namespace

std::optional<std::vector<FpVector>> gram_matrix(PairingContext& pc) {
  const FieldContext& K = pc.field();
  const std::int64_t p = K.p();
  const AdaptedBasis& mb = pc.mult_basis();
  const AdaptedBasis& lb = pc.line_basis();
  std::vector<FpVector> gram(mb.dim(), FpVector(p, lb.dim()));
  if (K.char_p()) {
    for (std::size_t r = 0; r < mb.dim(); ++r)
      for (std::size_t c = 0; c < lb.dim(); ++c)
        gram[r].set(c, schmid_pairing(lb.vectors()[c].element, mb.vectors()[r].element));
    return gram;
  }
  const std::size_t d = lb.dim();
  std::vector<FpVector> w;
  for (std::size_t c = 0; c < d; ++c) w.push_back(functional_of(pc.norm_group(pc.line(FpVector::unit(p, d, c)))));
  std::vector<Residue> lambda(d, 1);
  for (std::size_t c = 1; c < d; ++c) {
    FpVector both = FpVector::unit(p, d, 0);
    both.set(c, 1);
    const FpSubspace& H = pc.norm_group(pc.line(both));
    bool found = false;
    for (Residue l = 1; l < p && !found; ++l) {
      const FpVector sum = w[0] + w[c].scaled(l);
      bool kills = !sum.is_zero();
      for (const auto& h : H.basis()) kills = kills && sum.dot(h) == 0;
      if (kills) {
        lambda[c] = l;
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  for (std::size_t r = 0; r < mb.dim(); ++r)
    for (std::size_t c = 0; c < d; ++c) gram[r].set(c, fp::mul(lambda[c], w[c][r], p));
  return gram;
}

}  // namespace lfk
