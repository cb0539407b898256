// Acceptance suite: one PASS/FAIL line per criterion. Usage:
//   lfk_acceptance <path to lfk cli> <scratch dir>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "lfk/class_spaces.hpp"
#include "lfk/errors.hpp"
#include "lfk/extensions.hpp"
#include "lfk/pairings.hpp"
#include "lfk/sampling.hpp"
#include "lfk/verifiers.hpp"

using namespace lfk;
using namespace lfk::oracle;
namespace fs = std::filesystem;

namespace {

class Criterion {
 public:
  explicit Criterion(std::string what) : what_(std::move(what)) {}

  void check(bool ok, const std::string& detail) {
    if (!ok) failures_.push_back(detail);
  }

  bool report(int number, double seconds) const {
    const bool ok = failures_.empty();
    std::cout << "criterion " << number << ": " << (ok ? "PASS" : "FAIL") << "  " << what_ << "  (" << seconds
              << " s)\n";
    for (const auto& f : failures_) std::cout << "    - " << f << "\n";
    return ok;
  }

 private:
  std::string what_;
  std::vector<std::string> failures_;
};

std::string show(const std::map<std::int64_t, std::int64_t>& m) {
  std::string s = "{";
  for (const auto& [k, v] : m) s += (s.size() > 1 ? ", " : "") + std::to_string(k) + ":" + std::to_string(v);
  return s + "}";
}

std::string show(const std::set<std::int64_t>& m) {
  std::string s = "{";
  for (auto k : m) s += (s.size() > 1 ? ", " : "") + std::to_string(k);
  return s + "}";
}

void suite_passes(Criterion& c, const FieldContext& K, std::int64_t window = 9) {
  VerifyOptions opts;
  opts.window = window;
  for (const auto& id : applicable_claims(K)) {
    const auto r = verify_claim(K, id, opts);
    c.check(r.pass, id + " on " + K.descriptor().to_string() + " failed: " +
                        (r.counterexample ? r.counterexample->dump() : std::string("?")));
  }
}

// Line counts by level from every nonzero coordinate vector, each descended.
std::map<std::int64_t, std::int64_t> level_counts_by_descent(const AdaptedBasis& B) {
  const std::int64_t p = B.p();
  std::map<std::int64_t, std::int64_t> vectors;
  std::vector<Residue> digits(B.dim(), 0);
  while (true) {
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
    if (i == digits.size()) break;
    const LocalElement x = B.combine(FpVector(p, digits));
    ++vectors[unit_class_reduce(B, x, false).level_delta];
  }
  std::map<std::int64_t, std::int64_t> lines;
  for (const auto& [lvl, n] : vectors) lines[lvl] = n / (p - 1);
  return lines;
}

// Column-side complement of U under a Gram matrix (rows mult, columns lines).
FpSubspace gram_perp(const std::vector<FpVector>& G, const FpSubspace& U, std::size_t cols) {
  const std::int64_t p = U.modulus();
  std::vector<FpVector> table(cols, FpVector(p, U.dim()));
  for (std::size_t c = 0; c < U.dim(); ++c)
    for (std::size_t a = 0; a < cols; ++a) {
      Residue s = 0;
      for (std::size_t k = 0; k < G.size(); ++k) s = (s + U.basis()[c][k] * G[k][a]) % p;
      table[a].set(c, s);
    }
  return left_kernel(table, FpSubspace::full(p, cols));
}

void criterion_q2(Criterion& c) {
  auto K = make_field("Qp p=2 f=1");
  PairingContext pc(*K, 9);
  const auto& B = pc.mult_basis();
  c.check(B.dim() == 3, "d = " + std::to_string(B.dim()));
  const auto dims = filtration_dims(B, 1, 2);
  c.check(dims.size() == 2 && dims[0].codim == 1 && dims[1].codim == 1, "filtration codims at 1, 2 are not [1, 1]");

  std::map<std::int64_t, std::int64_t> by_break, by_oracle;
  for (std::int64_t a : {2, -1, 5, -2, 10, -5, -10}) {
    const Line L = line_of(B, K->from_int(a));
    const auto b = pc.extension(L).ramification_break();
    ++by_break[b];
    ++by_oracle[q2_break_oracle(a)];
    c.check(b == q2_break_oracle(a), "break of Q2(sqrt " + std::to_string(a) + ")");
  }
  const std::map<std::int64_t, std::int64_t> want{{-1, 1}, {1, 2}, {2, 4}};
  c.check(pc.lines().size() == 7, "line count " + std::to_string(pc.lines().size()));
  c.check(by_break == want && by_oracle == want, "break multiset " + show(by_break));

  for (std::int64_t i = 0; i <= 3; ++i) {
    const auto [perp, is_sub] = pc.orthogonal_by_catalog(B.filtration_step(i));
    c.check(is_sub && perp == B.filtration_step(3 - i), "Ubar_" + std::to_string(i) + "^perp");
  }
  const auto G = gram_matrix(pc);
  c.check(G.has_value(), "Gram matrix inconsistent");
  if (G)
    for (std::int64_t i = 0; i <= 3; ++i)
      c.check(gram_perp(*G, B.filtration_step(i), B.dim()) == B.filtration_step(3 - i),
              "Gram Ubar_" + std::to_string(i) + "^perp");

  const auto span = [](std::vector<FpVector> v) { return rref(2, 3, v); };
  const FpVector two = q2_class(2), minus_one = q2_class(-1), five = q2_class(5);
  c.check(pc.norm_group(line_of(B, K->from_int(5))) == span({minus_one, five}) && q2_norm_oracle(5) == span({minus_one, five}),
          "N(sqrt 5)");
  c.check(pc.norm_group(line_of(B, K->from_int(-1))) == span({two, five}) && q2_norm_oracle(-1) == span({two, five}),
          "N(i)");
  c.check(pc.norm_group(line_of(B, K->from_int(2))) == span({minus_one, two}) && q2_norm_oracle(2) == span({minus_one, two}),
          "N(sqrt 2)");

  int agree = 0;
  for (const auto& a : pc.lines())
    for (const auto& b : pc.lines()) {
      const bool triv = pc.pairs_trivially(a, b.coords);
      const bool ok = triv == (hilbert_symbol_q2(b.generator, a.generator) == 1);
      agree += ok;
    }
  c.check(agree == 49, "Hilbert symbol agreement " + std::to_string(agree) + "/49");
  suite_passes(c, *K);
}

void criterion_q3(Criterion& c) {
  auto K = make_field("Qp p=3 f=1 eis=3,3,1");
  c.check(K->e() == 2 && K->c() == 1 && K->pc() == 3 && K->class_space_dim() == 4, "constants e, c, pc, d");
  PairingContext pc(*K, 9);
  const auto& B = pc.mult_basis();
  c.check(pc.lines().size() == 40, "line count " + std::to_string(pc.lines().size()));
  const std::map<std::int64_t, std::int64_t> want{{0, 1}, {1, 3}, {2, 9}, {3, 27}};
  const auto oracle = level_counts_by_descent(B);
  std::map<std::int64_t, std::int64_t> catalog;
  std::set<std::int64_t> breaks;
  for (const auto& D : pc.lines()) {
    ++catalog[D.level];
    const auto b = pc.extension(D).ramification_break();
    breaks.insert(b);
    c.check(b == (D.level == 0 ? -1 : D.level), "break = delta on " + D.label());
  }
  c.check(oracle == want, "descent level counts " + show(oracle));
  c.check(catalog == want, "catalog level counts " + show(catalog));
  c.check(breaks == std::set<std::int64_t>{-1, 1, 2, 3}, "break set " + show(breaks));
  for (std::int64_t i = 0; i <= 4; ++i) {
    const auto [perp, is_sub] = pc.orthogonal_by_catalog(B.filtration_step(i));
    c.check(is_sub && perp == B.filtration_step(4 - i), "Ubar_" + std::to_string(i) + "^perp");
  }
  suite_passes(c, *K);
}

void criterion_f2(Criterion& c) {
  auto K = make_field("Fq((t)) p=2 f=1");
  PairingContext pc(*K, 9);
  const auto& M = pc.mult_basis();
  const auto& A = pc.line_basis();
  for (const auto& s : filtration_dims(A, -9, -1))
    c.check(s.codim == ((-s.index) % 2 == 1 ? 1 : 0), "additive codim at " + std::to_string(s.index));

  Rng rng(1);
  int mismatches = 0;
  for (int n = 0; n < 200; ++n) {
    const Line& D = pc.lines()[rng() % pc.lines().size()];
    const LocalElement b = random_nonzero(*K, rng, 3, 14);
    const bool schmid = schmid_pairing(D.generator, b) == 0;
    mismatches += schmid != pc.pairs_trivially(D, coordinates(M, b));
  }
  c.check(mismatches == 0, std::to_string(mismatches) + " Schmid/norm mismatches in 200 pairs");

  const auto G = *gram_matrix(pc);
  for (std::int64_t i = 0; i <= 8; ++i)
    c.check(gram_perp(G, M.filtration_step(i), A.dim()) == A.filtration_step(-(i - 1)),
            "Ubar_" + std::to_string(i) + "^perp");
  for (std::int64_t m : {1, 3, 5, 7}) {
    const Line D = line_of(A, K->uniformizer().pow(-m));
    const auto b = pc.extension(D).ramification_break();
    c.check(b == m, "break of t^-" + std::to_string(m) + " is " + std::to_string(b));
  }
  suite_passes(c, *K);
}

void criterion_f3(Criterion& c) {
  auto K = make_field("Fq((t)) p=3 f=1");
  PairingContext pc(*K, 9);
  for (const auto& s : filtration_dims(pc.mult_basis(), 1, 9))
    c.check((s.codim != 0) == (s.index % 3 != 0), "mult codim at " + std::to_string(s.index));
  for (const auto& s : filtration_dims(pc.line_basis(), -9, -1))
    c.check((s.codim != 0) == ((-s.index) % 3 != 0), "additive codim at " + std::to_string(s.index));
  std::set<std::int64_t> breaks;
  for (const auto& D : pc.lines()) breaks.insert(pc.extension(D).ramification_break());
  breaks.erase(-1);
  c.check(breaks == std::set<std::int64_t>{1, 2, 4, 5, 7, 8}, "break set " + show(breaks));
  suite_passes(c, *K);
}

void criterion_oracles(Criterion& c) {
  for (const char* desc : {"Qp p=2 f=1", "Qp p=2 f=2", "Qp p=3 f=1 eis=3,3,1"}) {
    auto K = make_field(desc);
    const auto B = adapted_basis(*K, SpaceKind::mult);
    Rng rng(7);
    int agree = 0, trivial = 0;
    for (int n = 0; n < 200; ++n) {
      LocalElement x = random_nonzero(*K, rng, 3, 12);
      if (n % 3 == 0) x = x.pow(K->p());
      const bool by_descent = unit_class_reduce(B, x, false).status == ClassStatus::trivial;
      agree += by_descent == hensel_is_pth_power(*K, x);
      trivial += by_descent;
    }
    c.check(agree == 200, std::string(desc) + ": " + std::to_string(agree) + "/200 agree with Hensel");
    c.check(trivial > 0 && trivial < 200, std::string(desc) + ": sample lacks one outcome");
  }
  for (std::int64_t p : {2, 3}) {
    auto K = make_field("Fq((t)) p=" + std::to_string(p) + " f=1");
    Rng rng(11 + p);
    int agree = 0;
    for (int n = 0; n < 200; ++n) {
      std::map<std::int64_t, std::int64_t> coeff;
      LocalElement x = K->zero();
      for (std::int64_t e = -15; e <= 4; ++e) {
        const auto a = static_cast<std::int64_t>(rng() % p);
        if (a == 0 || rng() % 2) continue;
        coeff[e] = a;
        x = x + K->monomial(K->residue_field().from_int(a), e);
      }
      agree += as_class_reduce(x).level_delta == naive_as_level(p, coeff);
    }
    c.check(agree == 200, "p = " + std::to_string(p) + ": " + std::to_string(agree) + "/200 agree with naive wp");
  }
}

void criterion_bp(Criterion& c) {
  for (std::int64_t p : {2, 3, 5, 7}) {
    std::int64_t n = 0;
    for (std::int64_t i = 1; i <= 1000; ++i) {
      do ++n;
      while (n % p == 0);
      if (bp_index(p, i) != n) {
        c.check(false, "b_" + std::to_string(p) + "(" + std::to_string(i) + ")");
        break;
      }
    }
  }
  for (const char* desc :
       {"Qp p=2 f=1", "Qp p=2 f=2", "Qp p=3 f=1 eis=3,3,1", "Qp p=2 f=1 eis=2,2,1", "Qp p=5 f=1 eis=5,10,10,5,1"}) {
    auto K = make_field(desc);
    c.check(K->mu_p_present(), std::string(desc) + ": mu_p expected");
    if (!K->pc()) continue;
    c.check(*K->pc() == K->e() + *K->c() && *K->pc() == bp_index(K->p(), K->e()) + 1,
            std::string(desc) + ": pc identities");
  }
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void criterion_determinism(Criterion& c, const std::string& cli, const fs::path& scratch) {
  for (const char* desc : {"Qp p=2 f=1", "Qp p=3 f=1 eis=3,3,1", "Fq((t)) p=2 f=1"}) {
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path dir = scratch / ("run" + std::to_string(run));
      fs::remove_all(dir);
      fs::create_directories(dir);
      const std::string cmd = "\"" + cli + "\" verify --field \"" + desc + "\" all --seed 3 --format json --out \"" +
                              dir.string() + "\" > \"" + (dir / "stdout.json").string() + "\"";
      const int rc = std::system(cmd.c_str());
      c.check(rc == 0, std::string(desc) + ": cli exit status " + std::to_string(rc));
      std::string all;
      std::set<fs::path> files;
      for (const auto& entry : fs::directory_iterator(dir)) files.insert(entry.path());
      for (const auto& f : files) all += f.filename().string() + "\n" + slurp(f);
      outputs[run] = all;
    }
    c.check(!outputs[0].empty() && outputs[0] == outputs[1], std::string(desc) + ": reports differ between runs");
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: lfk_acceptance <lfk cli> <scratch dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path scratch = argv[2];
  struct Entry {
    std::string what;
    double limit;
    std::function<void(Criterion&)> run;
  };
  const std::vector<Entry> entries{
      {"Q2 full suite under 1 s", 1.0, criterion_q2},
      {"Q3(zeta_3) suite under 30 s", 30.0, criterion_q3},
      {"F2((t)) windowed suite under 10 s", 10.0, criterion_f2},
      {"F3((t)) windowed suite", 0.0, criterion_f3},
      {"descent vs Hensel and naive wp oracles", 0.0, criterion_oracles},
      {"b_p enumeration and pc identities", 0.0, criterion_bp},
      {"byte-identical verify all reports", 0.0, [&](Criterion& c) { criterion_determinism(c, cli, scratch); }},
  };
  int failed = 0;
  for (std::size_t n = 0; n < entries.size(); ++n) {
    Criterion c(entries[n].what);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      entries[n].run(c);
    } catch (const std::exception& e) {
      c.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (entries[n].limit > 0) c.check(secs < entries[n].limit, "over the time limit");
    failed += !c.report(static_cast<int>(n + 1), secs);
  }
  std::cout << (failed == 0 ? "all acceptance criteria pass" : std::to_string(failed) + " criteria FAIL") << "\n";
  return failed == 0 ? 0 : 1;
}
