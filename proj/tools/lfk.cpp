#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lfk/class_spaces.hpp"
#include "lfk/errors.hpp"
#include "lfk/extensions.hpp"
#include "lfk/field.hpp"
#include "lfk/pairings.hpp"
#include "lfk/verifiers.hpp"

using namespace lfk;

namespace {

enum exit_code { ok = 0, claim_failed = 1, domain = 2, precision = 3, internal = 4 };

struct cli_config {
  std::string field;
  std::optional<std::int64_t> prec;
  std::int64_t window = 9;
  std::uint64_t seed = 1;
  std::string format = "table";
  std::string out_dir;
  bool record_runtime = false;
  std::string compute_what;
  std::string elt, line, mult, add;
  std::vector<std::string> claims;
};

FieldPtr open_field(const cli_config& cfg) {
  if (cfg.field.empty()) throw MalformedInput("missing field descriptor (use --field \"Qp p=2 f=1\")");
  FieldDescriptor d = parse_descriptor(cfg.field);
  if (cfg.prec) {
    d.default_precision = *cfg.prec;
  } else if (cfg.field.find("prec=") == std::string::npos) {
    if (const char* env = std::getenv("LFK_PREC")) {
      try {
        std::size_t used = 0;
        const long long v = std::stoll(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing");
        d.default_precision = v;
      } catch (const std::logic_error&) {
        throw MalformedInput(std::string("LFK_PREC is not an integer: '") + env + "'");
      }
    }
  }
  if (d.default_precision < 1) throw MalformedInput("precision must be positive");
  return make_field(d);
}

std::string vec_string(const FpVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

ordered_json vec_json(const FpVector& v) {
  ordered_json a = ordered_json::array();
  for (std::size_t i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

void emit(const cli_config& cfg, const ordered_json& j) {
  if (cfg.format == "json") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  for (const auto& [k, v] : j.items()) std::cout << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

int cmd_describe(const cli_config& cfg) {
  const FieldPtr k = open_field(cfg);
  ordered_json j;
  j["field"] = k->descriptor().to_string();
  j["p"] = k->p();
  j["f"] = k->f();
  j["q"] = k->q();
  if (k->char_p()) {
    j["e"] = "inf";
    j["mu_p"] = "no";
  } else {
    j["e"] = k->e();
    j["c"] = k->c() ? ordered_json(*k->c()) : ordered_json("none");
    j["pc"] = k->pc() ? ordered_json(*k->pc()) : ordered_json("none");
    j["d"] = k->class_space_dim();
    j["mu_p"] = k->mu_p_present() ? "yes" : "no";
    j["threshold"] = k->triviality_threshold();
  }
  j["prec"] = k->default_precision();
  emit(cfg, j);
  return ok;
}

const std::string& need(const std::string& v, const char* flag) {
  if (v.empty()) throw MalformedInput(std::string("missing ") + flag);
  return v;
}

int cmd_compute(const cli_config& cfg) {
  const FieldPtr k = open_field(cfg);
  const FieldContext& ctx = *k;
  const bool charp = ctx.char_p();
  PairingContext pc(ctx, cfg.window);
  ordered_json j;
  j["field"] = ctx.descriptor().to_string();
  if (charp) j["window"] = cfg.window;
  const std::string& what = cfg.compute_what;
  if (what == "level" || what == "class") {
    // --elt / --mult give a multiplicative class, --add an additive one.
    if (!cfg.add.empty()) {
      if (!charp) throw UnsupportedCase("additive classes exist in characteristic p only");
      const LocalElement x = parse_element(ctx, cfg.add);
      const ASClassReduction r = as_class_reduce(pc.line_basis(), x);
      j["space"] = "add";
      j["status"] = to_string(r.status);
      j["delta"] = r.level_delta;
      if (what == "class") {
        j["coords"] = vec_json(r.coords);
        j["normalized_rep"] = r.normalized_rep.to_string();
      }
    } else {
      const LocalElement x = parse_element(ctx, cfg.elt.empty() ? need(cfg.mult, "--elt") : cfg.elt);
      const UnitClassReduction r = unit_class_reduce(pc.mult_basis(), x);
      j["space"] = "mult";
      j["status"] = to_string(r.status);
      j["j"] = r.level_index;
      if (!charp) j["delta"] = r.level_delta;
      if (what == "class") {
        j["coords"] = vec_json(r.coords);
        j["normalized_rep"] = r.normalized_rep.to_string();
      }
    }
  } else if (what == "break" || what == "norm-group") {
    const std::string& text = !cfg.line.empty() ? cfg.line : charp ? need(cfg.add, "--line") : need(cfg.elt, "--line");
    const Line D = line_of(pc.line_basis(), parse_element(ctx, text));
    const DegreePExtension& E = pc.extension(D);
    j["line"] = D.label();
    j["delta"] = D.level;
    j["extension"] = E.defining_polynomial();
    if (what == "break") {
      j["epsilon"] = E.ramification_break();
      j["unramified"] = E.is_unramified();
    } else {
      const FpSubspace& N = pc.norm_group(D);
      ordered_json gens = ordered_json::array();
      for (const auto& v : N.basis()) gens.push_back(vec_json(v));
      ordered_json labels = ordered_json::array();
      for (const auto& b : pc.mult_basis().vectors()) labels.push_back(b.label);
      j["mult_basis"] = labels;
      j["codim"] = static_cast<std::int64_t>(N.codim());
      j["norm_group"] = gens;
    }
  } else if (what == "pair") {
    const LocalElement b = parse_element(ctx, need(cfg.mult, "--mult"));
    const std::string& a_text = charp ? (cfg.add.empty() ? need(cfg.line, "--add") : cfg.add) : need(cfg.line, "--line");
    const Line D = line_of(pc.line_basis(), parse_element(ctx, a_text));
    const bool trivial = pc.pairs_trivially(D, b);
    j["line"] = D.label();
    j["mult"] = b.to_string();
    if (charp) j["schmid"] = schmid_pairing(D.generator, b);
    j["pairing"] = trivial ? "trivial" : "nontrivial";
  } else {
    throw MalformedInput("unknown compute target '" + what + "' (expected level, break, pair, norm-group, class)");
  }
  emit(cfg, j);
  return ok;
}

std::string safe_name(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '-') c = '_';
  return s;
}

int cmd_verify(const cli_config& cfg) {
  const FieldPtr k = open_field(cfg);
  std::vector<std::string> ids = cfg.claims;
  if (ids.empty()) throw MalformedInput("no claims given (use claim ids or 'all')");
  if (ids.size() == 1 && ids[0] == "all") ids = applicable_claims(*k);
  VerifyOptions opts;
  opts.window = cfg.window;
  opts.seed = cfg.seed;
  opts.record_runtime = cfg.record_runtime;
  std::vector<VerificationReport> reports;
  for (const auto& id : ids) reports.push_back(verify_claim(*k, id, opts));

  ordered_json all = ordered_json::array();
  for (const auto& r : reports) all.push_back(r.to_json());
  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    for (const auto& r : reports) {
      std::ofstream os(std::filesystem::path(cfg.out_dir) / (safe_name(r.claim_id) + ".json"));
      os << r.to_json().dump(2) << "\n";
      if (!os) throw Error("cannot write report to " + cfg.out_dir);
    }
  }
  bool all_pass = true;
  for (const auto& r : reports) all_pass = all_pass && r.pass;
  if (cfg.format == "json") {
    std::cout << all.dump(2) << "\n";
  } else {
    std::cout << "field: " << k->descriptor().to_string() << "  seed: " << cfg.seed;
    if (k->char_p()) std::cout << "  window: " << cfg.window;
    std::cout << "\n";
    for (const auto& r : reports) {
      std::size_t checks = 0;
      for (const auto& w : r.witnesses)
        if (w.contains("check")) ++checks;
      std::cout << std::left << std::setw(8) << r.claim_id << std::setw(6) << (r.pass ? "pass" : "FAIL") << checks
                << " checks";
      if (r.runtime_ms) std::cout << "  " << std::fixed << std::setprecision(1) << *r.runtime_ms << " ms";
      std::cout << "\n";
      if (r.counterexample) std::cout << "  counterexample: " << r.counterexample->dump() << "\n";
    }
    std::cout << (all_pass ? "all claims pass" : "some claims FAIL") << "\n";
  }
  return all_pass ? ok : claim_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponent-p class spaces, extensions and pairings of local fields"};
  app.require_subcommand(1);
  cli_config cfg;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--field", cfg.field, "field descriptor, e.g. \"Qp p=2 f=1\" or \"Fq((t)) p=2 f=1\"");
    sub->add_option("--prec", cfg.prec, "precision in pi-adic digits (overrides LFK_PREC and prec=)");
    sub->add_option("--window", cfg.window, "characteristic p window (levels and pole orders)")->check(CLI::Range(1, 64));
    sub->add_option("--seed", cfg.seed, "seed for randomized cross-checks");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"table", "json"}));
  };
  auto* describe = app.add_subcommand("describe", "print the constants of a field");
  common(describe);
  describe->add_option("descriptor", cfg.field, "field descriptor (alternative to --field)");

  auto* compute = app.add_subcommand("compute", "run one computation");
  common(compute);
  compute->add_option("what", cfg.compute_what, "level | break | pair | norm-group | class")
      ->required()
      ->check(CLI::IsMember({"level", "break", "pair", "norm-group", "class"}));
  compute->add_option("--elt", cfg.elt, "element of K (multiplicative class)");
  compute->add_option("--line", cfg.line, "generator of a line");
  compute->add_option("--mult", cfg.mult, "element of K^x");
  compute->add_option("--add", cfg.add, "element of K (additive class, characteristic p)");

  auto* verify = app.add_subcommand("verify", "run claim verifiers and emit reports");
  common(verify);
  verify->add_option("claims", cfg.claims, "claim ids or 'all'");
  verify->add_option("--out", cfg.out_dir, "directory for per-claim JSON reports");
  verify->add_flag("--record-runtime", cfg.record_runtime, "add runtime_ms to reports (breaks byte-identity)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return domain;
  }

  try {
    if (describe->parsed()) return cmd_describe(cfg);
    if (compute->parsed()) return cmd_compute(cfg);
    return cmd_verify(cfg);
  } catch (const PrecisionExhausted& e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return precision;
  } catch (const MalformedInput& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return domain;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return domain;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return internal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return internal;
  }
}
