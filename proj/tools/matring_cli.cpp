#include "matring/exact_arith.hpp"
#include "matring/fib_polys.hpp"
#include "matring/free_algebra.hpp"
#include "matring/groebner.hpp"
#include "matring/matrix_model.hpp"
#include "matring/membership.hpp"
#include "matring/oracle.hpp"
#include "selftest.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace {

using json = nlohmann::ordered_json;
using namespace matring;

// Bump whenever a field is added, removed or renamed.
constexpr int kSchemaVersion = 1;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FieldOpt {
  std::string name = "q";
  std::uint64_t p = 0;

  std::uint64_t prime() const { return name == "f2" ? 2 : p; }
  json to_json() const {
    json j{{"field", name}};
    if (name != "q") j["p"] = prime();
    return j;
  }
};

using AnyField = std::variant<RationalField, PrimeField>;

AnyField resolve_field(const FieldOpt& f) {
  if (f.name == "q") {
    if (f.p != 0) throw UsageError("--p is only meaningful with --field fp");
    return RationalField{};
  }
  if (f.name == "f2") {
    if (f.p != 0 && f.p != 2) throw UsageError("--field f2 conflicts with --p " + std::to_string(f.p));
    return PrimeField(2);
  }
  if (f.p == 0) throw UsageError("--field fp requires --p <prime>");
  return PrimeField(f.p);
}

json record(const std::string& command, json params, json result) {
  return json{{"schema_version", kSchemaVersion}, {"command", command}, {"params", std::move(params)},
              {"result", std::move(result)}};
}

json pair_params(const FieldOpt& f, long long i, long long j) {
  json p = f.to_json();
  p["i"] = i;
  p["j"] = j;
  return p;
}

template <class T>
json matrix_json(const Mat2<T>& m) {
  return json::array({json::array({m.a.str(), m.b.str()}), json::array({m.c.str(), m.d.str()})});
}

json pairs_json(const std::vector<std::pair<std::string, std::string>>& kv) {
  json out = json::object();
  for (const auto& [k, v] : kv) out[k] = v;
  return out;
}

json trace_json(const DecisionTrace& t) {
  json j{{"field", t.field()}};
  if (t.p()) j["p"] = *t.p();
  j["i"] = t.i();
  j["j"] = t.j();
  j["verdict"] = t.verdict();
  j["rule"] = to_string(t.fired_rule());
  j["aux"] = pairs_json(t.aux());
  j["notes"] = t.notes();
  return j;
}

template <class K>
json witness_report_json(const WitnessReport<K>& r) {
  json j{{"method", to_string(r.method())}, {"field", r.field()}, {"i", r.i()}, {"j", r.j()}, {"found", r.found()},
         {"verified", r.verified()}};
  j["x"] = r.found() ? matrix_json(r.x()) : json(nullptr);
  j["y"] = r.found() ? matrix_json(r.y()) : json(nullptr);
  j["details"] = pairs_json(r.details);
  return j;
}

std::string monomial_text(const Monomial& m) {
  const std::string s = m.str();
  return s.empty() ? "1" : s;
}

std::string pair_text(long long i, long long j) { return "(" + std::to_string(i) + ", " + std::to_string(j) + ")"; }

/// Closed-form decider for the chosen field.
DecisionTrace decide_standard(const FieldOpt& f, long long i, long long j) {
  if (f.name == "q") return decide_Q(i, j);
  if (f.prime() == 2) return decide_Z2(i, j);
  return decide_Zp(f.prime(), i, j);
}

class Output {
 public:
  explicit Output(bool verbose) : verbose_(verbose) {}
  void emit(const json& j) const { std::cout << j.dump(2) << '\n'; }
  void line(const json& j) const { std::cout << j.dump() << '\n'; }
  void say(const std::string& text) const {
    if (verbose_) std::cerr << text << '\n';
  }

 private:
  bool verbose_;
};

// ---------------------------------------------------------------------------
// Commands

int cmd_decide(const Output& out, const FieldOpt& f, const std::string& procedure, long long i, long long j) {
  resolve_field(f);
  std::optional<DecisionTrace> t;
  if (procedure == "standard") {
    t = decide_standard(f, i, j);
  } else if (procedure == "semantic") {
    if (f.name != "q") throw UsageError("--procedure semantic requires --field q");
    t = decide_Q_semantic(i, j);
  } else if (procedure == "corollary") {
    if (f.name != "fp") throw UsageError("--procedure corollary requires --field fp");
    t = decide_corollaries(f.p, i, j);
  } else {
    if (f.name != "fp") throw UsageError("--procedure diagonal requires --field fp");
    if (i != j) throw UsageError("--procedure diagonal requires i = j");
    t = decide_ii_Zp(f.p, i);
  }
  json params = pair_params(f, i, j);
  params["procedure"] = procedure;
  out.emit(record("decide", params, trace_json(*t)));
  out.say("decide over " + t->field() + " " + pair_text(i, j) + ": " + (t->verdict() ? "member" : "not a member") +
          " (rule " + to_string(t->fired_rule()) + ")");
  return 0;
}

int cmd_structure(const Output& out, const FieldOpt& f, long i, long j) {
  json result = std::visit(
      [&](const auto& field) {
        const auto ideal = build_ideal_I(i, j, field);
        const auto gb = buchberger(ideal);
        json r{{"ring", field.name() + "[s,t]/I"}, {"pair", json::array({ideal.params->first, ideal.params->second})}};
        json gens = json::array();
        for (const auto& p : ideal.generators) gens.push_back(p.str());
        r["generators"] = gens;
        r["basis"] = gb.str_list();
        r["trivial"] = is_trivial(gb);
        if (const auto qb = quotient_basis(gb)) {
          r["dimension"] = qb->size();
          json mons = json::array();
          for (const auto& m : *qb) mons.push_back(monomial_text(m));
          r["standard_monomials"] = mons;
        } else {
          r["dimension"] = "infinite";
          r["standard_monomials"] = nullptr;
        }
        return r;
      },
      resolve_field(f));
  out.emit(record("structure", pair_params(f, i, j), result));
  out.say("structure " + pair_text(i, j) + ": basis " + result["basis"].dump() + ", dimension " +
          result["dimension"].dump());
  return 0;
}

int cmd_witness(const Output& out, const FieldOpt& f, long i, long j) {
  json result = std::visit(
      [&](const auto& field) {
        using Q = QuotientElem<typename std::decay_t<decltype(field)>::element_type>;
        const auto ring = structure_ring(i, j, field);
        const auto w = witness_XY(ring, i, j);
        const Q one = ring.one();
        const auto id = Mat2<Q>::identity(one);
        const auto xi = mat_pow(w.X(), static_cast<std::uint64_t>(i), one);
        const auto xj = mat_pow(w.X(), static_cast<std::uint64_t>(j), one);
        const bool rel = xi * w.Y() + w.Y() * xj == id;
        const bool square = (w.Y() * w.Y()).is_zero();
        const bool swapped = xj * w.Y() + w.Y() * xi == id;
        if (!rel || !square || !swapped) throw InconsistencyError("witness: relations fail after construction");
        json r{{"ring", w.ring()}, {"basis", ring.basis()->str_list()}, {"X", matrix_json(w.X())},
               {"Y", matrix_json(w.Y())}};
        r["verified"] = json{{"x^i y + y x^j = 1", rel}, {"y^2 = 0", square}, {"x^j y + y x^i = 1", swapped}};
        return r;
      },
      resolve_field(f));
  out.emit(record("witness", pair_params(f, i, j), result));
  out.say("witness over " + result["ring"].get<std::string>() + ": X = " + result["X"].dump() + ", Y = " +
          result["Y"].dump() + ", relations verified");
  return 0;
}

int cmd_oracle(const Output& out, const FieldOpt& f, const std::string& method, bool full, unsigned threads,
               long long i, long long j) {
  resolve_field(f);
  json report;
  bool found = false;
  if (f.name == "q") {
    if (full || method != "enum") throw UsageError("--field q has only the constructive oracle");
    const auto r = construct_witness_Q(i, j);
    found = r.found();
    report = witness_report_json(r);
  } else {
    const std::uint64_t p = f.prime();
    std::optional<WitnessReport<Fp>> r;
    if (full) {
      if (p > 3) throw UsageError("--full scans every (x, y) pair and is limited to p <= 3");
      r = oracle_enum_fp_full(p, i, j);
    } else if (method == "roots") {
      if (p == 2) throw UsageError("--method roots requires an odd prime");
      r = oracle_roots_fp2(p, i, j);
    } else {
      r = oracle_enum_fp(p, i, j, threads);
    }
    found = r->found();
    report = witness_report_json(*r);
  }
  const auto theorem = decide_standard(f, i, j);
  const bool agrees = theorem.verdict() == found;
  report["theorem_verdict"] = theorem.verdict();
  report["theorem_rule"] = to_string(theorem.fired_rule());
  report["agrees"] = agrees;
  json params = pair_params(f, i, j);
  params["method"] = f.name == "q" ? "construct" : full ? "full" : method;
  out.emit(record("oracle", params, report));
  out.say(std::string("oracle ") + pair_text(i, j) + ": " + (found ? "witness found" : "no witness") +
          ", closed form says " + (theorem.verdict() ? "member" : "not a member") + (agrees ? "" : ", DISAGREEMENT"));
  return agrees ? 0 : 1;
}

struct VerifyOpts {
  long n_max = 6;
  std::size_t words = 0;
  std::size_t max_len = 12;
  std::uint64_t seed = 1;
};

int cmd_verify(const Output& out, const FieldOpt& f, long i, long j, const VerifyOpts& v) {
  if (v.n_max < 1) throw UsageError("--nmax must be positive");
  bool ok = true;
  json result = std::visit(
      [&](const auto& field) {
        const MatrixModel model(i, j, field);
        const auto rep = check_identities(model, v.n_max);
        json checks = json::array();
        for (const auto& c : rep.checks) checks.push_back(json{{"name", c.name}, {"holds", c.holds}});
        json r{{"i", rep.i},           {"j", rep.j},
               {"n_max", rep.n_max},   {"all_hold", rep.all_hold()},
               {"failures", rep.failures()}, {"checks", checks}};
        ok = rep.all_hold();
        if (v.words > 0) {
          const auto rs = build_rewrite_system(i, j, field);
          const auto val = validate_system(rs, model, random_words(v.words, v.max_len, v.seed), v.seed);
          r["validation"] = json{{"words", val.words},
                                 {"soundness_failures", val.soundness_failures},
                                 {"support_violations", val.support_violations},
                                 {"rules_not_decreasing", val.rules_not_decreasing},
                                 {"divergences", val.divergences},
                                 {"budget_exhausted", val.budget_exhausted},
                                 {"sound", val.sound()},
                                 {"examples", val.examples}};
          ok = ok && val.sound();
        }
        return r;
      },
      resolve_field(f));
  json params = pair_params(f, i, j);
  params["n_max"] = v.n_max;
  if (v.words > 0) {
    params["words"] = v.words;
    params["max_len"] = v.max_len;
    params["seed"] = v.seed;
  }
  out.emit(record("verify", params, result));
  out.say("verify " + pair_text(i, j) + ": " + std::to_string(result["checks"].size()) + " identities, " +
          result["failures"].dump() + " failing");
  return ok ? 0 : 1;
}

Strategy parse_strategy(const std::string& s) {
  if (s == "leftmost") return Strategy::LEFTMOST;
  if (s == "rightmost") return Strategy::RIGHTMOST;
  return Strategy::RANDOM;
}

int cmd_reduce(const Output& out, const FieldOpt& f, long i, long j, const std::string& expr,
               const std::string& strategy, std::uint64_t seed, bool text_only) {
  bool verified = false;
  json result = std::visit(
      [&](const auto& field) {
        const auto input = parse_ncpoly(expr, field);
        const auto rs = build_rewrite_system(i, j, field);
        const auto nf = reduce(input, rs, parse_strategy(strategy), seed);
        const MatrixModel model(i, j, field);
        verified = model.equal_in_algebra(input, nf);
        return json{{"input", input.str()}, {"normal_form", nf.str()}, {"verified", verified}};
      },
      resolve_field(f));
  if (!verified) throw InconsistencyError("reduce: normal form differs from the input in the matrix model");
  if (text_only) {
    std::cout << result["normal_form"].get<std::string>() << '\n';
  } else {
    json params = pair_params(f, i, j);
    params["expr"] = expr;
    params["strategy"] = strategy;
    out.emit(record("reduce", params, result));
  }
  out.say(result["input"].get<std::string>() + " -> " + result["normal_form"].get<std::string>() +
          " (checked in the matrix model)");
  return 0;
}

int cmd_table(const Output& out, const FieldOpt& f, long long max, bool with_oracle, unsigned threads) {
  resolve_field(f);
  if (max < 1) throw UsageError("--max must be positive");
  const auto n = static_cast<std::size_t>(max);
  std::vector<std::optional<bool>> oracle(n * n);
  if (with_oracle) {
    if (f.name == "q") {
      for (long long i = 1; i <= max; ++i) {
        for (long long j = 1; j <= max; ++j) oracle[(i - 1) * n + (j - 1)] = construct_witness_Q(i, j).found();
      }
    } else {
      const auto table = oracle_enum_fp_table(f.prime(), max, threads);
      for (std::size_t k = 0; k < table.size(); ++k) oracle[k] = table[k].has_value();
    }
  }
  std::size_t members = 0;
  std::size_t disagreements = 0;
  for (long long i = 1; i <= max; ++i) {
    for (long long j = 1; j <= max; ++j) {
      const auto t = decide_standard(f, i, j);
      json r{{"verdict", t.verdict()}, {"rule", to_string(t.fired_rule())}};
      if (t.verdict()) ++members;
      if (with_oracle) {
        const bool found = *oracle[(i - 1) * n + (j - 1)];
        const bool agrees = found == t.verdict();
        r["oracle_found"] = found;
        r["agrees"] = agrees;
        if (!agrees) ++disagreements;
      }
      out.line(record("table", pair_params(f, i, j), r));
    }
  }
  out.say("table: " + std::to_string(n * n) + " records, " + std::to_string(members) + " members" +
          (with_oracle ? ", " + std::to_string(disagreements) + " disagreements with the oracle" : std::string()));
  return disagreements == 0 ? 0 : 1;
}

int cmd_selftest(const Output& out, const std::string& config_path) {
  cli::SelftestConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw UsageError("cannot read config file " + config_path);
    try {
      const auto j = nlohmann::json::parse(in);
      const nlohmann::json known = cli::SelftestConfig{};
      if (!j.is_object()) throw UsageError("config file " + config_path + " must hold a JSON object");
      for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) throw UsageError("unknown config key '" + key + "' in " + config_path);
      }
      cfg = j.get<cli::SelftestConfig>();
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("bad config file " + config_path + ": " + e.what());
    }
  }
  const auto results = cli::run_selftest(cfg);
  bool passed = true;
  json suites = json::array();
  for (const auto& r : results) {
    passed = passed && r.passed();
    suites.push_back(
        json{{"module", r.module}, {"checks", r.checks}, {"failures", r.failure_count}, {"examples", r.failures}});
    out.say((r.passed() ? "PASS " : "FAIL ") + r.module + ": " + std::to_string(r.checks) + " checks, " +
            std::to_string(r.failure_count) + " failures, " + std::to_string(r.seconds) + " s");
  }
  json params = nlohmann::json(cfg);
  out.emit(record("selftest", params, json{{"passed", passed}, {"suites", suites}}));
  return passed ? 0 : 1;
}

int cmd_fpoly(const Output& out, const FieldOpt& f, std::size_t n) {
  json result = std::visit(
      [&](const auto& field) {
        json r{{"n", n}, {"f", f_st(n, field).str()}, {"fbar", fbar(n, field).str()},
               {"trace", trace_poly(n, field).str()}};
        if (n >= 1) {
          const auto c = companion_power(n, field);
          r["companion_power"] = matrix_json(c);
        }
        return r;
      },
      resolve_field(f));
  json params = f.to_json();
  params["n"] = n;
  out.emit(record("fpoly", params, result));
  out.say("f(" + std::to_string(n) + ") = " + result["f"].get<std::string>());
  return 0;
}

// ---------------------------------------------------------------------------

void add_field_options(CLI::App* sub, FieldOpt& f, bool allow_f2 = true) {
  std::vector<std::string> names{"q", "fp"};
  if (allow_f2) names.insert(names.begin() + 1, "f2");
  sub->add_option("--field", f.name, "Coefficient field")->check(CLI::IsMember(names))->capture_default_str();
  sub->add_option("--p", f.p, "Prime for --field fp")->check([](const std::string& s) {
    std::uint64_t v = 0;
    try {
      v = std::stoull(s);
    } catch (const std::exception&) {
      return std::string("not an integer: ") + s;
    }
    return is_prime(v) ? std::string() : s + " is not prime";
  });
}

template <class I>
void add_pair(CLI::App* sub, I& i, I& j) {
  sub->add_option("i", i, "First exponent")->required()->check(CLI::PositiveNumber);
  sub->add_option("j", j, "Second exponent")->required()->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matrix-ring recognition for x^i y + y x^j = 1, y^2 = 0"};
  app.require_subcommand(1);
  app.fallthrough();
  bool verbose = false;
  app.add_flag("--verbose,-v", verbose, "Human-readable summary on stderr");

  std::function<int(const Output&)> run;

  FieldOpt f;
  long long i = 0, j = 0;
  unsigned threads = 0;

  auto* decide = app.add_subcommand("decide", "Closed-form membership decision (DecisionTrace JSON)");
  std::string procedure = "standard";
  add_field_options(decide, f);
  decide->add_option("--procedure", procedure, "standard | semantic (q) | corollary (fp) | diagonal (fp, i = j)")
      ->check(CLI::IsMember({"standard", "semantic", "corollary", "diagonal"}))
      ->capture_default_str();
  add_pair(decide, i, j);
  decide->callback([&] { run = [&](const Output& o) { return cmd_decide(o, f, procedure, i, j); }; });

  auto* structure = app.add_subcommand("structure", "Ideal I, reduced Groebner basis and quotient dimension");
  add_field_options(structure, f);
  add_pair(structure, i, j);
  structure->callback([&] { run = [&](const Output& o) { return cmd_structure(o, f, i, j); }; });

  auto* witness = app.add_subcommand("witness", "Generic witness matrices X, Y over K[s,t]/I");
  add_field_options(witness, f);
  add_pair(witness, i, j);
  witness->callback([&] { run = [&](const Output& o) { return cmd_witness(o, f, i, j); }; });

  auto* oracle = app.add_subcommand("oracle", "Brute-force or constructive witness search (WitnessReport JSON)");
  bool full = false;
  std::string method = "enum";
  add_field_options(oracle, f);
  oracle->add_flag("--full", full, "Scan every (x, y) pair instead of fixing y = E12 (p <= 3)");
  oracle->add_option("--method", method, "enum | roots")->check(CLI::IsMember({"enum", "roots"}))->capture_default_str();
  oracle->add_option("--threads", threads, "Worker threads, 0 = available parallelism")->capture_default_str();
  add_pair(oracle, i, j);
  oracle->callback([&] { run = [&](const Output& o) { return cmd_oracle(o, f, method, full, threads, i, j); }; });

  auto* verify = app.add_subcommand("verify", "Structural identities through the matrix model");
  VerifyOpts vopts;
  add_field_options(verify, f);
  verify->add_option("--nmax", vopts.n_max, "Largest n in the expansion identities")->capture_default_str();
  verify->add_option("--words", vopts.words, "Also validate the rewrite system on this many random words")
      ->capture_default_str();
  verify->add_option("--max-len", vopts.max_len, "Maximum random word length")->capture_default_str();
  verify->add_option("--seed", vopts.seed, "Random seed")->capture_default_str();
  add_pair(verify, i, j);
  verify->callback([&] { run = [&](const Output& o) { return cmd_verify(o, f, i, j, vopts); }; });

  auto* reduce_cmd = app.add_subcommand("reduce", "Normal form of a noncommutative polynomial in x, y");
  std::string expr;
  std::string strategy = "leftmost";
  std::uint64_t seed = 0;
  bool text_only = false;
  add_field_options(reduce_cmd, f);
  reduce_cmd->add_option("--strategy", strategy, "leftmost | rightmost | random")
      ->check(CLI::IsMember({"leftmost", "rightmost", "random"}))
      ->capture_default_str();
  reduce_cmd->add_option("--seed", seed, "Seed for --strategy random")->capture_default_str();
  reduce_cmd->add_flag("--text", text_only, "Print only the normal form");
  add_pair(reduce_cmd, i, j);
  reduce_cmd->add_option("expr", expr, "Expression such as \"y*x^3 - 2*x*y\"")->required();
  reduce_cmd->callback(
      [&] { run = [&](const Output& o) { return cmd_reduce(o, f, i, j, expr, strategy, seed, text_only); }; });

  auto* table = app.add_subcommand("table", "Membership table for 1 <= i, j <= N as JSON lines");
  long long max = 0;
  bool with_oracle = false;
  add_field_options(table, f);
  table->add_option("--max", max, "Largest exponent")->required()->check(CLI::PositiveNumber);
  table->add_flag("--oracle", with_oracle, "Add oracle_found and agrees columns");
  table->add_option("--threads", threads, "Worker threads, 0 = available parallelism")->capture_default_str();
  table->callback([&] { run = [&](const Output& o) { return cmd_table(o, f, max, with_oracle, threads); }; });

  auto* selftest = app.add_subcommand("selftest", "Property suites of every module");
  std::string config;
  selftest->add_option("--config", config, "JSON file with sweep bounds (defaults documented in README)");
  selftest->callback([&] { run = [&](const Output& o) { return cmd_selftest(o, config); }; });

  auto* fpoly = app.add_subcommand("fpoly", "Print f(n), fbar(n), the trace polynomial and the companion power");
  std::size_t n = 0;
  add_field_options(fpoly, f);
  fpoly->add_option("n", n, "Index")->required();
  fpoly->callback([&] { run = [&](const Output& o) { return cmd_fpoly(o, f, n); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  // A bare --p selects the prime field.
  for (const CLI::App* sub : app.get_subcommands()) {
    const CLI::Option* field_opt = sub->get_option_no_throw("--field");
    if (field_opt != nullptr && field_opt->count() == 0 && f.p != 0) f.name = "fp";
  }

  const Output out(verbose);
  try {
    return run(out);
  } catch (const InconsistencyError& e) {
    std::cerr << "inconsistency: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
