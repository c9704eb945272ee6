// wittcls command-line front end. Every command prints one JSON report on
// stdout (and to --out when given) and a one-line summary on stderr.
// Exit codes: 0 pass, 1 fail or counterexample, 2 usage or input error,
// 3 undecided within the budget.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wittcls/campaigns.hpp"
#include "wittcls/io.hpp"

using namespace wittcls;

namespace {

enum class Status { pass, fail, counterexample, unknown };

std::string to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::counterexample:
      return "counterexample";
    case Status::unknown:
      return "unknown";
  }
  return "?";
}

int exit_code(Status s) {
  switch (s) {
    case Status::pass:
      return 0;
    case Status::fail:
    case Status::counterexample:
      return 1;
    case Status::unknown:
      return 3;
  }
  return 1;
}

struct Config {
  std::string field = "Q";
  std::uint64_t seed = 1;
  long samples = 1000;
  long budget = kDefaultRewriteBudget;
  long height = 12;
  std::string out;
  std::string cocycle;
  std::string mode;
  std::string eta = "1";
  std::string torus_field = "Q(sqrt,-3)";
  long genus = 2;
  std::string rep_file;
  std::vector<std::string> exprs;

  EqualityOptions options() const {
    EqualityOptions o;
    o.budget = budget;
    return o;
  }
};

struct Report {
  std::string command;
  Json parameters = Json::object();
  Status status = Status::pass;
  Json data = Json::object();
  Json counts = Json::object();
};

Status verdict_status(const EqualityVerdict& v) {
  if (v.equal()) return Status::pass;
  return v.unknown() ? Status::unknown : Status::fail;
}

Json to_json(const Counterexample& c) {
  Json inputs = Json::array(), values = Json::array();
  for (const Mat2& m : c.inputs) inputs.push_back(wittcls::to_json(m));
  for (const WittExpression& q : c.values) values.push_back(wittcls::to_json(q));
  return {{"inputs", inputs}, {"values", values}, {"note", c.note}};
}

void absorb(Report& rep, const CheckReport& r) {
  rep.counts["samples"] = r.samples;
  rep.counts["passed"] = r.passed;
  rep.counts["failed"] = r.failed;
  rep.counts["unknown"] = r.unknown;
  for (const auto& [k, v] : r.counts) rep.counts[k] = v;
  rep.data["check"] = r.check;
  rep.data["unknown_rate"] = r.unknown_rate();
  if (r.failed > 0) {
    rep.status = r.counterexample ? Status::counterexample : Status::fail;
    if (r.counterexample) rep.data["counterexample"] = to_json(*r.counterexample);
  } else {
    rep.status = r.unknown > 0 ? Status::unknown : Status::pass;
  }
}

Json common_parameters(const Config& c) {
  return {{"field", c.field}, {"seed", c.seed}, {"samples", c.samples}, {"budget", c.budget}, {"height", c.height}};
}

CocycleKind cocycle_or(const Config& c, CocycleKind fallback) {
  if (c.cocycle.empty()) return fallback;
  auto k = parse_cocycle_kind(c.cocycle);
  if (!k) throw DomainError("unknown cocycle kind '" + c.cocycle + "'");
  return *k;
}

// verify -----------------------------------------------------------------

Report verify_cocycle(const Config& c) {
  Report r{"verify cocycle"};
  CocycleKind k = cocycle_or(c, CocycleKind::witt_psl2);
  Field f = parse_field(c.field);
  r.parameters = common_parameters(c);
  r.parameters["cocycle"] = wittcls::to_string(k);
  absorb(r, is_cocycle(k, f, c.samples, c.seed, c.options(), {}, c.height));
  return r;
}

Report verify_prop52_cmd(const Config& c) {
  Report r{"verify prop52"};
  Field f = parse_field(c.field);
  r.parameters = common_parameters(c);
  absorb(r, verify_prop52(f, c.samples, c.seed, c.options(), c.height));
  return r;
}

Report verify_thm53_cmd(const Config& c) {
  Report r{"verify thm53"};
  Field f = parse_field(c.field);
  r.parameters = common_parameters(c);
  absorb(r, verify_thm53(f, c.samples, c.seed, c.options(), {}, c.height));
  return r;
}

Report verify_equicomm(const Config& c) {
  Report r{"verify equicomm"};
  CocycleKind k = cocycle_or(c, CocycleKind::witt_psl2);
  Field f = parse_field(c.field);
  EquicommMode mode = is_psl(k) ? EquicommMode::psl_commuting : EquicommMode::plus_commuting;
  if (c.mode == "plus") mode = EquicommMode::plus_commuting;
  else if (c.mode == "psl") mode = EquicommMode::psl_commuting;
  else if (!c.mode.empty()) throw DomainError("--mode must be 'plus' or 'psl'");
  r.parameters = common_parameters(c);
  r.parameters["cocycle"] = wittcls::to_string(k);
  r.parameters["mode"] = mode == EquicommMode::plus_commuting ? "plus" : "psl";
  CheckReport cr = equicommutativity_scan(k, f, mode, c.samples, c.seed, c.options());
  absorb(r, cr);
  r.data["stufe"] = wittcls::to_string(stufe(f));
  if (cr.counterexample && cr.counterexample->values.size() == 2) {
    // certify the two values differ, independently of the scan
    const auto& v = cr.counterexample->values;
    EqualityVerdict d = witt_equal(v[0], v[1], c.options());
    r.data["counterexample"]["values_distinct"] = d.not_equal();
    r.data["counterexample"]["distinctness_reason"] = d.reason;
    r.data["counterexample"]["minus_one_is_square"] = is_square(-Element::one(f));
  }
  return r;
}

Report verify_steinberg(const Config& c) {
  Report r{"verify steinberg"};
  Field f = parse_field(c.field);
  r.parameters = common_parameters(c);
  absorb(r, steinberg_scan(f, c.samples, c.seed, c.options(), c.height));
  return r;
}

// eval / realize / audit / demo -----------------------------------------

Json witt_summary(const WittExpression& q, const EqualityOptions& opt) {
  Json j = wittcls::to_json(q);
  EqualityVerdict z = witt_is_zero(q, opt);
  j["is_zero"] = wittcls::to_string(z.verdict);
  IdealMembership m = ideal_membership(q);
  j["in_I"] = m.in_I;
  j["in_I2"] = m.in_I2;
  j["in_I2_plus"] = m.in_I2_plus;
  if (q.field().kind() == FieldKind::rationals) {
    try {
      j["witt_norm"] = witt_norm(q);
      j["signature"] = signature(q);
    } catch (const FactorizationLimit&) {
      j["witt_norm"] = nullptr;
    }
  }
  return j;
}

Report eval_cmd(const Config& c) {
  Report r{"eval"};
  std::ifstream in(c.rep_file);
  if (!in) throw DomainError("cannot read " + c.rep_file);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0, c.rep_file);
  }
  SurfaceRep rep = surface_rep_from_json(doc);
  CocycleKind k = cocycle_or(c, rep.group == GroupType::psl2 ? CocycleKind::corrected_psl2 : CocycleKind::moore);
  r.parameters = {{"file", c.rep_file}, {"cocycle", wittcls::to_string(k)}, {"budget", c.budget}};
  WittExpression v = eval_closed_surface(rep, k);
  r.data["representation"] = wittcls::to_json(rep);
  r.data["value"] = witt_summary(v, c.options());
  return r;
}

Report realize_torus(const Config& c) {
  Report r{"realize torus"};
  Field f = parse_field(c.torus_field);
  Element eta = parse_element(f, c.eta);
  if (eta.is_zero()) throw DomainError("--eta must be nonzero");
  r.parameters = {{"field", c.torus_field}, {"eta", eta.to_string()}, {"budget", c.budget}};
  TorusRealization t = torus_realize(f, eta, CocycleKind::corrected_psl2, {}, c.options());
  r.data["representation"] = wittcls::to_json(t.rep);
  r.data["params"] = {{"gamma", t.params.gamma.to_string()},
                      {"delta", t.params.delta.to_string()},
                      {"t", t.params.t.to_string()}};
  r.data["value"] = wittcls::to_json(t.value);
  r.data["expected"] = format_form({eta, eta});
  r.data["matches"] = wittcls::to_string(t.matches.verdict);
  r.status = verdict_status(t.matches);
  return r;
}

Report audit_mw(const Config& c) {
  Report r{"audit mw"};
  Field f = parse_field(c.field);
  CocycleKind k = cocycle_or(c, CocycleKind::witt_psl2);
  if (c.genus < 1) throw DomainError("--genus must be positive");
  r.parameters = common_parameters(c);
  r.parameters["genus"] = c.genus;
  r.parameters["cocycle"] = wittcls::to_string(k);
  MilnorWoodReport m = milnor_wood_audit(f, c.genus, c.samples, c.seed, k);
  r.counts = {{"samples", m.samples}, {"nonzero", m.nonzero}, {"violations", m.violations}};
  for (const auto& [fam, n] : m.families) r.counts["family_" + fam] = n;
  r.data = {{"max_norm", m.max_norm},
            {"max_abs_signature", m.max_abs_signature},
            {"norm_bound", m.norm_bound},
            {"signature_bound", m.signature_bound}};
  if (m.worst) {
    r.data["worst"] = {{"representation", wittcls::to_json(*m.worst)}, {"value", wittcls::to_json(m.worst_value)}};
  }
  r.status = m.pass() ? Status::pass : Status::fail;
  return r;
}

Json inert_report_json(const InertAnisotropyReport& a) {
  Json even = Json::array(), odd = Json::array();
  for (const Element& e : a.even_part) even.push_back(e.to_string());
  for (const Element& e : a.odd_part) odd.push_back(e.to_string());
  return {{"even_part", even}, {"odd_part", odd}, {"verdict", wittcls::to_string(a.verdict)}};
}

Report demo_remark44(const Config& c) {
  Report r{"demo remark44"};
  r.parameters = {{"budget", c.budget}};
  Remark44Demo d = remark44_demo(c.options());
  r.data["field"] = "Q(sqrt,-3)";
  r.data["eps"] = "-1/2+1/2*r";
  r.data["prime"] = 5;
  r.data["order_of_minus_2_plus_eps"] = d.order.get_str();
  r.data["q"] = format_form(d.q);
  r.data["q_local"] = inert_report_json(d.q_report);
  r.data["q_prime_local"] = inert_report_json(d.q_prime_report);
  r.data["checks"] = {{"order_is_24", d.order_is_24},
                      {"minus_one_square_mod_5", d.minus_one_square_mod_5},
                      {"q_anisotropic_at_5", d.q_anisotropic},
                      {"q_prime_anisotropic_at_5", d.q_prime_anisotropic},
                      {"certificate_issued", d.certificate.has_value()}};
  if (d.certificate) r.data["certificate"] = d.certificate->inference;
  r.data["twice_q_is_zero"] = d.twice_is_zero;
  r.data["q_is_nonzero"] = d.nonzero;
  r.status = d.all() ? Status::pass : Status::fail;
  return r;
}

// witt -------------------------------------------------------------------

Report witt_equal_cmd(const Config& c) {
  Report r{"witt equal"};
  if (c.exprs.size() != 2) throw DomainError("witt equal takes two expressions");
  Field f = parse_field(c.field);
  WittExpression a = parse_witt(f, c.exprs[0]), b = parse_witt(f, c.exprs[1]);
  r.parameters = {{"field", c.field}, {"lhs", c.exprs[0]}, {"rhs", c.exprs[1]}, {"budget", c.budget}};
  EqualityVerdict v = witt_equal(a, b, c.options());
  r.data = {{"verdict", wittcls::to_string(v.verdict)}, {"reason", v.reason}};
  r.status = verdict_status(v);
  return r;
}

Report witt_norm_cmd(const Config& c) {
  Report r{"witt norm"};
  if (c.exprs.size() != 1) throw DomainError("witt norm takes one expression");
  Field f = parse_field(c.field);
  if (f.kind() != FieldKind::rationals) throw DomainError("witt norm works over Q");
  WittExpression q = parse_witt(f, c.exprs[0]);
  r.parameters = {{"field", c.field}, {"expression", c.exprs[0]}};
  try {
    r.data = {{"witt_norm", witt_norm(q)}, {"signature", signature(q)}};
  } catch (const FactorizationLimit& e) {
    r.data = {{"reason", e.what()}};
    r.status = Status::unknown;
  }
  return r;
}

Report witt_membership_cmd(const Config& c) {
  Report r{"witt membership"};
  if (c.exprs.size() != 1) throw DomainError("witt membership takes one expression");
  Field f = parse_field(c.field);
  WittExpression q = parse_witt(f, c.exprs[0]);
  r.parameters = {{"field", c.field}, {"expression", c.exprs[0]}};
  IdealMembership m = ideal_membership(q);
  r.data = {{"in_I", m.in_I}, {"in_I2", m.in_I2}, {"in_I2_plus", m.in_I2_plus}};
  if (m.in_I) r.data["signed_determinant"] = square_class_representative(signed_determinant_of(f, q.diagonal())).to_string();
  return r;
}

// output -----------------------------------------------------------------

int emit(const Report& r, const Config& c, double seconds) {
  Json j = {{"command", r.command},
            {"parameters", r.parameters},
            {"status", to_string(r.status)},
            {"data", r.data},
            {"counts", r.counts},
            {"elapsed_seconds", seconds}};
  std::string text = j.dump(2);
  std::cout << text << "\n";
  if (!c.out.empty()) {
    std::ofstream o(c.out);
    if (!o) {
      std::cerr << "wittcls: cannot write " << c.out << "\n";
      return 2;
    }
    o << text << "\n";
  }
  std::ostringstream s;
  s << r.command << ": " << to_string(r.status);
  if (r.counts.contains("samples")) {
    s << " (samples " << r.counts["samples"];
    if (r.counts.contains("failed")) s << ", failed " << r.counts["failed"] << ", unknown " << r.counts["unknown"];
    s << ")";
  }
  s << " in " << seconds << " s";
  std::cerr << s.str() << "\n";
  return exit_code(r.status);
}

int emit_error(const std::string& command, const std::string& message) {
  Json j = {{"command", command}, {"status", "error"}, {"error", message}};
  std::cout << j.dump(2) << "\n";
  std::cerr << "wittcls: " << message << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Witt-class cocycles and surface bundles"};
  app.require_subcommand(1);
  Config cfg;
  std::function<Report(const Config&)> action;
  std::string command;

  auto sampling = [&](CLI::App* s) {
    s->add_option("--field", cfg.field, "field descriptor, see FORMATS.md")->capture_default_str();
    s->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    s->add_option("--samples", cfg.samples, "number of samples")->capture_default_str()->check(CLI::NonNegativeNumber);
    s->add_option("--budget", cfg.budget, "rewrite-engine step budget")->capture_default_str()->check(CLI::PositiveNumber);
    s->add_option("--height", cfg.height, "height bound for sampled entries")->capture_default_str()->check(CLI::PositiveNumber);
    s->add_option("--out", cfg.out, "also write the report to this file");
  };
  auto plain = [&](CLI::App* s) {
    s->add_option("--budget", cfg.budget, "rewrite-engine step budget")->capture_default_str()->check(CLI::PositiveNumber);
    s->add_option("--out", cfg.out, "also write the report to this file");
  };
  auto bind = [&](CLI::App* s, std::string name, Report (*fn)(const Config&)) {
    s->callback([&, name, fn] {
      command = name;
      action = fn;
    });
  };

  CLI::App* verify = app.add_subcommand("verify", "sampled verification campaigns");
  verify->require_subcommand(1);
  {
    CLI::App* s = verify->add_subcommand("cocycle", "cocycle identity on sampled triples");
    sampling(s);
    s->add_option("--cocycle", cfg.cocycle, "witt-sl2, witt-psl2, moore, corrected-sl2, corrected-psl2");
    bind(s, "verify cocycle", verify_cocycle);
    s = verify->add_subcommand("prop52", "corrected SL2 cocycle equals the Moore cocycle");
    sampling(s);
    bind(s, "verify prop52", verify_prop52_cmd);
    s = verify->add_subcommand("thm53", "corrected PSL2 cocycle takes values in I^2_+");
    sampling(s);
    bind(s, "verify thm53", verify_thm53_cmd);
    s = verify->add_subcommand("equicomm", "c(x,y) = c(y,x) on commuting pairs");
    sampling(s);
    s->add_option("--cocycle", cfg.cocycle, "cocycle kind (default witt-psl2)");
    s->add_option("--mode", cfg.mode, "plus or psl (default from the cocycle kind)");
    bind(s, "verify equicomm", verify_equicomm);
    s = verify->add_subcommand("steinberg", "Steinberg relations for the Pfister map");
    sampling(s);
    bind(s, "verify steinberg", verify_steinberg);
  }

  CLI::App* ev = app.add_subcommand("eval", "evaluate a closed surface representation");
  ev->add_option("rep", cfg.rep_file, "representation JSON file")->required();
  ev->add_option("--cocycle", cfg.cocycle, "cocycle kind (default corrected-psl2 or moore)");
  plain(ev);
  bind(ev, "eval", eval_cmd);

  CLI::App* realize = app.add_subcommand("realize", "build representations");
  realize->require_subcommand(1);
  {
    CLI::App* s = realize->add_subcommand("torus", "torus bundle with class <eta, eta>");
    s->add_option("--field", cfg.torus_field, "a field of Stufe 2")->capture_default_str();
    s->add_option("--eta", cfg.eta, "nonzero element literal")->capture_default_str();
    plain(s);
    bind(s, "realize torus", realize_torus);
  }

  CLI::App* audit = app.add_subcommand("audit", "audits");
  audit->require_subcommand(1);
  {
    CLI::App* s = audit->add_subcommand("mw", "Milnor-Wood bounds on sampled closed representations");
    sampling(s);
    s->add_option("--genus", cfg.genus, "surface genus")->capture_default_str();
    s->add_option("--cocycle", cfg.cocycle, "PSL2 or SL2 cocycle kind (default witt-psl2)");
    bind(s, "audit mw", audit_mw);
  }

  CLI::App* demo = app.add_subcommand("demo", "worked examples");
  demo->require_subcommand(1);
  {
    CLI::App* s = demo->add_subcommand("remark44", "an I^2 class that is not in 2I over Q(sqrt -3)");
    plain(s);
    bind(s, "demo remark44", demo_remark44);
  }

  CLI::App* witt = app.add_subcommand("witt", "Witt ring queries");
  witt->require_subcommand(1);
  {
    CLI::App* s = witt->add_subcommand("equal", "decide q1 = q2 in W(K)");
    s->add_option("--field", cfg.field, "field descriptor")->capture_default_str();
    s->add_option("exprs", cfg.exprs, "two Witt expressions, e.g. '<1,1>' '<2,2>'")->expected(2);
    plain(s);
    bind(s, "witt equal", witt_equal_cmd);
    s = witt->add_subcommand("norm", "anisotropic dimension over Q");
    s->add_option("--field", cfg.field, "field descriptor")->capture_default_str();
    s->add_option("expr", cfg.exprs, "a Witt expression")->expected(1);
    plain(s);
    bind(s, "witt norm", witt_norm_cmd);
    s = witt->add_subcommand("membership", "membership in I, I^2 and I^2_+");
    s->add_option("--field", cfg.field, "field descriptor")->capture_default_str();
    s->add_option("expr", cfg.exprs, "a Witt expression")->expected(1);
    plain(s);
    bind(s, "witt membership", witt_membership_cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (!action) return emit_error("", "no command given");

  auto t0 = std::chrono::steady_clock::now();
  try {
    Report r = action(cfg);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return emit(r, cfg, secs);
  } catch (const std::exception& e) {
    return emit_error(command, e.what());
  }
}
