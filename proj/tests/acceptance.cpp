// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "wittcls/campaigns.hpp"

using namespace wittcls;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string brief(const CheckReport& r) {
  std::ostringstream s;
  s << r.check << " " << r.passed << "/" << r.samples;
  if (r.failed) s << " failed " << r.failed;
  if (r.unknown) s << " unknown " << r.unknown;
  return s.str();
}

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;

  void need(bool cond, const std::string& note) {
    ok = ok && cond;
    notes.push_back((cond ? "" : "!") + note);
  }
};

const std::vector<Field>& supported_fields() {
  static const std::vector<Field> fields = {Field::rationals(),  Field::quadratic(-1), Field::quadratic(-3),
                                            Field::quadratic(2), Field::quadratic(-5), Field::prime(7),
                                            Field::prime(13),    Field::prime_square(3)};
  return fields;
}

Outcome cocycle_identity() {
  Outcome o;
  const CocycleKind kinds[] = {CocycleKind::witt_psl2, CocycleKind::moore, CocycleKind::corrected_sl2,
                               CocycleKind::corrected_psl2};
  for (CocycleKind k : kinds) {
    auto t0 = Clock::now();
    CheckReport r = is_cocycle(k, Field::rationals(), 10000, 101);
    double secs = since(t0);
    std::ostringstream s;
    s << "Q " << brief(r) << " " << static_cast<int>(secs) << "s";
    o.need(r.pass() && r.samples == 10000 && secs < 60.0, s.str());
  }
  for (const Field& f : {Field::quadratic(-1), Field::quadratic(-3)}) {
    for (CocycleKind k : kinds) {
      CheckReport r = is_cocycle(k, f, 1000, 102);
      std::ostringstream s;
      s << f.name() << " " << brief(r) << " unknown-rate " << r.unknown_rate();
      o.need(r.failed == 0 && r.samples == 1000 && r.unknown_rate() <= 0.05, s.str());
    }
  }
  return o;
}

Outcome prop52() {
  Outcome o;
  CheckReport r = verify_prop52(Field::rationals(), 10000, 103);
  o.need(r.pass() && r.passed == 10000, brief(r));
  return o;
}

Outcome equicommutativity() {
  Outcome o;
  for (const Field& f : {Field::rationals(), Field::quadratic(-1)}) {
    for (EquicommMode mode : {EquicommMode::plus_commuting, EquicommMode::psl_commuting}) {
      CheckReport r = equicommutativity_scan(CocycleKind::witt_psl2, f, mode, 500, 104);
      o.need(r.pass() && r.samples > 0, f.name() + " " + brief(r));
    }
  }
  Field f = Field::quadratic(-3);
  CheckReport r = equicommutativity_scan(CocycleKind::witt_psl2, f, EquicommMode::psl_commuting, 200, 1);
  bool have = r.counterexample && r.counterexample->values.size() == 2;
  o.need(have, "Q(sqrt,-3) counterexample produced");
  if (!have) return o;
  const WittExpression& a = r.counterexample->values[0];
  const WittExpression& b = r.counterexample->values[1];
  // shape <c> versus <-c>
  auto da = a.diagonal(), db = b.diagonal();
  bool shape = da.size() == 1 && db.size() == 1 && da[0] == -db[0];
  o.need(shape, "values " + a.to_string() + " vs " + b.to_string());
  o.need(witt_equal(a, b).not_equal(), "values certified distinct");
  o.need(!is_square(-Element::one(f)), "-1 is not a square");
  return o;
}

Outcome thm53() {
  Outcome o;
  for (const Field& f : supported_fields()) {
    CheckReport r = verify_thm53(f, 1000, 105);
    o.need(r.pass() && r.passed == 1000, f.name() + " " + std::to_string(r.passed) + "/1000");
  }
  return o;
}

Outcome commutator_formulas() {
  Outcome o;
  CheckReport r = commutator_formula_scan(Field::quadratic(-3), 100, 106);
  o.need(r.pass() && r.samples >= 100, "Q(sqrt,-3) " + brief(r));
  CheckReport d = degenerate_commutator_scan(Field::quadratic(-1), 100, 107);
  o.need(d.pass() && d.samples > 0, "Q(i) " + brief(d));
  return o;
}

Outcome remark44() {
  Outcome o;
  Remark44Demo d = remark44_demo();
  o.need(d.order_is_24, "order " + d.order.get_str());
  o.need(d.minus_one_square_mod_5, "-1 square mod 5");
  o.need(d.q_anisotropic, "q anisotropic at 5");
  o.need(d.q_prime_anisotropic, "q' anisotropic at 5");
  o.need(d.certificate.has_value(), "2I-exclusion certificate");
  return o;
}

Outcome torus() {
  Outcome o;
  CheckReport r = torus_scan(Field::quadratic(-3), 50, 108);
  o.need(r.pass() && r.passed == 50, brief(r));
  return o;
}

Outcome milnor_wood() {
  Outcome o;
  Field q = Field::rationals();
  MilnorWoodReport g1 = milnor_wood_audit(q, 1, 1000, 109);
  o.need(g1.pass() && g1.nonzero == 0 && g1.samples == 1000,
         "genus 1: " + std::to_string(g1.samples) + " reps, " + std::to_string(g1.nonzero) + " nonzero");
  MilnorWoodReport g2 = milnor_wood_audit(q, 2, 500, 3);
  o.need(g2.pass() && g2.samples == 500 && g2.max_norm <= 6 && g2.max_abs_signature <= 4,
         "genus 2: max norm " + std::to_string(g2.max_norm) + ", max |sig| " + std::to_string(g2.max_abs_signature));
  return o;
}

Outcome four_torsion() {
  Outcome o;
  CheckReport r = four_torsion_scan(Field::quadratic(-3), 20, 110);
  o.need(r.pass() && r.passed == 20, brief(r));
  return o;
}

Outcome steinberg() {
  Outcome o;
  CheckReport r = steinberg_scan(Field::rationals(), 1000, 111);
  o.need(r.pass() && r.samples >= 1000, brief(r));
  return o;
}

Outcome oracles() {
  Outcome o;
  CheckReport iso = isotropy_oracle_scan(500, 112);
  o.need(iso.pass() && iso.passed == 500, brief(iso) + " bound " + std::to_string(kIsotropySearchBound));
  CheckReport dy = dyadic_oracle_scan();
  o.need(dy.pass() && dy.passed == 64, brief(dy));
  return o;
}

Outcome sigma_independence() {
  Outcome o;
  for (const Field& f : supported_fields()) {
    CheckReport r = sigma_independence_scan(f, 100, 113);
    o.need(r.pass() && r.passed == 100, f.name() + " " + std::to_string(r.passed) + "/100");
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "cocycle identity", cocycle_identity},
      {2, "corrected SL2 cocycle equals Moore (prop52)", prop52},
      {3, "equicommutativity trichotomy", equicommutativity},
      {4, "corrected PSL2 values in I2+ (thm53)", thm53},
      {5, "commutator formulas", commutator_formulas},
      {6, "inert prime demo (remark44)", remark44},
      {7, "torus realization", torus},
      {8, "Milnor-Wood audit", milnor_wood},
      {9, "four-torsion replay", four_torsion},
      {10, "Steinberg relations", steinberg},
      {11, "oracle agreement", oracles},
      {12, "sigma independence", sigma_independence},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.need(false, std::string("exception: ") + e.what());
    }
    std::string notes;
    for (const std::string& n : o.notes) notes += (notes.empty() ? "" : "; ") + n;
    std::printf("%s %2d %s (%.1fs): %s\n", o.ok ? "PASS" : "FAIL", c.number, c.name, since(t0), notes.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
