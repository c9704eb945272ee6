// Local anisotropy at an inert prime, the certificate that a 4-dimensional
// form is not in 2I(K), the four-torsion replay for Stufe 2 fields, and the
// Steinberg symbol relations pushed through {s,t} -> <<s,t>>.

#ifndef WITTCLS_OBSTRUCTION_HPP
#define WITTCLS_OBSTRUCTION_HPP

#include <string>
#include <vector>

#include "wittcls/witt_equal.hpp"

namespace wittcls {

enum class LocalIsotropy { anisotropic, isotropic };

inline std::string to_string(LocalIsotropy v) {
  return v == LocalIsotropy::anisotropic ? "anisotropic" : "isotropic";
}

/// The two residue forms of a diagonal form at an inert prime and the verdict.
struct InertAnisotropyReport {
  std::vector<Element> even_part;  // residues of entries with even valuation
  std::vector<Element> odd_part;   // residues of (entry / p) for odd valuation
  LocalIsotropy verdict = LocalIsotropy::isotropic;
};

/// Anisotropy of a diagonal form over a finite field of odd characteristic.
inline bool residue_form_anisotropic(const std::vector<Element>& e) {
  if (e.size() <= 1) return true;
  if (e.size() >= 3) return false;
  return !is_square(-(e[0] * e[1]));
}

/// Springer's criterion at the inert odd prime p: the form is anisotropic
/// over the completion iff both residue forms are anisotropic.
inline InertAnisotropyReport local_anisotropy_at_inert_prime(const std::vector<Element>& q, const Int& p) {
  InertAnisotropyReport r;
  if (q.empty()) {
    r.verdict = LocalIsotropy::anisotropic;
    return r;
  }
  const Field& f = q.front().field();
  Element P(f, Rat(p));
  for (const Element& a : q) {
    if (a.is_zero()) throw DomainError("local_anisotropy_at_inert_prime: zero entry");
    int v = valuation_at_inert_prime(a, p);
    Element unit = a * P.pow(static_cast<long>(-v));
    Element res = reduce_at_inert_prime(unit, p);
    (v % 2 == 0 ? r.even_part : r.odd_part).push_back(res);
  }
  bool aniso = residue_form_anisotropic(r.even_part) && residue_form_anisotropic(r.odd_part);
  r.verdict = aniso ? LocalIsotropy::anisotropic : LocalIsotropy::isotropic;
  return r;
}

/// Evidence that a 4-dimensional form q is not in 2I(K).
struct Not2ICertificate {
  std::vector<Element> q;
  std::vector<Element> q_prime;  // q with its first entry negated
  Int prime;
  LocalIsotropy q_verdict = LocalIsotropy::isotropic;
  LocalIsotropy q_prime_verdict = LocalIsotropy::isotropic;
  std::vector<std::string> inference;
};

inline std::optional<Not2ICertificate> not_in_2I_certificate(const std::vector<Element>& q, const Int& p) {
  if (q.size() != 4) throw DomainError("not_in_2I_certificate needs a 4-dimensional form");
  std::vector<Element> qp = q;
  qp[0] = -qp[0];
  InertAnisotropyReport a = local_anisotropy_at_inert_prime(q, p);
  InertAnisotropyReport b = local_anisotropy_at_inert_prime(qp, p);
  if (a.verdict != LocalIsotropy::anisotropic || b.verdict != LocalIsotropy::anisotropic) return std::nullopt;
  Not2ICertificate c;
  c.q = q;
  c.q_prime = qp;
  c.prime = p;
  c.q_verdict = a.verdict;
  c.q_prime_verdict = b.verdict;
  c.inference = {
      "q is anisotropic over the completion at " + p.get_str(),
      "q' = q with first entry negated is anisotropic over the completion at " + p.get_str(),
      "if q were in 2I(K) then q = <1,1> * s for a binary form s, so q = <1,1,b,b> up to isometry",
      "q' = q - 2<a1> would then contain <-1,1>, which is isotropic",
      "q' is anisotropic, contradiction: q is not in 2I(K)",
  };
  return c;
}

/// One line of a replayed computation: an equality between two expressions
/// justified by an exact side condition.
struct ReplayStep {
  std::string claim;
  std::string justification;
  bool side_condition_holds = false;
  bool witt_check = false;  // independent decision of the claimed equality
};

struct FourTorsionTranscript {
  Element a;
  Element x, y;  // -1 = x^2 + y^2
  std::vector<ReplayStep> steps;
  bool four_a_is_zero = false;
  bool two_h_is_zero = false;

  bool valid() const {
    for (const ReplayStep& s : steps)
      if (!s.side_condition_holds || !s.witt_check) return false;
    return four_a_is_zero && two_h_is_zero;
  }
};

/// Replays 4<a> = <a> + <a> - <-a> - <-a> = ... = 0 using -1 = x^2 + y^2.
inline FourTorsionTranscript replay_four_torsion(const Field& f, const Element& a, const EqualityOptions& opt = {}) {
  if (a.is_zero()) throw DomainError("replay_four_torsion: a must be nonzero");
  if (!(a.field() == f)) throw FieldMismatch();
  if (stufe(f) != Stufe::two) throw DomainError("replay_four_torsion needs a field of Stufe 2");
  auto w = two_square_witness(f, WitnessPreference::nonzero_product);
  if (!w) throw DomainError("replay_four_torsion: no two-square witness");
  FourTorsionTranscript t{a, w->gamma, w->delta, {}, false, false};
  const Element& x = t.x;
  const Element& y = t.y;
  Element ax2 = a * x * x, ay2 = a * y * y, s = ax2 + ay2, prod = ax2 * ay2 * s;
  auto R = [](const Element& e, long m = 1) { return WittExpression::rank_one(e, m); };
  auto eq = [&](const WittExpression& l, const WittExpression& r) { return witt_equal(l, r, opt).equal(); };

  WittExpression e0 = R(a, 4);
  WittExpression e1 = R(a, 2) - R(-a, 2);
  t.steps.push_back({"4<a> = <a> + <a> - <-a> - <-a>", "<a> + <-a> = 0 (hyperbolic plane)", true, eq(e0, e1)});

  WittExpression e2 = R(a, 2) - R(s) - R(prod);
  bool sc2 = s == -a && !x.is_zero() && !y.is_zero() && same_square_class(prod, -a);
  t.steps.push_back({"= <a> + <a> - <ax^2+ay^2> - <ax^2 ay^2 (ax^2+ay^2)>",
                     "-a = a x^2 + a y^2 and ax^2 ay^2 (ax^2+ay^2) = -a (axy)^2", sc2, eq(e1, e2)});

  WittExpression e3 = R(a, 2) - R(ax2) - R(ay2);
  bool sc3 = !s.is_zero();
  t.steps.push_back({"= <a> + <a> - <ax^2> - <ay^2>", "Witt relation <u,v> = <u+v, uv(u+v)> with u+v != 0", sc3,
                     eq(e2, e3)});

  WittExpression e4 = R(a, 2) - R(a, 2);
  bool sc4 = same_square_class(ax2, a) && same_square_class(ay2, a);
  t.steps.push_back({"= <a> + <a> - <a> - <a>", "<ax^2> = <a> and <ay^2> = <a> since x, y != 0", sc4, eq(e3, e4)});

  t.steps.push_back({"= 0", "cancellation", e4.is_trivially_zero(), witt_is_zero(e4, opt).equal()});

  t.four_a_is_zero = witt_is_zero(e0, opt).equal();
  t.two_h_is_zero = witt_is_zero(2 * WittExpression::h(f), opt).equal() && eq(2 * WittExpression::h(f), R(Element::one(f), 4));
  return t;
}

/// Which Steinberg relations hold for <<.,.>> at (s, t, r).
struct SteinbergCheck {
  bool cocycle_relation = false;  // <<st,r>> + <<s,t>> = <<s,tr>> + <<t,r>>
  bool unit_relation = false;     // <<1,s>> = <<s,1>> = 0
  bool inverse_relation = false;  // <<s,t>> = <<t^-1,s>>
  bool minus_relation = false;    // <<s,t>> = <<s,-st>>
  bool one_minus_relation = true; // <<s,t>> = <<s,(1-s)t>>, s != 1
  bool unknown = false;

  bool all() const { return cocycle_relation && unit_relation && inverse_relation && minus_relation && one_minus_relation; }
};

inline SteinbergCheck verify_steinberg_relation(const Element& s, const Element& t, const Element& r,
                                                const EqualityOptions& opt = {}) {
  if (s.is_zero() || t.is_zero() || r.is_zero()) throw DomainError("verify_steinberg_relation: zero argument");
  const Field& f = s.field();
  Element one = Element::one(f);
  SteinbergCheck c;
  auto check = [&](const WittExpression& l, const WittExpression& rr) {
    EqualityVerdict v = witt_equal(l, rr, opt);
    if (v.unknown()) c.unknown = true;
    return v.equal();
  };
  c.cocycle_relation = check(pfister2(s * t, r) + pfister2(s, t), pfister2(s, t * r) + pfister2(t, r));
  c.unit_relation = check(pfister2(one, s), WittExpression(f)) && check(pfister2(s, one), WittExpression(f));
  c.inverse_relation = check(pfister2(s, t), pfister2(t.inverse(), s));
  c.minus_relation = check(pfister2(s, t), pfister2(s, -(s * t)));
  if (s != one) c.one_minus_relation = check(pfister2(s, t), pfister2(s, (one - s) * t));
  return c;
}

}  // namespace wittcls

#endif  // WITTCLS_OBSTRUCTION_HPP
