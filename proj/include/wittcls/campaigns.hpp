// Sampled verification campaigns built on the modules: Steinberg relations,
// commutator formulas for anti-commuting pairs, torus realization, the
// four-torsion replay, sign-convention independence, the inert-prime chain
// over Q(sqrt -3), and two brute-force oracles for isotropy over Q and
// dyadic Hilbert symbols. Each returns a CheckReport.

#ifndef WITTCLS_CAMPAIGNS_HPP
#define WITTCLS_CAMPAIGNS_HPP

#include <unordered_map>

#include "wittcls/obstruction.hpp"
#include "wittcls/surfaces.hpp"

namespace wittcls {

/// Steinberg relations for <<.,.>> on sampled nonzero (s,t,r).
inline CheckReport steinberg_scan(const Field& f, long samples, std::uint64_t seed, const EqualityOptions& opt = {},
                                  long height = 12) {
  CheckReport r;
  r.check = "steinberg";
  for (long i = 0; i < samples; ++i) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(i));
    Element s = random_nonzero(f, rng, height), t = random_nonzero(f, rng, height), u = random_nonzero(f, rng, height);
    // hit the s = 1 and t = s^-1 corners now and then
    if (i % 10 == 0) s = Element::one(f);
    if (i % 10 == 5) t = s.inverse();
    SteinbergCheck c = verify_steinberg_relation(s, t, u, opt);
    for (auto [name, ok] : {std::pair{"cocycle", c.cocycle_relation}, {"unit", c.unit_relation},
                            {"inverse", c.inverse_relation}, {"minus", c.minus_relation},
                            {"one_minus", c.one_minus_relation}})
      if (ok) ++r.counts[std::string(name) + "_holds"];
    EqualityVerdict v{Verdict::equal, ""};
    if (!c.all()) v = c.unknown ? EqualityVerdict{Verdict::unknown, "undecided relation"}
                                : EqualityVerdict{Verdict::not_equal, "relation fails"};
    r.record(v, [&] {
      return Counterexample{{}, {pfister2(s, t), pfister2(t, u)},
                            "Steinberg relation fails at s=" + s.to_string() + " t=" + t.to_string() +
                                " r=" + u.to_string()};
    });
  }
  return r;
}

/// For sampled eta: the commutator of lifts of the anti-commuting eta-pair,
/// the closed formula and <1,1> - 2<1> + 2<eta> agree, for each kind.
inline CheckReport commutator_formula_scan(const Field& f, long samples, std::uint64_t seed,
                                           const EqualityOptions& opt = {}, long height = 12) {
  CheckReport r;
  r.check = "commutator-formula";
  for (long i = 0; i < samples; ++i) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(i));
    Element eta = random_nonzero(f, rng, height);
    AntiCommutingPair p = build_anticommuting_pair(f, eta);
    WittExpression closed = WittExpression::h(f) - WittExpression::rank_one(Element::one(f), 2) +
                            WittExpression::rank_one(eta, 2);
    for (CocycleKind kind : {CocycleKind::corrected_psl2, CocycleKind::moore, CocycleKind::corrected_sl2}) {
      ExtContext ctx{kind, f, {}};
      ExtElement c = ext_commutator(ext_lift(ctx, p.a), ext_lift(ctx, p.b));
      WittExpression u = c.u + minus_identity_lift_value(kind, f);
      WittExpression rhs = commutator_formula_rhs(p.a, p.b, kind);
      EqualityVerdict v = c.g == ctx.normalize(Mat2::minus_identity(f))
                              ? witt_equal(u, rhs, opt)
                              : EqualityVerdict{Verdict::not_equal, "commutator is not -I"};
      if (v.equal()) v = witt_equal(rhs, closed, opt);
      if (v.equal()) v = witt_equal(u, closed, opt);
      ++r.counts[to_string(kind)];
      r.record(v, [&] {
        return Counterexample{{p.a, p.b}, {u, rhs, closed}, to_string(kind) + ": commutator formula fails"};
      });
    }
  }
  return r;
}

/// Degenerate anti-commuting pairs (gamma = 0 or delta = 0) over a field
/// containing i: the commutator formula gives <1,1> = 0.
inline CheckReport degenerate_commutator_scan(const Field& f, long samples, std::uint64_t seed,
                                              const EqualityOptions& opt = {}, long height = 12) {
  if (stufe(f) != Stufe::one) throw DomainError("degenerate anti-commuting pairs need -1 to be a square");
  CheckReport r;
  r.check = "commutator-formula-degenerate";
  for (long i = 0; i < samples; ++i) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(i));
    DegenerateShape shape = i % 2 ? DegenerateShape::gamma_zero : DegenerateShape::delta_zero;
    AntiCommutingPair p = build_degenerate_anticommuting_pair(random_nonzero(f, rng, height), shape);
    WittExpression rhs = commutator_formula_rhs(p.a, p.b, CocycleKind::moore);
    EqualityVerdict v = witt_equal(rhs, WittExpression::h(f), opt);
    if (v.equal()) v = witt_is_zero(rhs, opt);
    r.record(v, [&] { return Counterexample{{p.a, p.b}, {rhs}, "degenerate pair does not give <1,1> = 0"}; });
  }
  return r;
}

/// torus_realize on sampled eta: the class equals <eta, eta>.
inline CheckReport torus_scan(const Field& f, long samples, std::uint64_t seed, const EqualityOptions& opt = {},
                              long height = 12) {
  CheckReport r;
  r.check = "torus";
  for (long i = 0; i < samples; ++i) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(i));
    Element eta = random_nonzero(f, rng, height);
    TorusRealization t = torus_realize(f, eta, CocycleKind::corrected_psl2, {}, opt);
    EqualityVerdict v = t.matches;
    if (v.equal() && !group_equal(GroupType::psl2, relator_product(t.rep.monodromies), Mat2::identity(f)))
      v = {Verdict::not_equal, "relator is not trivial in PSL2"};
    r.record(v, [&] {
      return Counterexample{t.rep.monodromies, {t.value, WittExpression::rank_one(eta, 2)}, "torus class differs"};
    });
  }
  return r;
}

/// Four-torsion transcripts for sampled a.
inline CheckReport four_torsion_scan(const Field& f, long samples, std::uint64_t seed, const EqualityOptions& opt = {},
                                     long height = 12) {
  CheckReport r;
  r.check = "four-torsion";
  for (long i = 0; i < samples; ++i) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(i));
    Element a = random_nonzero(f, rng, height);
    FourTorsionTranscript t = replay_four_torsion(f, a, opt);
    r.record(t.valid() ? EqualityVerdict{Verdict::equal, ""} : EqualityVerdict{Verdict::not_equal, "invalid step"},
             [&] { return Counterexample{{}, {WittExpression::rank_one(a, 4)}, "four-torsion replay failed"}; });
  }
  return r;
}

/// Closed-surface values under the standard and the flipped positivity.
inline CheckReport sigma_independence_scan(const Field& f, long samples, std::uint64_t seed,
                                           CocycleKind kind = CocycleKind::corrected_psl2,
                                           const EqualityOptions& opt = {}) {
  if (!is_psl(kind)) throw DomainError("sigma_independence_scan needs a PSL2 cocycle");
  CheckReport r;
  r.check = "sigma-independence";
  for (long i = 0; i < samples; ++i) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(i));
    SampledRep s = sample_closed_rep(f, 1 + i % 3, GroupType::psl2, rng);
    ++r.counts[to_string(s.family)];
    WittExpression a = eval_closed_surface(s.rep, kind), b = eval_closed_surface(s.rep, kind, Positivity::reversed());
    r.record(witt_equal(a, b, opt), [&] { return Counterexample{s.rep.monodromies, {a, b}, "value depends on sigma"}; });
  }
  return r;
}

/// The chain of checks for <<2+eps, 5>> over Q(sqrt -3), eps = (-1+sqrt -3)/2.
struct Remark44Demo {
  Int order;                         // multiplicative order of -(2+eps) mod 5
  bool order_is_24 = false;
  bool minus_one_square_mod_5 = false;
  std::vector<Element> q;            // <1, -(2+eps), -5, 5(2+eps)>
  InertAnisotropyReport q_report, q_prime_report;
  bool q_anisotropic = false;
  bool q_prime_anisotropic = false;
  std::optional<Not2ICertificate> certificate;
  bool twice_is_zero = false;        // 2<<2+eps,5>> = 0 in W(K)
  bool nonzero = false;              // <<2+eps,5>> != 0

  bool all() const {
    return order_is_24 && minus_one_square_mod_5 && q_anisotropic && q_prime_anisotropic && certificate.has_value();
  }
};

inline Remark44Demo remark44_demo(const EqualityOptions& opt = {}) {
  Field k = Field::quadratic(-3);
  Element eps(k, Rat(-1, 2), Rat(1, 2));
  Element s = Element::integer(k, 2) + eps;
  Int five(5);
  Remark44Demo d;
  d.order = mult_order(reduce_at_inert_prime(-s, five));
  d.order_is_24 = d.order == 24;
  d.minus_one_square_mod_5 = is_square(Element::integer(Field::prime(5), -1));
  WittExpression p = pfister2(s, Element::integer(k, 5));
  d.q = p.diagonal();
  d.q_report = local_anisotropy_at_inert_prime(d.q, five);
  std::vector<Element> qp = d.q;
  qp[0] = -qp[0];
  d.q_prime_report = local_anisotropy_at_inert_prime(qp, five);
  d.q_anisotropic = d.q_report.verdict == LocalIsotropy::anisotropic;
  d.q_prime_anisotropic = d.q_prime_report.verdict == LocalIsotropy::anisotropic;
  d.certificate = not_in_2I_certificate(d.q, five);
  d.twice_is_zero = witt_is_zero(2 * p, opt).equal();
  d.nonzero = witt_is_zero(p, opt).not_equal();
  return d;
}

// ---------------------------------------------------------------------------
// Oracles

/// Whether a1 x1^2 + ... + an xn^2 = 0 has a nonzero integer solution with
/// |xi| <= bound (n <= 4), by meeting in the middle on the two halves.
inline bool integer_zero_exists(const std::vector<long>& a, long bound) {
  if (a.empty() || a.size() > 4) throw DomainError("integer_zero_exists handles dimensions 1 to 4");
  std::size_t n = a.size();
  if (n == 1) return false;
  std::vector<long> left(a.begin(), a.begin() + static_cast<long>(n / 2));
  std::vector<long> right(a.begin() + static_cast<long>(n / 2), a.end());
  // value -> realized by a nonzero vector
  auto values = [&](const std::vector<long>& c) {
    std::unordered_map<long long, bool> out;
    if (c.size() == 1) {
      for (long x = 0; x <= bound; ++x) out[static_cast<long long>(c[0]) * x * x] |= x != 0;
    } else {
      for (long x = 0; x <= bound; ++x)
        for (long y = 0; y <= bound; ++y)
          out[static_cast<long long>(c[0]) * x * x + static_cast<long long>(c[1]) * y * y] |= (x != 0 || y != 0);
    }
    return out;
  };
  auto L = values(left), R = values(right);
  for (auto& [v, nonzero] : L) {
    auto it = R.find(-v);
    if (it == R.end()) continue;
    if (v != 0 || nonzero || it->second) return true;
  }
  return false;
}

inline constexpr long kIsotropySearchBound = 200;

/// anisotropic_dimension against integer search on random diagonal forms of
/// dimension <= 4 with entries in [-10,10] \ {0}. An isotropic verdict must
/// come with a search hit; an anisotropic one must have none.
inline CheckReport isotropy_oracle_scan(long samples, std::uint64_t seed, long bound = kIsotropySearchBound) {
  Field q = Field::rationals();
  CheckReport r;
  r.check = "isotropy-oracle";
  for (long i = 0; i < samples; ++i) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(i));
    long n = uniform(rng, 1, 4);
    std::vector<long> a;
    std::vector<Element> e;
    while (static_cast<long>(a.size()) < n) {
      long x = uniform(rng, -10, 10);
      if (x == 0) continue;
      a.push_back(x);
      e.push_back(Element::integer(q, x));
    }
    bool isotropic = anisotropic_dimension(WittExpression::form(q, e)) < n;
    bool found = integer_zero_exists(a, bound);
    ++r.counts[isotropic ? "isotropic" : "anisotropic"];
    r.record(isotropic == found ? EqualityVerdict{Verdict::equal, ""}
                                : EqualityVerdict{Verdict::not_equal, "verdict disagrees with search"},
             [&] {
               return Counterexample{{}, {WittExpression::form(q, e)},
                                     std::string("engine says ") + (isotropic ? "isotropic" : "anisotropic") +
                                         ", search " + (found ? "found a zero" : "found none")};
             });
  }
  return r;
}

/// Closed-form dyadic Hilbert symbols against the mod 2^8 search on all 64
/// pairs of classes in Q_2^* / Q_2^*2.
inline CheckReport dyadic_oracle_scan() {
  Field q = Field::rationals();
  CheckReport r;
  r.check = "dyadic-oracle";
  std::vector<long> classes;
  for (long u : {1, -1, 3, -3})
    for (long e : {1, 2}) classes.push_back(u * e);
  for (long a : classes)
    for (long b : classes) {
      int closed = hilbert_symbol(Rat(a), Rat(b), Int(2)), search = dyadic_hilbert_search(Rat(a), Rat(b));
      r.record(closed == search ? EqualityVerdict{Verdict::equal, ""}
                                : EqualityVerdict{Verdict::not_equal, "symbol disagrees with search"},
               [&] {
                 return Counterexample{{}, {WittExpression::form(q, {a, b})},
                                       "(" + std::to_string(a) + "," + std::to_string(b) + ")_2"};
               });
    }
  return r;
}

}  // namespace wittcls

#endif  // WITTCLS_CAMPAIGNS_HPP
