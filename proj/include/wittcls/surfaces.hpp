// Central extensions of SL(2,K) and PSL(2,K) by W(K) defined by a cocycle,
// and evaluation of cocycle classes on surface-group representations.

#ifndef WITTCLS_SURFACES_HPP
#define WITTCLS_SURFACES_HPP

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

#include "wittcls/cocycles.hpp"

namespace wittcls {

enum class GroupType { sl2, psl2 };

inline std::string to_string(GroupType g) { return g == GroupType::sl2 ? "SL2" : "PSL2"; }

/// Which extension we compute in: the cocycle kind fixes the group.
struct ExtContext {
  CocycleKind kind = CocycleKind::witt_psl2;
  Field field;
  Positivity conv;

  GroupType group() const { return is_psl(kind) ? GroupType::psl2 : GroupType::sl2; }

  friend bool operator==(const ExtContext& x, const ExtContext& y) {
    return x.kind == y.kind && x.field == y.field && x.conv.flipped == y.conv.flipped;
  }

  /// The group element in stored form: sigma-positive lift in PSL2.
  Mat2 normalize(const Mat2& g) const { return group() == GroupType::psl2 ? psl_canonicalize(g, conv).rep : g; }
  WittExpression cocycle(const Mat2& x, const Mat2& y) const { return evaluate_cocycle(kind, x, y, conv); }
};

class ContextMismatch : public DomainError {
 public:
  ContextMismatch() : DomainError("extension elements from different contexts") {}
};

struct ExtElement {
  ExtContext ctx;
  Mat2 g;
  WittExpression u;
};

inline ExtElement ext_identity(const ExtContext& ctx) {
  return {ctx, Mat2::identity(ctx.field), WittExpression(ctx.field)};
}

/// The section g -> (g, 0).
inline ExtElement ext_lift(const ExtContext& ctx, const Mat2& g) {
  return {ctx, ctx.normalize(g), WittExpression(ctx.field)};
}

/// (g,u)(g',u') = (gg', u + u' + c(g,g')).
inline ExtElement ext_mul(const ExtElement& p, const ExtElement& q) {
  if (!(p.ctx == q.ctx)) throw ContextMismatch();
  WittExpression u = p.u + q.u;
  u += p.ctx.cocycle(p.g, q.g);
  return {p.ctx, p.ctx.normalize(p.g * q.g), u};
}

/// (g,u)^-1 = (g^-1, -u - c(g, g^-1)).
inline ExtElement ext_inv(const ExtElement& p) {
  Mat2 gi = p.ctx.normalize(p.g.inverse());
  WittExpression u = -p.u;
  u -= p.ctx.cocycle(p.g, gi);
  return {p.ctx, gi, u};
}

inline ExtElement ext_commutator(const ExtElement& p, const ExtElement& q) {
  return ext_mul(ext_mul(p, q), ext_mul(ext_inv(p), ext_inv(q)));
}

/// Image of the lift of -I in I^2_+(K): <1,1> when the SL2 cocycle is the
/// Moore cocycle (h(-1) -> <1,1>), 0 for the Witt cocycle and in PSL2.
inline WittExpression minus_identity_lift_value(CocycleKind kind, const Field& f) {
  if (kind == CocycleKind::moore || kind == CocycleKind::corrected_sl2) return WittExpression::h(f);
  return WittExpression(f);
}

/// Predicted value of the commutator of lifts of an anti-commuting pair:
/// lift(-I) - c(-I, ba) + c(a,b) - c(b,a).
inline WittExpression commutator_formula_rhs(const Mat2& a, const Mat2& b, CocycleKind kind, Positivity conv = {}) {
  if (commutation_type(a, b) != CommutationType::anticommute)
    throw DomainError("commutator_formula_rhs: pair does not anti-commute");
  const Field& f = a.field();
  WittExpression r = minus_identity_lift_value(kind, f);
  r -= evaluate_cocycle(kind, Mat2::minus_identity(f), b * a, conv);
  r += evaluate_cocycle(kind, a, b, conv);
  r -= evaluate_cocycle(kind, b, a, conv);
  return r;
}

// ---------------------------------------------------------------------------
// Representations

/// Monodromies X1, Y1, ..., Xg, Yg with prod [Xi, Yi] = boundary.
struct RelativeRep {
  GroupType group = GroupType::sl2;
  std::vector<Mat2> monodromies;
  Mat2 boundary;

  long genus() const { return static_cast<long>(monodromies.size() / 2); }
};

/// Closed surface: the relator product is the identity of the group.
struct SurfaceRep {
  long genus = 0;
  GroupType group = GroupType::sl2;
  std::vector<Mat2> monodromies;

  const Field& field() const { return monodromies.front().field(); }
};

inline Mat2 relator_product(const std::vector<Mat2>& m) {
  if (m.empty() || m.size() % 2 != 0) throw DomainError("monodromy list must have even positive length");
  Mat2 p = Mat2::identity(m.front().field());
  for (std::size_t i = 0; i < m.size(); i += 2) p = p * commutator(m[i], m[i + 1]);
  return p;
}

inline bool group_equal(GroupType g, const Mat2& x, const Mat2& y) {
  return g == GroupType::psl2 ? psl_equal(x, y) : x == y;
}

inline void validate(const SurfaceRep& rep) {
  if (rep.genus < 1) throw DomainError("surface genus must be at least 1");
  if (static_cast<long>(rep.monodromies.size()) != 2 * rep.genus)
    throw DomainError("surface representation needs 2g monodromies");
  for (const Mat2& m : rep.monodromies)
    if (!m.is_sl2()) throw DomainError("monodromy has determinant != 1");
  Mat2 p = relator_product(rep.monodromies);
  if (!group_equal(rep.group, p, Mat2::identity(p.field()))) throw DomainError("relator violated: product is " + p.to_string());
}

inline void check_group(GroupType rep_group, CocycleKind kind) {
  if (rep_group == GroupType::psl2 && !is_psl(kind))
    throw DomainError("a PSL2 representation needs a PSL2 cocycle, got " + to_string(kind));
}

/// U-part of (prod [lift Xi, lift Yi]) * lift(W)^-1.
inline WittExpression relative_class(const RelativeRep& rep, CocycleKind kind, Positivity conv = {}) {
  check_group(rep.group, kind);
  if (rep.monodromies.empty() || rep.monodromies.size() % 2 != 0)
    throw DomainError("relative representation needs 2g monodromies");
  const Field& f = rep.boundary.field();
  if (!group_equal(rep.group, relator_product(rep.monodromies), rep.boundary))
    throw DomainError("relator mismatch: prod [Xi,Yi] != W");
  ExtContext ctx{kind, f, conv};
  ExtElement p = ext_identity(ctx);
  for (std::size_t i = 0; i < rep.monodromies.size(); i += 2)
    p = ext_mul(p, ext_commutator(ext_lift(ctx, rep.monodromies[i]), ext_lift(ctx, rep.monodromies[i + 1])));
  p = ext_mul(p, ext_inv(ext_lift(ctx, rep.boundary)));
  if (!p.g.is_identity()) throw MathError("internal: relative class has nontrivial group part");
  return p.u;
}

inline WittExpression eval_closed_surface(const SurfaceRep& rep, CocycleKind kind, Positivity conv = {}) {
  validate(rep);
  check_group(rep.group, kind);
  return relative_class({rep.group, rep.monodromies, Mat2::identity(rep.field())}, kind, conv);
}

/// The closed representation obtained by gluing rep1 to rep2 with the
/// orientation of rep2 reversed: X1, Y1, ..., Y'g, X'g, ..., Y'1, X'1.
inline SurfaceRep glue(const RelativeRep& rep1, const RelativeRep& rep2) {
  SurfaceRep s;
  s.group = GroupType::psl2;
  s.monodromies = rep1.monodromies;
  for (long j = rep2.genus() - 1; j >= 0; --j) {
    s.monodromies.push_back(rep2.monodromies[2 * j + 1]);
    s.monodromies.push_back(rep2.monodromies[2 * j]);
  }
  s.genus = rep1.genus() + rep2.genus();
  return s;
}

struct GlueResult {
  WittExpression value;         // relative class of rep1 minus that of rep2
  WittExpression closed_value;  // direct evaluation of the glued representation
  EqualityVerdict consistent;
};

inline GlueResult glue_eval(const RelativeRep& rep1, const RelativeRep& rep2, CocycleKind kind, Positivity conv = {},
                            const EqualityOptions& opt = {}) {
  if (!is_psl(kind)) throw DomainError("glue_eval needs a PSL2 cocycle");
  if (!psl_equal(rep1.boundary, rep2.boundary)) throw DomainError("boundary mismatch: the boundaries differ in PSL2");
  RelativeRep r1 = rep1, r2 = rep2;
  r1.group = r2.group = GroupType::psl2;
  GlueResult g;
  g.value = relative_class(r1, kind, conv) - relative_class(r2, kind, conv);
  g.closed_value = eval_closed_surface(glue(r1, r2), kind, conv);
  g.consistent = witt_equal(g.value, g.closed_value, opt);
  return g;
}

struct TorusRealization {
  SurfaceRep rep;
  AntiCommutingParams params;
  WittExpression value;
  EqualityVerdict matches;  // value against <eta, eta>
};

/// The PSL2 torus bundle built from the anti-commuting eta-pair.
inline TorusRealization torus_realize(const Field& f, const Element& eta,
                                      CocycleKind kind = CocycleKind::corrected_psl2, Positivity conv = {},
                                      const EqualityOptions& opt = {}) {
  if (stufe(f) != Stufe::two) throw DomainError("torus_realize needs a field of Stufe 2, got " + f.name());
  if (!is_psl(kind)) throw DomainError("torus_realize needs a PSL2 cocycle");
  AntiCommutingPair p = build_anticommuting_pair(f, eta);
  TorusRealization t;
  t.rep = SurfaceRep{1, GroupType::psl2, {p.a, p.b}};
  t.params = p.params;
  t.value = eval_closed_surface(t.rep, kind, conv);
  t.matches = witt_equal(t.value, WittExpression::rank_one(eta, 2), opt);
  return t;
}

// ---------------------------------------------------------------------------
// Closed representation sampler

enum class RepFamily { torus_blocks, doubled, centralizer_twist, glued_commutators, anticommuting_blocks };

inline std::string to_string(RepFamily r) {
  switch (r) {
    case RepFamily::torus_blocks:
      return "torus_blocks";
    case RepFamily::doubled:
      return "doubled";
    case RepFamily::centralizer_twist:
      return "centralizer_twist";
    case RepFamily::glued_commutators:
      return "glued_commutators";
    case RepFamily::anticommuting_blocks:
      return "anticommuting_blocks";
  }
  return "?";
}

struct SampledRep {
  SurfaceRep rep;
  RepFamily family = RepFamily::torus_blocks;
};

namespace detail {

inline void push_pair(std::vector<Mat2>& m, const Mat2& x, const Mat2& y) {
  m.push_back(x);
  m.push_back(y);
}

// A torus block: a commuting pair, or an anti-commuting one when allowed.
inline void push_torus_block(std::vector<Mat2>& m, const Field& f, Rng& rng, bool anti) {
  if (anti) {
    AntiCommutingPair p = build_anticommuting_pair(f, random_nonzero(f, rng, 9));
    Mat2 d = random_sl2(f, rng, 5, 2);
    push_pair(m, conjugate(d, p.a), conjugate(d, p.b));
    return;
  }
  auto [x, y] = sample_commuting_pair(f, rng, 7);
  push_pair(m, x, y);
}

// z with z^2 != 1, as a random nonzero element.
inline Element generic_scalar(const Field& f, Rng& rng, long h) {
  for (;;) {
    Element z = random_nonzero(f, rng, h);
    if (!(z * z).is_one()) return z;
  }
}

// X, Y with [X, Y] = h(z), or nullopt when the field is too small to find one.
inline std::optional<std::pair<Mat2, Mat2>> solved_block(const Element& z, Rng& rng, long h) {
  const Field& f = z.field();
  if ((z * z).is_one()) return std::nullopt;
  for (int attempt = 0; attempt < 20; ++attempt) {
    Element l = generic_scalar(f, rng, h);
    try {
      return solve_commutator(z, l);
    } catch (const DomainError&) {
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// A closed representation satisfying the relator by construction. Pads
/// with identity pairs up to the requested genus.
inline SampledRep sample_closed_rep(const Field& f, long genus, GroupType group, Rng& rng, long h = 7) {
  if (genus < 1) throw DomainError("genus must be at least 1");
  Stufe st = stufe(f);
  bool anti_ok = group == GroupType::psl2 && (st == Stufe::one || st == Stufe::two);
  std::vector<RepFamily> families{RepFamily::torus_blocks};
  if (anti_ok) families.push_back(RepFamily::anticommuting_blocks);
  if (genus >= 2) {
    families.push_back(RepFamily::doubled);
    families.push_back(RepFamily::centralizer_twist);
    families.push_back(RepFamily::glued_commutators);
    families.push_back(RepFamily::glued_commutators);
  }
  RepFamily fam = families[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(families.size()) - 1))];
  std::vector<Mat2> m;
  switch (fam) {
    case RepFamily::torus_blocks:
    case RepFamily::anticommuting_blocks:
      for (long i = 0; i < genus; ++i)
        detail::push_torus_block(m, f, rng, fam == RepFamily::anticommuting_blocks && uniform(rng, 0, 1) == 0);
      break;
    case RepFamily::doubled: {
      Mat2 x = random_sl2(f, rng, h, 2), y = random_sl2(f, rng, h, 2);
      detail::push_pair(m, x, y);
      detail::push_pair(m, y, x);
      break;
    }
    case RepFamily::centralizer_twist: {
      Mat2 x = random_sl2(f, rng, h, 2), y = random_sl2(f, rng, h, 2);
      Mat2 k = commutator(x, y);
      Mat2 c = Mat2::identity(f);
      long e = uniform(rng, -2, 2);
      for (long i = 0; i < std::labs(e); ++i) c = c * (e > 0 ? k : k.inverse());
      if (uniform(rng, 0, 1)) c = -c;
      detail::push_pair(m, x, y);
      detail::push_pair(m, conjugate(c, y), conjugate(c, x));
      break;
    }
    case RepFamily::glued_commutators: {
      Element z = detail::generic_scalar(f, rng, h);
      auto b1 = detail::solved_block(z, rng, h);
      auto b2 = detail::solved_block(z.inverse(), rng, h);
      if (!b1 || !b2) {
        fam = RepFamily::torus_blocks;
        for (long i = 0; i < 2; ++i) detail::push_torus_block(m, f, rng, false);
        break;
      }
      Mat2 d = h_mat(random_nonzero(f, rng, h));  // centralizes h(z)
      detail::push_pair(m, b1->first, b1->second);
      detail::push_pair(m, conjugate(d, b2->first), conjugate(d, b2->second));
      break;
    }
  }
  while (static_cast<long>(m.size()) < 2 * genus) detail::push_pair(m, Mat2::identity(f), Mat2::identity(f));
  if (static_cast<long>(m.size()) > 2 * genus) m.resize(static_cast<std::size_t>(2 * genus));
  // sign twists keep every commutator, global conjugation keeps the relator
  for (Mat2& x : m)
    if (uniform(rng, 0, 3) == 0) x = -x;
  Mat2 g = random_sl2(f, rng, 3, 2);
  for (Mat2& x : m) x = conjugate(g, x);
  SampledRep s{SurfaceRep{genus, group, m}, fam};
  validate(s.rep);
  return s;
}

// ---------------------------------------------------------------------------
// Milnor-Wood audit

struct MilnorWoodReport {
  long genus = 0;
  long samples = 0;
  long nonzero = 0;
  long max_norm = 0;
  long max_abs_signature = 0;
  long norm_bound = 0;       // 4(g-1) + 2
  long signature_bound = 0;  // 4(g-1)
  long violations = 0;
  std::map<std::string, long> families;
  std::optional<SurfaceRep> worst;
  WittExpression worst_value;

  bool pass() const { return violations == 0; }
};

inline MilnorWoodReport milnor_wood_audit(const Field& f, long genus, long samples, std::uint64_t seed,
                                          CocycleKind kind = CocycleKind::witt_psl2, Positivity conv = {}) {
  if (f.kind() != FieldKind::rationals) throw DomainError("milnor_wood_audit works over Q");
  MilnorWoodReport r;
  r.genus = genus;
  r.norm_bound = 4 * (genus - 1) + 2;
  r.signature_bound = 4 * (genus - 1);
  GroupType group = is_psl(kind) ? GroupType::psl2 : GroupType::sl2;
  for (long i = 0; i < samples; ++i) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(i));
    SampledRep s = sample_closed_rep(f, genus, group, rng);
    WittExpression v = eval_closed_surface(s.rep, kind, conv);
    long n = witt_norm(v), sig = std::labs(signature(v));
    ++r.samples;
    ++r.families[to_string(s.family)];
    if (n != 0) ++r.nonzero;
    if (n > r.norm_bound || sig > r.signature_bound) ++r.violations;
    if (n > r.max_norm || !r.worst) {
      r.worst = s.rep;
      r.worst_value = v;
    }
    r.max_norm = std::max(r.max_norm, n);
    r.max_abs_signature = std::max(r.max_abs_signature, sig);
  }
  return r;
}

}  // namespace wittcls

#endif  // WITTCLS_SURFACES_HPP
