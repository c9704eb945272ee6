// The Witt cocycle, the Moore cocycle image in I^2(K), the Nekovar
// correction and the corrected cocycles, with sampled checkers for the
// cocycle identity, equicommutativity and the two cocycle equalities.

#ifndef WITTCLS_COCYCLES_HPP
#define WITTCLS_COCYCLES_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wittcls/sl2.hpp"
#include "wittcls/witt_equal.hpp"

namespace wittcls {

enum class CocycleKind { witt_sl2, witt_psl2, moore, corrected_sl2, corrected_psl2 };

inline std::string to_string(CocycleKind k) {
  switch (k) {
    case CocycleKind::witt_sl2:
      return "witt-sl2";
    case CocycleKind::witt_psl2:
      return "witt-psl2";
    case CocycleKind::moore:
      return "moore";
    case CocycleKind::corrected_sl2:
      return "corrected-sl2";
    case CocycleKind::corrected_psl2:
      return "corrected-psl2";
  }
  return "?";
}

inline std::optional<CocycleKind> parse_cocycle_kind(const std::string& s) {
  for (CocycleKind k : {CocycleKind::witt_sl2, CocycleKind::witt_psl2, CocycleKind::moore, CocycleKind::corrected_sl2,
                        CocycleKind::corrected_psl2})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

/// Whether the kind takes PSL(2,K) arguments.
inline bool is_psl(CocycleKind k) { return k == CocycleKind::witt_psl2 || k == CocycleKind::corrected_psl2; }

/// <-A21 (AB)21 B21>, with <0> = 0.
inline WittExpression witt_cocycle(const Mat2& A, const Mat2& B) {
  Element e = -(A.a21 * (A * B).a21 * B.a21);
  return WittExpression::rank_one(e);
}

inline WittExpression moore_cocycle(const Mat2& g, const Mat2& h) {
  BruhatForm x = bruhat_decompose(g), y = bruhat_decompose(h);
  const Field& f = g.field();
  if (x.cell == BruhatCell::g2 && y.cell == BruhatCell::g2) {
    Element w = -(x.v + y.u);
    WittExpression r(f);
    if (!w.is_zero()) {
      r.add(w);
      r.add(x.t, -1);
      r.add(y.t, -1);
      r.add(x.t * y.t * w);
    } else {
      r.add(Element::one(f), -1);
      r.add(x.t, -1);
      r.add(y.t, -1);
      r.add(x.t * y.t, -1);
    }
    return r;
  }
  return pfister2(x.t, y.t);
}

/// n(g1(u,t)) = <1> - <t>, n(g2(u,t,v)) = -<t>.
inline WittExpression nekovar_n(const Mat2& g) {
  BruhatForm x = bruhat_decompose(g);
  WittExpression r(g.field());
  if (x.cell == BruhatCell::g1) r.add(Element::one(g.field()));
  r.add(x.t, -1);
  return r;
}

/// n evaluated on the sigma-positive lift.
inline WittExpression nekovar_tilde(const Mat2& A, Positivity conv = {}) {
  return nekovar_n(psl_canonicalize(A, conv).rep);
}

/// w + delta n (SL2) or w + delta n-tilde (PSL2).
inline WittExpression corrected_cocycle(CocycleKind kind, const Mat2& x, const Mat2& y, Positivity conv = {}) {
  WittExpression r = witt_cocycle(x, y);
  if (kind == CocycleKind::corrected_sl2) {
    r += nekovar_n(x);
    r -= nekovar_n(x * y);
    r += nekovar_n(y);
  } else if (kind == CocycleKind::corrected_psl2) {
    r += nekovar_tilde(x, conv);
    r -= nekovar_tilde(x * y, conv);
    r += nekovar_tilde(y, conv);
  } else {
    throw DomainError("corrected_cocycle: kind must be corrected-sl2 or corrected-psl2");
  }
  return r;
}

inline WittExpression evaluate_cocycle(CocycleKind kind, const Mat2& x, const Mat2& y, Positivity conv = {}) {
  switch (kind) {
    case CocycleKind::witt_sl2:
    case CocycleKind::witt_psl2:
      return witt_cocycle(x, y);
    case CocycleKind::moore:
      return moore_cocycle(x, y);
    case CocycleKind::corrected_sl2:
    case CocycleKind::corrected_psl2:
      return corrected_cocycle(kind, x, y, conv);
  }
  return WittExpression(x.field());
}

/// The Moore cocycle of PSL(2,K) for the lift +-A -> lift of sigma(A)A,
/// pushed into I^2_+(K) with h(-1) -> <1,1>.
inline WittExpression psl_moore_cocycle(const Mat2& A, const Mat2& B, Positivity conv = {}) {
  const Field& f = A.field();
  Mat2 Ap = psl_canonicalize(A, conv).rep, Bp = psl_canonicalize(B, conv).rep;
  WittExpression r = moore_cocycle(Ap, Bp);
  int s = sigma(A, conv) * sigma(B, conv) * sigma(A * B, conv);
  if (s == -1) {
    Mat2 C = psl_canonicalize(A * B, conv).rep;
    r += WittExpression::h(f);
    r -= moore_cocycle(Mat2::minus_identity(f), C);
  }
  return r;
}

using CocycleFn = std::function<WittExpression(const Mat2&, const Mat2&)>;

inline CocycleFn cocycle_fn(CocycleKind kind, Positivity conv = {}) {
  return [kind, conv](const Mat2& x, const Mat2& y) { return evaluate_cocycle(kind, x, y, conv); };
}

// ---------------------------------------------------------------------------
// Sampling

/// A group element drawn from a mix of Bruhat-shaped and random products,
/// including scalars and involutions so that degenerate table cases occur.
inline Mat2 sample_group_element(const Field& f, Rng& rng, long h = 12) {
  switch (uniform(rng, 0, 9)) {
    case 0:
      return uniform(rng, 0, 1) ? Mat2::identity(f) : Mat2::minus_identity(f);
    case 1:
      return g1_mat(random_element(f, rng, h), random_nonzero(f, rng, h));
    case 2:
      return w_mat(random_nonzero(f, rng, h));
    case 3:
      return g2_mat(random_element(f, rng, h), random_nonzero(f, rng, h), random_element(f, rng, h));
    default:
      return random_sl2(f, rng, h, static_cast<int>(uniform(rng, 2, 3)));
  }
}

/// Either an independent element or one tied to `x` (inverse, negative
/// inverse, or Bruhat partner hitting the w' = 0 branch).
inline Mat2 sample_partner(const Mat2& x, Rng& rng, long h = 12) {
  const Field& f = x.field();
  switch (uniform(rng, 0, 7)) {
    case 0:
      return x.inverse();
    case 1:
      return -x.inverse();
    case 2: {
      if (x.a21.is_zero()) break;
      BruhatForm b = bruhat_decompose(x);
      return g2_mat(-b.v, random_nonzero(f, rng, h), random_element(f, rng, h));
    }
    default:
      break;
  }
  return sample_group_element(f, rng, h);
}

// ---------------------------------------------------------------------------
// Reports

struct Counterexample {
  std::vector<Mat2> inputs;
  std::vector<WittExpression> values;
  std::string note;
};

struct CheckReport {
  std::string check;
  long samples = 0;
  long passed = 0;
  long failed = 0;
  long unknown = 0;
  std::optional<Counterexample> counterexample;
  std::map<std::string, long> counts;

  bool pass() const { return failed == 0 && unknown == 0; }
  double unknown_rate() const { return samples == 0 ? 0.0 : static_cast<double>(unknown) / samples; }

  void record(const EqualityVerdict& v, const std::function<Counterexample()>& witness) {
    ++samples;
    if (v.equal()) {
      ++passed;
    } else if (v.unknown()) {
      ++unknown;
    } else {
      ++failed;
      if (!counterexample) counterexample = witness();
    }
  }
};

/// c(y,z) - c(xy,z) + c(x,yz) - c(x,y) = 0 on sampled triples.
inline CheckReport check_cocycle_identity(const CocycleFn& c, const Field& f, long samples, std::uint64_t seed,
                                          const EqualityOptions& opt = {}, long height = 12) {
  CheckReport r;
  r.check = "cocycle";
  for (long i = 0; i < samples; ++i) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(i));
    Mat2 x = sample_group_element(f, rng, height);
    Mat2 y = sample_partner(x, rng, height);
    Mat2 z = uniform(rng, 0, 4) == 0 ? (x * y).inverse() : sample_partner(y, rng, height);
    WittExpression d = c(y, z);
    d -= c(x * y, z);
    d += c(x, y * z);
    d -= c(x, y);
    r.record(witt_is_zero(d, opt), [&] { return Counterexample{{x, y, z}, {d}, "coboundary of c is nonzero"}; });
  }
  return r;
}

inline CheckReport is_cocycle(CocycleKind kind, const Field& f, long samples, std::uint64_t seed,
                              const EqualityOptions& opt = {}, Positivity conv = {}, long height = 12) {
  CheckReport r = check_cocycle_identity(cocycle_fn(kind, conv), f, samples, seed, opt, height);
  r.check = "cocycle:" + to_string(kind);
  return r;
}

enum class EquicommMode { plus_commuting, psl_commuting };

/// Sampled commuting pairs: common torus, common unipotent group, powers of a
/// common element, each conjugated by a random element.
inline std::pair<Mat2, Mat2> sample_commuting_pair(const Field& f, Rng& rng, long h = 9) {
  Mat2 A, B;
  switch (uniform(rng, 0, 2)) {
    case 0:
      A = h_mat(random_nonzero(f, rng, h));
      B = h_mat(random_nonzero(f, rng, h));
      break;
    case 1:
      A = x_mat(random_element(f, rng, h));
      B = x_mat(random_element(f, rng, h));
      if (uniform(rng, 0, 1)) B = -B;
      break;
    default: {
      Mat2 g = sample_group_element(f, rng, h / 2 + 1);
      A = g;
      B = uniform(rng, 0, 1) ? g * g : g.inverse();
      if (uniform(rng, 0, 1)) B = -B;
      break;
    }
  }
  Mat2 d = random_sl2(f, rng, h, 2);
  return {conjugate(d, A), conjugate(d, B)};
}

/// Pairs with c(x,y) != c(y,x) among sampled commuting pairs (and, in PSL
/// mode over fields of Stufe <= 2, anti-commuting pairs).
inline CheckReport equicommutativity_scan(CocycleKind kind, const Field& f, EquicommMode mode, long samples,
                                          std::uint64_t seed, const EqualityOptions& opt = {},
                                          Positivity conv = {}) {
  if (mode == EquicommMode::psl_commuting && !is_psl(kind))
    throw DomainError("equicommutativity_scan: psl_commuting mode needs a PSL2 cocycle");
  CheckReport r;
  r.check = "equicomm:" + to_string(kind);
  Stufe st = stufe(f);
  bool anti = mode == EquicommMode::psl_commuting && (st == Stufe::one || st == Stufe::two);
  for (long i = 0; i < samples; ++i) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(i));
    Mat2 x, y;
    std::string family;
    if (anti && i % 4 == 0) {
      Element eta = random_nonzero(f, rng, 9);
      AntiCommutingPair p = build_anticommuting_pair(f, eta);
      Mat2 d = i % 8 == 0 ? Mat2::identity(f) : random_sl2(f, rng, 6, 2);
      x = conjugate(d, p.a);
      y = conjugate(d, p.b);
      family = "anticommuting";
    } else {
      std::tie(x, y) = sample_commuting_pair(f, rng);
      family = "commuting";
    }
    ++r.counts[family];
    WittExpression cxy = evaluate_cocycle(kind, x, y, conv), cyx = evaluate_cocycle(kind, y, x, conv);
    r.record(witt_equal(cxy, cyx, opt), [&] {
      Counterexample c{{x, y}, {cxy, cyx}, family + " pair with c(x,y) != c(y,x)"};
      if (family == "anticommuting") c.note += "; -1 is a square: " + std::string(is_square(-Element::one(f)) ? "yes" : "no");
      return c;
    });
    if (r.counterexample) break;
  }
  return r;
}

/// w + delta n = Moore cocycle on sampled SL2 pairs.
inline CheckReport verify_prop52(const Field& f, long samples, std::uint64_t seed, const EqualityOptions& opt = {},
                                 long height = 12) {
  CheckReport r;
  r.check = "prop52";
  for (long i = 0; i < samples; ++i) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(i));
    Mat2 x = sample_group_element(f, rng, height);
    Mat2 y = sample_partner(x, rng, height);
    WittExpression lhs = corrected_cocycle(CocycleKind::corrected_sl2, x, y), rhs = moore_cocycle(x, y);
    r.record(witt_equal(lhs, rhs, opt), [&] { return Counterexample{{x, y}, {lhs, rhs}, "w + dn != Moore"}; });
  }
  return r;
}

/// For one PSL2 pair: the value of w + delta n-tilde, its I^2_+ membership
/// and the sign-case bookkeeping.
struct Thm53Case {
  WittExpression value;
  bool in_I2_plus = false;
  bool sign_flip = false;        // sigma(AB) = -sigma(A) sigma(B)
  WittExpression discrepancy;    // value - Moore(sigma(A)A, sigma(B)B)
  WittExpression expected;       // 0, or -2<t> with t from the Bruhat form of the lifted product
  EqualityVerdict balance;       // discrepancy against expected
  EqualityVerdict matches_moore; // value against the PSL Moore cocycle
};

inline Thm53Case thm53_case(const Mat2& A, const Mat2& B, const EqualityOptions& opt = {}, Positivity conv = {}) {
  const Field& f = A.field();
  Thm53Case c;
  c.value = corrected_cocycle(CocycleKind::corrected_psl2, A, B, conv);
  c.in_I2_plus = ideal_membership(c.value).in_I2_plus;
  Mat2 Ap = psl_canonicalize(A, conv).rep, Bp = psl_canonicalize(B, conv).rep;
  c.sign_flip = sigma(A * B, conv) != sigma(A, conv) * sigma(B, conv);
  c.discrepancy = c.value - moore_cocycle(Ap, Bp);
  c.expected = WittExpression(f);
  if (c.sign_flip) c.expected = WittExpression::rank_one(bruhat_decompose(Ap * Bp).t, -2);
  c.balance = witt_equal(c.discrepancy, c.expected, opt);
  c.matches_moore = witt_equal(c.value, psl_moore_cocycle(A, B, conv), opt);
  return c;
}

inline CheckReport verify_thm53(const Field& f, long samples, std::uint64_t seed, const EqualityOptions& opt = {},
                                Positivity conv = {}, long height = 12) {
  CheckReport r;
  r.check = "thm53";
  for (long i = 0; i < samples; ++i) {
    Rng rng = substream(seed, static_cast<std::uint64_t>(i));
    Mat2 x = sample_group_element(f, rng, height);
    Mat2 y = sample_partner(x, rng, height);
    Thm53Case c = thm53_case(x, y, opt, conv);
    ++r.counts[c.sign_flip ? "sign_flip" : "sign_kept"];
    EqualityVerdict v{Verdict::equal, ""};
    if (!c.in_I2_plus) {
      v = {Verdict::not_equal, "value not in I^2_+"};
      ++r.counts["not_in_I2_plus"];
    } else if (!c.balance.equal()) {
      v = c.balance;
    } else {
      v = c.matches_moore;
    }
    r.record(v, [&] {
      return Counterexample{{x, y}, {c.value, c.discrepancy, c.expected}, "thm53 check failed: " + v.reason};
    });
  }
  return r;
}

}  // namespace wittcls

#endif  // WITTCLS_COCYCLES_HPP
