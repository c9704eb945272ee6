// Exact SL(2,K) and PSL(2,K): Bruhat normal forms, the sign section sigma,
// commutation types, anti-commuting pairs and a few samplers.

#ifndef WITTCLS_SL2_HPP
#define WITTCLS_SL2_HPP

#include <array>
#include <string>
#include <utility>

#include "wittcls/field.hpp"
#include "wittcls/random.hpp"

namespace wittcls {

struct Mat2 {
  Element a11, a12, a21, a22;

  Mat2() = default;
  Mat2(Element x11, Element x12, Element x21, Element x22)
      : a11(std::move(x11)), a12(std::move(x12)), a21(std::move(x21)), a22(std::move(x22)) {
    const Field& f = a11.field();
    if (!(a12.field() == f) || !(a21.field() == f) || !(a22.field() == f)) throw FieldMismatch();
  }

  static Mat2 of(const Field& f, long x11, long x12, long x21, long x22) {
    return {Element::integer(f, x11), Element::integer(f, x12), Element::integer(f, x21), Element::integer(f, x22)};
  }
  static Mat2 identity(const Field& f) { return of(f, 1, 0, 0, 1); }
  static Mat2 minus_identity(const Field& f) { return of(f, -1, 0, 0, -1); }

  const Field& field() const { return a11.field(); }
  Element det() const { return a11 * a22 - a12 * a21; }
  Element trace() const { return a11 + a22; }
  bool is_sl2() const { return det().is_one(); }
  bool is_identity() const { return a11.is_one() && a22.is_one() && a12.is_zero() && a21.is_zero(); }
  bool is_scalar() const { return a12.is_zero() && a21.is_zero() && a11 == a22; }

  Mat2 inverse() const {
    Element d = det();
    if (d.is_zero()) throw DomainError("singular matrix");
    Element di = d.inverse();
    return {a22 * di, -a12 * di, -a21 * di, a11 * di};
  }

  std::array<Element, 4> entries() const { return {a11, a12, a21, a22}; }

  Mat2 operator-() const { return {-a11, -a12, -a21, -a22}; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22, x.a21 * y.a11 + x.a22 * y.a21,
            x.a21 * y.a12 + x.a22 * y.a22};
  }
  friend Mat2 operator+(const Mat2& x, const Mat2& y) {
    return {x.a11 + y.a11, x.a12 + y.a12, x.a21 + y.a21, x.a22 + y.a22};
  }
  friend Mat2 operator*(const Element& s, const Mat2& x) { return {s * x.a11, s * x.a12, s * x.a21, s * x.a22}; }
  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.a11 == y.a11 && x.a12 == y.a12 && x.a21 == y.a21 && x.a22 == y.a22;
  }
  friend bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }

  std::string to_string() const {
    return "(" + a11.to_string() + " " + a12.to_string() + "; " + a21.to_string() + " " + a22.to_string() + ")";
  }
};

inline std::ostream& operator<<(std::ostream& os, const Mat2& m) { return os << m.to_string(); }

inline Mat2 commutator(const Mat2& x, const Mat2& y) { return x * y * x.inverse() * y.inverse(); }
inline Mat2 conjugate(const Mat2& d, const Mat2& x) { return d * x * d.inverse(); }

// Images of the Steinberg generators.
inline Mat2 x_mat(const Element& u) {
  const Field& f = u.field();
  return {Element::one(f), u, Element::zero(f), Element::one(f)};
}
inline Mat2 lower_mat(const Element& u) {
  const Field& f = u.field();
  return {Element::one(f), Element::zero(f), u, Element::one(f)};
}
inline Mat2 h_mat(const Element& t) {
  const Field& f = t.field();
  return {t, Element::zero(f), Element::zero(f), t.inverse()};
}
inline Mat2 w_mat(const Element& t) {
  const Field& f = t.field();
  return {Element::zero(f), t, -t.inverse(), Element::zero(f)};
}

// ---------------------------------------------------------------------------
// Bruhat normal form

enum class BruhatCell { g1, g2 };

/// g1(u,t) = x(u) h(t) or g2(u,t,v) = x(u) w(t) x(v).
struct BruhatForm {
  BruhatCell cell = BruhatCell::g1;
  Element u, t, v;  // v is unused for g1

  static BruhatForm g1(Element u, Element t) { return {BruhatCell::g1, std::move(u), std::move(t), Element()}; }
  static BruhatForm g2(Element u, Element t, Element v) {
    return {BruhatCell::g2, std::move(u), std::move(t), std::move(v)};
  }

  friend bool operator==(const BruhatForm& x, const BruhatForm& y) {
    if (x.cell != y.cell || x.u != y.u || x.t != y.t) return false;
    return x.cell == BruhatCell::g1 || x.v == y.v;
  }

  std::string to_string() const {
    if (cell == BruhatCell::g1) return "g1(" + u.to_string() + ", " + t.to_string() + ")";
    return "g2(" + u.to_string() + ", " + t.to_string() + ", " + v.to_string() + ")";
  }
};

inline BruhatForm bruhat_decompose(const Mat2& A) {
  if (!A.is_sl2()) throw DomainError("bruhat_decompose: determinant is not 1");
  if (A.a21.is_zero()) return BruhatForm::g1(A.a12 * A.a11, A.a11);
  Element inv = A.a21.inverse();
  return BruhatForm::g2(A.a11 * inv, -inv, A.a22 * inv);
}

inline Mat2 bruhat_compose(const BruhatForm& g) {
  if (g.t.is_zero()) throw DomainError("bruhat_compose: t must be nonzero");
  if (g.cell == BruhatCell::g1) return x_mat(g.u) * h_mat(g.t);
  return x_mat(g.u) * w_mat(g.t) * x_mat(g.v);
}

inline Mat2 g1_mat(const Element& u, const Element& t) { return bruhat_compose(BruhatForm::g1(u, t)); }
inline Mat2 g2_mat(const Element& u, const Element& t, const Element& v) {
  return bruhat_compose(BruhatForm::g2(u, t, v));
}

// ---------------------------------------------------------------------------
// Commutation and the sign section

enum class CommutationType { commute, anticommute, neither };

inline std::string to_string(CommutationType c) {
  switch (c) {
    case CommutationType::commute:
      return "commute";
    case CommutationType::anticommute:
      return "anticommute";
    case CommutationType::neither:
      return "neither";
  }
  return "?";
}

inline CommutationType commutation_type(const Mat2& A, const Mat2& B) {
  Mat2 ab = A * B, ba = B * A;
  if (ab == ba) return CommutationType::commute;
  if (ab == -ba) return CommutationType::anticommute;
  return CommutationType::neither;
}

/// +1 iff the first nonzero entry in row-major order is positive.
inline int sigma(const Mat2& A, Positivity conv = {}) {
  for (const Element& e : A.entries())
    if (!e.is_zero()) return conv(e) ? 1 : -1;
  throw DomainError("sigma: zero matrix");
}

/// An element of PSL(2,K), stored as its sigma-positive lift.
struct ProjMat {
  Mat2 rep;

  friend bool operator==(const ProjMat& x, const ProjMat& y) { return x.rep == y.rep; }
  friend bool operator!=(const ProjMat& x, const ProjMat& y) { return !(x == y); }
};

inline ProjMat psl_canonicalize(const Mat2& A, Positivity conv = {}) {
  if (!A.is_sl2()) throw DomainError("psl_canonicalize: determinant is not 1");
  return {sigma(A, conv) == 1 ? A : -A};
}

/// Equality in PSL(2,K).
inline bool psl_equal(const Mat2& A, const Mat2& B) { return A == B || A == -B; }

// ---------------------------------------------------------------------------
// Anti-commuting pairs

/// gamma^2 + (t delta)^2 = -1, t != 0.
struct AntiCommutingParams {
  Element gamma, delta, t;

  bool valid() const {
    if (t.is_zero()) return false;
    Element td = t * delta;
    return gamma * gamma + td * td == -Element::one(t.field());
  }
};

/// a = (gamma, t^2 delta; delta, -gamma).
inline Mat2 anticommuting_a(const AntiCommutingParams& p) {
  return {p.gamma, p.t * p.t * p.delta, p.delta, -p.gamma};
}
/// b = w(t).
inline Mat2 anticommuting_b(const AntiCommutingParams& p) { return w_mat(p.t); }

struct AntiCommutingPair {
  Mat2 a, b;
  AntiCommutingParams params;
};

/// The normalized pair with gamma * delta = eta, scaled from a two-square
/// witness with nonzero product.
inline AntiCommutingPair build_anticommuting_pair(const Field& f, const Element& eta) {
  if (eta.is_zero()) throw DomainError("build_anticommuting_pair: eta must be nonzero");
  if (!(eta.field() == f)) throw FieldMismatch();
  Stufe s = stufe(f);
  if (s != Stufe::one && s != Stufe::two)
    throw DomainError("build_anticommuting_pair: -1 is not a sum of two squares in " + f.name());
  auto w = two_square_witness(f, WitnessPreference::nonzero_product);
  if (!w || w->gamma.is_zero() || w->delta.is_zero())
    throw DomainError("build_anticommuting_pair: no witness with nonzero product in " + f.name());
  Element sc = eta / (w->gamma * w->delta);
  AntiCommutingParams p{w->gamma, w->delta * sc, sc.inverse()};
  if (!p.valid()) throw MathError("internal: anti-commuting parameters fail their equation");
  AntiCommutingPair r{anticommuting_a(p), anticommuting_b(p), p};
  if (!(r.a * r.b == -(r.b * r.a))) throw MathError("internal: built pair does not anti-commute");
  return r;
}

enum class DegenerateShape { gamma_zero, delta_zero };

/// Over a field with sqrt(-1) = i: (gamma, delta) = (0, i/t) or (i, 0).
inline AntiCommutingPair build_degenerate_anticommuting_pair(const Element& t, DegenerateShape shape) {
  if (t.is_zero()) throw DomainError("build_degenerate_anticommuting_pair: t must be nonzero");
  const Field& f = t.field();
  auto w = two_square_witness(f, WitnessPreference::simplest);
  if (!w || !w->delta.is_zero()) throw DomainError("build_degenerate_anticommuting_pair: -1 is not a square in " + f.name());
  const Element& i = w->gamma;
  AntiCommutingParams p = shape == DegenerateShape::gamma_zero ? AntiCommutingParams{Element::zero(f), i / t, t}
                                                               : AntiCommutingParams{i, Element::zero(f), t};
  if (!p.valid()) throw MathError("internal: degenerate parameters fail their equation");
  return {anticommuting_a(p), anticommuting_b(p), p};
}

struct NormalizedPair {
  Mat2 d;  // d b d^-1 = w(t), d a d^-1 = anticommuting_a(params)
  AntiCommutingParams params;
};

/// Conjugates an anti-commuting pair into normal shape using the basis (e, b e).
inline NormalizedPair normalize_anticommuting_pair(const Mat2& a, const Mat2& b) {
  if (commutation_type(a, b) != CommutationType::anticommute)
    throw DomainError("normalize_anticommuting_pair: pair does not anti-commute");
  const Field& f = a.field();
  Element one = Element::one(f), zero = Element::zero(f);
  const std::array<std::pair<Element, Element>, 3> candidates{
      {{one, zero}, {zero, one}, {one, one}}};
  for (const auto& [e1, e2] : candidates) {
    Element be1 = b.a11 * e1 + b.a12 * e2, be2 = b.a21 * e1 + b.a22 * e2;
    Element D = e1 * be2 - e2 * be1;
    if (D.is_zero()) continue;
    Element Di = D.inverse();
    Mat2 P{e1, be1 * Di, e2, be2 * Di};
    Mat2 d = P.inverse();
    Mat2 bn = conjugate(d, b), an = conjugate(d, a);
    Element t = -Di;
    AntiCommutingParams p{an.a11, an.a21, t};
    if (bn != w_mat(t) || an != anticommuting_a(p) || !p.valid())
      throw MathError("internal: normalization reconstruction failed");
    return {d, p};
  }
  throw DomainError("normalize_anticommuting_pair: b has no cyclic vector among the candidates");
}

// ---------------------------------------------------------------------------
// Samplers

/// A product of `steps` factors x(u), lower(u), h(t) with heights <= h.
inline Mat2 random_sl2(const Field& f, Rng& rng, long h = 20, int steps = 3) {
  Mat2 m = Mat2::identity(f);
  for (int i = 0; i < steps; ++i) {
    switch (uniform(rng, 0, 2)) {
      case 0:
        m = m * x_mat(random_element(f, rng, h));
        break;
      case 1:
        m = m * lower_mat(random_element(f, rng, h));
        break;
      default:
        m = m * h_mat(random_nonzero(f, rng, h));
        break;
    }
  }
  return m;
}

/// X, Y in SL(2,K) with [X,Y] = h(z), built from Y with trace lambda + 1/lambda.
/// Needs z != -1, z != 1 and lambda^2 != 1.
inline std::pair<Mat2, Mat2> solve_commutator(const Element& z, const Element& lambda) {
  const Field& f = z.field();
  Element one = Element::one(f);
  if (z.is_zero() || (z + one).is_zero() || z == one) throw DomainError("solve_commutator: z must avoid 0, 1, -1");
  if (lambda.is_zero() || (lambda * lambda).is_one()) throw DomainError("solve_commutator: lambda^2 must not be 1");
  Element li = lambda.inverse();
  Element y11 = (lambda + li) / (one + z);
  Mat2 Y{y11, one, z * y11 * y11 - one, z * y11};
  Mat2 DY = h_mat(z) * Y;
  // eigenvector of M for eigenvalue mu: (M12, mu - M11), or (mu - M22, M21)
  auto eig = [&](const Mat2& M, const Element& mu) -> std::pair<Element, Element> {
    if (!M.a12.is_zero()) return {M.a12, mu - M.a11};
    return {mu - M.a22, M.a21};
  };
  auto basis = [&](const Mat2& M) {
    auto [p1, p2] = eig(M, lambda);
    auto [q1, q2] = eig(M, li);
    return Mat2{p1, q1, p2, q2};
  };
  Mat2 P = basis(Y), Q = basis(DY);
  Element s = P.det() / Q.det();
  Mat2 X = Q * Mat2{s, Element::zero(f), Element::zero(f), one} * P.inverse();
  if (!X.is_sl2() || commutator(X, Y) != h_mat(z)) throw MathError("internal: commutator solver failed");
  return {X, Y};
}

}  // namespace wittcls

#endif  // WITTCLS_SL2_HPP
