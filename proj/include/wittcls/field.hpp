// Exact fields: Q, Q(sqrt d), F_p and F_{p^2}, with square testing, the
// positivity predicate behind the sign section, Stufe data and the residue
// map at inert primes.

#ifndef WITTCLS_FIELD_HPP
#define WITTCLS_FIELD_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "wittcls/arith.hpp"

namespace wittcls {

class FieldMismatch : public MathError {
 public:
  FieldMismatch() : MathError("field mismatch") {}
};

class DivisionByZero : public MathError {
 public:
  DivisionByZero() : MathError("division by zero") {}
};

enum class FieldKind { rationals, quadratic, prime, prime_square };

/// A supported field. Quadratic fields carry a squarefree d != 0, 1; the
/// finite field F_{p^2} carries its monic modulus x^2 + m1 x + m0.
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field(); }

  static Field quadratic(long long d) {
    if (d == 0 || d == 1) throw DomainError("Q(sqrt d) needs d not in {0, 1}");
    if (!arith::is_squarefree(Int(static_cast<long>(d)))) throw DomainError("Q(sqrt d) needs squarefree d");
    Field f;
    f.kind_ = FieldKind::quadratic;
    f.d_ = d;
    return f;
  }

  static Field prime(std::uint64_t p) {
    check_odd_prime(p);
    Field f;
    f.kind_ = FieldKind::prime;
    f.p_ = p;
    return f;
  }

  /// F_{p^2} with modulus x^2 + m1 x + m0 (coefficients reduced mod p).
  static Field prime_square(std::uint64_t p, std::int64_t m1, std::int64_t m0) {
    check_odd_prime(p);
    Int P(static_cast<unsigned long>(p));
    Int c1 = arith::mod(Int(static_cast<long>(m1)), P);
    Int c0 = arith::mod(Int(static_cast<long>(m0)), P);
    if (arith::legendre(Int(c1 * c1 - 4 * c0), P) != -1)
      throw DomainError("F_{p^2} modulus is not irreducible over F_p");
    Field f;
    f.kind_ = FieldKind::prime_square;
    f.p_ = p;
    f.m1_ = c1.get_ui();
    f.m0_ = c0.get_ui();
    return f;
  }

  /// F_{p^2} = F_p[x]/(x^2 - n) with n the least quadratic non-residue.
  static Field prime_square(std::uint64_t p) {
    check_odd_prime(p);
    Int P(static_cast<unsigned long>(p));
    long n = 2;
    while (arith::legendre(Int(n), P) != -1) ++n;
    return prime_square(p, 0, -n);
  }

  FieldKind kind() const { return kind_; }
  long long d() const { return d_; }
  std::uint64_t p() const { return p_; }
  Int characteristic() const { return Int(static_cast<unsigned long>(p_)); }
  std::uint64_t m1() const { return m1_; }
  std::uint64_t m0() const { return m0_; }

  bool is_finite() const { return kind_ == FieldKind::prime || kind_ == FieldKind::prime_square; }
  bool is_quadratic() const { return kind_ == FieldKind::quadratic; }
  /// True for fields whose elements have a surd/second coordinate.
  bool has_root() const { return kind_ == FieldKind::quadratic || kind_ == FieldKind::prime_square; }

  /// Number of elements of a finite field.
  Int order() const {
    Int P = characteristic();
    return kind_ == FieldKind::prime_square ? Int(P * P) : P;
  }

  std::string name() const {
    switch (kind_) {
      case FieldKind::rationals:
        return "Q";
      case FieldKind::quadratic:
        return d_ == -1 ? "Q(i)" : "Q(sqrt," + std::to_string(d_) + ")";
      case FieldKind::prime:
        return "Fp(" + std::to_string(p_) + ")";
      case FieldKind::prime_square: {
        std::string s = "Fp2(" + std::to_string(p_);
        if (m1_ == 0) {
          // x^2 - n with n = -m0.
          s += "," + std::to_string((p_ - m0_) % p_);
        } else {
          s += "," + std::to_string(m1_) + "," + std::to_string(m0_);
        }
        return s + ")";
      }
    }
    return "?";
  }

  bool operator==(const Field&) const = default;

 private:
  static void check_odd_prime(std::uint64_t p) {
    if (p == 2 || !arith::is_prime(Int(static_cast<unsigned long>(p))))
      throw DomainError("finite fields need an odd prime, got " + std::to_string(p));
  }

  FieldKind kind_ = FieldKind::rationals;
  long long d_ = 0;
  std::uint64_t p_ = 0;
  std::uint64_t m1_ = 0;
  std::uint64_t m0_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const Field& f) { return os << f.name(); }

/// An element c0 + c1 * r of a supported field, where r is sqrt(d) for
/// quadratic fields and the root of the modulus for F_{p^2}. Coordinates are
/// canonical: reduced fractions, or residues in [0, p).
class Element {
 public:
  Element() = default;

  Element(Field field, Rat c0, Rat c1 = 0) : field_(field), c0_(std::move(c0)), c1_(std::move(c1)) { canonicalize(); }

  static Element zero(const Field& f) { return Element(f, 0); }
  static Element one(const Field& f) { return Element(f, 1); }
  static Element integer(const Field& f, long n) { return Element(f, Rat(n)); }

  /// sqrt(d) in Q(sqrt d), or the modulus root in F_{p^2}.
  static Element root(const Field& f) {
    if (!f.has_root()) throw DomainError("field has no adjoined root");
    return Element(f, 0, 1);
  }

  const Field& field() const { return field_; }
  const Rat& c0() const { return c0_; }
  const Rat& c1() const { return c1_; }
  bool is_zero() const { return sgn(c0_) == 0 && sgn(c1_) == 0; }
  bool is_one() const { return c0_ == 1 && sgn(c1_) == 0; }
  /// True when the element lies in the prime field (Q or F_p).
  bool is_base() const { return sgn(c1_) == 0; }

  friend bool operator==(const Element& x, const Element& y) {
    return x.field_ == y.field_ && x.c0_ == y.c0_ && x.c1_ == y.c1_;
  }
  friend bool operator!=(const Element& x, const Element& y) { return !(x == y); }

  Element operator-() const { return Element(field_, -c0_, -c1_); }

  friend Element operator+(const Element& x, const Element& y) {
    check_same(x, y);
    return Element(x.field_, x.c0_ + y.c0_, x.c1_ + y.c1_);
  }
  friend Element operator-(const Element& x, const Element& y) {
    check_same(x, y);
    return Element(x.field_, x.c0_ - y.c0_, x.c1_ - y.c1_);
  }
  friend Element operator*(const Element& x, const Element& y) {
    check_same(x, y);
    const Field& f = x.field_;
    switch (f.kind()) {
      case FieldKind::rationals:
      case FieldKind::prime:
        return Element(f, x.c0_ * y.c0_);
      case FieldKind::quadratic: {
        Rat d(static_cast<long>(f.d()));
        return Element(f, x.c0_ * y.c0_ + d * x.c1_ * y.c1_, x.c0_ * y.c1_ + x.c1_ * y.c0_);
      }
      case FieldKind::prime_square: {
        // r^2 = -m1 r - m0
        Rat m1(static_cast<unsigned long>(f.m1())), m0(static_cast<unsigned long>(f.m0()));
        Rat bb = x.c1_ * y.c1_;
        return Element(f, x.c0_ * y.c0_ - m0 * bb, x.c0_ * y.c1_ + x.c1_ * y.c0_ - m1 * bb);
      }
    }
    return {};
  }
  friend Element operator/(const Element& x, const Element& y) { return x * y.inverse(); }

  Element& operator+=(const Element& y) { return *this = *this + y; }
  Element& operator-=(const Element& y) { return *this = *this - y; }
  Element& operator*=(const Element& y) { return *this = *this * y; }
  Element& operator/=(const Element& y) { return *this = *this / y; }

  /// Field norm down to the prime field (identity on Q and F_p).
  Rat norm() const {
    switch (field_.kind()) {
      case FieldKind::rationals:
      case FieldKind::prime:
        return c0_;
      case FieldKind::quadratic:
        return c0_ * c0_ - Rat(static_cast<long>(field_.d())) * c1_ * c1_;
      case FieldKind::prime_square: {
        Rat m1(static_cast<unsigned long>(field_.m1())), m0(static_cast<unsigned long>(field_.m0()));
        Rat n = c0_ * c0_ - m1 * c0_ * c1_ + m0 * c1_ * c1_;
        return Rat(arith::mod(n.get_num(), field_.characteristic()));
      }
    }
    return 0;
  }

  Element conjugate() const {
    switch (field_.kind()) {
      case FieldKind::quadratic:
        return Element(field_, c0_, -c1_);
      case FieldKind::prime_square:
        return Element(field_, c0_ - Rat(static_cast<unsigned long>(field_.m1())) * c1_, -c1_);
      default:
        return *this;
    }
  }

  Element inverse() const {
    if (is_zero()) throw DivisionByZero();
    switch (field_.kind()) {
      case FieldKind::rationals:
        return Element(field_, 1 / c0_);
      case FieldKind::prime: {
        Int P = field_.characteristic();
        return Element(field_, Rat(arith::invmod(c0_.get_num(), P)));
      }
      case FieldKind::quadratic: {
        Rat n = norm();
        return Element(field_, c0_ / n, -c1_ / n);
      }
      case FieldKind::prime_square: {
        Int P = field_.characteristic();
        Rat ninv(arith::invmod(norm().get_num(), P));
        Element c = conjugate();
        return Element(field_, c.c0_ * ninv, c.c1_ * ninv);
      }
    }
    return {};
  }

  Element pow(const Int& e) const {
    if (e < 0) return inverse().pow(Int(-e));
    Element result = one(field_);
    Element base = *this;
    Int k = e;
    while (k > 0) {
      if (mpz_odd_p(k.get_mpz_t())) result *= base;
      base *= base;
      k >>= 1;
    }
    return result;
  }
  Element pow(long e) const { return pow(Int(e)); }

  std::string to_string() const {
    auto rat = [](const Rat& r) { return r.get_str(); };
    if (!field_.has_root()) return rat(c0_);
    if (sgn(c1_) == 0) return rat(c0_);
    std::string coeff;
    if (c1_ == 1) {
      coeff = "r";
    } else if (c1_ == -1) {
      coeff = "-r";
    } else {
      coeff = rat(c1_) + "*r";
    }
    if (sgn(c0_) == 0) return coeff;
    if (coeff[0] == '-') return rat(c0_) + coeff;
    return rat(c0_) + "+" + coeff;
  }

 private:
  static void check_same(const Element& x, const Element& y) {
    if (!(x.field_ == y.field_)) throw FieldMismatch();
  }

  void canonicalize() {
    c0_.canonicalize();
    c1_.canonicalize();
    if (!field_.has_root() && sgn(c1_) != 0) throw DomainError("element has a root coordinate in a field without one");
    if (field_.is_finite()) {
      Int P = field_.characteristic();
      c0_ = Rat(arith::mod(c0_, P));
      c1_ = Rat(arith::mod(c1_, P));
    }
  }

  Field field_;
  Rat c0_;
  Rat c1_;
};

inline std::ostream& operator<<(std::ostream& os, const Element& x) { return os << x.to_string(); }

inline Element operator*(long k, const Element& x) { return Element::integer(x.field(), k) * x; }

// ---------------------------------------------------------------------------
// Square classes

namespace detail {

// Tonelli-Shanks in the cyclic group F_q^*.
inline std::optional<Element> finite_sqrt(const Element& x) {
  const Field& f = x.field();
  if (x.is_zero()) return x;
  Int q = f.order();
  Int qm1 = q - 1;
  if (x.pow(Int(qm1 / 2)) != Element::one(f)) return std::nullopt;
  Int s = qm1;
  int e = 0;
  while (mpz_even_p(s.get_mpz_t())) {
    s /= 2;
    ++e;
  }
  // A non-square, found by scanning small elements.
  Element z = Element::one(f);
  for (long a = 2;; ++a) {
    for (long b = 0; b <= (f.kind() == FieldKind::prime_square ? 3 : 0); ++b) {
      Element c(f, Rat(a), Rat(b));
      if (!c.is_zero() && c.pow(Int(qm1 / 2)) != Element::one(f)) {
        z = c;
        goto found;
      }
    }
  }
found:
  Element c = z.pow(s);
  Element r = x.pow(Int((s + 1) / 2));
  Element t = x.pow(s);
  int m = e;
  while (!t.is_one()) {
    int i = 0;
    Element tt = t;
    while (!tt.is_one()) {
      tt *= tt;
      ++i;
    }
    Element b = c;
    for (int j = 0; j < m - i - 1; ++j) b *= b;
    r *= b;
    c = b * b;
    t *= c;
    m = i;
  }
  return r;
}

inline std::optional<Element> quadratic_sqrt(const Element& x) {
  const Field& f = x.field();
  Rat d(static_cast<long>(f.d()));
  if (x.is_zero()) return x;
  const Rat& a = x.c0();
  const Rat& b = x.c1();
  if (sgn(b) == 0) {
    if (auto u = arith::rational_sqrt(a)) return Element(f, *u);
    Rat q = a / d;
    if (auto v = arith::rational_sqrt(q)) return Element(f, 0, *v);
    return std::nullopt;
  }
  // (u + v r)^2 = a + b r  <=>  u^2 + d v^2 = a, 2uv = b; u^2 solves
  // z^2 - a z + d b^2 / 4 = 0.
  auto root = arith::rational_sqrt(x.norm());
  if (!root) return std::nullopt;
  for (const Rat& u2 : {Rat((a + *root) / 2), Rat((a - *root) / 2)}) {
    if (sgn(u2) <= 0) continue;
    auto u = arith::rational_sqrt(u2);
    if (!u) continue;
    Element cand(f, *u, b / (2 * *u));
    if (cand * cand == x) return cand;
  }
  return std::nullopt;
}

}  // namespace detail

/// A square root of x when one exists.
inline std::optional<Element> sqrt(const Element& x) {
  switch (x.field().kind()) {
    case FieldKind::rationals:
      if (auto r = arith::rational_sqrt(x.c0())) return Element(x.field(), *r);
      return std::nullopt;
    case FieldKind::quadratic:
      return detail::quadratic_sqrt(x);
    case FieldKind::prime:
    case FieldKind::prime_square:
      return detail::finite_sqrt(x);
  }
  return std::nullopt;
}

/// True iff x = y^2 for some y in the field of x (0 counts as a square).
inline bool is_square(const Element& x) {
  if (x.is_zero()) return true;
  switch (x.field().kind()) {
    case FieldKind::rationals:
      return arith::is_rational_square(x.c0());
    case FieldKind::quadratic:
      return detail::quadratic_sqrt(x).has_value();
    case FieldKind::prime:
    case FieldKind::prime_square: {
      Int e = (x.field().order() - 1) / 2;
      return x.pow(e).is_one();
    }
  }
  return false;
}

inline bool is_square(const Field& f, const Element& x) {
  if (!(x.field() == f)) throw FieldMismatch();
  return is_square(x);
}

/// Same class in K^*/K^*2 (both arguments nonzero).
inline bool same_square_class(const Element& x, const Element& y) {
  if (x.is_zero() || y.is_zero()) throw DomainError("square class of zero");
  return is_square(x / y);
}

// ---------------------------------------------------------------------------
// Positivity and the sign convention

namespace detail {

inline bool positive_coordinate(const Field& f, const Rat& c) {
  if (f.is_finite()) {
    Int P = f.characteristic();
    return 2 * c.get_num() < P;  // representative in [1, (p-1)/2]
  }
  return sgn(c) > 0;
}

}  // namespace detail

/// The fixed positivity convention: lexicographic on coordinates, first
/// nonzero coordinate decides (sign for Q, representative <= (p-1)/2 for
/// F_p). `flipped` negates it on every x other than +-1, so 1 stays positive
/// and sigma(I) = 1 holds under both; both satisfy positive(-x) = !positive(x).
struct Positivity {
  bool flipped = false;

  bool operator()(const Element& x) const {
    if (x.is_zero()) throw DomainError("positive: zero has no sign");
    const Field& f = x.field();
    bool pos = sgn(x.c0()) != 0 ? detail::positive_coordinate(f, x.c0()) : detail::positive_coordinate(f, x.c1());
    if (flipped && !x.is_one() && !(-x).is_one()) return !pos;
    return pos;
  }

  static Positivity standard() { return {}; }
  static Positivity reversed() { return {true}; }
};

inline bool positive(const Element& x, Positivity convention = {}) { return convention(x); }

inline bool positive(const Field& f, const Element& x, Positivity convention = {}) {
  if (!(x.field() == f)) throw FieldMismatch();
  return convention(x);
}

// ---------------------------------------------------------------------------
// Stufe

enum class Stufe { one, two, unknown_gt2, infinite };

inline std::string to_string(Stufe s) {
  switch (s) {
    case Stufe::one:
      return "1";
    case Stufe::two:
      return "2";
    case Stufe::unknown_gt2:
      return "unknown_gt2";
    case Stufe::infinite:
      return "infinite";
  }
  return "?";
}

/// A pair with gamma^2 + delta^2 = -1.
struct TwoSquareWitness {
  Element gamma;
  Element delta;
};

enum class WitnessPreference {
  simplest,         // table entry, or (sqrt(-1), 0) when -1 is a square
  nonzero_product,  // gamma * delta != 0 when such a witness exists
};

namespace detail {

inline bool verify_witness(const TwoSquareWitness& w) {
  const Field& f = w.gamma.field();
  return w.gamma * w.gamma + w.delta * w.delta == -Element::one(f);
}

// Canonical square root of -1 when it exists: the positive one.
inline std::optional<Element> sqrt_minus_one(const Field& f) {
  auto r = sqrt(-Element::one(f));
  if (!r) return std::nullopt;
  return Positivity{}(*r) ? *r : -*r;
}

// gamma = (z - 1/z)/2, delta = (z + 1/z)/(2i) gives gamma^2 + delta^2 = -1.
inline std::optional<TwoSquareWitness> witness_from_root(const Element& i) {
  const Field& f = i.field();
  Element two = Element::integer(f, 2);
  for (long k = 2; k < 128; ++k) {
    Element z = f.has_root() && k % 2 == 1 ? Element(f, Rat(k / 2), 1) : Element::integer(f, k / 2 + 1);
    if (z.is_zero()) continue;
    Element z2 = z * z;
    if (z2.is_one() || z2 == -Element::one(f)) continue;
    Element zi = z.inverse();
    TwoSquareWitness w{(z - zi) / two, (z + zi) / (two * i)};
    if (!w.gamma.is_zero() && !w.delta.is_zero() && verify_witness(w)) return w;
  }
  return std::nullopt;
}

// Bounded search for -1 = gamma^2 + delta^2 in an imaginary quadratic field.
inline std::optional<TwoSquareWitness> search_quadratic_witness(const Field& f, long bound) {
  const long m = -f.d();
  Element r = Element::root(f);
  // gamma = j/k, delta = (n/k) r:  j^2 + k^2 = m n^2.
  for (long n = 1; n <= bound; ++n) {
    for (long k = 1; k <= bound; ++k) {
      Int rhs = Int(m) * n * n - Int(k) * k;
      if (rhs < 0 || !arith::is_perfect_square(rhs)) continue;
      Int j;
      mpz_sqrt(j.get_mpz_t(), rhs.get_mpz_t());
      TwoSquareWitness w{Element(f, Rat(j, k)), Element(f, 0, Rat(n, k))};
      if (verify_witness(w)) return w;
    }
  }
  // gamma = (j/k) r, delta = (l/k) r:  m (j^2 + l^2) = k^2.
  for (long j = 0; j <= bound; ++j) {
    for (long l = 1; l <= bound; ++l) {
      Int s = Int(m) * (Int(j) * j + Int(l) * l);
      if (!arith::is_perfect_square(s)) continue;
      Int k;
      mpz_sqrt(k.get_mpz_t(), s.get_mpz_t());
      TwoSquareWitness w{Element(f, 0, Rat(Int(j), k)), Element(f, 0, Rat(Int(l), k))};
      if (verify_witness(w)) return w;
    }
  }
  // Mixed shapes with small integer coordinates over a common denominator.
  const long h = std::min<long>(bound, 8);
  for (long den = 1; den <= h; ++den) {
    for (long x1 = -h; x1 <= h; ++x1)
      for (long y1 = 1; y1 <= h; ++y1)
        for (long x2 = -h; x2 <= h; ++x2)
          for (long y2 = -h; y2 <= h; ++y2) {
            if (x1 * y1 + x2 * y2 != 0) continue;
            if (x1 * x1 + x2 * x2 - m * (y1 * y1 + y2 * y2) != -den * den) continue;
            TwoSquareWitness w{Element(f, Rat(x1, den), Rat(y1, den)), Element(f, Rat(x2, den), Rat(y2, den))};
            if (verify_witness(w)) return w;
          }
  }
  (void)r;
  return std::nullopt;
}

inline std::optional<TwoSquareWitness> table_witness(const Field& f) {
  if (f.kind() != FieldKind::quadratic) return std::nullopt;
  Element r = Element::root(f);
  if (f.d() == -2) return TwoSquareWitness{Element::one(f), r};
  if (f.d() == -3) {
    Element eps(f, Rat(-1, 2), Rat(1, 2));  // (-1 + sqrt(-3)) / 2
    return TwoSquareWitness{eps, eps * eps};
  }
  return std::nullopt;
}

}  // namespace detail

inline constexpr long kDefaultStufeSearchBound = 50;

/// -1 as a sum of two squares, when the field allows it.
inline std::optional<TwoSquareWitness> two_square_witness(const Field& f,
                                                         WitnessPreference pref = WitnessPreference::simplest,
                                                         long search_bound = kDefaultStufeSearchBound) {
  if (f.kind() == FieldKind::rationals) return std::nullopt;
  if (f.kind() == FieldKind::quadratic && f.d() > 0) return std::nullopt;

  if (auto i = detail::sqrt_minus_one(f)) {
    if (pref == WitnessPreference::simplest) return TwoSquareWitness{*i, Element::zero(f)};
    if (auto w = detail::witness_from_root(*i)) return w;
    return TwoSquareWitness{*i, Element::zero(f)};
  }
  if (auto w = detail::table_witness(f)) {
    if (!detail::verify_witness(*w)) throw MathError("internal: table witness failed verification");
    return w;
  }
  if (f.is_finite()) {
    // F_p with p = 3 mod 4: -1 - g^2 is a nonzero square for some g.
    for (long g = 1; g < 1'000'000; ++g) {
      Element gamma = Element::integer(f, g);
      Element rest = -Element::one(f) - gamma * gamma;
      if (rest.is_zero()) continue;
      if (auto delta = sqrt(rest)) return TwoSquareWitness{gamma, *delta};
    }
    return std::nullopt;
  }
  return detail::search_quadratic_witness(f, search_bound);
}

/// Stufe of the field: minimal number of squares summing to -1.
inline Stufe stufe(const Field& f, long search_bound = kDefaultStufeSearchBound) {
  switch (f.kind()) {
    case FieldKind::rationals:
      return Stufe::infinite;
    case FieldKind::quadratic:
      if (f.d() > 0) return Stufe::infinite;
      if (f.d() == -1) return Stufe::one;
      return two_square_witness(f, WitnessPreference::simplest, search_bound) ? Stufe::two : Stufe::unknown_gt2;
    case FieldKind::prime:
    case FieldKind::prime_square:
      return is_square(-Element::one(f)) ? Stufe::one : Stufe::two;
  }
  return Stufe::unknown_gt2;
}

// ---------------------------------------------------------------------------
// Inert primes of quadratic fields

namespace detail {

inline void check_inert(const Field& f, const Int& p) {
  if (!f.is_quadratic()) throw DomainError("inert-prime machinery needs a quadratic field");
  if (p == 2 || !arith::is_prime(p)) throw DomainError("inert prime must be an odd prime");
  Int d(static_cast<long>(f.d()));
  if (arith::mod(d, p) == 0 || arith::legendre(d, p) != -1)
    throw DomainError(p.get_str() + " is not inert in " + f.name());
}

}  // namespace detail

/// v_P(x) at the prime P = pO above an inert odd p: v_p(Norm x) / 2.
inline int valuation_at_inert_prime(const Element& x, const Int& p) {
  detail::check_inert(x.field(), p);
  if (x.is_zero()) throw DomainError("valuation of zero");
  return arith::valuation(x.norm(), p) / 2;
}

/// The residue field O/pO as F_{p^2} = F_p[x]/(x^2 - d), sqrt d -> x.
inline Field residue_field_at_inert_prime(const Field& f, const Int& p) {
  detail::check_inert(f, p);
  return Field::prime_square(p.get_ui(), 0, -arith::mod(Int(static_cast<long>(f.d())), p).get_si());
}

/// Image in O/pO of an element of valuation zero at the inert prime p.
inline Element reduce_at_inert_prime(const Element& x, const Int& p) {
  if (valuation_at_inert_prime(x, p) != 0) throw DomainError("reduce_at_inert_prime: nonzero valuation");
  Field res = residue_field_at_inert_prime(x.field(), p);
  // Coordinates are p-integral: Z_p[sqrt d] is the local ring of integers.
  if (arith::valuation(x.c0().get_den(), p) != 0 && sgn(x.c0()) != 0)
    throw DomainError("reduce_at_inert_prime: coordinate not p-integral");
  auto coord = [&](const Rat& c) { return sgn(c) == 0 ? Rat(0) : Rat(arith::mod(c, p)); };
  return Element(res, coord(x.c0()), coord(x.c1()));
}

/// Multiplicative order of x in a finite field.
inline Int mult_order(const Element& x) {
  if (!x.field().is_finite()) throw DomainError("mult_order needs a finite field");
  if (x.is_zero()) throw DomainError("mult_order of zero");
  Int n = x.field().order() - 1;
  Int order = n;
  for (auto& [q, e] : arith::factor(n)) {
    for (int i = 0; i < e; ++i) {
      if (x.pow(Int(order / q)).is_one()) {
        order /= q;
      } else {
        break;
      }
    }
  }
  return order;
}

}  // namespace wittcls

#endif  // WITTCLS_FIELD_HPP
