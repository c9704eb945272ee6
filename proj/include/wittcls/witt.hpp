// Signed combinations of rank-one classes <a> in the Witt ring W(K), with
// the Pfister forms, the signed determinant and the ideal filtration flags.

#ifndef WITTCLS_WITT_HPP
#define WITTCLS_WITT_HPP

#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "wittcls/field.hpp"

namespace wittcls {

/// Sum of multiplicity * <coefficient> in W(K). Coefficients in the same
/// square class are merged on insertion; zero multiplicities are dropped.
class WittExpression {
 public:
  struct Term {
    Element coefficient;
    long multiplicity;
  };

  WittExpression() = default;
  explicit WittExpression(Field field) : field_(std::move(field)) {}

  /// <a>, with <0> read as 0.
  static WittExpression rank_one(const Element& a, long multiplicity = 1) {
    WittExpression q(a.field());
    q.add(a, multiplicity);
    return q;
  }

  /// The diagonal form <a1, ..., an>. Zero entries are rejected.
  static WittExpression form(const Field& f, const std::vector<Element>& entries) {
    WittExpression q(f);
    for (const Element& a : entries) {
      if (a.is_zero()) throw DomainError("diagonal form entry is zero");
      q.add(a, 1);
    }
    return q;
  }

  static WittExpression form(const Field& f, std::initializer_list<long> entries) {
    std::vector<Element> v;
    for (long a : entries) v.push_back(Element::integer(f, a));
    return form(f, v);
  }

  /// H = <1,1>.
  static WittExpression h(const Field& f) { return rank_one(Element::one(f), 2); }

  const Field& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_trivially_zero() const { return terms_.empty(); }

  /// Adds multiplicity * <a>; <0> contributes nothing.
  void add(const Element& a, long multiplicity = 1) {
    if (!(a.field() == field_)) throw FieldMismatch();
    if (a.is_zero() || multiplicity == 0) return;
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
      if (is_square(a / it->coefficient)) {
        it->multiplicity += multiplicity;
        if (it->multiplicity == 0) terms_.erase(it);
        return;
      }
    }
    terms_.push_back({a, multiplicity});
  }

  WittExpression& operator+=(const WittExpression& other) {
    if (!(other.field_ == field_)) throw FieldMismatch();
    for (const Term& t : other.terms_) add(t.coefficient, t.multiplicity);
    return *this;
  }
  WittExpression& operator-=(const WittExpression& other) {
    if (!(other.field_ == field_)) throw FieldMismatch();
    for (const Term& t : other.terms_) add(t.coefficient, -t.multiplicity);
    return *this;
  }
  friend WittExpression operator+(WittExpression a, const WittExpression& b) { return a += b; }
  friend WittExpression operator-(WittExpression a, const WittExpression& b) { return a -= b; }
  WittExpression operator-() const {
    WittExpression out(field_);
    for (const Term& t : terms_) out.terms_.push_back({t.coefficient, -t.multiplicity});
    return out;
  }
  friend WittExpression operator*(long k, const WittExpression& q) {
    WittExpression out(q.field_);
    if (k == 0) return out;
    for (const Term& t : q.terms_) out.terms_.push_back({t.coefficient, k * t.multiplicity});
    return out;
  }

  /// Ring product: <a><b> = <ab>.
  friend WittExpression operator*(const WittExpression& x, const WittExpression& y) {
    if (!(x.field_ == y.field_)) throw FieldMismatch();
    WittExpression out(x.field_);
    for (const Term& s : x.terms_)
      for (const Term& t : y.terms_) out.add(s.coefficient * t.coefficient, s.multiplicity * t.multiplicity);
    return out;
  }

  /// Signed dimension (the Witt class determines it mod 2 only).
  long dimension() const {
    long n = 0;
    for (const Term& t : terms_) n += t.multiplicity;
    return n;
  }

  bool is_honest() const {
    for (const Term& t : terms_)
      if (t.multiplicity < 0) return false;
    return true;
  }

  /// Diagonal entries of a form in the same Witt class: -<a> becomes <-a>.
  std::vector<Element> diagonal() const {
    std::vector<Element> out;
    for (const Term& t : terms_) {
      Element c = t.multiplicity > 0 ? t.coefficient : -t.coefficient;
      for (long i = 0; i < std::labs(t.multiplicity); ++i) out.push_back(c);
    }
    return out;
  }

  /// Diagonal entries of an honest expression, multiplicities expanded.
  std::vector<Element> honest_entries() const {
    if (!is_honest()) throw DomainError("expression has negative multiplicities");
    return diagonal();
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const Term& t : terms_) {
      long m = t.multiplicity;
      if (!s.empty()) s += m < 0 ? " - " : " + ";
      else if (m < 0) s += "-";
      long am = std::labs(m);
      if (am != 1) s += std::to_string(am);
      s += "<" + t.coefficient.to_string() + ">";
    }
    return s;
  }

 private:
  Field field_;
  std::vector<Term> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const WittExpression& q) { return os << q.to_string(); }

/// <<s,t>> = <1, -s, -t, st>.
inline WittExpression pfister2(const Element& s, const Element& t) {
  if (s.is_zero() || t.is_zero()) throw DomainError("pfister2: zero argument");
  if (!(s.field() == t.field())) throw FieldMismatch();
  const Field& f = s.field();
  return WittExpression::form(f, {Element::one(f), -s, -t, s * t});
}

inline WittExpression pfister2(const Field& f, long s, long t) {
  return pfister2(Element::integer(f, s), Element::integer(f, t));
}

/// A fixed representative of the non-square class of a finite field.
inline Element finite_nonsquare(const Field& f) {
  if (!f.is_finite()) throw DomainError("finite_nonsquare needs a finite field");
  for (long a = 2;; ++a) {
    for (long b = 0; b <= (f.has_root() ? 3 : 0); ++b) {
      Element c(f, Rat(a), Rat(b));
      if (!c.is_zero() && !is_square(c)) return c;
    }
  }
}

/// Canonical representative of the square class of x != 0: the signed
/// squarefree integer over Q, 1 or a fixed non-square over F_q. Over
/// quadratic fields x itself is returned (compare with same_square_class).
inline Element square_class_representative(const Element& x) {
  if (x.is_zero()) throw DomainError("square class of zero");
  const Field& f = x.field();
  switch (f.kind()) {
    case FieldKind::rationals:
      return Element(f, Rat(arith::squarefree_kernel(x.c0())));
    case FieldKind::prime:
    case FieldKind::prime_square:
      return is_square(x) ? Element::one(f) : finite_nonsquare(f);
    case FieldKind::quadratic:
      return x;
  }
  return x;
}

/// Raw (-1)^{n(n-1)/2} det of a diagonal entry list.
inline Element signed_determinant_of(const Field& f, const std::vector<Element>& entries) {
  Element det = Element::one(f);
  for (const Element& a : entries) det *= a;
  long n = static_cast<long>(entries.size());
  if ((n * (n - 1) / 2) % 2 != 0) det = -det;
  return det;
}

/// d+-(q) = (-1)^{n(n-1)/2} det q on an honest form, as a square-class
/// representative.
inline Element signed_determinant(const WittExpression& q) {
  if (!q.is_honest()) throw DomainError("signed_determinant: negative multiplicity present");
  return square_class_representative(signed_determinant_of(q.field(), q.honest_entries()));
}

struct IdealMembership {
  bool in_I = false;
  bool in_I2 = false;
  bool in_I2_plus = false;
};

/// Membership in I, I^2 and I^2_+ = I^2 + Z<1,1>.
inline IdealMembership ideal_membership(const WittExpression& q) {
  std::vector<Element> entries = q.diagonal();
  IdealMembership m;
  m.in_I = entries.size() % 2 == 0;
  if (!m.in_I) return m;
  Element d = signed_determinant_of(q.field(), entries);
  m.in_I2 = is_square(d);
  m.in_I2_plus = m.in_I2 || is_square(-d);
  return m;
}

}  // namespace wittcls

#endif  // WITTCLS_WITT_HPP
