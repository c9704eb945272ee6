// Hilbert symbols: explicit formulas over Q_p and R, a mod 2^k solvability
// search for the dyadic case, and local symbols at the places of a quadratic
// field (split, inert, ramified, dyadic).

#ifndef WITTCLS_HILBERT_HPP
#define WITTCLS_HILBERT_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "wittcls/field.hpp"

namespace wittcls {

/// A place of Q: a prime p, or infinity.
struct RationalPlace {
  bool infinite = false;
  Int p = 0;

  static RationalPlace infinity() { return {true, 0}; }
  static RationalPlace prime(Int p) { return {false, std::move(p)}; }
  std::string to_string() const { return infinite ? "inf" : p.get_str(); }
};

namespace detail {

// a = p^alpha * u with u a p-adic unit, for an integer a != 0.
inline int split_power(const Int& a, const Int& p, Int& unit) {
  unit = a;
  return static_cast<int>(mpz_remove(unit.get_mpz_t(), unit.get_mpz_t(), p.get_mpz_t()));
}

// An integer in the same square class as the rational x: num * den.
inline Int integral_class(const Rat& x) { return Int(x.get_num() * x.get_den()); }

inline int parity_sign(long e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace detail

/// (a, b)_p over Q_p for a prime p, by the explicit formulas.
inline int hilbert_symbol(const Rat& a, const Rat& b, const Int& p) {
  if (sgn(a) == 0 || sgn(b) == 0) throw DomainError("hilbert_symbol: zero argument");
  if (!arith::is_prime(p)) throw DomainError("hilbert_symbol: invalid place " + p.get_str());
  Int u, v;
  int alpha = detail::split_power(detail::integral_class(a), p, u);
  int beta = detail::split_power(detail::integral_class(b), p, v);
  if (p == 2) {
    long u8 = arith::mod(u, Int(8)).get_si(), v8 = arith::mod(v, Int(8)).get_si();
    auto eps = [](long w) { return ((w - 1) / 2) % 2; };
    auto omega = [](long w) { return ((w * w - 1) / 8) % 2; };
    long e = eps(u8) * eps(v8) + alpha * omega(v8) + beta * omega(u8);
    return detail::parity_sign(e);
  }
  long eps_p = arith::mod(Int((p - 1) / 2), Int(2)).get_si();
  int s = detail::parity_sign(static_cast<long>(alpha) * beta * eps_p);
  if (beta % 2) s *= arith::legendre(u, p);
  if (alpha % 2) s *= arith::legendre(v, p);
  return s;
}

/// (a, b)_inf over R.
inline int hilbert_symbol_real(const Rat& a, const Rat& b) {
  if (sgn(a) == 0 || sgn(b) == 0) throw DomainError("hilbert_symbol: zero argument");
  return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
}

inline int hilbert_symbol(const Rat& a, const Rat& b, const RationalPlace& v) {
  return v.infinite ? hilbert_symbol_real(a, b) : hilbert_symbol(a, b, v.p);
}

/// (a, b)_2 decided by searching primitive solutions of a x^2 + b y^2 = z^2
/// modulo 2^k after removing even powers of 2 from a and b. Exact for k >= 5
/// by Hensel's lemma; the default k = 8 is the documented oracle precision.
inline int dyadic_hilbert_search(const Rat& a, const Rat& b, int k = 8) {
  if (sgn(a) == 0 || sgn(b) == 0) throw DomainError("hilbert_symbol: zero argument");
  if (k < 5 || k > 12) throw DomainError("dyadic_hilbert_search: precision out of range");
  const std::uint32_t m = 1u << k, mask = m - 1;
  auto reduce = [&](const Rat& x) {
    Int u;
    int e = detail::split_power(detail::integral_class(x), Int(2), u);
    Int r = arith::mod(Int(u * (e % 2 ? 2 : 1)), Int(m));
    return static_cast<std::uint32_t>(r.get_ui());
  };
  const std::uint32_t ar = reduce(a), br = reduce(b);
  std::vector<char> square(m, 0), odd_square(m, 0);
  for (std::uint32_t z = 0; z < m; ++z) {
    square[(z * z) & mask] = 1;
    if (z & 1) odd_square[(z * z) & mask] = 1;
  }
  for (std::uint32_t x = 0; x < m; ++x) {
    for (std::uint32_t y = 0; y < m; ++y) {
      std::uint32_t val = (ar * ((x * x) & mask) + br * ((y * y) & mask)) & mask;
      bool primitive_xy = (x & 1) || (y & 1);
      if (primitive_xy ? square[val] : odd_square[val]) return 1;
    }
  }
  return -1;
}

// ---------------------------------------------------------------------------
// Places of a quadratic field Q(sqrt d)

enum class PlaceType { split, inert, ramified };

/// A finite place of Q(sqrt d) above the rational prime p. Split places are
/// told apart by `branch`: sqrt d maps to branch * s in Q_p, with s the
/// canonical p-adic root from arith::sqrt_mod_prime_power.
struct QuadPlace {
  Int p;
  PlaceType type = PlaceType::inert;
  int branch = 1;

  std::string to_string() const {
    std::string kind = type == PlaceType::split ? "split" : type == PlaceType::inert ? "inert" : "ramified";
    std::string s = "p=" + p.get_str() + "," + kind;
    if (type == PlaceType::split) s += branch > 0 ? "+" : "-";
    return s;
  }
};

inline PlaceType decomposition_type(const Field& f, const Int& p) {
  if (!f.is_quadratic()) throw DomainError("decomposition_type needs a quadratic field");
  if (!arith::is_prime(p)) throw DomainError("not a prime: " + p.get_str());
  Int d(static_cast<long>(f.d()));
  if (p == 2) {
    long d8 = arith::mod(d, Int(8)).get_si();
    if (d8 == 1) return PlaceType::split;
    if (d8 == 5) return PlaceType::inert;
    return PlaceType::ramified;
  }
  int l = arith::legendre(d, p);
  if (l == 0) return PlaceType::ramified;
  return l == 1 ? PlaceType::split : PlaceType::inert;
}

inline std::vector<QuadPlace> places_above(const Field& f, const Int& p) {
  PlaceType t = decomposition_type(f, p);
  if (t == PlaceType::split) return {{p, t, 1}, {p, t, -1}};
  return {{p, t, 1}};
}

namespace detail {

// A rational in the Q_p square class of the image of x at a split place.
inline Rat split_image_class(const Element& x, const QuadPlace& v) {
  const Field& f = x.field();
  const Int& p = v.p;
  Int D;
  mpz_lcm(D.get_mpz_t(), x.c0().get_den().get_mpz_t(), x.c1().get_den().get_mpz_t());
  Int A = Int(x.c0() * D), B = Int(x.c1() * D);
  Int d(static_cast<long>(f.d()));
  Int n = A * A - d * B * B;
  int vn = arith::valuation(n, p);
  int k = vn + (p == 2 ? 6 : 3);
  Int s = arith::sqrt_mod_prime_power(d, p, k);
  Int pk;
  mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
  if (p == 2) {
    // The 2-adic root is known mod 2^(k-1) only.
    pk /= 2;
  }
  Int t = arith::mod(Int(A + B * v.branch * s), pk);
  Int unit;
  int alpha = split_power(t, p, unit);
  Int Dunit;
  int dv = split_power(D, p, Dunit);
  Int m = p == 2 ? Int(8) : p;
  Int u = arith::mod(Int(unit * arith::invmod(arith::mod(Dunit, m), m)), m);
  Rat out(u);
  if ((alpha - dv) % 2 != 0) out *= p;
  return out;
}

// Quadratic character of a nonzero finite-field element.
inline int chi(const Element& x) { return is_square(x) ? 1 : -1; }

inline int tame_symbol_inert(const Element& a, const Element& b, const Int& p) {
  int alpha = valuation_at_inert_prime(a, p);
  int beta = valuation_at_inert_prime(b, p);
  Element P(a.field(), Rat(p));
  Element ua = reduce_at_inert_prime(a * P.pow(static_cast<long>(-alpha)), p);
  Element ub = reduce_at_inert_prime(b * P.pow(static_cast<long>(-beta)), p);
  int s = 1;
  if (beta % 2) s *= chi(ua);
  if (alpha % 2) s *= chi(ub);
  return s;  // (-1)^{(p^2-1)/2} = 1
}

// Valuation at the ramified odd prime above p, and the residue in F_p of
// x / sqrt(d)^v.
inline int ramified_split(const Element& x, const Int& p, Int& residue) {
  int v = arith::valuation(x.norm(), p);
  const Field& f = x.field();
  Element pi = Element::root(f);
  Element y = x * pi.pow(static_cast<long>(-v));
  if (arith::valuation(y.c0().get_den(), p) > 0 || arith::valuation(y.c1().get_den(), p) > 0)
    throw MathError("internal: ramified unit not integral");
  residue = arith::mod(y.c0(), p);
  if (residue == 0) throw MathError("internal: ramified unit has zero residue");
  return v;
}

inline int tame_symbol_ramified(const Element& a, const Element& b, const Int& p) {
  Int ua, ub;
  int alpha = ramified_split(a, p, ua);
  int beta = ramified_split(b, p, ub);
  long eps_p = arith::mod(Int((p - 1) / 2), Int(2)).get_si();
  int s = parity_sign(static_cast<long>(alpha) * beta * eps_p);
  if (beta % 2) s *= arith::legendre(ua, p);
  if (alpha % 2) s *= arith::legendre(ub, p);
  return s;
}

// O / 2^j for the non-split dyadic place of Q(sqrt d), coordinates in the
// basis {1, w} with w = (1 + sqrt d)/2 (inert) or w = sqrt d (ramified).
class DyadicResidueRing {
 public:
  explicit DyadicResidueRing(long d) : d_(d) {
    long d8 = ((d % 8) + 8) % 8;
    if (d8 == 1) throw DomainError("2 splits; no dyadic residue ring needed");
    inert_ = d8 == 5;
    // 2e + 4 uniformizer digits: 2^6 (inert, e = 1), pi^8 = 2^4 (ramified, e = 2).
    j_ = inert_ ? 6 : 4;
    mask_ = (1u << j_) - 1;
    size_ = 1u << (2 * j_);
    wsq0_ = static_cast<std::uint32_t>(((inert_ ? (d - 1) / 4 : d) % (1L << j_) + (1L << j_)) & mask_);
    wsq1_ = inert_ ? 1 : 0;
    square_.assign(size_, 0);
    for (std::uint32_t x = 0; x < size_; ++x) square_[mul(x, x)] = 1;
  }

  bool inert() const { return inert_; }
  int precision() const { return j_; }
  std::uint32_t size() const { return size_; }

  std::uint32_t pack(std::uint32_t c0, std::uint32_t c1) const { return (c0 & mask_) | ((c1 & mask_) << j_); }

  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const {
    std::uint32_t x0 = x & mask_, x1 = x >> j_, y0 = y & mask_, y1 = y >> j_;
    std::uint32_t bb = x1 * y1;
    // w^2 = wsq0 + wsq1 * w
    std::uint32_t c0 = x0 * y0 + bb * wsq0_;
    std::uint32_t c1 = x0 * y1 + x1 * y0 + bb * wsq1_;
    return pack(c0, c1);
  }

  std::uint32_t add(std::uint32_t x, std::uint32_t y) const {
    return pack((x & mask_) + (y & mask_), (x >> j_) + (y >> j_));
  }

  std::uint32_t one() const { return 1; }

  bool is_square(std::uint32_t x) const { return square_[x] != 0; }

  /// Whether a x^2 + b y^2 = z^2 has a solution with a unit coordinate.
  bool represents_primitive_zero(std::uint32_t a, std::uint32_t b) const {
    std::vector<char> b_times_square(size_, 0);
    for (std::uint32_t s = 0; s < size_; ++s)
      if (square_[s]) b_times_square[mul(b, s)] = 1;
    const std::uint32_t minus_one = pack(mask_, 0);
    for (std::uint32_t s = 0; s < size_; ++s) {
      if (!square_[s]) continue;
      std::uint32_t as = mul(a, s);
      // z = 1: a s + b t = 1
      if (b_times_square[add(one(), mul(minus_one, as))]) return true;
      // x = 1: a + b s = z^2
      if (square_[add(a, mul(b, s))]) return true;
      // y = 1: a s + b = z^2
      if (square_[add(as, b)]) return true;
    }
    return false;
  }

 private:
  long d_;
  bool inert_ = false;
  int j_ = 0;
  std::uint32_t mask_ = 0, size_ = 0, wsq0_ = 0, wsq1_ = 0;
  std::vector<char> square_;
};

inline const DyadicResidueRing& dyadic_ring(long d) {
  static std::mutex mutex;
  static std::map<long, std::unique_ptr<DyadicResidueRing>> rings;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = rings[d];
  if (!slot) slot = std::make_unique<DyadicResidueRing>(d);
  return *slot;
}

inline std::uint32_t reduce_coordinate(const Rat& c, int j) {
  if (arith::valuation(c.get_den(), Int(2)) > 0 && sgn(c) != 0)
    throw MathError("internal: dyadic coordinate not 2-integral");
  Int m = Int(1) << j;
  return static_cast<std::uint32_t>(arith::mod(c, m).get_ui());
}

// x divided by an even power of the uniformizer, so valuation 0 or 1, then
// reduced into O / 2^j.
inline std::uint32_t dyadic_class(const Element& x, const DyadicResidueRing& ring) {
  const Field& f = x.field();
  Element root = Element::root(f);
  long d8 = ((f.d() % 8) + 8) % 8;
  Element pi = ring.inert() ? Element::integer(f, 2) : (d8 % 4 == 2 ? root : Element::one(f) + root);
  int vn = arith::valuation(x.norm(), Int(2));
  int v = ring.inert() ? vn / 2 : vn;
  long k = v >= 0 ? v / 2 : -((-v + 1) / 2);
  Element y = x * (pi * pi).pow(-k);
  if (ring.inert()) {
    // c0 + c1 sqrt d = (c0 - c1) + 2 c1 w
    return ring.pack(reduce_coordinate(y.c0() - y.c1(), ring.precision()),
                     reduce_coordinate(2 * y.c1(), ring.precision()));
  }
  return ring.pack(reduce_coordinate(y.c0(), ring.precision()), reduce_coordinate(y.c1(), ring.precision()));
}

inline int dyadic_symbol(const Element& a, const Element& b) {
  const DyadicResidueRing& ring = dyadic_ring(a.field().d());
  return ring.represents_primitive_zero(dyadic_class(a, ring), dyadic_class(b, ring)) ? 1 : -1;
}

}  // namespace detail

/// (a, b)_v at a finite place v of the quadratic field of a and b.
inline int hilbert_symbol_local(const Element& a, const Element& b, const QuadPlace& v) {
  if (a.is_zero() || b.is_zero()) throw DomainError("hilbert_symbol_local: zero argument");
  if (!(a.field() == b.field())) throw FieldMismatch();
  const Field& f = a.field();
  if (!f.is_quadratic()) throw DomainError("hilbert_symbol_local needs a quadratic field");
  if (decomposition_type(f, v.p) != v.type) throw DomainError("place type does not match " + v.to_string());
  switch (v.type) {
    case PlaceType::split:
      if (v.branch != 1 && v.branch != -1) throw DomainError("split place needs branch +-1");
      return hilbert_symbol(detail::split_image_class(a, v), detail::split_image_class(b, v), v.p);
    case PlaceType::inert:
      if (v.p == 2) return detail::dyadic_symbol(a, b);
      return detail::tame_symbol_inert(a, b, v.p);
    case PlaceType::ramified:
      if (v.p == 2) return detail::dyadic_symbol(a, b);
      return detail::tame_symbol_ramified(a, b, v.p);
  }
  return 1;
}

/// Sign of x under the real embedding sqrt d -> branch * |sqrt d| (d > 0).
inline int real_embedding_sign(const Element& x, int branch) {
  const Field& f = x.field();
  if (!f.is_quadratic() || f.d() < 0) throw DomainError("real embedding needs a real quadratic field");
  if (x.is_zero()) return 0;
  int s0 = sgn(x.c0());
  int s1 = sgn(x.c1()) * branch;
  if (s0 == 0) return s1;
  if (s1 == 0 || s0 == s1) return s0;
  // Opposite signs: compare c0^2 with d c1^2.
  Rat lhs = x.c0() * x.c0(), rhs = Rat(static_cast<long>(f.d())) * x.c1() * x.c1();
  return lhs > rhs ? s0 : s1;
}

/// (a, b) at a real place of a real quadratic field.
inline int hilbert_symbol_real_place(const Element& a, const Element& b, int branch) {
  return (real_embedding_sign(a, branch) < 0 && real_embedding_sign(b, branch) < 0) ? -1 : 1;
}

}  // namespace wittcls

#endif  // WITTCLS_HILBERT_HPP
