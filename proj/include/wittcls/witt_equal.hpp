// Deciding equality in W(K): local-global over Q and quadratic fields, the
// dimension/discriminant table over finite fields, and a bounded rewrite
// engine as fallback. Also signature, anisotropic dimension and norm over Q.

#ifndef WITTCLS_WITT_EQUAL_HPP
#define WITTCLS_WITT_EQUAL_HPP

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "wittcls/hilbert.hpp"
#include "wittcls/witt.hpp"

namespace wittcls {

enum class Verdict { equal, not_equal, unknown };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::equal:
      return "equal";
    case Verdict::not_equal:
      return "not_equal";
    case Verdict::unknown:
      return "unknown";
  }
  return "?";
}

/// Outcome of an equality test; `reason` names the deciding invariant.
struct EqualityVerdict {
  Verdict verdict = Verdict::unknown;
  std::string reason;

  bool equal() const { return verdict == Verdict::equal; }
  bool not_equal() const { return verdict == Verdict::not_equal; }
  bool unknown() const { return verdict == Verdict::unknown; }
};

enum class EqualityMode {
  automatic,     // complete decision, rewrite engine only when factoring gives up
  local_global,  // complete decision or an exception
  rewrite,       // rewrite engine only
};

inline constexpr long kDefaultRewriteBudget = 10'000;

struct EqualityOptions {
  EqualityMode mode = EqualityMode::automatic;
  long budget = kDefaultRewriteBudget;
};

namespace detail {

// ---------------------------------------------------------------------------
// Q: forms as signed squarefree integers

inline Int kernel_product(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return Int(a / g) * Int(b / g);
}

// Diagonal of q over Q as squarefree kernels, with <a> + <-a> pairs removed.
inline std::vector<Int> rational_kernels(const WittExpression& q) {
  std::map<Int, long> count;
  for (const auto& t : q.terms()) {
    Int k = arith::squarefree_kernel(t.coefficient.c0());
    if (t.multiplicity < 0) k = -k;
    count[k] += std::labs(t.multiplicity);
  }
  std::vector<Int> out;
  for (auto& [k, c] : count) {
    if (k < 0) continue;
    auto it = count.find(Int(-k));
    long neg = it == count.end() ? 0 : it->second;
    long cancel = std::min(c, neg);
    c -= cancel;
    if (it != count.end()) it->second -= cancel;
  }
  for (auto& [k, c] : count)
    for (long i = 0; i < c; ++i) out.push_back(k);
  return out;
}

inline Int kernel_signed_determinant(const std::vector<Int>& entries) {
  Int d = 1;
  for (const Int& a : entries) d = kernel_product(d, a);
  long n = static_cast<long>(entries.size());
  if ((n * (n - 1) / 2) % 2) d = -d;
  return d;
}

inline std::set<Int> kernel_primes(const std::vector<Int>& entries) {
  std::set<Int> ps{Int(2)};
  for (const Int& a : entries)
    for (const Int& p : arith::prime_divisors(a)) ps.insert(p);
  return ps;
}

// prod_{i<j} (a_i, a_j)_p
inline int hasse_invariant(const std::vector<Int>& entries, const Int& p) {
  int s = 1;
  Int prefix = 1;
  for (const Int& a : entries) {
    if (prefix != 1) s *= hilbert_symbol(Rat(prefix), Rat(a), p);
    prefix = kernel_product(prefix, a);
  }
  return s;
}

// Hasse invariant of the hyperbolic form of dimension 2m at p.
inline int hyperbolic_hasse(long m, const Int& p) {
  bool odd_power = (m * (m - 1) / 2) % 2 != 0;
  return (odd_power && p == 2) ? -1 : 1;
}

inline bool is_local_square(const Int& a, const Int& p) {
  Int u;
  int e = split_power(a, p, u);
  if (e % 2) return false;
  if (p == 2) return arith::mod(u, Int(8)) == 1;
  return arith::legendre(u, p) == 1;
}

inline long kernel_signature(const std::vector<Int>& entries) {
  long s = 0;
  for (const Int& a : entries) s += sgn(a) > 0 ? 1 : -1;
  return s;
}

// Local anisotropic dimension at a finite prime p.
inline long local_anisotropic_dimension(const std::vector<Int>& entries, const Int& p) {
  long n = static_cast<long>(entries.size());
  if (n == 0) return 0;
  if (n % 2 == 0) {
    Int d = kernel_signed_determinant(entries);
    if (!is_local_square(d, p)) return 2;
    return hasse_invariant(entries, p) == hyperbolic_hasse(n / 2, p) ? 0 : 4;
  }
  std::vector<Int> ext = entries;
  ext.push_back(Int(-kernel_signed_determinant(entries)));
  return local_anisotropic_dimension(ext, p) == 0 ? 1 : 3;
}

inline EqualityVerdict rational_is_zero(const WittExpression& q) {
  std::vector<Int> e = rational_kernels(q);
  if (e.empty()) return {Verdict::equal, "cancellation"};
  if (e.size() % 2) return {Verdict::not_equal, "odd dimension"};
  Int d = kernel_signed_determinant(e);
  if (d != 1) return {Verdict::not_equal, "signed determinant " + d.get_str()};
  long sig = kernel_signature(e);
  if (sig != 0) return {Verdict::not_equal, "signature " + std::to_string(sig)};
  long m = static_cast<long>(e.size()) / 2;
  for (const Int& p : kernel_primes(e)) {
    if (hasse_invariant(e, p) != hyperbolic_hasse(m, p))
      return {Verdict::not_equal, "Hasse invariant at " + p.get_str()};
  }
  return {Verdict::equal, "local-global"};
}

// ---------------------------------------------------------------------------
// Finite fields

inline EqualityVerdict finite_is_zero(const WittExpression& q) {
  std::vector<Element> e = q.diagonal();
  if (e.size() % 2) return {Verdict::not_equal, "odd dimension"};
  if (!is_square(signed_determinant_of(q.field(), e))) return {Verdict::not_equal, "signed determinant"};
  return {Verdict::equal, "dimension and discriminant"};
}

// ---------------------------------------------------------------------------
// Quadratic fields

// Removes pairs <a>, <b> with -ab a square.
inline std::vector<Element> cancel_hyperbolic_pairs(std::vector<Element> e) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < e.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < e.size() && !changed; ++j)
        if (is_square(-(e[i] * e[j]))) {
          e.erase(e.begin() + static_cast<long>(j));
          e.erase(e.begin() + static_cast<long>(i));
          changed = true;
        }
  }
  return e;
}

inline void add_primes(std::set<Int>& ps, const Rat& x) {
  if (sgn(x) == 0) return;
  for (const Int& p : arith::prime_divisors(x.get_num())) ps.insert(p);
  for (const Int& p : arith::prime_divisors(x.get_den())) ps.insert(p);
}

// Rational primes below every finite place where some entry is not a unit,
// together with 2.
inline std::set<Int> quadratic_bad_primes(const std::vector<Element>& entries) {
  std::set<Int> ps{Int(2)};
  for (const Element& a : entries) {
    add_primes(ps, a.norm());
    for (const Int& p : arith::prime_divisors(a.c0().get_den())) ps.insert(p);
    for (const Int& p : arith::prime_divisors(a.c1().get_den())) ps.insert(p);
  }
  return ps;
}

inline int quadratic_hasse(const std::vector<Element>& entries, const QuadPlace& v) {
  int s = 1;
  std::optional<Element> prefix;
  for (const Element& a : entries) {
    if (prefix) s *= hilbert_symbol_local(*prefix, a, v);
    prefix = prefix ? *prefix * a : a;
  }
  return s;
}

inline int quadratic_hyperbolic_hasse(const Field& f, long m, const QuadPlace& v) {
  if ((m * (m - 1) / 2) % 2 == 0) return 1;
  Element minus_one = -Element::one(f);
  return hilbert_symbol_local(minus_one, minus_one, v);
}

inline EqualityVerdict quadratic_is_zero(const WittExpression& q) {
  const Field& f = q.field();
  std::vector<Element> e = cancel_hyperbolic_pairs(q.diagonal());
  if (e.empty()) return {Verdict::equal, "cancellation"};
  if (e.size() % 2) return {Verdict::not_equal, "odd dimension"};
  if (!is_square(signed_determinant_of(f, e))) return {Verdict::not_equal, "signed determinant"};
  if (f.d() > 0) {
    for (int branch : {1, -1}) {
      long sig = 0;
      for (const Element& a : e) sig += real_embedding_sign(a, branch);
      if (sig != 0) return {Verdict::not_equal, "signature at a real place"};
    }
  }
  long m = static_cast<long>(e.size()) / 2;
  for (const Int& p : quadratic_bad_primes(e)) {
    for (const QuadPlace& v : places_above(f, p)) {
      if (quadratic_hasse(e, v) != quadratic_hyperbolic_hasse(f, m, v))
        return {Verdict::not_equal, "Hasse invariant at " + v.to_string()};
    }
  }
  return {Verdict::equal, "local-global"};
}

// ---------------------------------------------------------------------------
// Rewrite engine

inline std::string state_key(std::vector<Element> e) {
  std::vector<std::string> keys;
  keys.reserve(e.size());
  for (const Element& a : e) keys.push_back(a.to_string());
  std::sort(keys.begin(), keys.end());
  std::string out;
  for (const std::string& k : keys) out += k + ";";
  return out;
}

// Scales a by a rational square so the coordinates stay small.
inline Element shrink_by_square(const Element& a) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.c0().get_num().get_mpz_t(), a.c1().get_num().get_mpz_t());
  Int l;
  mpz_lcm(l.get_mpz_t(), a.c0().get_den().get_mpz_t(), a.c1().get_den().get_mpz_t());
  // a = (g / l) * primitive; strip square factors of g and l using small primes.
  Rat scale = 1;
  for (Int* x : {&g, &l}) {
    for (unsigned long p = 2; p < 200; ++p) {
      Int pp(p * p);
      while (*x != 0 && *x % pp == 0) {
        *x /= pp;
        scale *= (x == &g) ? Rat(pp) : Rat(1, 1) / Rat(pp);
      }
    }
  }
  return a / Element(a.field(), scale);
}

inline std::size_t bit_size(const Element& a) {
  std::size_t n = 0;
  for (const Rat* c : {&a.c0(), &a.c1()})
    n += mpz_sizeinbase(c->get_num().get_mpz_t(), 2) + mpz_sizeinbase(c->get_den().get_mpz_t(), 2);
  return n;
}

inline EqualityVerdict rewrite_is_zero(const WittExpression& q, long budget) {
  const Field& f = q.field();
  std::vector<Element> start = cancel_hyperbolic_pairs(q.diagonal());
  if (start.empty()) return {Verdict::equal, "cancellation"};
  if (start.size() % 2) return {Verdict::not_equal, "odd dimension"};
  if (!is_square(signed_determinant_of(f, start))) return {Verdict::not_equal, "signed determinant"};
  std::deque<std::vector<Element>> queue{start};
  std::unordered_set<std::string> seen{state_key(start)};
  // states whose entries grow far beyond the input are not explored
  std::size_t cap = 0;
  for (const Element& e : start) cap = std::max(cap, bit_size(e));
  cap = 2 * cap + 64;
  long steps = 0;
  while (!queue.empty()) {
    std::vector<Element> cur = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        Element s = cur[i] + cur[j];
        if (s.is_zero()) continue;
        if (++steps > budget) return {Verdict::unknown, "rewrite budget exhausted"};
        std::vector<Element> next;
        for (std::size_t k = 0; k < cur.size(); ++k)
          if (k != i && k != j) next.push_back(cur[k]);
        next.push_back(shrink_by_square(s));
        next.push_back(shrink_by_square(cur[i] * cur[j] * s));
        if (bit_size(next.back()) > cap) continue;
        next = cancel_hyperbolic_pairs(std::move(next));
        if (next.empty()) return {Verdict::equal, "rewrite chain"};
        std::string key = state_key(next);
        if (seen.insert(key).second) queue.push_back(std::move(next));
      }
  }
  return {Verdict::unknown, "rewrite budget exhausted"};
}

}  // namespace detail

/// Whether q = 0 in W(K).
inline EqualityVerdict witt_is_zero(const WittExpression& q, const EqualityOptions& opt = {}) {
  const Field& f = q.field();
  if (f.is_finite()) return detail::finite_is_zero(q);
  if (opt.mode == EqualityMode::rewrite) return detail::rewrite_is_zero(q, opt.budget);
  try {
    if (f.kind() == FieldKind::rationals) return detail::rational_is_zero(q);
    return detail::quadratic_is_zero(q);
  } catch (const FactorizationLimit&) {
    if (opt.mode == EqualityMode::local_global) throw;
    return detail::rewrite_is_zero(q, opt.budget);
  }
}

/// Whether q1 = q2 in W(K).
inline EqualityVerdict witt_equal(const WittExpression& q1, const WittExpression& q2, const EqualityOptions& opt = {}) {
  if (!(q1.field() == q2.field())) throw FieldMismatch();
  return witt_is_zero(q1 - q2, opt);
}

/// Signature of a class over Q.
inline long signature(const WittExpression& q) {
  if (q.field().kind() != FieldKind::rationals) throw DomainError("signature needs the field Q");
  long s = 0;
  for (const auto& t : q.terms()) s += t.multiplicity * sgn(t.coefficient.c0());
  return s;
}

/// Anisotropic dimension at one place of Q.
inline long local_anisotropic_dimension(const WittExpression& q, const RationalPlace& v) {
  if (q.field().kind() != FieldKind::rationals) throw DomainError("anisotropic_dimension needs the field Q");
  if (v.infinite) return std::labs(signature(q));
  return detail::local_anisotropic_dimension(detail::rational_kernels(q), v.p);
}

/// Dimension of the anisotropic representative of the class of q over Q:
/// the maximum of the local values over infinity, 2 and the primes of q.
inline long anisotropic_dimension(const WittExpression& q) {
  if (q.field().kind() != FieldKind::rationals) throw DomainError("anisotropic_dimension needs the field Q");
  std::vector<Int> e = detail::rational_kernels(q);
  long best = std::labs(detail::kernel_signature(e));
  for (const Int& p : detail::kernel_primes(e)) best = std::max(best, detail::local_anisotropic_dimension(e, p));
  return best;
}

/// Norm of a Witt class over Q: its anisotropic dimension.
inline long witt_norm(const WittExpression& q) { return anisotropic_dimension(q); }

}  // namespace wittcls

#endif  // WITTCLS_WITT_EQUAL_HPP
