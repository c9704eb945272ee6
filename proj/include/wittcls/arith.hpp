// Integer and modular arithmetic used throughout wittcls: primality,
// factorization with a process-wide cache, Legendre symbols and p-adic
// square roots. Everything here works on GMP integers; a 64-bit fast path
// handles the common case in factoring.

#ifndef WITTCLS_ARITH_HPP
#define WITTCLS_ARITH_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace wittcls {

using Int = mpz_class;
using Rat = mpq_class;

/// Base class of every error thrown by the library.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public MathError {
 public:
  using MathError::MathError;
};

class FactorizationLimit : public MathError {
 public:
  using MathError::MathError;
};

namespace arith {

using Factorization = std::vector<std::pair<Int, int>>;

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, b, m);
    b = mulmod64(b, b, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// Pollard-Brent; returns a nontrivial factor of the odd composite n.
inline std::uint64_t brent64(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, q = 1, g = 1, ys = 2;
    std::uint64_t r = 1;
    const std::uint64_t m = 128;
    auto f = [&](std::uint64_t v) { return (mulmod64(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod64(q, x > y ? x - y : y - x, n);
        }
        g = gcd64(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd64(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor64(std::uint64_t n, std::map<Int, int>& out) {
  if (n == 1) return;
  if (is_prime64(n)) {
    out[Int(static_cast<unsigned long>(n))] += 1;
    return;
  }
  std::uint64_t d = brent64(n);
  factor64(d, out);
  factor64(n / d, out);
}

inline bool fits64(const Int& n) { return mpz_sizeinbase(n.get_mpz_t(), 2) <= 62; }

inline std::uint64_t to64(const Int& n) { return static_cast<std::uint64_t>(mpz_get_ui(n.get_mpz_t())); }

// Pollard-Brent on big integers. The iteration cap is shared by all
// polynomial choices.
inline std::optional<Int> brent_big(const Int& n, std::uint64_t max_iterations) {
  std::uint64_t total = 0;
  for (unsigned long c = 1; c < 20; ++c) {
    Int y = 2, x = 2, q = 1, g = 1, ys = 2, diff;
    std::uint64_t r = 1;
    const std::uint64_t m = 128;
    auto f = [&](Int& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          f(y);
          diff = abs(x - y);
          q = q * diff;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
        total += m;
      } while (k < r && g == 1);
      r <<= 1;
      if (total > max_iterations) return std::nullopt;
    } while (g == 1);
    if (g == n) {
      do {
        f(ys);
        diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return std::nullopt;
}

inline bool probable_prime(const Int& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

// Lenstra ECM on Montgomery curves By^2 = x^3 + Ax^2 + x in x:z coordinates,
// Suyama parametrization, stage 1 to b1 and a prime-by-prime stage 2 to b2.
struct EcmPoint {
  Int x, z;
};

class EcmCurve {
 public:
  EcmCurve(const Int& n, const Int& a24) : n_(n), a24_(a24) {}

  void reduce(Int& v) const { mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n_.get_mpz_t()); }

  void dbl(EcmPoint& r, const EcmPoint& p) {
    mpz_add(s_.get_mpz_t(), p.x.get_mpz_t(), p.z.get_mpz_t());
    mpz_sub(d_.get_mpz_t(), p.x.get_mpz_t(), p.z.get_mpz_t());
    mulmod(s_, s_, s_);
    mulmod(d_, d_, d_);
    mpz_sub(t_.get_mpz_t(), s_.get_mpz_t(), d_.get_mpz_t());
    mulmod(r.x, s_, d_);
    mulmod(u_, a24_, t_);
    mpz_add(u_.get_mpz_t(), u_.get_mpz_t(), d_.get_mpz_t());
    mulmod(r.z, u_, t_);
  }

  // r = p + q given diff = p - q; r may alias p or q but not diff
  void add(EcmPoint& r, const EcmPoint& p, const EcmPoint& q, const EcmPoint& diff) {
    mpz_sub(s_.get_mpz_t(), p.x.get_mpz_t(), p.z.get_mpz_t());
    mpz_add(d_.get_mpz_t(), q.x.get_mpz_t(), q.z.get_mpz_t());
    mulmod(u_, s_, d_);
    mpz_add(s_.get_mpz_t(), p.x.get_mpz_t(), p.z.get_mpz_t());
    mpz_sub(d_.get_mpz_t(), q.x.get_mpz_t(), q.z.get_mpz_t());
    mulmod(v_, s_, d_);
    mpz_add(s_.get_mpz_t(), u_.get_mpz_t(), v_.get_mpz_t());
    mpz_sub(d_.get_mpz_t(), u_.get_mpz_t(), v_.get_mpz_t());
    mulmod(s_, s_, s_);
    mulmod(d_, d_, d_);
    mulmod(r.x, diff.z, s_);
    mulmod(r.z, diff.x, d_);
  }

  EcmPoint mul(const EcmPoint& p, unsigned long k) {
    if (k == 1) return p;
    EcmPoint r0 = p, r1;
    dbl(r1, p);
    int top = 63 - __builtin_clzl(k);
    for (int i = top - 1; i >= 0; --i) {
      if ((k >> i) & 1UL) {
        add(r0, r1, r0, p);
        dbl(r1, r1);
      } else {
        add(r1, r1, r0, p);
        dbl(r0, r0);
      }
    }
    return r0;
  }

 private:
  void mulmod(Int& r, const Int& a, const Int& b) {
    mpz_mul(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n_.get_mpz_t());
  }

  const Int& n_;
  Int a24_;
  Int s_, d_, t_, u_, v_;
};

inline std::vector<unsigned long> primes_up_to(unsigned long b) {
  std::vector<bool> comp(b + 1, false);
  std::vector<unsigned long> out;
  for (unsigned long i = 2; i <= b; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (unsigned long j = i * i; j <= b; j += i) comp[j] = true;
  }
  return out;
}

inline std::optional<Int> ecm_curve(const Int& n, unsigned long sigma, const std::vector<unsigned long>& primes,
                                    unsigned long b1, unsigned long b2) {
  Int sg(sigma), u = sg * sg - 5, v = 4 * sg, g;
  Int u3 = u * u * u, v3 = v * v * v;
  Int den = 16 * u3 * v, num = (v - u) * (v - u) * (v - u) * (3 * u + v);
  mpz_mod(den.get_mpz_t(), den.get_mpz_t(), n.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), n.get_mpz_t());
  if (g != 1) return g == n ? std::nullopt : std::optional<Int>(g);
  Int inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), n.get_mpz_t());
  Int a24 = num * inv;
  mpz_mod(a24.get_mpz_t(), a24.get_mpz_t(), n.get_mpz_t());
  EcmCurve c(n, a24);
  EcmPoint q{u3 % n, v3 % n};
  for (unsigned long p : primes) {
    if (p > b1) break;
    unsigned long pk = p;
    while (pk <= b1 / p) pk *= p;
    q = c.mul(q, pk);
  }
  mpz_gcd(g.get_mpz_t(), q.z.get_mpz_t(), n.get_mpz_t());
  if (g != 1) return g == n ? std::nullopt : std::optional<Int>(g);
  // stage 2: primes mD +- j for baby steps j < D/2 coprime to D
  constexpr unsigned long D = 210;
  std::vector<EcmPoint> baby(D / 2 + 1);
  std::vector<unsigned long> js;
  EcmPoint q2;
  c.dbl(q2, q);
  baby[1] = q;
  c.add(baby[3], q2, q, q);
  for (unsigned long j = 5; j < D / 2; j += 2) c.add(baby[j], baby[j - 2], q2, baby[j - 4]);
  for (unsigned long j = 1; j < D / 2; j += 2)
    if (std::gcd(j, D) == 1) js.push_back(j);
  EcmPoint g0 = c.mul(q, D);
  unsigned long m = std::max(1UL, (b1 + D / 2) / D);
  EcmPoint prev = m == 1 ? g0 : c.mul(g0, m - 1), cur = c.mul(g0, m), next;
  if (m == 1) c.dbl(cur, g0);
  if (m == 1) m = 2;
  Int acc = 1, t1, t2;
  auto is_prime_in_range = [&](unsigned long v) {
    return v > b1 && v <= b2 && std::binary_search(primes.begin(), primes.end(), v);
  };
  for (; m * D <= b2 + D; ++m) {
    for (unsigned long j : js) {
      if (!is_prime_in_range(m * D + j) && !is_prime_in_range(m * D - j)) continue;
      t1 = cur.x * baby[j].z;
      t2 = baby[j].x * cur.z;
      t1 -= t2;
      acc *= t1;
      c.reduce(acc);
    }
    if (m % 64 == 0) {
      mpz_gcd(g.get_mpz_t(), acc.get_mpz_t(), n.get_mpz_t());
      if (g != 1) break;
    }
    c.add(next, cur, g0, prev);
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  mpz_gcd(g.get_mpz_t(), acc.get_mpz_t(), n.get_mpz_t());
  if (g != 1 && g != n) return g;
  return std::nullopt;
}

/// A nontrivial factor of the odd composite n by ECM, or nothing when the
/// curve schedule is exhausted.
inline std::optional<Int> ecm_big(const Int& n) {
  struct Tier {
    unsigned long b1, curves;
  };
  static const std::vector<unsigned long> primes = primes_up_to(100 * 11000);
  unsigned long sigma = 7;
  for (Tier t : {Tier{2000, 60}, Tier{11000, 50}}) {
    for (unsigned long i = 0; i < t.curves; ++i, ++sigma)
      if (auto d = ecm_curve(n, sigma, primes, t.b1, 100 * t.b1)) return d;
  }
  return std::nullopt;
}

inline void factor_big(const Int& n, std::map<Int, int>& out) {
  if (n == 1) return;
  if (fits64(n)) {
    factor64(to64(n), out);
    return;
  }
  if (probable_prime(n)) {
    out[n] += 1;
    return;
  }
  auto d = brent_big(n, 200'000ULL);
  if (!d) d = ecm_big(n);
  if (!d) throw FactorizationLimit("factorization exceeded the iteration budget for " + n.get_str());
  factor_big(*d, out);
  Int rest = n / *d;
  factor_big(rest, out);
}

class FactorCache {
 public:
  static FactorCache& instance() {
    static FactorCache cache;
    return cache;
  }

  std::optional<Factorization> find(const std::string& key) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void store(const std::string& key, const Factorization& f) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (entries_.size() > 2'000'000) entries_.clear();
    entries_.emplace(key, f);
  }

  bool failed(const std::string& key) {
    std::lock_guard<std::mutex> lock(mutex_);
    return failures_.count(key) > 0;
  }

  void store_failure(const std::string& key) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (failures_.size() > 100'000) failures_.clear();
    failures_.insert(key);
  }

 private:
  std::mutex mutex_;
  std::unordered_map<std::string, Factorization> entries_;
  std::unordered_set<std::string> failures_;
};

}  // namespace detail

inline bool is_prime(const Int& n) {
  if (n < 2) return false;
  if (detail::fits64(n)) return detail::is_prime64(detail::to64(n));
  return detail::probable_prime(n);
}

/// Prime factorization of |n| (n != 0), primes ascending. Results are cached.
inline Factorization factor(const Int& n) {
  if (n == 0) throw DomainError("factor: zero has no factorization");
  Int m = abs(n);
  if (m == 1) return {};
  const std::string key = m.get_str(16);
  if (auto hit = detail::FactorCache::instance().find(key)) return *hit;
  if (detail::FactorCache::instance().failed(key))
    throw FactorizationLimit("factorization exceeded the iteration budget for " + m.get_str());

  std::map<Int, int> acc;
  for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL}) {
    int e = static_cast<int>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), Int(p).get_mpz_t()));
    if (e) acc[Int(p)] = e;
  }
  if (!detail::fits64(m)) {
    for (unsigned long p = 17; p < 5000 && m != 1; p += 2) {
      if (m % p != 0) continue;
      int e = static_cast<int>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), Int(p).get_mpz_t()));
      acc[Int(p)] += e;
    }
  }
  try {
    detail::factor_big(m, acc);
  } catch (const FactorizationLimit&) {
    detail::FactorCache::instance().store_failure(key);
    throw;
  }
  Factorization result(acc.begin(), acc.end());
  detail::FactorCache::instance().store(key, result);
  return result;
}

/// The distinct primes dividing |n|.
inline std::vector<Int> prime_divisors(const Int& n) {
  std::vector<Int> out;
  for (auto& [p, e] : factor(n)) out.push_back(p);
  return out;
}

/// v_p(n) for n != 0.
inline int valuation(const Int& n, const Int& p) {
  if (n == 0) throw DomainError("valuation of zero");
  Int tmp = n;
  return static_cast<int>(mpz_remove(tmp.get_mpz_t(), tmp.get_mpz_t(), p.get_mpz_t()));
}

inline int valuation(const Rat& x, const Int& p) { return valuation(x.get_num(), p) - valuation(x.get_den(), p); }

/// Signed squarefree integer in the square class of the nonzero rational x.
inline Int squarefree_kernel(const Rat& x) {
  if (x == 0) throw DomainError("square class of zero");
  Int out = 1;
  for (auto& [p, e] : factor(x.get_num() * x.get_den()))
    if (e % 2) out *= p;
  return sgn(x) < 0 ? Int(-out) : out;
}

inline bool is_perfect_square(const Int& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

inline bool is_rational_square(const Rat& x) {
  return sgn(x) >= 0 && is_perfect_square(x.get_num()) && is_perfect_square(x.get_den());
}

inline std::optional<Rat> rational_sqrt(const Rat& x) {
  if (!is_rational_square(x)) return std::nullopt;
  Int n, d;
  mpz_sqrt(n.get_mpz_t(), x.get_num().get_mpz_t());
  mpz_sqrt(d.get_mpz_t(), x.get_den().get_mpz_t());
  Rat r(n, d);
  r.canonicalize();
  return r;
}

inline bool is_squarefree(const Int& n) {
  if (n == 0) return false;
  for (auto& [p, e] : factor(n))
    if (e > 1) return false;
  return true;
}

/// Non-negative residue of a modulo m (m > 0).
inline Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

/// Image of a p-integral rational in Z/m, m a power of p.
inline Int mod(const Rat& a, const Int& m) {
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_den().get_mpz_t(), m.get_mpz_t()) == 0)
    throw DomainError("mod: denominator not invertible");
  return mod(Int(a.get_num() * inv), m);
}

inline Int powmod(const Int& b, const Int& e, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Int invmod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) throw DomainError("invmod: not invertible");
  return r;
}

/// Legendre symbol (a/p) for an odd prime p; 0 when p | a.
inline int legendre(const Int& a, const Int& p) { return mpz_legendre(mod(a, p).get_mpz_t(), p.get_mpz_t()); }

/// Square root of d modulo p^k, where d is a unit square mod p (p odd) or
/// d = 1 mod 8 (p = 2). The returned root is canonical for given inputs.
inline Int sqrt_mod_prime_power(const Int& d, const Int& p, int k) {
  if (k < 1) throw DomainError("sqrt_mod_prime_power: precision must be positive");
  Int modulus;
  mpz_pow_ui(modulus.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
  if (p == 2) {
    if (mod(d, Int(8)) != 1) throw DomainError("sqrt_mod_prime_power: d is not a 2-adic unit square");
    // s^2 = d mod 2^j, lifted one bit at a time; keep s = 1 mod 4.
    Int s = 1;
    for (int j = 3; j < k + 1; ++j) {
      Int mj;
      mpz_ui_pow_ui(mj.get_mpz_t(), 2, static_cast<unsigned long>(j + 1));
      if (mod(Int(s * s - d), mj) != 0) {
        Int half;
        mpz_ui_pow_ui(half.get_mpz_t(), 2, static_cast<unsigned long>(j - 1));
        s += half;
      }
    }
    s = mod(s, modulus);
    if (mod(s, Int(4)) != 1) s = mod(Int(-s), modulus);
    return s;
  }
  if (legendre(d, p) != 1) throw DomainError("sqrt_mod_prime_power: d is not a unit square mod p");
  Int s;
  {
    // Tonelli-Shanks mod p.
    Int q = p - 1;
    int e = 0;
    while (q % 2 == 0) {
      q /= 2;
      ++e;
    }
    Int z = 2;
    while (legendre(z, p) != -1) ++z;
    Int c = powmod(z, q, p);
    Int x = powmod(mod(d, p), Int((q + 1) / 2), p);
    Int t = powmod(mod(d, p), q, p);
    int m = e;
    while (t != 1) {
      int i = 0;
      Int tt = t;
      while (tt != 1) {
        tt = mod(Int(tt * tt), p);
        ++i;
      }
      Int b = c;
      for (int j = 0; j < m - i - 1; ++j) b = mod(Int(b * b), p);
      x = mod(Int(x * b), p);
      c = mod(Int(b * b), p);
      t = mod(Int(t * c), p);
      m = i;
    }
    s = x;
  }
  // Newton lifting.
  Int pk = p;
  for (int j = 1; j < k; ++j) {
    pk *= p;
    Int inv = invmod(mod(Int(2 * s), pk), pk);
    s = mod(Int(s - (s * s - d) * inv), pk);
  }
  s = mod(s, modulus);
  if (mod(s, p) * 2 > p) s = mod(Int(-s), modulus);
  return s;
}

}  // namespace arith
}  // namespace wittcls

#endif  // WITTCLS_ARITH_HPP
