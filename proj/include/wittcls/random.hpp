// Seeded sampling of field elements. Every sample index gets its own
// generator derived from (seed, index), so campaigns are reproducible
// regardless of how samples are scheduled.

#ifndef WITTCLS_RANDOM_HPP
#define WITTCLS_RANDOM_HPP

#include <cstdint>
#include <random>

#include "wittcls/field.hpp"

namespace wittcls {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent generator for sample `index` of a run seeded with `seed`.
inline Rng substream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x5851f42d4c957f2dULL)));
}

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// A coordinate of height <= h: integer for finite fields, n/d otherwise.
inline Rat random_coordinate(const Field& f, Rng& rng, long h) {
  if (f.is_finite()) return Rat(uniform(rng, 0, h));
  Rat r(uniform(rng, -h, h), uniform(rng, 1, h));
  r.canonicalize();
  return r;
}

inline Element random_element(const Field& f, Rng& rng, long h) {
  Rat c0 = random_coordinate(f, rng, h);
  Rat c1 = f.has_root() && uniform(rng, 0, 2) != 0 ? random_coordinate(f, rng, h) : Rat(0);
  return Element(f, c0, c1);
}

inline Element random_nonzero(const Field& f, Rng& rng, long h) {
  for (;;) {
    Element x = random_element(f, rng, h);
    if (!x.is_zero()) return x;
  }
}

}  // namespace wittcls

#endif  // WITTCLS_RANDOM_HPP
