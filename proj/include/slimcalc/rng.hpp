#ifndef SLIMCALC_RNG_HPP
#define SLIMCALC_RNG_HPP

#include <cstdint>

namespace slimcalc {

// Counter-based generator (splitmix64 over a hashed key).  Stateless per
// index, so sampling sweeps give identical streams no matter how the work
// is split across threads.
namespace rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                         std::uint64_t c = 0) {
  std::uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc909ULL);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  h = splitmix64(h ^ c);
  return h;
}

/// Uniform double in [0, 1).
inline double uniform(std::uint64_t k) {
  return static_cast<double>(k >> 11) * 0x1.0p-53;
}

inline double uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                      std::uint64_t c = 0) {
  return uniform(key(seed, a, b, c));
}

}  // namespace rng
}  // namespace slimcalc

#endif
