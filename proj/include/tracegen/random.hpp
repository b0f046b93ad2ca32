#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "tracegen/error.hpp"

namespace tracegen {

namespace detail {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Seeded pseudo-random source whose output depends only on the seed.
///
/// The engine is std::mt19937_64, whose sequence is fixed by the standard. Reals
/// are formed from the top 53 bits directly rather than through a standard
/// distribution, whose algorithm is implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), engine_(detail::splitmix64(seed)) {}

  std::uint64_t seed() const { return seed_; }

  /// Independent child stream determined by (seed, index) alone.
  RandomStream split(std::uint64_t index) const {
    return RandomStream(detail::splitmix64(seed_ ^ detail::splitmix64(index + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Inversion K = floor(ln(1 - u) / ln(r)) of P(K = k) = (1 - r) r^k.
inline std::uint64_t geometric_from_uniform(double r, double u) {
  if (!(r >= 0.0) || !(r < 1.0)) throw Error(Errc::invalid_argument, "geometric parameter must lie in [0, 1)");
  if (r == 0.0) return 0;
  double k = std::floor(std::log1p(-u) / std::log(r));
  if (!(k < static_cast<double>(std::numeric_limits<std::uint32_t>::max()))) {
    throw Error(Errc::invalid_argument, "geometric draw overflow");
  }
  return static_cast<std::uint64_t>(k);
}

inline std::uint64_t sample_geometric(double r, RandomStream& stream) {
  if (!(r >= 0.0) || !(r < 1.0)) throw Error(Errc::invalid_argument, "geometric parameter must lie in [0, 1)");
  if (r == 0.0) return 0;
  return geometric_from_uniform(r, stream.uniform());
}

}  // namespace tracegen
