#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace leocf {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// xoshiro256++ generator. Every sampler in the project takes one of these
/// explicitly; there is no global random state. Independent substreams are
/// derived from a master seed with `substream`, which lets Monte Carlo
/// trials run on any number of workers and still produce identical output.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed = 0) {
    std::uint64_t x = seed;
    for (auto& w : state_) w = splitmix64(x);
  }

  /// Deterministic per-(stream, counter) substream of a master seed.
  static Xoshiro256pp substream(std::uint64_t master_seed, std::uint64_t stream_id,
                                std::uint64_t counter) {
    std::uint64_t x = master_seed;
    (void)splitmix64(x);
    x ^= 0xA0761D6478BD642FULL * (stream_id + 1);
    (void)splitmix64(x);
    x ^= 0xE7037ED1A0B428DBULL * (counter + 1);
    return Xoshiro256pp(splitmix64(x));
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform draw on the open interval (0, 1).
  double uniform01() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

  /// Uniform draw on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t state_[4];
};

/// Standard normal via the Marsaglia polar method (no cached second value,
/// so the draw count per call is data-dependent but the stream is still
/// fully reproducible).
inline double draw_normal(Xoshiro256pp& rng) {
  for (;;) {
    const double u = 2.0 * rng.uniform01() - 1.0;
    const double v = 2.0 * rng.uniform01() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

inline double draw_exponential(Xoshiro256pp& rng) { return -std::log(rng.uniform01()); }

/// Gamma(shape, scale) by Marsaglia-Tsang squeeze; shape < 1 handled with the
/// usual U^{1/shape} boost.
inline double draw_gamma(Xoshiro256pp& rng, double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0)) throw std::invalid_argument("draw_gamma: shape and scale must be > 0");
  if (shape < 1.0) {
    const double u = rng.uniform01();
    return draw_gamma(rng, shape + 1.0, scale) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = draw_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform01();
    if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return scale * d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return scale * d * v;
  }
}

/// Poisson draw by multiplying uniforms against exp(-mean); large means are
/// split into chunks so the product never underflows. Exact for all means.
inline long draw_poisson(Xoshiro256pp& rng, double mean) {
  if (!(mean >= 0.0)) throw std::invalid_argument("draw_poisson: mean must be >= 0");
  long total = 0;
  while (mean > 0.0) {
    const double chunk = mean > 500.0 ? 500.0 : mean;
    mean -= chunk;
    const double limit = std::exp(-chunk);
    double prod = rng.uniform01();
    long k = 0;
    while (prod > limit) {
      ++k;
      prod *= rng.uniform01();
    }
    total += k;
  }
  return total;
}

inline long draw_binomial(Xoshiro256pp& rng, long n, double p) {
  long k = 0;
  for (long i = 0; i < n; ++i)
    if (rng.uniform01() < p) ++k;
  return k;
}

}  // namespace leocf
