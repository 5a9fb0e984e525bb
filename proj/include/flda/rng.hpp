#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace flda {

/// Seedable stream of uniform variates. A (seed, stream) pair selects an
/// independent sequence, so every component that consumes randomness can own
/// its stream and runs stay reproducible bit for bit across platforms
/// (mt19937_64 output is pinned by the standard; the double conversion below
/// avoids the implementation-defined std::uniform_*_distribution).
///
/// Stream id conventions used across the library:
///   0            initial topic assignment
///   1 + l        serial trainer (l = 0) / nomad worker l
///   2^32 + l     per-worker random routing
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [0, bound), bound > 0. Rounding can push
  /// uniform01() * bound onto the open endpoint; nudge it back in.
  double uniform(double bound) {
    double u = uniform01() * bound;
    if (u >= bound) u = std::nextafter(bound, 0.0);
    return u;
  }

  /// Uniform integer in [0, n), unbiased via rejection.
  std::uint64_t uniform_below(std::uint64_t n) {
    const std::uint64_t rem = (UINT64_MAX % n + 1) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = engine_();
      if (x <= UINT64_MAX - rem) return x % n;
    }
  }

  /// Standard normal via Box-Muller (deterministic across platforms).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  /// Gamma(shape, 1) via Marsaglia-Tsang, boosted for shape < 1.
  double gamma(double shape) {
    if (shape < 1.0) {
      const double u = uniform01();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      const double u = uniform01();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
        return d * v;
    }
  }

  /// Poisson(mean) by Knuth's product-of-uniforms; O(mean) draws. Split into
  /// chunks so exp(-mean) never underflows.
  std::uint64_t poisson(double mean) {
    std::uint64_t total = 0;
    while (mean > 500.0) {
      total += poisson_small(500.0);
      mean -= 500.0;
    }
    return total + poisson_small(mean);
  }

 private:
  std::uint64_t poisson_small(double mean) {
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform01();
    } while (p > limit);
    return k - 1;
  }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace flda
