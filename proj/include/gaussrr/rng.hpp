#pragma once

// Seeded randomness for the numerical layers.  The engine is std::mt19937_64
// (whose output sequence is fixed by the standard); all floating-point draws
// are built from raw 64-bit words here rather than std::*_distribution, so a
// given seed produces byte-identical streams across standard libraries.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace gaussrr {

// Stateless 64-bit mixer used to derive independent substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Combines a base seed with a stream tag into a fresh substream seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
  return splitmix64(base ^ splitmix64(tag));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller (no cached spare; draws two uniforms).
  double normal() {
    double u;
    do {
      u = uniform01();
    } while (u == 0.0);
    const double v = uniform01();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
  }

  // Uniform on the unit circle.
  std::complex<double> unit_complex() {
    const double angle = 2.0 * std::numbers::pi * uniform01();
    return {std::cos(angle), std::sin(angle)};
  }

  // Complex number with independent standard normal real and imaginary parts.
  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

  // Uniform integer in [lo, hi] (inclusive); rejection-free modulo is fine at
  // the small ranges used here.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(bits() % span);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gaussrr
