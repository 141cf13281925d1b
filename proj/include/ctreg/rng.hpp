#pragma once

// Deterministic RNG plumbing. A splitmix-style mixer derives independent
// substreams from one root seed, so replications can be generated in any
// order (or concurrently) and still reproduce bitwise. The Gaussian and
// exponential draws are hand-rolled on top of the raw engine because the
// std::*_distribution algorithms are not bitwise-portable across standard
// library implementations.

#include <cmath>
#include <cstdint>
#include <random>

namespace ctreg {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// counter-based stream split: stream identity is the tuple (root, a, b, c)
inline std::uint64_t derive_stream(std::uint64_t root, std::uint64_t a,
                                   std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = mix64(root);
  s = mix64(s ^ mix64(a));
  s = mix64(s ^ mix64(b));
  s = mix64(s ^ mix64(c));
  return s;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // strictly inside (0, 1): top 53 bits, centered in the cell
  double uniform01() {
    return static_cast<double>((eng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform01()));
    const double phi = 2.0 * 3.14159265358979323846 * uniform01();
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
  }

  double gaussian(double mean, double sd) { return mean + sd * gaussian(); }

  double exponential(double rate) { return -std::log(uniform01()) / rate; }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace ctreg
