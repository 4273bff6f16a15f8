#pragma once

#include <cstdint>
#include <vector>

#include "rkhs/types.hpp"

namespace rkhs {

// SplitMix64 generator. Chosen over std::mt19937 so that the point streams
// are reproducible across standard libraries and implementations; the
// algorithm is documented in the README.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [-1, 1).
  double uniform_sym() { return 2.0 * uniform01() - 1.0; }

 private:
  std::uint64_t state_;
};

// Uniform in the open disc of the given radius, by rejection sampling from
// the square [-1, 1)^2.
inline Complex random_disc_point(SplitMix64& rng, double radius = 1.0) {
  for (;;) {
    double x = rng.uniform_sym();
    double y = rng.uniform_sym();
    if (x * x + y * y < 1.0) return Complex(radius * x, radius * y);
  }
}

// Uniform in the open unit ball of C^d (Euclidean norm < 1), by rejection
// sampling from [-1, 1)^{2d}, scaled by radius.
inline std::vector<Complex> random_ball_point(SplitMix64& rng, int d,
                                              double radius = 1.0) {
  for (;;) {
    std::vector<Complex> z(d);
    double norm2 = 0.0;
    for (int i = 0; i < d; ++i) {
      double x = rng.uniform_sym();
      double y = rng.uniform_sym();
      z[i] = Complex(x, y);
      norm2 += x * x + y * y;
    }
    if (norm2 < 1.0) {
      for (auto& c : z) c *= radius;
      return z;
    }
  }
}

}  // namespace rkhs
