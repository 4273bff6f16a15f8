#pragma once

#include <vector>

#include "rkhs/kernels.hpp"
#include "rkhs/rng.hpp"

namespace rkhs::testutil {

inline SampleSet disc_sample(std::uint64_t seed, int count, double radius = 0.6,
                             std::vector<Complex> prepend = {}) {
  std::vector<Point> points;
  for (Complex z : prepend) points.emplace_back(z);
  SplitMix64 rng(seed);
  for (int i = 0; i < count; ++i)
    points.emplace_back(random_disc_point(rng, radius));
  return SampleSet(std::move(points));
}

inline SampleSet ball_sample(std::uint64_t seed, int count, int d,
                             double radius = 0.6) {
  std::vector<Point> points;
  SplitMix64 rng(seed);
  for (int i = 0; i < count; ++i)
    points.emplace_back(Point(random_ball_point(rng, d, radius)));
  return SampleSet(std::move(points));
}

inline SampleSet make_sample(std::vector<Complex> zs) {
  std::vector<Point> points;
  for (Complex z : zs) points.emplace_back(z);
  return SampleSet(std::move(points));
}

// Closed-form Blaschke factor, the oracle for Hardy-space factorizations.
inline Complex blaschke_value(Complex z, Complex a) {
  return (z - a) / (Complex(1.0) - std::conj(a) * z);
}

}  // namespace rkhs::testutil
