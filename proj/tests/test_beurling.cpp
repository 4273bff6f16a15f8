#include <doctest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "rkhs/beurling.hpp"
#include "rkhs/errors.hpp"
#include "test_util.hpp"

using namespace rkhs;
using testutil::disc_sample;
using testutil::make_sample;

namespace {

// Random pointwise-invariant scalar subspace: constrain f to vanish at a
// seeded choice of sample points.
Subspace random_zero_subspace(const Ambient& space, SplitMix64& rng, int zeros) {
  PointwiseConstraintSpec spec;
  std::vector<bool> used(space.kernel().n(), false);
  int placed = 0;
  while (placed < zeros) {
    const int i = static_cast<int>(rng.next() % space.kernel().n());
    if (used[i]) continue;
    used[i] = true;
    spec.constraints.push_back({i, Matrix(space.kernel().block_dim, 0)});
    ++placed;
  }
  return subspace_from_constraints(space, spec);
}

struct KernelPair {
  KernelSpec k;
  KernelSpec s;
  bool ball = false;
};

std::vector<KernelPair> catalog_pairs() {
  return {
      {KernelSpec::szego(), KernelSpec::szego(), false},
      {KernelSpec::bergman(), KernelSpec::szego(), false},
      {KernelSpec::power_alpha(1.0), KernelSpec::power_alpha(1.0), false},
      {KernelSpec::power_alpha(2.0), KernelSpec::power_alpha(1.0), false},
      {KernelSpec::drury_arveson(2), KernelSpec::drury_arveson(2), true},
  };
}

}  // namespace

TEST_CASE("Hardy specialization: one zero gives the Blaschke factor exactly") {
  const SampleSet sample = disc_sample(101, 7, 0.8, {Complex(0.5, 0.0)});
  const KernelMatrix s = evaluate(KernelSpec::szego(), sample);
  const Ambient space(s);
  PointwiseConstraintSpec spec;
  spec.constraints.push_back({0, Matrix(1, 0)});
  const Subspace m = subspace_from_constraints(space, spec);
  const FactorizationResult result = synthesize(subspace_kernel(m), s);

  CHECK(result.rank_f == 1);
  CHECK(result.partial_isometry_ok);
  // |Phi(x_i)| = |b_{0.5}(x_i)| (the factor is unique up to a phase).
  for (int i = 0; i < sample.size(); ++i) {
    const Complex oracle =
        testutil::blaschke_value(sample.points[i].coords[0], Complex(0.5, 0.0));
    CHECK(std::abs(std::abs(result.phi.blocks[i](0, 0)) - std::abs(oracle)) < 1e-9);
  }
  const RepresentationDiagnostics diag =
      verify_representation(result, s, s, m, 1e-7, true);
  CHECK(diag.ok);
  CHECK(diag.projection_residual < 1e-8);
}

TEST_CASE("synthesis round-trip property over catalog pairs") {
  int trials = 0;
  for (const KernelPair& pair : catalog_pairs()) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const SampleSet sample = pair.ball
                                   ? testutil::ball_sample(seed, 6, 2, 0.55)
                                   : disc_sample(seed, 7, 0.6);
      const KernelMatrix k = evaluate(pair.k, sample);
      const KernelMatrix s = evaluate(pair.s, sample);
      const Ambient space(k);
      SplitMix64 rng(seed * 7919 + 13);
      const Subspace m =
          random_zero_subspace(space, rng, 1 + static_cast<int>(rng.next() % 2));
      const FactorizationResult result = synthesize(subspace_kernel(m), s);
      const RepresentationDiagnostics diag =
          verify_representation(result, s, k, m, 1e-6, true);
      CHECK(diag.ok);
      CHECK(result.partial_isometry_ok);
      ++trials;
    }
  }
  CHECK(trials == 50);
}

TEST_CASE("synthesize refuses a non-invariant subspace via the PSD gate") {
  const SampleSet sample = disc_sample(55, 6, 0.7);
  const KernelMatrix s = evaluate(KernelSpec::szego(), sample);
  const Ambient space(s);
  // span{ k_0 - k_1 } is not pointwise invariant; its quotient kernel fails
  // the positivity gate.
  Vector xi(1);
  xi << Complex(1.0);
  RkhsElement diff;
  diff.values =
      kernel_section(space, 0, xi).values - kernel_section(space, 1, xi).values;
  const Subspace bad = subspace_from_spanning(space, {diff});
  CHECK_THROWS_AS(synthesize(subspace_kernel(bad), s), NotPsdError);
}

TEST_CASE("whole space synthesizes to an isometric (trivially unitary) symbol") {
  const SampleSet sample = disc_sample(61, 5, 0.7);
  const KernelMatrix s = evaluate(KernelSpec::szego(), sample);
  const Ambient space(s);
  const Subspace all = whole_space(space);
  const FactorizationResult result = synthesize(subspace_kernel(all), s);
  const RepresentationDiagnostics diag = verify_representation(result, s, s, all);
  CHECK(diag.ok);
  CHECK(diag.projection_residual < 1e-8);
}

TEST_CASE("connecting partial isometry links a factorization to its padding") {
  const SampleSet sample = disc_sample(71, 6, 0.75, {Complex(0.5, 0.0)});
  const KernelMatrix s = evaluate(KernelSpec::szego(), sample);
  const Ambient space(s);
  PointwiseConstraintSpec spec;
  spec.constraints.push_back({0, Matrix(1, 0)});
  const Subspace m = subspace_from_constraints(space, spec);
  const FactorizationResult result = synthesize(subspace_kernel(m), s);

  // Pad Phi with an extra zero fiber column and a random unitary mix.
  MultiplierSymbol padded;
  SplitMix64 rng(5);
  const double t = rng.uniform01() * 3.14159;
  Matrix u(2, 2);
  u << Complex(std::cos(t), 0), Complex(-std::sin(t), 0), Complex(std::sin(t), 0),
      Complex(std::cos(t), 0);
  for (const Matrix& blk : result.phi.blocks) {
    Matrix wide(1, 2);
    wide << blk(0, 0), Complex(0.0);
    padded.blocks.push_back(wide * u);
  }

  const ConnectingIsometry link = connecting_partial_isometry(result.phi, padded);
  CHECK(link.v.rows() == 2);
  CHECK(link.v.cols() == 1);
  CHECK(link.is_isometry);  // V^* V = I on the smaller fiber
  CHECK(link.is_partial_isometry);

  CHECK(is_minimal(result.phi));
  CHECK_FALSE(is_minimal(padded));
}

TEST_CASE("connecting isometry property across seeds") {
  for (std::uint64_t seed = 2; seed <= 6; ++seed) {
    const SampleSet sample = disc_sample(seed, 7, 0.65);
    const KernelMatrix k = evaluate(KernelSpec::bergman(), sample);
    const KernelMatrix s = evaluate(KernelSpec::szego(), sample);
    const Ambient space(k);
    SplitMix64 rng(seed + 500);
    const Subspace m = random_zero_subspace(space, rng, 1);
    const FactorizationResult result = synthesize(subspace_kernel(m), s);
    // Second factorization of the same quotient from a rotated eigenbasis:
    // pad by one column of zeros.
    MultiplierSymbol padded;
    for (const Matrix& blk : result.phi.blocks) {
      Matrix wide(blk.rows(), blk.cols() + 1);
      wide << blk, Matrix::Zero(blk.rows(), 1);
      padded.blocks.push_back(wide);
    }
    const ConnectingIsometry link = connecting_partial_isometry(result.phi, padded);
    CHECK(link.is_isometry);
  }
}

TEST_CASE("verify_representation with require throws on a wrong subspace") {
  const SampleSet sample = disc_sample(81, 6, 0.7, {Complex(0.5, 0.0), Complex(-0.3, 0.2)});
  const KernelMatrix s = evaluate(KernelSpec::szego(), sample);
  const Ambient space(s);
  PointwiseConstraintSpec spec0, spec1;
  spec0.constraints.push_back({0, Matrix(1, 0)});
  spec1.constraints.push_back({1, Matrix(1, 0)});
  const Subspace m0 = subspace_from_constraints(space, spec0);
  const Subspace m1 = subspace_from_constraints(space, spec1);
  const FactorizationResult result = synthesize(subspace_kernel(m0), s);
  CHECK_THROWS_AS(verify_representation(result, s, s, m1, 1e-7, true),
                  VerificationError);
  CHECK_FALSE(verify_representation(result, s, s, m1, 1e-7, false).ok);
}
