#pragma once

#include <optional>
#include <vector>

#include "rkhs/kernels.hpp"

namespace rkhs {

// An element of the sampled space H_k (x) C^p, stored in value coordinates:
// the flattened np-vector (f(x_0), ..., f(x_{n-1})). Such a vector represents
// a space element iff it lies in the column space of the block kernel matrix.
struct RkhsElement {
  Vector values;
  std::optional<Vector> coeffs;
  double norm_sq = 0.0;
};

// Closed subspace of a sampled space. Columns of onb are value-coordinate
// representatives of an orthonormal basis: onb^* K^+ onb = I.
struct Subspace {
  KernelMatrix ambient;
  Matrix onb;

  int dim() const { return static_cast<int>(onb.cols()); }
};

// M = { f : f(x_i) in W_i for each listed constraint }, the finite-sample
// form of multiplier-invariant subspaces. directions has orthonormal columns
// spanning W_i in C^p; zero columns means f(x_i) = 0.
struct PointwiseConstraintSpec {
  struct Constraint {
    int point = 0;
    Matrix directions;  // p x r, orthonormal columns
  };
  std::vector<Constraint> constraints;
};

// Cached geometry of a sampled RKHS: eigendecomposition of the block kernel
// matrix, used for inner products, membership tests and projections.
class Ambient {
 public:
  explicit Ambient(KernelMatrix kernel, double tol_rank = kDefaultRankTol);

  const KernelMatrix& kernel() const { return kernel_; }
  int total_dim() const { return kernel_.total_dim(); }
  int rank() const { return rank_; }

  // Value-coordinate ONB of the whole sampled space.
  const Matrix& full_onb() const { return full_onb_; }

  Matrix pinv_apply(const Matrix& rhs) const;
  // Orthonormal coordinates of value vectors: full_onb^* K^+ values.
  Matrix coords(const Matrix& values) const;
  // Relative distance of a value vector from the column space of K.
  double membership_residual(const Vector& values) const;

  Complex inner(const Vector& f_values, const Vector& g_values) const;

 private:
  KernelMatrix kernel_;
  EigenSystem eig_;
  double tol_rank_;
  int rank_;
  Matrix full_onb_;
};

RkhsElement element_from_values(const Ambient& space, const Vector& values);
// k(., x_i) (x) xi as an element, i.e. column block i of K applied to xi.
RkhsElement kernel_section(const Ambient& space, int point, const Vector& xi);

Matrix gram(const Ambient& space, const std::vector<RkhsElement>& elements);

Subspace subspace_from_spanning(const Ambient& space,
                                const std::vector<RkhsElement>& spanning,
                                double tol_rank = kDefaultRankTol);

Subspace subspace_from_constraints(const Ambient& space,
                                   const PointwiseConstraintSpec& spec,
                                   double tol_rank = kDefaultRankTol);

Subspace whole_space(const Ambient& space);

// Reproducing kernel of the subspace: (stacked onb values)(stacked onb values)^*.
KernelMatrix subspace_kernel(const Subspace& m);

RkhsElement project(const Ambient& space, const Subspace& m,
                    const RkhsElement& f);

struct InvarianceReport {
  bool verdict = false;
  // On failure: the point index and the truncated element that leaves M.
  std::optional<int> witness_point;
  std::optional<Vector> witness_values;
};

// Verdict true iff zeroing all value rows except one point keeps every basis
// element inside M, i.e. M = { f : f(x_i) in W_i }. This is the finite-sample
// surrogate for multiplier invariance: on a finite set with positive definite
// s every function is a multiplier, so invariance collapses to this form.
InvarianceReport is_pointwise_invariant(const Ambient& space, const Subspace& m,
                                        double tol = 1e-8);

}  // namespace rkhs
