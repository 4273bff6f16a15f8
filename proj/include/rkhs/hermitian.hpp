#pragma once

#include "rkhs/types.hpp"

namespace rkhs {

// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
struct EigenSystem {
  RealVector values;
  Matrix vectors;

  double max_eigenvalue() const { return values.size() ? values(0) : 0.0; }
  double min_eigenvalue() const {
    return values.size() ? values(values.size() - 1) : 0.0;
  }
  int rank(double tol_rank = kDefaultRankTol) const;

  // Apply the pseudo-inverse, truncating eigenvalues at tol_rank * lambda_max.
  Matrix pinv_apply(const Matrix& rhs, double tol_rank = kDefaultRankTol) const;
};

EigenSystem hermitian_eig(const Matrix& h);

// Asserts Hermitian symmetry up to the stated relative tolerance.
bool is_hermitian(const Matrix& h, double rel_tol = 1e-12);

struct PsdReport {
  bool verdict = false;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

// verdict = (min eigenvalue >= -tol * max(1, max eigenvalue)).
PsdReport psd_check(const Matrix& h, double tol = kDefaultPsdTol);

// Rank-truncated factor B with h ~= B B^*, columns ordered by descending
// eigenvalue. Eigendecomposition based, robust for semidefinite input.
Matrix psd_factor(const Matrix& h, double tol_rank = kDefaultRankTol);

double spectral_norm(const Matrix& a);

int numerical_rank(const Matrix& a, double tol_rank = kDefaultRankTol);

// Orthonormal basis of the column span (left singular vectors above cutoff).
Matrix column_span_onb(const Matrix& a, double tol_rank = kDefaultRankTol);

}  // namespace rkhs
