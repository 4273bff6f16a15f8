#pragma once

#include <vector>

#include "rkhs/types.hpp"

namespace rkhs {

// Degree-truncated model of a radially weighted space on the unit disc:
// k(z,w) = sum_m c_m (z conj(w))^m, monomial norms ||z^m||^2 = 1/c_m.
class CoeffSeriesSpace {
 public:
  explicit CoeffSeriesSpace(std::vector<double> weights);

  static CoeffSeriesSpace hardy(int degree);    // c_m = 1
  static CoeffSeriesSpace bergman(int degree);  // c_m = m + 1

  int degree() const { return static_cast<int>(weights_.size()) - 1; }
  const std::vector<double>& weights() const { return weights_; }

  // <f, g> = sum_m conj(g_m) f_m / c_m on coefficient vectors.
  Complex inner(const Vector& f, const Vector& g) const;
  double diag_kernel(double r) const;  // k(z,z) for |z| = r

 private:
  std::vector<double> weights_;
};

// Orthonormal basis (coefficient coordinates, one column per basis element)
// of the smallest shift-invariant subspace containing the generators, within
// the degree truncation.
Matrix generate_invariant_subspace(const CoeffSeriesSpace& space,
                                   const std::vector<Vector>& generators,
                                   double tol_rank = kDefaultRankTol);

// k^M(z,z) = sum over the basis of |e(z)|^2 at each point.
std::vector<double> diag_subspace_kernel(const CoeffSeriesSpace& space,
                                         const Matrix& basis,
                                         const std::vector<Complex>& points);

struct RootFunctionReport {
  std::vector<double> radii;
  double theta = 0.0;
  std::vector<double> values;  // G(r e^{i theta}) per radius
  int truncation_degree = 0;
};

// G(z) = k^M(z,z) / k(z,z), in [0, 1] up to roundoff in the truncated model.
RootFunctionReport root_function(const CoeffSeriesSpace& space, const Matrix& basis,
                                 const std::vector<double>& radii, double theta);

// Cesaro (Fejer) means: coefficient m of p_n is (1 - m/(n+1)) phi_m for m <= n.
Vector fejer_means(const Vector& symbol_coeffs, int n);

// Smallest singular value of the inclusion of the weights_num space into the
// weights_den space on polynomials of degree <= D. Monomials are the singular
// vectors, so this is min_m sqrt(c_num[m] / c_den[m]).
double inclusion_sigma_min(int degree, const std::vector<double>& weights_num,
                           const std::vector<double>& weights_den);

}  // namespace rkhs
