#pragma once

#include <functional>
#include <vector>

#include "rkhs/kernels.hpp"
#include "rkhs/samplespace.hpp"

namespace rkhs {

// Pointwise operator-valued symbol: blocks[i] = Phi(x_i), uniformly p x q.
// Houses Phi, Psi, Gamma, b and coordinate-row symbols.
struct MultiplierSymbol {
  std::vector<Matrix> blocks;

  int n() const { return static_cast<int>(blocks.size()); }
  int out_dim() const { return blocks.empty() ? 0 : static_cast<int>(blocks[0].rows()); }
  int in_dim() const { return blocks.empty() ? 0 : static_cast<int>(blocks[0].cols()); }

  void check_uniform() const;

  static MultiplierSymbol constant(int n, const Matrix& value);
  static MultiplierSymbol scalar(const std::vector<Complex>& values);
  // Elementary Blaschke factor b_a(z) = (z - a) / (1 - conj(a) z) on the disc.
  static MultiplierSymbol blaschke(const SampleSet& sample, Complex a);
  // Row symbol (z_1, ..., z_d) of ball coordinates, shape 1 x d.
  static MultiplierSymbol coordinate_row(const SampleSet& sample, int d);

  // Block-diagonal action on value coordinates: diag(Phi(x_0), ..., Phi(x_{n-1})).
  Matrix block_diagonal() const;

  MultiplierSymbol operator*(const MultiplierSymbol& rhs) const;
};

// Defect kernel L(z,w) = F(z,w) - Phi(z) E(z,w) Phi(w)^*.
KernelMatrix defect(const KernelMatrix& f_kernel, const KernelMatrix& e_kernel,
                    const MultiplierSymbol& phi);

struct Classification {
  bool contractive = false;
  bool coisometric = false;
  double min_eigenvalue = 0.0;
  double defect_norm = 0.0;  // Frobenius norm of L
};

Classification classify(const KernelMatrix& f_kernel, const KernelMatrix& e_kernel,
                        const MultiplierSymbol& phi, double tol = kDefaultPsdTol);

// Matrix of the multiplication operator between orthonormal bases of the
// sampled spaces. membership_tol bounds the allowed leakage of the mapped
// source basis outside the target space; factors produced under a coarse
// rank truncation carry leakage of that order.
struct MultOpMatrix {
  Matrix matrix;
  RealVector singular_values;  // descending
};

MultOpMatrix multiplication_operator(const KernelMatrix& f_kernel,
                                     const KernelMatrix& e_kernel,
                                     const MultiplierSymbol& phi,
                                     double membership_tol = 1e-8);

// True iff every singular value is within tol of {0, 1}.
bool is_partial_isometry(const MultOpMatrix& op, double tol = 1e-8);

// Smallest t >= 0 with t^2 F - Phi E Phi^* >= 0, by bisection to 1e-8.
double multiplier_norm(const KernelMatrix& f_kernel, const KernelMatrix& e_kernel,
                       const MultiplierSymbol& phi);

// Remark-style row contraction test: Phi(z) = (z_1, ..., z_d), E = K (x) I_d,
// F = K. Equals is_psd(K / DruryArveson(d)); both routes are computed and
// compared.
bool row_contraction_check(const KernelMatrix& k, int d,
                           double tol = kDefaultPsdTol);

// Sample-restricted sup of rank Phi(z).
int sup_rank(const MultiplierSymbol& phi, double tol_rank = kDefaultRankTol);

}  // namespace rkhs
