#include "rkhs/hermitian.hpp"

#include <Eigen/Dense>
#include <algorithm>

#include "rkhs/errors.hpp"

namespace rkhs {

int EigenSystem::rank(double tol_rank) const {
  if (values.size() == 0) return 0;
  const double cutoff = tol_rank * std::max(values(0), 0.0);
  int r = 0;
  while (r < values.size() && values(r) > cutoff) ++r;
  return r;
}

Matrix EigenSystem::pinv_apply(const Matrix& rhs, double tol_rank) const {
  const int r = rank(tol_rank);
  if (r == 0) return Matrix::Zero(vectors.rows(), rhs.cols());
  const Matrix u = vectors.leftCols(r);
  return u * (values.head(r).cwiseInverse().asDiagonal() * (u.adjoint() * rhs));
}

EigenSystem hermitian_eig(const Matrix& h) {
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw NumericalError("hermitian_eig: eigendecomposition failed");
  const int n = static_cast<int>(h.rows());
  EigenSystem sys;
  sys.values = solver.eigenvalues().reverse();
  sys.vectors = Matrix(n, n);
  for (int i = 0; i < n; ++i) sys.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  return sys;
}

bool is_hermitian(const Matrix& h, double rel_tol) {
  if (h.rows() != h.cols()) return false;
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  return (h - h.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

PsdReport psd_check(const Matrix& h, double tol) {
  const EigenSystem sys = hermitian_eig(h);
  PsdReport report;
  report.min_eigenvalue = sys.min_eigenvalue();
  report.max_eigenvalue = sys.max_eigenvalue();
  report.verdict =
      report.min_eigenvalue >= -tol * std::max(1.0, report.max_eigenvalue);
  return report;
}

Matrix psd_factor(const Matrix& h, double tol_rank) {
  const EigenSystem sys = hermitian_eig(h);
  const int r = sys.rank(tol_rank);
  Matrix factor(h.rows(), r);
  for (int i = 0; i < r; ++i)
    factor.col(i) = sys.vectors.col(i) * std::sqrt(sys.values(i));
  return factor;
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

int numerical_rank(const Matrix& a, double tol_rank) {
  if (a.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = tol_rank * sv(0);
  int r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  return r;
}

Matrix column_span_onb(const Matrix& a, double tol_rank) {
  if (a.size() == 0) return Matrix(a.rows(), 0);
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int r = 0;
  if (sv.size() > 0 && sv(0) > 0.0) {
    const double cutoff = tol_rank * sv(0);
    while (r < sv.size() && sv(r) > cutoff) ++r;
  }
  return svd.matrixU().leftCols(r);
}

}  // namespace rkhs
