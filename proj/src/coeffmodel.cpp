#include "rkhs/coeffmodel.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "rkhs/errors.hpp"
#include "rkhs/hermitian.hpp"

namespace rkhs {

CoeffSeriesSpace::CoeffSeriesSpace(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.empty())
    throw ShapeError("CoeffSeriesSpace: at least one weight required");
  for (double c : weights_)
    if (c <= 0.0) throw DomainError("CoeffSeriesSpace: weights must be positive");
}

CoeffSeriesSpace CoeffSeriesSpace::hardy(int degree) {
  return CoeffSeriesSpace(std::vector<double>(degree + 1, 1.0));
}

CoeffSeriesSpace CoeffSeriesSpace::bergman(int degree) {
  std::vector<double> w(degree + 1);
  for (int m = 0; m <= degree; ++m) w[m] = m + 1.0;
  return CoeffSeriesSpace(std::move(w));
}

Complex CoeffSeriesSpace::inner(const Vector& f, const Vector& g) const {
  if (f.size() != degree() + 1 || g.size() != degree() + 1)
    throw ShapeError("CoeffSeriesSpace::inner: coefficient length mismatch");
  Complex acc = 0.0;
  for (int m = 0; m <= degree(); ++m)
    acc += f(m) * std::conj(g(m)) / weights_[m];
  return acc;
}

double CoeffSeriesSpace::diag_kernel(double r) const {
  double acc = 0.0;
  double power = 1.0;
  const double r2 = r * r;
  for (double c : weights_) {
    acc += c * power;
    power *= r2;
  }
  return acc;
}

Matrix generate_invariant_subspace(const CoeffSeriesSpace& space,
                                   const std::vector<Vector>& generators,
                                   double tol_rank) {
  const int dim = space.degree() + 1;
  if (generators.empty())
    throw ShapeError("generate_invariant_subspace: no generators");
  std::vector<Vector> shifted;
  for (const Vector& q : generators) {
    if (q.size() > dim)
      throw ShapeError("generate_invariant_subspace: generator degree exceeds cap");
    if (q.norm() == 0.0)
      throw ShapeError("generate_invariant_subspace: zero generator");
    int deg_q = static_cast<int>(q.size()) - 1;
    while (deg_q > 0 && std::abs(q(deg_q)) == 0.0) --deg_q;
    for (int m = 0; m + deg_q < dim; ++m) {
      Vector v = Vector::Zero(dim);
      v.segment(m, deg_q + 1) = q.head(deg_q + 1);
      shifted.push_back(std::move(v));
    }
  }
  if (shifted.empty())
    throw EmptySubspaceError("generate_invariant_subspace: empty span");
  // Map to Euclidean coordinates y_m = a_m / sqrt(c_m), orthonormalize there,
  // then map back.
  RealVector scale(dim);
  for (int m = 0; m < dim; ++m) scale(m) = 1.0 / std::sqrt(space.weights()[m]);
  Matrix stacked(dim, shifted.size());
  for (std::size_t j = 0; j < shifted.size(); ++j)
    stacked.col(static_cast<int>(j)) = scale.asDiagonal() * shifted[j];
  const Matrix onb_euclid = column_span_onb(stacked, tol_rank);
  return scale.cwiseInverse().asDiagonal() * onb_euclid;
}

std::vector<double> diag_subspace_kernel(const CoeffSeriesSpace& space,
                                         const Matrix& basis,
                                         const std::vector<Complex>& points) {
  const int dim = space.degree() + 1;
  if (basis.rows() != dim && basis.cols() > 0)
    throw ShapeError("diag_subspace_kernel: basis rows must equal D + 1");
  std::vector<double> out;
  out.reserve(points.size());
  for (Complex z : points) {
    if (std::abs(z) >= 1.0)
      throw DomainError("diag_subspace_kernel: point outside the open disc");
    Vector powers(dim);
    Complex p = 1.0;
    for (int m = 0; m < dim; ++m) {
      powers(m) = p;
      p *= z;
    }
    double acc = 0.0;
    for (int c = 0; c < basis.cols(); ++c)
      acc += std::norm((basis.col(c).transpose() * powers)(0, 0));
    out.push_back(acc);
  }
  return out;
}

RootFunctionReport root_function(const CoeffSeriesSpace& space, const Matrix& basis,
                                 const std::vector<double>& radii, double theta) {
  RootFunctionReport report;
  report.radii = radii;
  report.theta = theta;
  report.truncation_degree = space.degree();
  std::vector<Complex> points;
  points.reserve(radii.size());
  for (double r : radii) points.push_back(std::polar(r, theta));
  const std::vector<double> numerator = diag_subspace_kernel(space, basis, points);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double g = numerator[i] / space.diag_kernel(radii[i]);
    if (g < -1e-10 || g > 1.0 + 1e-8)
      throw NumericalError("root_function: value outside [0, 1 + 1e-8]: " +
                           std::to_string(g));
    report.values.push_back(g);
  }
  return report;
}

Vector fejer_means(const Vector& symbol_coeffs, int n) {
  if (n < 0) throw ShapeError("fejer_means: n must be nonnegative");
  const int len = std::min<int>(n + 1, static_cast<int>(symbol_coeffs.size()));
  Vector out = Vector::Zero(std::max<int>(len, 1));
  for (int m = 0; m < len; ++m)
    out(m) = (1.0 - static_cast<double>(m) / (n + 1)) * symbol_coeffs(m);
  return out;
}

double inclusion_sigma_min(int degree, const std::vector<double>& weights_num,
                           const std::vector<double>& weights_den) {
  if (static_cast<int>(weights_num.size()) <= degree ||
      static_cast<int>(weights_den.size()) <= degree)
    throw ShapeError("inclusion_sigma_min: weights shorter than degree cap");
  double smin = std::numeric_limits<double>::infinity();
  for (int m = 0; m <= degree; ++m) {
    if (weights_num[m] <= 0.0 || weights_den[m] <= 0.0)
      throw DomainError("inclusion_sigma_min: weights must be positive");
    smin = std::min(smin, std::sqrt(weights_num[m] / weights_den[m]));
  }
  return smin;
}

}  // namespace rkhs
