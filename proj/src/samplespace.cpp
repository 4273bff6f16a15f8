#include "rkhs/samplespace.hpp"

#include <cmath>

#include "rkhs/errors.hpp"

namespace rkhs {

Ambient::Ambient(KernelMatrix kernel, double tol_rank)
    : kernel_(std::move(kernel)),
      eig_(hermitian_eig(kernel_.entries)),
      tol_rank_(tol_rank),
      rank_(eig_.rank(tol_rank)) {
  const double lmax = eig_.max_eigenvalue();
  // Condition of the retained spectrum; eigenvalues below the rank cutoff
  // are deliberately truncated and do not indicate ill-conditioning.
  const double lmin = rank_ > 0 ? eig_.values(rank_ - 1) : 0.0;
  if (lmin > 0.0 && lmax / lmin > kConditionWarnThreshold)
    warn("kernel matrix condition number exceeds 1e12; results may lose accuracy");
  full_onb_ = Matrix(total_dim(), rank_);
  for (int i = 0; i < rank_; ++i)
    full_onb_.col(i) = eig_.vectors.col(i) * std::sqrt(eig_.values(i));
}

Matrix Ambient::pinv_apply(const Matrix& rhs) const {
  return eig_.pinv_apply(rhs, tol_rank_);
}

Matrix Ambient::coords(const Matrix& values) const {
  // full_onb^* K^+ v  =  Lambda^{-1/2} U^* v on the retained eigenspace.
  Matrix c(rank_, values.cols());
  for (int i = 0; i < rank_; ++i)
    c.row(i) = eig_.vectors.col(i).adjoint() * values / std::sqrt(eig_.values(i));
  return c;
}

double Ambient::membership_residual(const Vector& values) const {
  const Matrix u = eig_.vectors.leftCols(rank_);
  const Vector projected = u * (u.adjoint() * values);
  return (values - projected).norm() / std::max(1.0, values.norm());
}

Complex Ambient::inner(const Vector& f_values, const Vector& g_values) const {
  // <f, g> = g_values^* K^+ f_values.
  return (g_values.adjoint() * pinv_apply(f_values))(0, 0);
}

RkhsElement element_from_values(const Ambient& space, const Vector& values) {
  if (values.size() != space.total_dim())
    throw ShapeError("element_from_values: value vector has wrong length");
  if (space.membership_residual(values) > 1e-8)
    throw MembershipError(
        "element_from_values: values lie outside the column space of the kernel");
  RkhsElement f;
  f.values = values;
  f.coeffs = space.pinv_apply(values);
  f.norm_sq = std::real(((*f.coeffs).adjoint() * values)(0, 0));
  return f;
}

RkhsElement kernel_section(const Ambient& space, int point, const Vector& xi) {
  const int p = space.kernel().block_dim;
  const int n = space.kernel().n();
  if (point < 0 || point >= n)
    throw ShapeError("kernel_section: point index out of range");
  if (xi.size() != p) throw ShapeError("kernel_section: fiber vector has wrong length");
  Vector unit = Vector::Zero(space.total_dim());
  unit.segment(point * p, p) = xi;
  RkhsElement f;
  f.values = space.kernel().entries * unit;
  f.coeffs = unit;
  f.norm_sq = std::real((unit.adjoint() * f.values)(0, 0));
  return f;
}

Matrix gram(const Ambient& space, const std::vector<RkhsElement>& elements) {
  const int m = static_cast<int>(elements.size());
  Matrix values(space.total_dim(), m);
  for (int a = 0; a < m; ++a) {
    if (space.membership_residual(elements[a].values) > 1e-8)
      throw MembershipError("gram: element " + std::to_string(a) +
                            " lies outside the space");
    values.col(a) = elements[a].values;
  }
  // G[a][b] = <f_b, f_a> = v_a^* K^+ v_b.
  Matrix g = values.adjoint() * space.pinv_apply(values);
  return 0.5 * (g + Matrix(g.adjoint()));
}

namespace {

Subspace subspace_from_value_span(const Ambient& space, const Matrix& values,
                                  double tol_rank) {
  // Gram of the spanning vectors under the H_k inner product.
  Matrix g = values.adjoint() * space.pinv_apply(values);
  const EigenSystem sys = hermitian_eig(g);
  const int m = sys.rank(tol_rank);
  if (m == 0)
    throw EmptySubspaceError("subspace_from_spanning: spanning set is numerically zero");
  Matrix onb(values.rows(), m);
  for (int i = 0; i < m; ++i)
    onb.col(i) = values * sys.vectors.col(i) / std::sqrt(sys.values(i));
  return Subspace{space.kernel(), std::move(onb)};
}

}  // namespace

Subspace subspace_from_spanning(const Ambient& space,
                                const std::vector<RkhsElement>& spanning,
                                double tol_rank) {
  if (spanning.empty())
    throw ShapeError("subspace_from_spanning: empty spanning list");
  Matrix values(space.total_dim(), spanning.size());
  for (std::size_t a = 0; a < spanning.size(); ++a) {
    if (space.membership_residual(spanning[a].values) > 1e-8)
      throw MembershipError("subspace_from_spanning: element " + std::to_string(a) +
                            " lies outside the space");
    values.col(static_cast<int>(a)) = spanning[a].values;
  }
  return subspace_from_value_span(space, values, tol_rank);
}

Subspace subspace_from_constraints(const Ambient& space,
                                   const PointwiseConstraintSpec& spec,
                                   double tol_rank) {
  const int p = space.kernel().block_dim;
  const int n = space.kernel().n();
  // Constraint directions: e_i (x) xi with xi orthogonal to W_i; membership in
  // M means the value vector annihilates all of them.
  std::vector<Vector> normals;
  for (const auto& c : spec.constraints) {
    if (c.point < 0 || c.point >= n)
      throw ShapeError("subspace_from_constraints: point index out of range");
    if (c.directions.size() > 0 && c.directions.rows() != p)
      throw ShapeError("subspace_from_constraints: direction rows must equal fiber dim");
    if (c.directions.cols() > 0) {
      const Matrix should_be_id = c.directions.adjoint() * c.directions;
      if ((should_be_id - Matrix::Identity(c.directions.cols(), c.directions.cols()))
              .cwiseAbs()
              .maxCoeff() > 1e-12)
        throw ContractError(
            "subspace_from_constraints: direction columns must be orthonormal");
    }
    // Orthogonal complement of W_i in C^p.
    Matrix w = c.directions.cols() > 0 ? c.directions : Matrix(p, 0);
    Matrix proj = Matrix::Identity(p, p) - w * w.adjoint();
    const Matrix complement = column_span_onb(proj, 1e-8);
    for (int k = 0; k < complement.cols(); ++k) {
      Vector normal = Vector::Zero(n * p);
      normal.segment(c.point * p, p) = complement.col(k);
      normals.push_back(std::move(normal));
    }
  }
  const Matrix& full = space.full_onb();
  if (normals.empty()) return Subspace{space.kernel(), full};
  Matrix a(normals.size(), full.cols());
  for (std::size_t r = 0; r < normals.size(); ++r)
    a.row(static_cast<int>(r)) = normals[r].adjoint() * full;
  // Nullspace of the constraint matrix in full-ONB coordinates.
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int r = 0;
  if (sv.size() > 0 && sv(0) > 0.0) {
    const double cutoff = 1e-12 * sv(0);
    while (r < sv.size() && sv(r) > cutoff) ++r;
  }
  const int m = static_cast<int>(full.cols()) - r;
  if (m == 0)
    throw EmptySubspaceError(
        "subspace_from_constraints: constraints force the zero subspace");
  Matrix onb = full * svd.matrixV().rightCols(m);
  return Subspace{space.kernel(), std::move(onb)};
}

Subspace whole_space(const Ambient& space) {
  return Subspace{space.kernel(), space.full_onb()};
}

KernelMatrix subspace_kernel(const Subspace& m) {
  if (m.dim() == 0) throw EmptySubspaceError("subspace_kernel: empty subspace");
  Matrix k = m.onb * m.onb.adjoint();
  return KernelMatrix{0.5 * (k + Matrix(k.adjoint())), m.ambient.block_dim,
                      m.ambient.sample};
}

RkhsElement project(const Ambient& space, const Subspace& m, const RkhsElement& f) {
  if (space.membership_residual(f.values) > 1e-8)
    throw MembershipError("project: element lies outside the space");
  // P_M f = sum_j <f, e_j> e_j with <f, e_j> = e_j^* K^+ f.
  const Vector coeffs = m.onb.adjoint() * space.pinv_apply(f.values);
  return element_from_values(space, m.onb * coeffs);
}

InvarianceReport is_pointwise_invariant(const Ambient& space, const Subspace& m,
                                        double tol) {
  const int p = space.kernel().block_dim;
  const int n = space.kernel().n();
  InvarianceReport report;
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < m.dim(); ++c) {
      // Truncation at point i: zero every value row except block i, then
      // project back into the range of K (no-op when K is positive definite).
      Vector raw = Vector::Zero(n * p);
      raw.segment(i * p, p) = m.onb.col(c).segment(i * p, p);
      const Vector t = space.kernel().entries * space.pinv_apply(raw);
      const double tn = t.norm();
      if (tn < 1e-14) continue;
      const Vector inside = m.onb * (m.onb.adjoint() * space.pinv_apply(t));
      if ((t - inside).norm() > tol * std::max(1.0, tn)) {
        report.verdict = false;
        report.witness_point = i;
        report.witness_values = t;
        return report;
      }
    }
  }
  report.verdict = true;
  return report;
}

}  // namespace rkhs
