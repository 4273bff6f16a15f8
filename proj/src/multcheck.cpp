#include "rkhs/multcheck.hpp"

#include <cmath>

#include "rkhs/errors.hpp"

namespace rkhs {

void MultiplierSymbol::check_uniform() const {
  if (blocks.empty()) throw ShapeError("MultiplierSymbol: no blocks");
  for (const Matrix& b : blocks)
    if (b.rows() != blocks[0].rows() || b.cols() != blocks[0].cols())
      throw ShapeError("MultiplierSymbol: blocks must have uniform shape");
}

MultiplierSymbol MultiplierSymbol::constant(int n, const Matrix& value) {
  MultiplierSymbol s;
  s.blocks.assign(n, value);
  return s;
}

MultiplierSymbol MultiplierSymbol::scalar(const std::vector<Complex>& values) {
  MultiplierSymbol s;
  s.blocks.reserve(values.size());
  for (Complex v : values) {
    Matrix b(1, 1);
    b(0, 0) = v;
    s.blocks.push_back(std::move(b));
  }
  return s;
}

MultiplierSymbol MultiplierSymbol::blaschke(const SampleSet& sample, Complex a) {
  if (std::abs(a) >= 1.0)
    throw DomainError("blaschke: zero must lie in the open unit disc");
  std::vector<Complex> values;
  values.reserve(sample.size());
  for (const Point& p : sample.points) {
    if (p.dim() != 1) throw ShapeError("blaschke: disc points expected");
    const Complex z = p.coords[0];
    values.push_back((z - a) / (Complex(1.0) - std::conj(a) * z));
  }
  return scalar(values);
}

MultiplierSymbol MultiplierSymbol::coordinate_row(const SampleSet& sample, int d) {
  MultiplierSymbol s;
  s.blocks.reserve(sample.size());
  for (const Point& p : sample.points) {
    if (p.dim() != d)
      throw ShapeError("coordinate_row: point dimension does not match d");
    Matrix b(1, d);
    for (int i = 0; i < d; ++i) b(0, i) = p.coords[i];
    s.blocks.push_back(std::move(b));
  }
  return s;
}

Matrix MultiplierSymbol::block_diagonal() const {
  check_uniform();
  const int p = out_dim();
  const int q = in_dim();
  Matrix d = Matrix::Zero(n() * p, n() * q);
  for (int i = 0; i < n(); ++i) d.block(i * p, i * q, p, q) = blocks[i];
  return d;
}

MultiplierSymbol MultiplierSymbol::operator*(const MultiplierSymbol& rhs) const {
  if (n() != rhs.n()) throw ShapeError("symbol product: sample size mismatch");
  if (in_dim() != rhs.out_dim())
    throw ShapeError("symbol product: inner dimensions do not match");
  MultiplierSymbol s;
  s.blocks.reserve(blocks.size());
  for (int i = 0; i < n(); ++i) s.blocks.push_back(blocks[i] * rhs.blocks[i]);
  return s;
}

KernelMatrix defect(const KernelMatrix& f_kernel, const KernelMatrix& e_kernel,
                    const MultiplierSymbol& phi) {
  phi.check_uniform();
  const int n = f_kernel.n();
  const int p = f_kernel.block_dim;
  const int q = e_kernel.block_dim;
  if (phi.n() != n || e_kernel.n() != n)
    throw ShapeError("defect: sample size mismatch");
  if (phi.out_dim() != p || phi.in_dim() != q)
    throw ShapeError("defect: symbol shape does not conform to the kernels");
  Matrix entries(n * p, n * p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      entries.block(i * p, j * p, p, p) =
          f_kernel.block(i, j) -
          phi.blocks[i] * e_kernel.block(i, j) * phi.blocks[j].adjoint();
  return KernelMatrix{0.5 * (entries + Matrix(entries.adjoint())), p,
                      f_kernel.sample};
}

Classification classify(const KernelMatrix& f_kernel, const KernelMatrix& e_kernel,
                        const MultiplierSymbol& phi, double tol) {
  const KernelMatrix l = defect(f_kernel, e_kernel, phi);
  const PsdReport psd = psd_check(l.entries, tol);
  Classification c;
  c.min_eigenvalue = psd.min_eigenvalue;
  c.defect_norm = l.entries.norm();
  c.contractive = psd.verdict;
  c.coisometric = c.defect_norm <= tol * std::max(1.0, f_kernel.entries.norm());
  return c;
}

MultOpMatrix multiplication_operator(const KernelMatrix& f_kernel,
                                     const KernelMatrix& e_kernel,
                                     const MultiplierSymbol& phi,
                                     double membership_tol) {
  const Ambient source(e_kernel);
  const Ambient target(f_kernel);
  const Matrix mapped = phi.block_diagonal() * source.full_onb();
  for (int c = 0; c < mapped.cols(); ++c)
    if (target.membership_residual(mapped.col(c)) > membership_tol)
      throw MembershipError(
          "multiplication_operator: symbol maps the source space outside the target");
  MultOpMatrix op;
  op.matrix = target.coords(mapped);
  if (op.matrix.size() == 0) {
    op.singular_values = RealVector(0);
  } else {
    Eigen::JacobiSVD<Matrix> svd(op.matrix);
    op.singular_values = svd.singularValues();
  }
  return op;
}

bool is_partial_isometry(const MultOpMatrix& op, double tol) {
  for (int i = 0; i < op.singular_values.size(); ++i) {
    const double s = op.singular_values(i);
    if (std::min(std::abs(s), std::abs(s - 1.0)) > tol) return false;
  }
  return true;
}

double multiplier_norm(const KernelMatrix& f_kernel, const KernelMatrix& e_kernel,
                       const MultiplierSymbol& phi) {
  phi.check_uniform();
  double phi_sup = 0.0;
  for (const Matrix& b : phi.blocks) phi_sup = std::max(phi_sup, spectral_norm(b));
  if (phi_sup == 0.0) return 0.0;
  const EigenSystem ef = hermitian_eig(f_kernel.entries);
  const EigenSystem ee = hermitian_eig(e_kernel.entries);
  const int rf = ef.rank();
  const double lmin_pos = rf > 0 ? ef.values(rf - 1) : 1.0;
  double lo = 0.0;
  double hi = phi_sup * std::sqrt(std::max(ee.max_eigenvalue(), 0.0) /
                                  std::max(lmin_pos, 1e-300));
  hi = std::max(hi, 1e-12);
  const Matrix product =
      phi.block_diagonal() * e_kernel.entries * phi.block_diagonal().adjoint();
  for (int it = 0; it < 60 && hi - lo > 1e-8; ++it) {
    const double mid = 0.5 * (lo + hi);
    const Matrix trial = mid * mid * f_kernel.entries - product;
    if (psd_check(trial, kDefaultPsdTol).verdict)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

bool row_contraction_check(const KernelMatrix& k, int d, double tol) {
  if (k.block_dim != 1)
    throw ShapeError("row_contraction_check: scalar kernel expected");
  const MultiplierSymbol row = MultiplierSymbol::coordinate_row(k.sample, d);
  const Classification via_defect = classify(k, tensor_identity(k, d), row, tol);
  // Cross-check: same verdict as positivity of K / DA.
  const KernelMatrix da = evaluate(KernelSpec::drury_arveson(d), k.sample);
  const PsdReport via_quotient = is_psd(hadamard_quotient(k, da), tol);
  if (via_defect.contractive != via_quotient.verdict)
    warn("row_contraction_check: defect and quotient routes disagree near tolerance");
  return via_defect.contractive;
}

int sup_rank(const MultiplierSymbol& phi, double tol_rank) {
  int r = 0;
  for (const Matrix& b : phi.blocks) r = std::max(r, numerical_rank(b, tol_rank));
  return r;
}

}  // namespace rkhs
