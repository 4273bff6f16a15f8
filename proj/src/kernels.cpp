#include "rkhs/kernels.hpp"

#include <cmath>
#include <sstream>

#include "rkhs/errors.hpp"

namespace rkhs {

double Point::norm() const {
  double s = 0.0;
  for (const auto& c : coords) s += std::norm(c);
  return std::sqrt(s);
}

namespace {

double point_distance(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) return 1.0;
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += std::norm(a.coords[i] - b.coords[i]);
  return std::sqrt(s);
}

std::string point_to_string(const Point& p) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < p.dim(); ++i) {
    if (i) os << ", ";
    os << p.coords[i].real() << (p.coords[i].imag() < 0 ? "-" : "+")
       << std::abs(p.coords[i].imag()) << "i";
  }
  os << ")";
  return os.str();
}

Complex pair_product(const Point& z, const Point& w) {
  Complex s = 0.0;
  const int d = std::min(z.dim(), w.dim());
  for (int i = 0; i < d; ++i) s += z.coords[i] * std::conj(w.coords[i]);
  return s;
}

}  // namespace

SampleSet::SampleSet(std::vector<Point> pts, std::optional<int> base)
    : points(std::move(pts)), base_index(base) {
  if (points.empty()) throw ShapeError("SampleSet: at least one point required");
  if (base_index && (*base_index < 0 || *base_index >= size()))
    throw ShapeError("SampleSet: base index out of range");
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j])
        throw DomainError("SampleSet: points must be pairwise distinct");
      if (point_distance(points[i], points[j]) < kCoincidentPointWarnDist)
        warn("near-coincident sample points " + point_to_string(points[i]) +
             " and " + point_to_string(points[j]) +
             "; Gram matrices will be ill-conditioned");
    }
  }
}

bool SampleSet::same_points(const SampleSet& other) const {
  return points == other.points;
}

KernelSpec KernelSpec::szego() { return power_alpha(1.0); }

KernelSpec KernelSpec::bergman() { return power_alpha(2.0); }

KernelSpec KernelSpec::power_alpha(double alpha) {
  if (alpha <= 0.0) throw ShapeError("PowerAlpha: alpha must be positive");
  KernelSpec s;
  s.variant_ = KernelVariant::PowerAlpha;
  s.alpha_ = alpha;
  return s;
}

KernelSpec KernelSpec::drury_arveson(int d) {
  if (d < 1) throw ShapeError("DruryArveson: d must be a positive integer");
  KernelSpec s;
  s.variant_ = KernelVariant::DruryArveson;
  s.d_ = d;
  return s;
}

KernelSpec KernelSpec::constant() {
  KernelSpec s;
  s.variant_ = KernelVariant::Constant;
  return s;
}

KernelSpec KernelSpec::coefficient_series(std::vector<double> weights) {
  if (weights.empty())
    throw ShapeError("CoefficientSeries: at least one weight required");
  for (double w : weights)
    if (w < 0.0) throw ShapeError("CoefficientSeries: weights must be nonnegative");
  KernelSpec s;
  s.variant_ = KernelVariant::CoefficientSeries;
  s.weights_ = std::move(weights);
  return s;
}

KernelSpec KernelSpec::custom(Matrix matrix) {
  if (matrix.rows() != matrix.cols())
    throw ShapeError("CustomMatrix: matrix must be square");
  if (!is_hermitian(matrix))
    throw ContractError("CustomMatrix: matrix must be Hermitian");
  KernelSpec s;
  s.variant_ = KernelVariant::CustomMatrix;
  s.matrix_ = std::move(matrix);
  return s;
}

bool KernelSpec::in_domain(const Point& p) const {
  switch (variant_) {
    case KernelVariant::DruryArveson:
      return p.dim() == d_ && p.norm() < 1.0;
    case KernelVariant::Constant:
    case KernelVariant::CustomMatrix:
      return true;
    default:
      return p.dim() == 1 && std::abs(p.coords[0]) < 1.0;
  }
}

Complex KernelSpec::eval(const Point& z, const Point& w) const {
  switch (variant_) {
    case KernelVariant::PowerAlpha:
      return std::pow(Complex(1.0) - pair_product(z, w), -alpha_);
    case KernelVariant::DruryArveson:
      return Complex(1.0) / (Complex(1.0) - pair_product(z, w));
    case KernelVariant::Constant:
      return Complex(1.0);
    case KernelVariant::CoefficientSeries: {
      const Complex x = pair_product(z, w);
      Complex acc = 0.0;
      Complex power = 1.0;
      for (double c : weights_) {
        acc += c * power;
        power *= x;
      }
      return acc;
    }
    default:
      throw ContractError("KernelSpec::eval: not defined for CustomMatrix");
  }
}

std::string KernelSpec::name() const {
  switch (variant_) {
    case KernelVariant::PowerAlpha:
      if (alpha_ == 1.0) return "szego";
      if (alpha_ == 2.0) return "bergman";
      return "power_alpha(" + std::to_string(alpha_) + ")";
    case KernelVariant::DruryArveson:
      return "drury_arveson(" + std::to_string(d_) + ")";
    case KernelVariant::Constant:
      return "constant";
    case KernelVariant::CoefficientSeries:
      return "coefficient_series";
    case KernelVariant::CustomMatrix:
      return "custom_matrix";
    default:
      return "kernel";
  }
}

KernelMatrix evaluate(const KernelSpec& spec, const SampleSet& sample) {
  const int n = sample.size();
  if (spec.variant() == KernelVariant::CustomMatrix) {
    if (spec.matrix().rows() != n)
      throw ShapeError("evaluate: CustomMatrix size does not match sample size");
    return KernelMatrix{spec.matrix(), 1, sample};
  }
  for (const Point& p : sample.points)
    if (!spec.in_domain(p))
      throw DomainError("evaluate: point " + std::to_string(p.norm()) +
                        " in modulus is outside the domain of " + spec.name());
  Matrix entries(n, n);
  for (int i = 0; i < n; ++i) {
    entries(i, i) = spec.eval(sample.points[i], sample.points[i]);
    for (int j = 0; j < i; ++j) {
      const Complex v = spec.eval(sample.points[i], sample.points[j]);
      entries(i, j) = v;
      entries(j, i) = std::conj(v);
    }
  }
  return KernelMatrix{std::move(entries), 1, sample};
}

KernelMatrix tensor_identity(const KernelMatrix& k, int q) {
  if (q < 1) throw ShapeError("tensor_identity: fiber dimension must be >= 1");
  if (k.block_dim != 1)
    throw ShapeError("tensor_identity: scalar kernel expected");
  const int n = k.n();
  Matrix entries = Matrix::Zero(n * q, n * q);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      entries.block(i * q, j * q, q, q) =
          k.entries(i, j) * Matrix::Identity(q, q);
  return KernelMatrix{std::move(entries), q, k.sample};
}

PsdReport is_psd(const KernelMatrix& k, double tol) {
  if (!is_hermitian(k.entries))
    throw ContractError("is_psd: input matrix is not Hermitian");
  return psd_check(k.entries, tol);
}

KernelMatrix schur_product(const KernelMatrix& k1, const KernelMatrix& k2) {
  if (!k1.sample.same_points(k2.sample))
    throw ShapeError("schur_product: operands sampled on different sets");
  if (k1.block_dim > 1 && k2.block_dim > 1)
    throw ShapeError("schur_product: at most one operand may be block-valued");
  const KernelMatrix& scalar = k1.block_dim == 1 ? k1 : k2;
  const KernelMatrix& other = k1.block_dim == 1 ? k2 : k1;
  const int n = other.n();
  const int p = other.block_dim;
  Matrix entries(n * p, n * p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      entries.block(i * p, j * p, p, p) = scalar.entries(i, j) * other.block(i, j);
  return KernelMatrix{std::move(entries), p, other.sample};
}

KernelMatrix hadamard_quotient(const KernelMatrix& k, const KernelMatrix& s) {
  if (!k.sample.same_points(s.sample))
    throw ShapeError("hadamard_quotient: operands sampled on different sets");
  if (s.block_dim != 1)
    throw ShapeError("hadamard_quotient: divisor must be a scalar kernel");
  const int n = k.n();
  const int p = k.block_dim;
  Matrix entries(n * p, n * p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (std::abs(s.entries(i, j)) < 1e-14)
        throw DomainError("hadamard_quotient: divisor vanishes at pair (" +
                          std::to_string(i) + ", " + std::to_string(j) + ")");
      entries.block(i * p, j * p, p, p) = k.block(i, j) / s.entries(i, j);
    }
  return KernelMatrix{std::move(entries), p, k.sample};
}

bool is_normalized(const KernelMatrix& k, int base_index) {
  if (k.block_dim != 1)
    throw ShapeError("is_normalized: scalar kernel expected");
  if (base_index < 0 || base_index >= k.n())
    throw ShapeError("is_normalized: base index out of range");
  for (int i = 0; i < k.n(); ++i)
    if (std::abs(k.entries(i, base_index) - Complex(1.0)) > 1e-12) return false;
  return true;
}

KernelMatrix normalize(const KernelMatrix& k, int base_index) {
  if (k.block_dim != 1) throw ShapeError("normalize: scalar kernel expected");
  if (base_index < 0 || base_index >= k.n())
    throw ShapeError("normalize: base index out of range");
  const int n = k.n();
  const Complex kbb = k.entries(base_index, base_index);
  for (int i = 0; i < n; ++i)
    if (std::abs(k.entries(i, base_index)) < 1e-14)
      throw DomainError("normalize: kernel vanishes against the base point at index " +
                        std::to_string(i));
  Matrix entries(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      entries(i, j) = k.entries(i, j) * kbb /
                      (k.entries(i, base_index) * k.entries(base_index, j));
  SampleSet sample = k.sample;
  sample.base_index = base_index;
  return KernelMatrix{std::move(entries), 1, std::move(sample)};
}

namespace {

// [1 - 1/s], entrywise.
Matrix cnp_defect_matrix(const KernelMatrix& s) {
  if (s.block_dim != 1) throw ShapeError("is_cnp: scalar kernel expected");
  const int n = s.n();
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (std::abs(s.entries(i, j)) < 1e-14)
        throw DomainError("is_cnp: kernel vanishes at pair (" + std::to_string(i) +
                          ", " + std::to_string(j) + ")");
      m(i, j) = Complex(1.0) - Complex(1.0) / s.entries(i, j);
    }
  return m;
}

}  // namespace

CnpReport is_cnp(const KernelMatrix& s, std::optional<int> base_index, double tol) {
  if (base_index && !is_normalized(s, *base_index))
    throw ContractError("is_cnp: kernel is not normalized at the base index");
  const PsdReport psd = psd_check(cnp_defect_matrix(s), tol);
  return CnpReport{psd.verdict, psd.min_eigenvalue};
}

CnpFactor cnp_factor(const KernelMatrix& s, double tol_rank) {
  const Matrix defect = cnp_defect_matrix(s);
  const PsdReport psd = psd_check(defect);
  if (!psd.verdict)
    throw CnpError("cnp_factor: kernel fails the finite-sample CNP test",
                   psd.min_eigenvalue);
  return CnpFactor{psd_factor(defect, tol_rank)};
}

}  // namespace rkhs
