#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rkhs/hermitian.hpp"
#include "rkhs/types.hpp"

namespace rkhs {

// A point of the domain: one complex coordinate for disc kernels, d for the
// unit ball of C^d.
struct Point {
  std::vector<Complex> coords;

  Point() = default;
  explicit Point(Complex z) : coords{z} {}
  explicit Point(std::vector<Complex> c) : coords(std::move(c)) {}

  int dim() const { return static_cast<int>(coords.size()); }
  double norm() const;
  bool operator==(const Point& other) const { return coords == other.coords; }
};

// Ordered list of pairwise distinct points, with an optional base point index
// for normalization checks. Near-coincident points (distance < 1e-8) produce
// a warning: the resulting Gram matrices are ill-conditioned.
struct SampleSet {
  std::vector<Point> points;
  std::optional<int> base_index;

  SampleSet() = default;
  explicit SampleSet(std::vector<Point> pts,
                     std::optional<int> base = std::nullopt);

  int size() const { return static_cast<int>(points.size()); }
  bool same_points(const SampleSet& other) const;
};

enum class KernelVariant {
  Szego,
  Bergman,
  PowerAlpha,
  DruryArveson,
  Constant,
  CoefficientSeries,
  CustomMatrix,
};

// Kernel catalog entry. PowerAlpha evaluates (1 - z conj(w))^(-alpha) on the
// disc with the principal branch (1 - z conj(w) has positive real part, so
// the branch is unambiguous); Szego = PowerAlpha(1), Bergman = PowerAlpha(2).
class KernelSpec {
 public:
  static KernelSpec szego();
  static KernelSpec bergman();
  static KernelSpec power_alpha(double alpha);
  static KernelSpec drury_arveson(int d);
  static KernelSpec constant();
  static KernelSpec coefficient_series(std::vector<double> weights);
  static KernelSpec custom(Matrix matrix);

  KernelVariant variant() const { return variant_; }
  double alpha() const { return alpha_; }
  int ball_dim() const { return d_; }
  const std::vector<double>& weights() const { return weights_; }
  const Matrix& matrix() const { return matrix_; }

  bool in_domain(const Point& p) const;
  // Pointwise evaluation; not available for CustomMatrix.
  Complex eval(const Point& z, const Point& w) const;

  std::string name() const;

 private:
  KernelSpec() = default;
  KernelVariant variant_ = KernelVariant::Szego;
  double alpha_ = 1.0;
  int d_ = 1;
  std::vector<double> weights_;
  Matrix matrix_;
};

// Sampled kernel: an np x np Hermitian matrix in n x n blocks of size p x p.
struct KernelMatrix {
  Matrix entries;
  int block_dim = 1;
  SampleSet sample;

  int n() const { return sample.size(); }
  int total_dim() const { return static_cast<int>(entries.rows()); }
  Eigen::Block<const Matrix> block(int i, int j) const {
    return entries.block(i * block_dim, j * block_dim, block_dim, block_dim);
  }
};

// Rows b(x_i) of the CNP factor: 1 - 1/s(x_i, x_j) = b(x_i) b(x_j)^*.
struct CnpFactor {
  Matrix rows;  // n x L

  int rank() const { return static_cast<int>(rows.cols()); }
  Matrix row(int i) const { return rows.row(i); }
};

KernelMatrix evaluate(const KernelSpec& spec, const SampleSet& sample);

// Block kernel K (x) I_q for vector-valued fibers.
KernelMatrix tensor_identity(const KernelMatrix& k, int q);

PsdReport is_psd(const KernelMatrix& k, double tol = kDefaultPsdTol);

KernelMatrix schur_product(const KernelMatrix& k1, const KernelMatrix& k2);

// Blockwise K(x_i,x_j) / s(x_i,x_j); positivity is not asserted here.
KernelMatrix hadamard_quotient(const KernelMatrix& k, const KernelMatrix& s);

bool is_normalized(const KernelMatrix& k, int base_index);

KernelMatrix normalize(const KernelMatrix& k, int base_index);

struct CnpReport {
  bool verdict = false;
  double certificate = 0.0;  // min eigenvalue of [1 - 1/s]
};

// Finite-sample CNP certificate: verdict true means no violation on this
// sample; false is a definitive disproof. When base_index is absent the
// normalization row check is skipped (the disc/ball catalog kernels are
// normalized at the origin, which need not belong to the sample).
CnpReport is_cnp(const KernelMatrix& s,
                 std::optional<int> base_index = std::nullopt,
                 double tol = kDefaultPsdTol);

CnpFactor cnp_factor(const KernelMatrix& s, double tol_rank = kDefaultRankTol);

}  // namespace rkhs
