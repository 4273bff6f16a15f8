#pragma once

#include <Eigen/Dense>
#include <complex>

namespace rkhs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

// Shared tolerance defaults. PSD verdicts use a relative floor
// -tol * max(1, lambda_max); rank truncation keeps eigenvalues
// above tol_rank * lambda_max.
inline constexpr double kDefaultPsdTol = 1e-10;
inline constexpr double kDefaultRankTol = 1e-10;
inline constexpr double kCoincidentPointWarnDist = 1e-8;
inline constexpr double kConditionWarnThreshold = 1e12;

}  // namespace rkhs
