#include "rkhs/beurling.hpp"

#include <cmath>
#include <sstream>

#include "rkhs/errors.hpp"

namespace rkhs {

namespace {

// Stacked adjoint blocks [Phi(x_0)^*, ..., Phi(x_{n-1})^*], shape f x (n p).
Matrix stacked_adjoints(const MultiplierSymbol& phi) {
  const int f = phi.in_dim();
  const int p = phi.out_dim();
  Matrix stacked(f, phi.n() * p);
  for (int i = 0; i < phi.n(); ++i)
    stacked.middleCols(i * p, p) = phi.blocks[i].adjoint();
  return stacked;
}

}  // namespace

FactorizationResult synthesize(const KernelMatrix& k_m, const KernelMatrix& s,
                               double tol_psd, double tol_rank) {
  const KernelMatrix q = hadamard_quotient(k_m, s);
  const PsdReport q_psd = psd_check(q.entries, tol_psd);
  if (!q_psd.verdict)
    throw NotPsdError(
        "synthesize: K^M / S is not PSD (non-invariant subspace or non-CNP s); "
        "min eigenvalue " +
            std::to_string(q_psd.min_eigenvalue),
        q_psd.min_eigenvalue);
  const Matrix b = psd_factor(q.entries, tol_rank);
  const int f = static_cast<int>(b.cols());
  if (f == 0) throw EmptySubspaceError("synthesize: quotient is numerically zero");
  const int p = k_m.block_dim;

  FactorizationResult result;
  result.rank_f = f;
  result.quotient_min_eig = q_psd.min_eigenvalue;
  result.phi.blocks.reserve(k_m.n());
  for (int i = 0; i < k_m.n(); ++i)
    result.phi.blocks.push_back(b.middleRows(i * p, p));

  // Co-isometry onto M: K^M - Phi (S (x) I_f) Phi^* should vanish.
  const KernelMatrix l = defect(k_m, tensor_identity(s, f), result.phi);
  result.coisometry_residual =
      l.entries.norm() / std::max(1.0, k_m.entries.norm());

  // A coarse rank truncation leaks mass of order tol_rank outside M; widen
  // the membership gate and the singular-value tolerance accordingly.
  const double slack = std::max(1e-7, tol_rank);
  const MultOpMatrix op = multiplication_operator(k_m, tensor_identity(s, f),
                                                  result.phi, std::max(1e-8, slack));
  result.partial_isometry_ok = is_partial_isometry(op, slack);
  return result;
}

RepresentationDiagnostics verify_representation(const FactorizationResult& result,
                                                const KernelMatrix& s,
                                                const KernelMatrix& k,
                                                const Subspace& m, double tol,
                                                bool require) {
  const int f = result.rank_f;
  const Ambient ambient(k);
  const Ambient source(tensor_identity(s, f));

  // Operator matrix of M_Phi from H_s (x) C^f into the ambient space.
  const Matrix mapped = result.phi.block_diagonal() * source.full_onb();
  const Matrix a = ambient.coords(mapped);
  const Matrix m_coords = ambient.coords(m.onb);

  RepresentationDiagnostics diag;

  // (1) Range of M_Phi equals M, via principal angles.
  const Matrix range_onb = column_span_onb(a, 1e-8);
  double angle_residual = 0.0;
  if (range_onb.cols() != m_coords.cols()) {
    angle_residual = 1.0;
  } else if (range_onb.cols() > 0) {
    Eigen::JacobiSVD<Matrix> svd(range_onb.adjoint() * m_coords);
    const auto& sv = svd.singularValues();
    angle_residual = std::abs(1.0 - sv(sv.size() - 1));
  }
  diag.range_angle_residual = angle_residual;

  // (2) M_Phi M_Phi^* = P_M in orthonormal coordinates.
  const Matrix p_m = m_coords * m_coords.adjoint();
  diag.projection_residual = spectral_norm(a * a.adjoint() - p_m);

  // (3) Pointwise defect against K^M.
  const KernelMatrix k_m = subspace_kernel(m);
  const KernelMatrix l = defect(k_m, tensor_identity(s, f), result.phi);
  diag.defect_residual = l.entries.norm() / std::max(1.0, k_m.entries.norm());

  diag.ok = diag.range_angle_residual <= tol && diag.projection_residual <= tol &&
            diag.defect_residual <= 1e-8 + tol;
  if (require && !diag.ok) {
    std::ostringstream os;
    os << "verify_representation failed:";
    if (diag.range_angle_residual > tol)
      os << " range-angle residual " << diag.range_angle_residual << ";";
    if (diag.projection_residual > tol)
      os << " projection residual " << diag.projection_residual << ";";
    if (diag.defect_residual > 1e-8 + tol)
      os << " defect residual " << diag.defect_residual << ";";
    throw VerificationError(os.str());
  }
  return diag;
}

ConnectingIsometry connecting_partial_isometry(const MultiplierSymbol& phi,
                                               const MultiplierSymbol& phi_tilde,
                                               double tol) {
  phi.check_uniform();
  phi_tilde.check_uniform();
  if (phi.n() != phi_tilde.n() || phi.out_dim() != phi_tilde.out_dim())
    throw ShapeError("connecting_partial_isometry: symbol shapes do not conform");

  const Matrix u = stacked_adjoints(phi);        // f x np
  const Matrix ut = stacked_adjoints(phi_tilde); // f~ x np

  // Shared Gram: Phi(x_i) Phi(x_j)^* must agree with the tilde version.
  const Matrix gu = u.adjoint() * u;
  const Matrix gt = ut.adjoint() * ut;
  const double mismatch = (gu - gt).cwiseAbs().maxCoeff();
  if (mismatch > 1e-8)
    throw ContractError(
        "connecting_partial_isometry: the two symbols do not factor the same "
        "quotient (Gram mismatch " +
        std::to_string(mismatch) + ")");

  // Orthonormalize the generator spans through the shared Gram; the same
  // eigenvector/eigenvalue data serves both sides, so corresponding
  // generators map to each other.
  const EigenSystem sys = hermitian_eig(gu);
  const int r = sys.rank(1e-12);
  const int f = phi.in_dim();
  const int ft = phi_tilde.in_dim();
  Matrix v = Matrix::Zero(ft, f);
  for (int kk = 0; kk < r; ++kk) {
    const Vector w = sys.vectors.col(kk) / std::sqrt(sys.values(kk));
    v += (ut * w) * (u * w).adjoint();
  }

  ConnectingIsometry result;
  result.v = v;
  const Matrix vtv = v.adjoint() * v;
  const Matrix vvt = v * v.adjoint();
  auto idempotent = [tol](const Matrix& x) {
    const EigenSystem e = hermitian_eig(x);
    for (int i = 0; i < e.values.size(); ++i) {
      const double lam = e.values(i);
      if (std::min(std::abs(lam), std::abs(lam - 1.0)) > tol) return false;
    }
    return true;
  };
  result.is_partial_isometry = idempotent(vtv) && idempotent(vvt);
  result.is_isometry =
      (vtv - Matrix::Identity(f, f)).cwiseAbs().maxCoeff() <= tol;

  // Both intertwining identities must hold.
  for (int i = 0; i < phi.n(); ++i) {
    const double r1 =
        (phi.blocks[i] - phi_tilde.blocks[i] * v).cwiseAbs().maxCoeff();
    const double r2 =
        (phi_tilde.blocks[i] - phi.blocks[i] * v.adjoint()).cwiseAbs().maxCoeff();
    if (r1 > tol || r2 > tol)
      throw VerificationError(
          "connecting_partial_isometry: intertwining identity residual " +
          std::to_string(std::max(r1, r2)) + " at point " + std::to_string(i));
  }
  return result;
}

bool is_minimal(const MultiplierSymbol& phi, double tol_rank) {
  phi.check_uniform();
  return numerical_rank(stacked_adjoints(phi), tol_rank) == phi.in_dim();
}

}  // namespace rkhs
