#pragma once

#include "rkhs/multcheck.hpp"

namespace rkhs {

// Output of the Beurling synthesis: Phi with K^M / S = Phi Phi^*.
struct FactorizationResult {
  MultiplierSymbol phi;        // blocks p x f
  int rank_f = 0;              // dimension of the auxiliary fiber F
  double quotient_min_eig = 0.0;
  double coisometry_residual = 0.0;
  bool partial_isometry_ok = false;
};

// Partial isometry connecting two factorizations of the same quotient.
// matrix maps the fiber of phi into the fiber of phi_tilde; both
// intertwining identities Phi = Phi~ V and Phi~ = Phi V^* are verified.
struct ConnectingIsometry {
  Matrix v;  // f_tilde x f
  bool is_isometry = false;
  bool is_partial_isometry = false;
};

// Construct the partially isometric multiplier with M = Phi (H_s (x) C^f)
// from the subspace kernel K^M. The operative gate is positivity of
// Q = K^M / S; its failure signals a non-invariant subspace or a non-CNP s.
// Columns of Phi are ordered by descending eigenvalue of Q.
FactorizationResult synthesize(const KernelMatrix& k_m, const KernelMatrix& s,
                               double tol_psd = 1e-9,
                               double tol_rank = kDefaultRankTol);

struct RepresentationDiagnostics {
  double range_angle_residual = 0.0;     // principal angles between ran M_Phi and M
  double projection_residual = 0.0;      // || M_Phi M_Phi^* - P_M ||_2
  double defect_residual = 0.0;          // || K^M - S o (Phi Phi^*) ||_F relative
  bool ok = false;
};

// Checks that the synthesized Phi represents M: range equality, co-isometry
// onto M, and the pointwise defect identity. Throws VerificationError when a
// check fails and `require` is set.
RepresentationDiagnostics verify_representation(const FactorizationResult& result,
                                                const KernelMatrix& s,
                                                const KernelMatrix& k,
                                                const Subspace& m,
                                                double tol = 1e-7,
                                                bool require = false);

ConnectingIsometry connecting_partial_isometry(const MultiplierSymbol& phi,
                                               const MultiplierSymbol& phi_tilde,
                                               double tol = 1e-8);

// True iff the stacked adjoint blocks span the full fiber C^f.
bool is_minimal(const MultiplierSymbol& phi, double tol_rank = kDefaultRankTol);

}  // namespace rkhs
