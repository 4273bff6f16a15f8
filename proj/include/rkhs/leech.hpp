#pragma once

#include "rkhs/beurling.hpp"

namespace rkhs {

struct LeechTolerances {
  double psd = 1e-9;
  double rank = kDefaultRankTol;
  double factor = 1e-7;
  double gram = 1e-8;
};

struct LeechResult {
  MultiplierSymbol gamma;           // blocks f x g
  double contractivity_min_eig = 0.0;  // min eig of S o (I - Gamma Gamma^*)
  double factor_residual = 0.0;        // max_i || Psi(x_i) - Phi(x_i) Gamma(x_i) ||
  double gram_identity_residual = 0.0; // lurking-isometry consistency
};

// Defect of the Leech containment hypothesis:
// P[i][j] = s(x_i,x_j) (Phi(x_i) Phi(x_j)^* - Psi(x_i) Psi(x_j)^*).
KernelMatrix leech_defect(const KernelMatrix& s, const MultiplierSymbol& phi,
                          const MultiplierSymbol& psi);

// Constructive Leech factorization via lurking isometry / transfer-function
// realization. Requires the defect above to be PSD and s to pass the
// finite-sample CNP test. Returns a Gamma certified both pointwise
// (Psi = Phi Gamma) and as a contractive multiplier of H_s fibers.
LeechResult solve(const KernelMatrix& s, const MultiplierSymbol& phi,
                  const MultiplierSymbol& psi,
                  const LeechTolerances& tols = LeechTolerances{});

// is_psd(K^M - K^N): the bridge from contractive containment of subspaces to
// positivity of the Leech defect.
bool contractive_containment_check(const KernelMatrix& k_m, const KernelMatrix& k_n,
                                   double tol = kDefaultPsdTol);

struct PipelineResult {
  MultiplierSymbol psi;        // partially isometric representation of N
  MultiplierSymbol gamma0;     // contractive Leech solution Psi = Phi Gamma0
  Subspace l_subspace;         // closure of Gamma0 (H_s (x) G0) in H_s (x) C^f
  MultiplierSymbol gamma;      // partially isometric representation of L
  MultiplierSymbol composite;  // Phi Gamma
  double projection_residual = 0.0;  // || M_{Phi Gamma} M_{Phi Gamma}^* - P_N ||_2
  double chain_min_eig = 0.0;        // min eig over both one-sided chain checks
};

// Arias-style pipeline for nested invariant subspaces N <= M: synthesize Psi
// for N, Leech-solve Gamma0, re-synthesize a partially isometric Gamma for
// the closure of the Gamma0 range, and compose. The composite Phi Gamma is a
// partially isometric multiplier with range N.
PipelineResult arias_pipeline(const KernelMatrix& k, const KernelMatrix& s,
                              const Subspace& m, const Subspace& n,
                              const LeechTolerances& tols = LeechTolerances{});

}  // namespace rkhs
