#include "rkhs/leech.hpp"

#include <cmath>

#include "rkhs/errors.hpp"

namespace rkhs {

KernelMatrix leech_defect(const KernelMatrix& s, const MultiplierSymbol& phi,
                          const MultiplierSymbol& psi) {
  phi.check_uniform();
  psi.check_uniform();
  const int n = s.n();
  if (s.block_dim != 1) throw ShapeError("leech_defect: scalar s expected");
  if (phi.n() != n || psi.n() != n)
    throw ShapeError("leech_defect: sample size mismatch");
  if (phi.out_dim() != psi.out_dim())
    throw ShapeError("leech_defect: phi and psi must share the output fiber");
  const int p = phi.out_dim();
  Matrix entries(n * p, n * p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      entries.block(i * p, j * p, p, p) =
          s.entries(i, j) * (phi.blocks[i] * phi.blocks[j].adjoint() -
                             psi.blocks[i] * psi.blocks[j].adjoint());
  return KernelMatrix{0.5 * (entries + Matrix(entries.adjoint())), p, s.sample};
}

LeechResult solve(const KernelMatrix& s, const MultiplierSymbol& phi,
                  const MultiplierSymbol& psi, const LeechTolerances& tols) {
  const int n = s.n();
  const int p = phi.out_dim();
  const int f = phi.in_dim();
  const int g = psi.in_dim();

  const KernelMatrix defect_kernel = leech_defect(s, phi, psi);
  const PsdReport defect_psd = psd_check(defect_kernel.entries, tols.psd);
  if (!defect_psd.verdict)
    throw NotPsdError(
        "leech solve: containment defect is not PSD; the factorization "
        "hypothesis fails (min eigenvalue " +
            std::to_string(defect_psd.min_eigenvalue) + ")",
        defect_psd.min_eigenvalue);

  const CnpFactor b = cnp_factor(s, tols.rank);
  const int bigl = b.rank();

  // (1) Factor the defect: P = H H^* with block rows H(x_i) of shape p x h.
  const Matrix h_factor = psd_factor(defect_kernel.entries, tols.rank);
  const int h = static_cast<int>(h_factor.cols());

  // (2) Lurking isometry data: for each point and fiber basis vector,
  //   u = [Phi^* xi ; (H^* xi) (x) b^*]  in C^{f + h L},
  //   v = [Psi^* xi ; H^* xi]            in C^{g + h}.
  // The Gram identity u^*u = v^*v is the numerical content of 1/s = 1 - b b^*.
  Matrix u_cols(f + h * bigl, n * p);
  Matrix v_cols(g + h, n * p);
  for (int i = 0; i < n; ++i) {
    const Matrix hi = h_factor.middleRows(i * p, p);  // p x h
    const Vector bstar = b.rows.row(i).adjoint();     // L
    for (int a = 0; a < p; ++a) {
      const int col = i * p + a;
      const Vector phi_part = phi.blocks[i].adjoint().col(a);
      const Vector h_part = hi.adjoint().col(a);
      Vector u(f + h * bigl);
      u.head(f) = phi_part;
      for (int kk = 0; kk < h; ++kk)
        u.segment(f + kk * bigl, bigl) = h_part(kk) * bstar;
      u_cols.col(col) = u;
      Vector v(g + h);
      v.head(g) = psi.blocks[i].adjoint().col(a);
      v.tail(h) = h_part;
      v_cols.col(col) = v;
    }
  }
  const Matrix gu = u_cols.adjoint() * u_cols;
  const Matrix gv = v_cols.adjoint() * v_cols;
  const double gram_residual =
      (gu - gv).cwiseAbs().maxCoeff() / std::max(1.0, gu.cwiseAbs().maxCoeff());
  if (gram_residual > tols.gram)
    throw NumericalError("leech solve: lurking-isometry Gram identity residual " +
                         std::to_string(gram_residual));

  // (3) Extend u -> v by zero to a partial isometry V = [A B; C D].
  const EigenSystem sys = hermitian_eig(gu);
  const int r = sys.rank(tols.rank);
  Matrix v_op = Matrix::Zero(g + h, f + h * bigl);
  for (int kk = 0; kk < r; ++kk) {
    const Vector w = sys.vectors.col(kk) / std::sqrt(sys.values(kk));
    v_op += (v_cols * w) * (u_cols * w).adjoint();
  }
  const Matrix a_blk = v_op.topLeftCorner(g, f);
  const Matrix b_blk = v_op.topRightCorner(g, h * bigl);
  const Matrix c_blk = v_op.bottomLeftCorner(h, f);
  const Matrix d_blk = v_op.bottomRightCorner(h, h * bigl);

  // (4) Transfer function: Gamma(w)^* = A + B W_w (I - E_w)^{-1} C with
  // W_w v = v (x) b(w)^* and E_w = D W_w; || E_w || <= || b(w) || < 1.
  LeechResult result;
  result.gram_identity_residual = gram_residual;
  result.gamma.blocks.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Vector bstar = b.rows.row(i).adjoint();
    Matrix w_w = Matrix::Zero(h * bigl, h);
    for (int kk = 0; kk < h; ++kk) w_w.block(kk * bigl, kk, bigl, 1) = bstar;
    const Matrix e_w = d_blk * w_w;
    const Matrix resolvent = Matrix::Identity(h, h) - e_w;
    if (h > 0) {
      Eigen::JacobiSVD<Matrix> svd(resolvent);
      const double smin = svd.singularValues()(svd.singularValues().size() - 1);
      if (smin < 1e-12)
        throw NumericalError(
            "leech solve: I - E_w numerically singular at point " +
            std::to_string(i) + " (||E_w|| ~ " +
            std::to_string(spectral_norm(e_w)) + ")");
    }
    const Matrix gamma_star =
        a_blk + b_blk * w_w * resolvent.inverse() * c_blk;  // g x f
    result.gamma.blocks.push_back(gamma_star.adjoint());
  }

  double factor_residual = 0.0;
  for (int i = 0; i < n; ++i)
    factor_residual = std::max(
        factor_residual,
        (psi.blocks[i] - phi.blocks[i] * result.gamma.blocks[i]).norm());
  result.factor_residual = factor_residual;

  // Contractivity certificate: S o (I - Gamma Gamma^*) must be PSD.
  const KernelMatrix contraction_defect =
      defect(tensor_identity(s, f), tensor_identity(s, g), result.gamma);
  result.contractivity_min_eig =
      psd_check(contraction_defect.entries, tols.psd).min_eigenvalue;
  return result;
}

bool contractive_containment_check(const KernelMatrix& k_m, const KernelMatrix& k_n,
                                   double tol) {
  if (!k_m.sample.same_points(k_n.sample) || k_m.block_dim != k_n.block_dim)
    throw ShapeError("contractive_containment_check: kernels do not conform");
  return psd_check(k_m.entries - k_n.entries, tol).verdict;
}

PipelineResult arias_pipeline(const KernelMatrix& k, const KernelMatrix& s,
                              const Subspace& m, const Subspace& n,
                              const LeechTolerances& tols) {
  PipelineResult result;
  const KernelMatrix k_m = subspace_kernel(m);
  const KernelMatrix k_n = subspace_kernel(n);

  FactorizationResult phi;
  try {
    phi = synthesize(k_m, s, tols.psd, tols.rank);
  } catch (const Error& e) {
    throw Error(std::string("pipeline stage synthesize(M): ") + e.what());
  }
  FactorizationResult psi;
  try {
    psi = synthesize(k_n, s, tols.psd, tols.rank);
  } catch (const Error& e) {
    throw Error(std::string("pipeline stage synthesize(N): ") + e.what());
  }
  result.psi = psi.phi;
  const int f = phi.rank_f;
  const int g0 = psi.rank_f;

  LeechResult gamma0;
  try {
    gamma0 = solve(s, phi.phi, psi.phi, tols);
  } catch (const Error& e) {
    throw Error(std::string("pipeline stage leech(Gamma0): ") + e.what());
  }
  result.gamma0 = gamma0.gamma;

  // L = closure of Gamma0 (H_s (x) C^{g0}) inside H_s (x) C^f, spanned by the
  // Gamma0-images of the source kernel sections.
  const KernelMatrix sf = tensor_identity(s, f);
  const KernelMatrix sg0 = tensor_identity(s, g0);
  const Ambient ambient_sf(sf, tols.rank);
  const Matrix spanning = gamma0.gamma.block_diagonal() * sg0.entries;
  std::vector<RkhsElement> span_elems;
  span_elems.reserve(spanning.cols());
  for (int c = 0; c < spanning.cols(); ++c) {
    RkhsElement e;
    e.values = spanning.col(c);
    span_elems.push_back(std::move(e));
  }
  try {
    result.l_subspace = subspace_from_spanning(ambient_sf, span_elems, tols.rank);
  } catch (const Error& e) {
    throw Error(std::string("pipeline stage span(L): ") + e.what());
  }

  FactorizationResult gamma;
  try {
    gamma = synthesize(subspace_kernel(result.l_subspace), s, tols.psd, tols.rank);
  } catch (const Error& e) {
    throw Error(std::string("pipeline stage synthesize(L): ") + e.what());
  }
  result.gamma = gamma.phi;
  result.composite = phi.phi * gamma.phi;
  const int gdim = gamma.rank_f;

  // Certificates in the orthonormal coordinates of the ambient space.
  const Ambient ambient_k(k, tols.rank);
  const Ambient source(tensor_identity(s, gdim), tols.rank);
  const Matrix a_comp =
      ambient_k.coords(result.composite.block_diagonal() * source.full_onb());
  const Matrix n_coords = ambient_k.coords(n.onb);
  const Matrix p_n = n_coords * n_coords.adjoint();
  result.projection_residual = spectral_norm(a_comp * a_comp.adjoint() - p_n);

  // Chain inequality, as two one-sided PSD checks:
  // P_N >= M_Phi P_L M_Phi^*  and  M_Phi P_L M_Phi^* >= M_Psi M_Psi^*.
  const Matrix a_phi =
      ambient_k.coords(phi.phi.block_diagonal() * ambient_sf.full_onb());
  const Matrix l_coords = ambient_sf.coords(result.l_subspace.onb);
  // P_L in the source ON coordinates, conjugated through M_Phi.
  const Matrix phi_l = a_phi * l_coords * l_coords.adjoint() * a_phi.adjoint();
  const Ambient source_g0(tensor_identity(s, g0), tols.rank);
  const Matrix a_psi =
      ambient_k.coords(result.psi.block_diagonal() * source_g0.full_onb());
  const double eig1 = psd_check(p_n - phi_l, tols.psd).min_eigenvalue;
  const double eig2 =
      psd_check(phi_l - a_psi * a_psi.adjoint(), tols.psd).min_eigenvalue;
  result.chain_min_eig = std::min(eig1, eig2);
  return result;
}

}  // namespace rkhs
