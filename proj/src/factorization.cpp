#include "factorization.hpp"

#include <algorithm>
#include <cmath>

namespace hadchan {

namespace {

constexpr double kZeroAlpha = 1e-14;

// Sorted-descending eigenvalues above a relative cutoff.
RealVector significant_spectrum(const HermitianMatrix& h, double scale) {
  RealVector lam = herm_eig(h).eigenvalues;
  std::sort(lam.data(), lam.data() + lam.size(), std::greater<double>());
  Eigen::Index count = 0;
  while (count < lam.size() && lam(count) > 1e-12 * scale) ++count;
  return lam.head(count);
}

}  // namespace

StateDecomposition decompose_state(const DensityMatrix& rho, const BlockIndex& idx) {
  if (rho.dim() != idx.dim())
    throw DimensionError("state dimension " + std::to_string(rho.dim()) +
                         " does not factor as n*k = " + std::to_string(idx.n) + "*" +
                         std::to_string(idx.k));
  const Matrix& r = rho.matrix().mat();

  RealVector alpha(idx.n);
  for (Eigen::Index i = 0; i < idx.n; ++i)
    alpha(i) = std::max(0.0, block(r, idx, i, i).trace().real());

  Matrix a = Matrix::Zero(idx.n, idx.n);
  Matrix tau = Matrix::Zero(idx.dim(), idx.dim());
  for (Eigen::Index i = 0; i < idx.n; ++i) {
    for (Eigen::Index j = 0; j < idx.n; ++j) {
      const bool live = alpha(i) > kZeroAlpha && alpha(j) > kZeroAlpha;
      if (live) {
        const double w = std::sqrt(alpha(i) * alpha(j));
        a(i, j) = w;
        tau.block(i * idx.k, j * idx.k, idx.k, idx.k) = block(r, idx, i, j) / w;
      } else if (i == j) {
        // dead block: rho's whole row/column here is zero, so any unit-trace
        // PSD filler keeps the reconstruction exact
        tau.block(i * idx.k, i * idx.k, idx.k, idx.k) =
            Matrix::Identity(idx.k, idx.k) / static_cast<double>(idx.k);
      }
    }
  }
  return StateDecomposition{idx, std::move(alpha), HermitianMatrix(a), HermitianMatrix(tau)};
}

Matrix apply_second_factor(const Channel& psi, const Matrix& x, const BlockIndex& idx) {
  if (x.rows() != idx.dim() || x.cols() != idx.dim())
    throw DimensionError("second-factor action needs a " + std::to_string(idx.dim()) +
                         "-dimensional square input");
  if (psi.dim_in() != idx.k)
    throw DimensionError("channel input dimension does not match block size");
  const Eigen::Index ko = psi.dim_out();
  Matrix out(idx.n * ko, idx.n * ko);
  for (Eigen::Index i = 0; i < idx.n; ++i)
    for (Eigen::Index j = 0; j < idx.n; ++j)
      out.block(i * ko, j * ko, ko, ko) =
          psi.apply_matrix(x.block(i * idx.k, j * idx.k, idx.k, idx.k));
  return out;
}

Factorization build_factorization(const StateDecomposition& dec, const Channel& psi,
                                  const DiagonalChannel& phi) {
  if (phi.dim() != dec.idx.n)
    throw DimensionError("diagonal channel dimension must equal the outer block count");
  const Eigen::Index n = dec.idx.n;
  const Eigen::Index ko = psi.dim_out();

  const Matrix m = apply_second_factor(psi, dec.tau.mat(), dec.idx);
  const Matrix root = psd_power(HermitianMatrix(m), 0.5).mat();

  const BlockIndex out_idx{n, ko};
  std::vector<Matrix> v_blocks = block_rows(root, out_idx);

  Matrix v = Matrix::Zero(n * ko, n * ko * n);
  for (Eigen::Index i = 0; i < n; ++i)
    v.block(i * ko, i * (n * ko), ko, n * ko) = v_blocks[i];

  const HermitianMatrix phi_a(hadamard(phi.c().mat(), dec.a_matrix.mat()));
  const Matrix k_mat = kron(phi_a.mat(), Matrix::Identity(n * ko, n * ko));
  return Factorization{std::move(v_blocks), std::move(v), HermitianMatrix(k_mat)};
}

LiebThirringResult lieb_thirring_check(const Matrix& v, const HermitianMatrix& k, double p) {
  if (p < 1.0) throw DomainError("the trace inequality needs p >= 1");
  if (v.cols() != k.dim())
    throw DimensionError("V has " + std::to_string(v.cols()) + " columns but K is " +
                         std::to_string(k.dim()) + "-dimensional");
  clamped_psd_eigenvalues(k);  // K must be PSD

  const HermitianMatrix vkv(v * k.mat() * v.adjoint());
  const double lhs = trace_power(vkv, p);

  const HermitianMatrix gram(v.adjoint() * v);
  const Matrix product = psd_power(gram, p).mat() * psd_power(k, p).mat();
  const double rhs = product.trace().real();

  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  return LiebThirringResult{lhs, rhs, rhs - lhs, scale};
}

CertificateReport verify_certificate(const DiagonalChannel& phi, const Channel& psi,
                                     const DensityMatrix& rho, double p,
                                     const OptimizerConfig& cfg) {
  CertificateReport rep;
  rep.n = phi.dim();
  rep.k = psi.dim_in();
  rep.p = p;
  const BlockIndex idx{rep.n, rep.k};

  std::string step = "setup";
  try {
    if (rho.dim() != idx.dim())
      throw DimensionError("state dimension does not equal n*k");

    step = "decompose_state";
    const StateDecomposition dec = decompose_state(rho, idx);

    step = "build_factorization";
    const Factorization fact = build_factorization(dec, psi, phi);
    const Eigen::Index ko = psi.dim_out();

    step = "identities";
    const Matrix j_in = ones_matrix(rep.k);
    const Matrix j_out = ones_matrix(ko);
    const Matrix& a = dec.a_matrix.mat();

    // r1: rho = (A (x) J_k) * tau
    rep.residuals["r1"] =
        rel_residual(rho.matrix().mat(), hadamard(kron(a, j_in), dec.tau.mat()));

    // r2: (I (x) Psi)(rho) = (A (x) J) * ((I (x) Psi)(tau))
    const Channel id_tensor_psi{tensor(Channel(identity_channel(rep.n)), psi)};
    const Matrix id_psi_rho = id_tensor_psi.apply_matrix(rho.matrix().mat());
    const Matrix m = apply_second_factor(psi, dec.tau.mat(), idx);
    rep.residuals["r2"] = rel_residual(id_psi_rho, hadamard(kron(a, j_out), m));

    // r3: (Phi (x) Psi)(rho) = (Phi(A) (x) J) * ((I (x) Psi)(tau))
    const Channel product_channel{tensor(Channel(phi), psi)};
    const Matrix direct = product_channel.apply_matrix(rho.matrix().mat());
    const HermitianMatrix phi_a(hadamard(phi.c().mat(), a));
    rep.residuals["r3"] = rel_residual(direct, hadamard(kron(phi_a.mat(), j_out), m));

    // r4: (Phi (x) Psi)(rho) = V K V*
    rep.residuals["r4"] =
        rel_residual(direct, fact.v * fact.k_matrix.mat() * fact.v.adjoint());

    // r5: tr (V*V)^p K^p = sum_i tr (V_i*V_i)^p (Phi(A)^p)_ii
    step = "trace_identity";
    const HermitianMatrix gram(fact.v.adjoint() * fact.v);
    const double lhs5 =
        (psd_power(gram, p).mat() * psd_power(fact.k_matrix, p).mat()).trace().real();
    const Matrix phi_a_p = psd_power(phi_a, p).mat();
    double rhs5 = 0.0;
    for (Eigen::Index i = 0; i < rep.n; ++i) {
      const HermitianMatrix gi(fact.v_blocks[i].adjoint() * fact.v_blocks[i]);
      rhs5 += trace_power(gi, p) * phi_a_p(i, i).real();
    }
    rep.residuals["r5"] = std::abs(lhs5 - rhs5) / std::max(1.0, std::abs(lhs5));

    // r6: tr A = tr rho = 1
    rep.residuals["r6"] = std::abs(a.trace().real() - 1.0);

    // s1: the trace inequality on (V, K, p)
    step = "lieb_thirring";
    const LiebThirringResult lt = lieb_thirring_check(fact.v, fact.k_matrix, p);
    rep.slacks["s1"] = lt.slack;
    rep.s1_scale = lt.scale;

    // spectrum sharing: V_i V_i* and V_i* V_i agree on nonzero eigenvalues
    step = "spectrum_sharing";
    double worst = 0.0;
    for (const Matrix& vi : fact.v_blocks) {
      const HermitianMatrix left(vi * vi.adjoint());
      const HermitianMatrix right(vi.adjoint() * vi);
      const double top = std::max({herm_eig(left).eigenvalues.maxCoeff(),
                                   herm_eig(right).eigenvalues.maxCoeff(), 0.0});
      const RealVector ls = significant_spectrum(left, top);
      const RealVector rs = significant_spectrum(right, top);
      const Eigen::Index count = std::max(ls.size(), rs.size());
      for (Eigen::Index j = 0; j < count; ++j) {
        const double lv = j < ls.size() ? ls(j) : 0.0;
        const double rv = j < rs.size() ? rs(j) : 0.0;
        worst = std::max(worst, std::abs(lv - rv) / std::max(1.0, top));
      }
    }
    rep.spectrum_sharing = worst;

    // s2-s4: the inequality chain against estimated sups
    step = "nu_p_estimation";
    OptimizerConfig psi_cfg = cfg;
    psi_cfg.seed = derive_seed(cfg.seed, 101);
    OptimizerConfig phi_cfg = cfg;
    phi_cfg.seed = derive_seed(cfg.seed, 102);
    rep.nu_p_psi = estimate_nu_p(psi, p, psi_cfg);
    // A = aa* for a = sqrt(alpha), so seeding the search with a makes the
    // estimate at least ||Phi(A)||_p and keeps s3 nonnegative
    const PureState alpha_state{Vector(dec.alpha.cwiseSqrt().cast<Complex>())};
    rep.nu_p_phi = estimate_nu_p(Channel(phi), p, phi_cfg, {alpha_state});
    rep.nu_estimates_converged =
        rep.nu_p_psi->converged && rep.nu_p_phi->converged;

    const double nu_psi_p = std::pow(rep.nu_p_psi->value, p);
    const double nu_phi_p = std::pow(rep.nu_p_phi->value, p);
    for (const Matrix& vi : fact.v_blocks) {
      const HermitianMatrix block_out(vi * vi.adjoint());
      rep.s2_per_block.push_back(nu_psi_p - trace_power(block_out, p));
    }
    rep.slacks["s2"] =
        *std::min_element(rep.s2_per_block.begin(), rep.s2_per_block.end());
    rep.slacks["s3"] = nu_phi_p - trace_power(phi_a, p);
    rep.slacks["s4"] = nu_phi_p * nu_psi_p - trace_power(HermitianMatrix(direct), p);

    step = "verdict";
    for (const auto& [name, r] : rep.residuals)
      if (!(r <= kResidualBound)) rep.failing_steps.push_back(name);
    if (!(rep.spectrum_sharing <= kResidualBound))
      rep.failing_steps.push_back("spectrum_sharing");
    if (!(rep.slacks["s1"] >= -kExactSlackBound * rep.s1_scale))
      rep.failing_steps.push_back("s1");
    for (const char* name : {"s2", "s3", "s4"})
      if (!(rep.slacks[name] >= -kEstimateSlackBound) && rep.nu_estimates_converged)
        rep.failing_steps.push_back(name);
    rep.pass = rep.failing_steps.empty();
  } catch (const Error& e) {
    rep.error_step = step;
    rep.error_message = e.what();
    rep.failing_steps.push_back(step);
    rep.pass = false;
  }
  return rep;
}

}  // namespace hadchan
