#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "channels.hpp"
#include "purity_opt.hpp"

namespace hadchan {

// rho on C^{kn} viewed as an n x n grid of k x k blocks, rescaled blockwise:
// alpha_i = tr(rho_ii), A_ij = sqrt(alpha_i alpha_j), tau_ij = rho_ij /
// sqrt(alpha_i alpha_j). Then rho = (A (x) J_k) * tau. Blocks with
// alpha_i = 0 get tau_ii = I_k/k and tau_ij = 0; A zeroes them in the
// reconstruction, so the identity stays exact and tr(tau_ii) = 1 everywhere.
struct StateDecomposition {
  BlockIndex idx;
  RealVector alpha;          // length n, nonnegative, sums to 1
  HermitianMatrix a_matrix;  // n x n
  HermitianMatrix tau;       // kn x kn
};

StateDecomposition decompose_state(const DensityMatrix& rho, const BlockIndex& idx);

// (I (x) Psi)(x) computed blockwise: result block (i,j) = Psi(x_ij).
Matrix apply_second_factor(const Channel& psi, const Matrix& x, const BlockIndex& idx);

// The rewrite of the product-channel output as V K V*: V_i are the
// block-rows of the PSD square root of (I (x) Psi)(tau), V is their
// block-diagonal arrangement, and K = Phi(A) (x) I.
struct Factorization {
  std::vector<Matrix> v_blocks;  // n blocks, k_out x (k_out n)
  Matrix v;                      // (k_out n) x (k_out n^2), block diagonal
  HermitianMatrix k_matrix;      // Phi(A) (x) I_{k_out n}
};

Factorization build_factorization(const StateDecomposition& dec, const Channel& psi,
                                  const DiagonalChannel& phi);

struct LiebThirringResult {
  double lhs;    // tr (V K V*)^p
  double rhs;    // tr (V*V)^p K^p
  double slack;  // rhs - lhs; nonnegative for PSD K and p >= 1
  double scale;  // max(1, |lhs|, |rhs|)
};

LiebThirringResult lieb_thirring_check(const Matrix& v, const HermitianMatrix& k, double p);

// One machine-checked replay of the factorization identities and the
// inequality chain on a concrete (phi, psi, rho, p) instance. Residuals are
// relative to max(1, ||target||_F); slack verdicts use the stated bands.
struct CertificateReport {
  Eigen::Index n = 0;
  Eigen::Index k = 0;
  double p = 0.0;
  std::map<std::string, double> residuals;  // r1..r6
  std::map<std::string, double> slacks;     // s1..s4 (s2 = min over blocks)
  std::vector<double> s2_per_block;
  double spectrum_sharing = 0.0;  // worst relative spectral mismatch V_iV_i* vs V_i*V_i
  double s1_scale = 1.0;
  std::optional<PurityEstimate> nu_p_phi;
  std::optional<PurityEstimate> nu_p_psi;
  bool nu_estimates_converged = true;  // when false, s2-s4 are warnings only
  bool pass = false;
  std::vector<std::string> failing_steps;
  std::optional<std::string> error_step;
  std::optional<std::string> error_message;
};

inline constexpr double kResidualBound = 1e-10;    // r1..r6, spectrum sharing
inline constexpr double kExactSlackBound = 1e-10;  // s1, times its scale
inline constexpr double kEstimateSlackBound = 1e-6;  // s2..s4 (estimated sups)

CertificateReport verify_certificate(const DiagonalChannel& phi, const Channel& psi,
                                     const DensityMatrix& rho, double p,
                                     const OptimizerConfig& cfg);

}  // namespace hadchan
