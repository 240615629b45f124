#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace hadchan {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Relative eigenvalue band in which slightly negative eigenvalues of a
// nominally PSD matrix are clamped to zero. Anything below the band is a
// genuine PSD violation.
inline constexpr double kPsdClampTol = 1e-10;
// Per-entry tolerance on trace/normalization conditions.
inline constexpr double kTraceTol = 1e-10;
// Maximum conjugate asymmetry accepted when loading Hermitian matrices.
inline constexpr double kHermSymmetryTol = 1e-12;

// n x n grid of k x k blocks over a (n*k) x (n*k) matrix.
struct BlockIndex {
  Eigen::Index n = 1;  // outer block count
  Eigen::Index k = 1;  // inner block dimension
  Eigen::Index dim() const { return n * k; }
};

// Square complex matrix kept conjugate-symmetric by construction: the
// constructor stores (m + m†)/2, so entries(i,j) == conj(entries(j,i)) holds
// exactly for everything built from this type.
class HermitianMatrix {
public:
  explicit HermitianMatrix(const Matrix& m);
  static HermitianMatrix identity(Eigen::Index dim);
  static HermitianMatrix diagonal(const RealVector& entries);

  const Matrix& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

private:
  Matrix m_;
};

struct EigenDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // unitary; column j pairs with eigenvalues(j)
  Matrix reconstruct() const;
};

// Entrywise (Hadamard) product. Shapes must match.
Matrix hadamard(const Matrix& a, const Matrix& b);

// Kronecker product, lexicographic convention: row index = i*rows(b) + r.
Matrix kron(const Matrix& a, const Matrix& b);

// J_k, the all-ones matrix: the identity element of the Hadamard product.
Matrix ones_matrix(Eigen::Index k);

EigenDecomposition herm_eig(const HermitianMatrix& h);

// Eigenvalues of h with values in [-tol*||h||_2, 0) clamped to zero.
// An eigenvalue below the band raises NotPsdError.
RealVector clamped_psd_eigenvalues(const HermitianMatrix& h, double tol = kPsdClampTol);
RealVector clamp_psd_spectrum(const RealVector& eigenvalues, double tol = kPsdClampTol);

// h^p computed in the eigenbasis after PSD clamping; p = 0.5 is the
// principal PSD square root.
HermitianMatrix psd_power(const HermitianMatrix& h, double p, double tol = kPsdClampTol);

// (sum_i lambda_i^p)^(1/p) over the clamped spectrum; requires p >= 1.
double schatten_pnorm(const HermitianMatrix& h, double p, double tol = kPsdClampTol);

// sum_i lambda_i^p over the clamped spectrum (the p-th power form).
double trace_power(const HermitianMatrix& h, double p, double tol = kPsdClampTol);

// -sum_i lambda_i log lambda_i (natural log, 0 log 0 = 0); requires a unit
// trace within kTraceTol.
double von_neumann_entropy(const HermitianMatrix& h, double tol = kPsdClampTol);

Complex trace(const Matrix& m);

// k x k submatrix at block position (i, j).
Matrix block(const Matrix& m, const BlockIndex& idx, Eigen::Index i, Eigen::Index j);

// The n horizontal k x (k*n) slices; stacking them vertically restores m.
std::vector<Matrix> block_rows(const Matrix& m, const BlockIndex& idx);

// ||target - actual||_F / max(1, ||target||_F).
double rel_residual(const Matrix& target, const Matrix& actual);

double max_abs(const Matrix& m);

}  // namespace hadchan
