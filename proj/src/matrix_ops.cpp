#include "matrix_ops.hpp"

#include <cmath>
#include <sstream>

namespace hadchan {

namespace {

std::string shape_str(const Matrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

}  // namespace

HermitianMatrix::HermitianMatrix(const Matrix& m) {
  if (m.rows() < 1 || m.rows() != m.cols())
    throw DimensionError("hermitian matrix must be square and nonempty, got " + shape_str(m));
  m_ = 0.5 * (m + m.adjoint().eval());
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index dim) {
  return HermitianMatrix(Matrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& entries) {
  Matrix m = Matrix::Zero(entries.size(), entries.size());
  for (Eigen::Index i = 0; i < entries.size(); ++i) m(i, i) = entries(i);
  return HermitianMatrix(m);
}

Matrix EigenDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("hadamard product needs equal shapes, got " + shape_str(a) + " and " +
                         shape_str(b));
  return a.cwiseProduct(b);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix ones_matrix(Eigen::Index k) { return Matrix::Ones(k, k); }

EigenDecomposition herm_eig(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.mat());
  if (solver.info() != Eigen::Success)
    throw NumericError("hermitian eigensolver failed to converge (dim " +
                           std::to_string(h.dim()) + ")",
                       30 * h.dim());  // Eigen's internal sweep budget
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector clamp_psd_spectrum(const RealVector& eigenvalues, double tol) {
  const double spectral_norm =
      eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  const double band = tol * spectral_norm;
  RealVector clamped = eigenvalues;
  for (Eigen::Index i = 0; i < clamped.size(); ++i) {
    if (clamped(i) < -band)
      throw NotPsdError("matrix is not PSD within tolerance: eigenvalue " +
                            std::to_string(clamped(i)) + " below -" + std::to_string(band),
                        clamped(i));
    if (clamped(i) < 0.0) clamped(i) = 0.0;
  }
  return clamped;
}

RealVector clamped_psd_eigenvalues(const HermitianMatrix& h, double tol) {
  return clamp_psd_spectrum(herm_eig(h).eigenvalues, tol);
}

HermitianMatrix psd_power(const HermitianMatrix& h, double p, double tol) {
  if (p < 0.0) throw DomainError("psd_power requires p >= 0, got " + std::to_string(p));
  const EigenDecomposition eig = herm_eig(h);
  RealVector lam = clamp_psd_spectrum(eig.eigenvalues, tol);
  for (Eigen::Index i = 0; i < lam.size(); ++i) lam(i) = std::pow(lam(i), p);
  return HermitianMatrix(eig.eigenvectors * lam.asDiagonal() * eig.eigenvectors.adjoint());
}

double schatten_pnorm(const HermitianMatrix& h, double p, double tol) {
  if (p < 1.0) throw DomainError("schatten p-norm requires p >= 1, got " + std::to_string(p));
  return std::pow(trace_power(h, p, tol), 1.0 / p);
}

double trace_power(const HermitianMatrix& h, double p, double tol) {
  const RealVector lam = clamped_psd_eigenvalues(h, tol);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) sum += std::pow(lam(i), p);
  return sum;
}

double von_neumann_entropy(const HermitianMatrix& h, double tol) {
  const double tr = h.mat().trace().real();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw DomainError("entropy needs a unit-trace input, got trace " + std::to_string(tr));
  const RealVector lam = clamped_psd_eigenvalues(h, tol);
  double s = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam(i) > 0.0) s -= lam(i) * std::log(lam(i));
  // an eigenvalue of 1 + eps would push s a rounding error below zero
  return std::max(0.0, s);
}

Complex trace(const Matrix& m) { return m.trace(); }

Matrix block(const Matrix& m, const BlockIndex& idx, Eigen::Index i, Eigen::Index j) {
  if (m.rows() != idx.dim() || m.cols() != idx.dim())
    throw DimensionError("block access needs a " + std::to_string(idx.dim()) +
                         "-dimensional square matrix, got " + shape_str(m));
  if (i < 0 || i >= idx.n || j < 0 || j >= idx.n)
    throw DimensionError("block index (" + std::to_string(i) + "," + std::to_string(j) +
                         ") out of range for n=" + std::to_string(idx.n));
  return m.block(i * idx.k, j * idx.k, idx.k, idx.k);
}

std::vector<Matrix> block_rows(const Matrix& m, const BlockIndex& idx) {
  if (m.rows() != idx.dim() || m.cols() != idx.dim())
    throw DimensionError("block rows need a " + std::to_string(idx.dim()) +
                         "-dimensional square matrix, got " + shape_str(m));
  std::vector<Matrix> rows;
  rows.reserve(idx.n);
  for (Eigen::Index i = 0; i < idx.n; ++i)
    rows.push_back(m.block(i * idx.k, 0, idx.k, idx.dim()));
  return rows;
}

double rel_residual(const Matrix& target, const Matrix& actual) {
  return (target - actual).norm() / std::max(1.0, target.norm());
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace hadchan
