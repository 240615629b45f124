#include "channels.hpp"

#include <cmath>
#include <string>

namespace hadchan {

namespace {

void require_dim(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want)
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(want) +
                         ", got " + std::to_string(got));
}

}  // namespace

PureState::PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1) throw DimensionError("pure state needs dimension >= 1");
  const double n = amplitudes_.norm();
  if (n < 1e-14) throw DomainError("pure state amplitudes are numerically zero");
  amplitudes_ /= n;
}

PureState PureState::basis(Eigen::Index dim, Eigen::Index i) {
  if (i < 0 || i >= dim) throw DimensionError("basis index out of range");
  Vector v = Vector::Zero(dim);
  v(i) = 1.0;
  return PureState(std::move(v));
}

PureState PureState::haar(Eigen::Index dim, Rng& rng) {
  return PureState(rng.gaussian_vector(dim));
}

PureState PureState::maximally_entangled(Eigen::Index d) {
  Vector v = Vector::Zero(d * d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index i = 0; i < d; ++i) v(i * d + i) = scale;
  return PureState(std::move(v));
}

PureState PureState::tensor(const PureState& other) const {
  Vector v(dim() * other.dim());
  for (Eigen::Index i = 0; i < dim(); ++i)
    v.segment(i * other.dim(), other.dim()) = amplitudes_(i) * other.amplitudes_;
  return PureState(std::move(v));
}

HermitianMatrix PureState::projector() const {
  return HermitianMatrix(amplitudes_ * amplitudes_.adjoint());
}

DensityMatrix::DensityMatrix(const HermitianMatrix& m, double tol) : m_(m) {
  clamped_psd_eigenvalues(m_, tol);  // throws if not PSD within tol
  const double tr = m_.mat().trace().real();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw DomainError("density matrix trace must be 1, got " + std::to_string(tr));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  return DensityMatrix(HermitianMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim)));
}

DensityMatrix DensityMatrix::random(Eigen::Index dim, Rng& rng) {
  const Matrix g = rng.gaussian_matrix(dim, dim);
  Matrix w = g * g.adjoint();
  w /= w.trace().real();
  return DensityMatrix(HermitianMatrix(w));
}

KrausChannel::KrausChannel(Eigen::Index dim_in, Eigen::Index dim_out, std::vector<Matrix> ops)
    : dim_in_(dim_in), dim_out_(dim_out), ops_(std::move(ops)) {
  if (dim_in_ < 1 || dim_out_ < 1) throw DimensionError("channel dimensions must be >= 1");
  if (ops_.empty()) throw DimensionError("Kraus channel needs at least one operator");
  for (const Matrix& a : ops_)
    if (a.rows() != dim_out_ || a.cols() != dim_in_)
      throw DimensionError("Kraus operator shape " + std::to_string(a.rows()) + "x" +
                           std::to_string(a.cols()) + " does not match declared " +
                           std::to_string(dim_out_) + "x" + std::to_string(dim_in_));
}

DiagonalChannel::DiagonalChannel(const HermitianMatrix& c, double tol) : c_(c) {
  clamped_psd_eigenvalues(c_, tol);  // throws NotPsdError when C is not PSD
}

Eigen::Index Channel::dim_in() const {
  return kind() == Kind::kraus ? kraus().dim_in() : diagonal().dim();
}

Eigen::Index Channel::dim_out() const {
  return kind() == Kind::kraus ? kraus().dim_out() : diagonal().dim();
}

Matrix Channel::apply_matrix(const Matrix& x) const {
  if (x.rows() != dim_in() || x.cols() != dim_in())
    throw DimensionError("channel input must be " + std::to_string(dim_in()) +
                         "-dimensional square, got " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()));
  if (kind() == Kind::diagonal) return diagonal().c().mat().cwiseProduct(x);
  Matrix out = Matrix::Zero(dim_out(), dim_out());
  for (const Matrix& a : kraus().ops()) out += a * x * a.adjoint();
  return out;
}

HermitianMatrix Channel::apply(const HermitianMatrix& x) const {
  return HermitianMatrix(apply_matrix(x.mat()));
}

HermitianMatrix Channel::apply(const DensityMatrix& rho) const { return apply(rho.matrix()); }

HermitianMatrix Channel::apply(const PureState& psi) const { return apply(psi.projector()); }

Channel Channel::adjoint() const {
  if (kind() == Kind::diagonal)
    // adjoint of X -> C * X is X -> conj(C) * X; conj(C) is Hermitian PSD too
    return Channel(DiagonalChannel(HermitianMatrix(diagonal().c().mat().conjugate())));
  std::vector<Matrix> ops;
  ops.reserve(kraus().ops().size());
  for (const Matrix& a : kraus().ops()) ops.push_back(a.adjoint());
  return Channel(KrausChannel(kraus().dim_out(), kraus().dim_in(), std::move(ops)));
}

bool Channel::is_trace_preserving(double tol) const {
  if (kind() == Kind::diagonal) {
    const Matrix& c = diagonal().c().mat();
    for (Eigen::Index i = 0; i < c.rows(); ++i)
      if (std::abs(c(i, i) - Complex(1.0, 0.0)) > tol) return false;
    return true;
  }
  Matrix sum = Matrix::Zero(dim_in(), dim_in());
  for (const Matrix& a : kraus().ops()) sum += a.adjoint() * a;
  return max_abs(sum - Matrix::Identity(dim_in(), dim_in())) <= tol;
}

KrausChannel Channel::as_kraus() const {
  if (kind() == Kind::kraus) return kraus();
  return kraus_from_diagonal(diagonal());
}

KrausChannel kraus_from_diagonal(const DiagonalChannel& ch, double tol) {
  const EigenDecomposition eig = herm_eig(ch.c());
  const RealVector lam = clamp_psd_spectrum(eig.eigenvalues, tol);
  const double cutoff = 1e-12 * std::max(lam.maxCoeff(), 0.0);
  std::vector<Matrix> ops;
  for (Eigen::Index m = 0; m < lam.size(); ++m) {
    if (lam(m) <= cutoff) continue;
    const Vector psi = std::sqrt(lam(m)) * eig.eigenvectors.col(m);
    Matrix d = Matrix::Zero(ch.dim(), ch.dim());
    d.diagonal() = psi;
    ops.push_back(std::move(d));
  }
  if (ops.empty()) ops.push_back(Matrix::Zero(ch.dim(), ch.dim()));  // the zero map
  return KrausChannel(ch.dim(), ch.dim(), std::move(ops));
}

KrausChannel tensor(const Channel& phi, const Channel& psi) {
  const KrausChannel a = phi.as_kraus();
  const KrausChannel b = psi.as_kraus();
  std::vector<Matrix> ops;
  ops.reserve(a.ops().size() * b.ops().size());
  for (const Matrix& ai : a.ops())
    for (const Matrix& bj : b.ops()) ops.push_back(kron(ai, bj));
  return KrausChannel(a.dim_in() * b.dim_in(), a.dim_out() * b.dim_out(), std::move(ops));
}

ChoiMatrix choi(const Channel& ch) {
  const Eigen::Index n = ch.dim_in();
  const Eigen::Index m = ch.dim_out();
  Matrix c = Matrix::Zero(n * m, n * m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      Matrix eij = Matrix::Zero(n, n);
      eij(i, j) = 1.0;
      c.block(i * m, j * m, m, m) = ch.apply_matrix(eij);
    }
  return ChoiMatrix{n, m, HermitianMatrix(c)};
}

KrausChannel channel_from_choi(const ChoiMatrix& c, double tol) {
  require_dim(c.matrix.dim(), c.dim_in * c.dim_out, "Choi matrix");
  const EigenDecomposition eig = herm_eig(c.matrix);
  const RealVector lam = clamp_psd_spectrum(eig.eigenvalues, tol);
  const double cutoff = 1e-12 * std::max(lam.maxCoeff(), 0.0);
  std::vector<Matrix> ops;
  for (Eigen::Index r = 0; r < lam.size(); ++r) {
    if (lam(r) <= cutoff) continue;
    const Vector v = std::sqrt(lam(r)) * eig.eigenvectors.col(r);
    Matrix a(c.dim_out, c.dim_in);
    for (Eigen::Index i = 0; i < c.dim_in; ++i)
      a.col(i) = v.segment(i * c.dim_out, c.dim_out);
    ops.push_back(std::move(a));
  }
  if (ops.empty()) ops.push_back(Matrix::Zero(c.dim_out, c.dim_in));
  return KrausChannel(c.dim_in, c.dim_out, std::move(ops));
}

bool is_cp(const ChoiMatrix& c, double tol) {
  try {
    clamped_psd_eigenvalues(c.matrix, tol);
    return true;
  } catch (const NotPsdError&) {
    return false;
  }
}

bool is_cp(const Channel& ch, double tol) { return is_cp(choi(ch), tol); }

KrausChannel identity_channel(Eigen::Index dim) {
  return KrausChannel(dim, dim, {Matrix::Identity(dim, dim)});
}

DiagonalChannel dephasing_channel(Eigen::Index dim) {
  return DiagonalChannel(HermitianMatrix::identity(dim));
}

KrausChannel werner_holevo(Eigen::Index d) {
  if (d < 2) throw DomainError("werner_holevo needs dimension >= 2");
  const double scale = 1.0 / std::sqrt(static_cast<double>(d - 1));
  std::vector<Matrix> ops;
  ops.reserve(d * (d - 1) / 2);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      Matrix a = Matrix::Zero(d, d);
      a(i, j) = scale;
      a(j, i) = -scale;
      ops.push_back(std::move(a));
    }
  return KrausChannel(d, d, std::move(ops));
}

KrausChannel random_channel(Eigen::Index dim_in, Eigen::Index dim_out, Eigen::Index kraus_rank,
                            Rng& rng) {
  if (kraus_rank < 1) throw DomainError("kraus_rank must be >= 1");
  if (kraus_rank * dim_out < dim_in)
    throw DomainError("no isometry exists: kraus_rank*dim_out < dim_in");
  const Matrix g = rng.gaussian_matrix(kraus_rank * dim_out, dim_in);
  // Thin QR: the Q factor's first dim_in columns form the isometry.
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(kraus_rank * dim_out, dim_in);
  std::vector<Matrix> ops;
  ops.reserve(kraus_rank);
  for (Eigen::Index r = 0; r < kraus_rank; ++r)
    ops.push_back(q.block(r * dim_out, 0, dim_out, dim_in));
  return KrausChannel(dim_in, dim_out, std::move(ops));
}

KrausChannel random_channel(Eigen::Index dim_in, Eigen::Index dim_out, Eigen::Index kraus_rank,
                            std::uint64_t seed) {
  Rng rng(seed);
  return random_channel(dim_in, dim_out, kraus_rank, rng);
}

DiagonalChannel random_diagonal(Eigen::Index n, Eigen::Index rank, Rng& rng,
                                bool trace_preserving) {
  if (rank < 1 || rank > n) throw DomainError("diagonal rank must satisfy 1 <= rank <= n");
  const Matrix g = rng.gaussian_matrix(n, rank);
  Matrix c = g * g.adjoint();
  if (trace_preserving) {
    RealVector d(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      d(i) = c(i, i).real();
      if (d(i) < 1e-14)
        throw NumericError("degenerate diagonal entry while normalizing C", 0);
    }
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) c(i, j) /= std::sqrt(d(i) * d(j));
  }
  return DiagonalChannel(HermitianMatrix(c));
}

DiagonalChannel random_diagonal(Eigen::Index n, Eigen::Index rank, std::uint64_t seed,
                                bool trace_preserving) {
  Rng rng(seed);
  return random_diagonal(n, rank, rng, trace_preserving);
}

}  // namespace hadchan
