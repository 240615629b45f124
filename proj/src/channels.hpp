#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "matrix_ops.hpp"
#include "rng.hpp"

namespace hadchan {

// Unit vector in C^dim. Construction normalizes, so ||psi|| = 1 holds.
class PureState {
public:
  explicit PureState(Vector amplitudes);
  static PureState basis(Eigen::Index dim, Eigen::Index i);
  static PureState haar(Eigen::Index dim, Rng& rng);
  // Omega = d^{-1/2} sum_i |i>|i> on C^d (x) C^d.
  static PureState maximally_entangled(Eigen::Index d);

  const Vector& amplitudes() const { return amplitudes_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  PureState tensor(const PureState& other) const;
  HermitianMatrix projector() const;

private:
  Vector amplitudes_;
};

// PSD, unit-trace Hermitian matrix. Both invariants are checked at
// construction (PSD within kPsdClampTol, trace within kTraceTol).
class DensityMatrix {
public:
  explicit DensityMatrix(const HermitianMatrix& m, double tol = kPsdClampTol);
  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(Eigen::Index dim);
  // Normalized Wishart: G G† / tr(G G†) with G square Gaussian.
  static DensityMatrix random(Eigen::Index dim, Rng& rng);

  const HermitianMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.dim(); }

private:
  HermitianMatrix m_;
};

class KrausChannel {
public:
  KrausChannel(Eigen::Index dim_in, Eigen::Index dim_out, std::vector<Matrix> ops);

  Eigen::Index dim_in() const { return dim_in_; }
  Eigen::Index dim_out() const { return dim_out_; }
  const std::vector<Matrix>& ops() const { return ops_; }

private:
  Eigen::Index dim_in_;
  Eigen::Index dim_out_;
  std::vector<Matrix> ops_;
};

// CP map rho -> C * rho (entrywise product with a PSD matrix C).
class DiagonalChannel {
public:
  explicit DiagonalChannel(const HermitianMatrix& c, double tol = kPsdClampTol);
  const HermitianMatrix& c() const { return c_; }
  Eigen::Index dim() const { return c_.dim(); }

private:
  HermitianMatrix c_;
};

struct ChoiMatrix {
  Eigen::Index dim_in;
  Eigen::Index dim_out;
  HermitianMatrix matrix;  // dim_in*dim_out square, input factor outer
};

// A CP map in whichever representation it was built in. Application and
// auditing go through this one surface; representation-specific conversions
// are the free functions below.
class Channel {
public:
  enum class Kind { kraus, diagonal };

  Channel(KrausChannel ch) : rep_(std::move(ch)) {}
  Channel(DiagonalChannel ch) : rep_(std::move(ch)) {}

  Kind kind() const {
    return std::holds_alternative<KrausChannel>(rep_) ? Kind::kraus : Kind::diagonal;
  }
  const KrausChannel& kraus() const { return std::get<KrausChannel>(rep_); }
  const DiagonalChannel& diagonal() const { return std::get<DiagonalChannel>(rep_); }

  Eigen::Index dim_in() const;
  Eigen::Index dim_out() const;

  // Linear action on an arbitrary dim_in x dim_in complex matrix.
  Matrix apply_matrix(const Matrix& x) const;
  HermitianMatrix apply(const HermitianMatrix& x) const;
  HermitianMatrix apply(const DensityMatrix& rho) const;
  HermitianMatrix apply(const PureState& psi) const;

  // The Hilbert-Schmidt adjoint: tr[X Phi(Y)] = tr[Phi†(X) Y].
  Channel adjoint() const;

  // sum A_i† A_i = I (Kraus) resp. diag(C) = 1 (diagonal), per entry.
  bool is_trace_preserving(double tol = kTraceTol) const;

  // Kraus view of any representation (spectral ops for a diagonal channel).
  KrausChannel as_kraus() const;

private:
  std::variant<KrausChannel, DiagonalChannel> rep_;
};

// Spectral Kraus form of a diagonal channel: C = sum_m psi_m psi_m* yields
// one diagonal operator Diag(psi_m) per nonzero eigenvalue.
KrausChannel kraus_from_diagonal(const DiagonalChannel& ch, double tol = kPsdClampTol);

// Product map with ops A_i (x) B_j, lexicographic index convention.
KrausChannel tensor(const Channel& phi, const Channel& psi);

// Choi matrix sum_ij E_ij (x) Phi(E_ij) (action on the unnormalized
// maximally entangled state; input factor outer).
ChoiMatrix choi(const Channel& ch);
KrausChannel channel_from_choi(const ChoiMatrix& c, double tol = kPsdClampTol);

bool is_cp(const ChoiMatrix& c, double tol = kPsdClampTol);
bool is_cp(const Channel& ch, double tol = kPsdClampTol);

KrausChannel identity_channel(Eigen::Index dim);
// C = I_n: the completely dephasing diagonal channel.
DiagonalChannel dephasing_channel(Eigen::Index dim);

// rho -> (I tr(rho) - rho^T)/(d-1), in minimal Kraus form
// (|i><j| - |j><i|)/sqrt(d-1) over pairs i < j.
KrausChannel werner_holevo(Eigen::Index d);

// Trace-preserving by construction: a Gaussian (kraus_rank*dim_out) x dim_in
// stack is orthonormalized into an isometry and sliced into Kraus operators.
KrausChannel random_channel(Eigen::Index dim_in, Eigen::Index dim_out, Eigen::Index kraus_rank,
                            Rng& rng);
KrausChannel random_channel(Eigen::Index dim_in, Eigen::Index dim_out, Eigen::Index kraus_rank,
                            std::uint64_t seed);

// C = G G† for an n x rank Gaussian G; with trace_preserving the rows and
// columns are rescaled so diag(C) = 1 (then C * rho preserves the trace).
DiagonalChannel random_diagonal(Eigen::Index n, Eigen::Index rank, Rng& rng,
                                bool trace_preserving = false);
DiagonalChannel random_diagonal(Eigen::Index n, Eigen::Index rank, std::uint64_t seed,
                                bool trace_preserving = false);

}  // namespace hadchan
