#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "matrix_ops.hpp"
#include "rng.hpp"

using namespace hadchan;

namespace {

Matrix random_matrix(Eigen::Index n, std::uint64_t seed) {
  Rng rng(seed);
  return rng.gaussian_matrix(n, n);
}

HermitianMatrix random_hermitian(Eigen::Index n, std::uint64_t seed) {
  return HermitianMatrix(random_matrix(n, seed));
}

HermitianMatrix random_psd(Eigen::Index n, std::uint64_t seed) {
  const Matrix g = random_matrix(n, seed);
  return HermitianMatrix(g * g.adjoint());
}

}  // namespace

TEST_CASE("hadamard: all-ones matrix is the identity element") {
  const Matrix a = random_matrix(3, 1);
  CHECK(max_abs(hadamard(ones_matrix(3), a) - a) == 0.0);
}

TEST_CASE("hadamard: identity matrix projects onto the diagonal") {
  const Matrix a = random_matrix(3, 2);
  const Matrix d = hadamard(Matrix::Identity(3, 3), a);
  for (Eigen::Index i = 0; i < 3; ++i)
    for (Eigen::Index j = 0; j < 3; ++j)
      CHECK(d(i, j) == (i == j ? a(i, j) : Complex(0, 0)));
}

TEST_CASE("hadamard with rank-one C equals conjugation by Diag(psi)") {
  Vector psi(2);
  psi << Complex(1, 0), Complex(2, 0);
  const Matrix c = psi * psi.adjoint();
  const Matrix rho = random_matrix(2, 3);
  const Matrix via_hadamard = hadamard(c, rho);
  CHECK(via_hadamard(0, 0) == rho(0, 0));
  CHECK(via_hadamard(0, 1) == 2.0 * rho(0, 1));
  CHECK(via_hadamard(1, 0) == 2.0 * rho(1, 0));
  CHECK(via_hadamard(1, 1) == 4.0 * rho(1, 1));
  Matrix diag = Matrix::Zero(2, 2);
  diag.diagonal() = psi;
  CHECK(max_abs(via_hadamard - diag * rho * diag.adjoint()) < 1e-15);
}

TEST_CASE("hadamard is commutative and rejects shape mismatch") {
  const Matrix a = random_matrix(4, 4);
  const Matrix b = random_matrix(4, 5);
  CHECK(max_abs(hadamard(a, b) - hadamard(b, a)) == 0.0);
  CHECK_THROWS_AS(hadamard(a, random_matrix(3, 6)), DimensionError);
}

TEST_CASE("kron: identity factors compose") {
  CHECK(max_abs(kron(Matrix::Identity(2, 2), Matrix::Identity(3, 3)) -
                Matrix::Identity(6, 6)) == 0.0);
}

TEST_CASE("kron with a 1x1 all-ones factor is a no-op") {
  const Matrix a = random_matrix(3, 7);
  CHECK(max_abs(kron(a, ones_matrix(1)) - a) == 0.0);
}

TEST_CASE("kron of all-ones factors is the Hadamard identity") {
  const Matrix tau = random_matrix(6, 8);
  CHECK(max_abs(hadamard(kron(ones_matrix(3), ones_matrix(2)), tau) - tau) == 0.0);
}

TEST_CASE("kron satisfies the mixed-product property") {
  const Matrix a = random_matrix(2, 11), b = random_matrix(3, 12);
  const Matrix c = random_matrix(2, 13), d = random_matrix(3, 14);
  const Matrix lhs = kron(a, b) * kron(c, d);
  const Matrix rhs = kron(a * c, b * d);
  CHECK(rel_residual(rhs, lhs) < 1e-12);
}

TEST_CASE("kron spectrum is all pairwise eigenvalue products") {
  for (std::uint64_t seed : {21, 22, 23}) {
    const HermitianMatrix a = random_hermitian(2, seed);
    const HermitianMatrix b = random_hermitian(3, seed + 100);
    // brute-force oracle: products of the separately computed spectra
    const RealVector la = herm_eig(a).eigenvalues;
    const RealVector lb = herm_eig(b).eigenvalues;
    std::vector<double> products;
    for (Eigen::Index i = 0; i < la.size(); ++i)
      for (Eigen::Index j = 0; j < lb.size(); ++j) products.push_back(la(i) * lb(j));
    std::sort(products.begin(), products.end());
    const RealVector lab = herm_eig(HermitianMatrix(kron(a.mat(), b.mat()))).eigenvalues;
    for (Eigen::Index i = 0; i < lab.size(); ++i)
      CHECK(lab(i) == doctest::Approx(products[size_t(i)]).epsilon(1e-10));
  }
}

TEST_CASE("herm_eig sorts eigenvalues ascending") {
  RealVector d(3);
  d << 3, 1, 2;
  const EigenDecomposition eig = herm_eig(HermitianMatrix::diagonal(d));
  CHECK(eig.eigenvalues(0) == doctest::Approx(1));
  CHECK(eig.eigenvalues(1) == doctest::Approx(2));
  CHECK(eig.eigenvalues(2) == doctest::Approx(3));
}

TEST_CASE("herm_eig of a rank-one projector") {
  Rng rng(5);
  Vector psi = rng.gaussian_vector(4);
  psi /= psi.norm();
  const EigenDecomposition eig = herm_eig(HermitianMatrix(psi * psi.adjoint()));
  for (Eigen::Index i = 0; i < 3; ++i) CHECK(std::abs(eig.eigenvalues(i)) < 1e-14);
  CHECK(eig.eigenvalues(3) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("herm_eig reconstruction and unitarity meet the tolerance") {
  for (std::uint64_t seed : {41, 42, 43, 44}) {
    const HermitianMatrix h = random_hermitian(6, seed);
    const EigenDecomposition eig = herm_eig(h);
    CHECK(rel_residual(h.mat(), eig.reconstruct()) < 1e-12);
    CHECK(max_abs(eig.eigenvectors.adjoint() * eig.eigenvectors -
                  Matrix::Identity(6, 6)) < 1e-12);
  }
}

TEST_CASE("psd_power: identity is fixed, diagonal square root is exact") {
  CHECK(max_abs(psd_power(HermitianMatrix::identity(4), 2.7).mat() -
                Matrix::Identity(4, 4)) < 1e-14);
  RealVector d(2);
  d << 4, 9;
  const HermitianMatrix root = psd_power(HermitianMatrix::diagonal(d), 0.5);
  CHECK(root.mat()(0, 0).real() == doctest::Approx(2));
  CHECK(root.mat()(1, 1).real() == doctest::Approx(3));
}

TEST_CASE("psd square root squares back to the input") {
  for (std::uint64_t seed : {7, 8, 9}) {
    const HermitianMatrix m = random_psd(5, seed);
    const Matrix root = psd_power(m, 0.5).mat();
    CHECK(rel_residual(m.mat(), root * root) < 1e-10);
  }
}

TEST_CASE("psd_power is additive in the exponent") {
  const HermitianMatrix m = random_psd(4, 77);
  for (double p : {0.5, 1.0, 1.5, 2.0})
    for (double q : {0.5, 1.0, 1.5, 2.0}) {
      const Matrix lhs = psd_power(m, p).mat() * psd_power(m, q).mat();
      const Matrix rhs = psd_power(m, p + q).mat();
      CHECK(rel_residual(rhs, lhs) < 1e-10);
    }
}

TEST_CASE("psd_power clamps inside the tolerance band and rejects below it") {
  RealVector d(3);
  d << 1.0, 0.5, -1e-12;  // inside the band relative to ||h||_2 = 1
  const HermitianMatrix clamped = psd_power(HermitianMatrix::diagonal(d), 1.0);
  CHECK(clamped.mat()(2, 2).real() == 0.0);

  d(2) = -1e-3;
  try {
    psd_power(HermitianMatrix::diagonal(d), 0.5);
    FAIL("expected NotPsdError");
  } catch (const NotPsdError& e) {
    CHECK(e.offending_eigenvalue == doctest::Approx(-1e-3));
  }
}

TEST_CASE("schatten norm of a pure state is 1 for every p") {
  Rng rng(15);
  Vector psi = rng.gaussian_vector(5);
  psi /= psi.norm();
  const HermitianMatrix proj(psi * psi.adjoint());
  for (double p : {1.0, 1.5, 2.0, 3.0, 5.0})
    CHECK(schatten_pnorm(proj, p) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("schatten norm of the maximally mixed state") {
  for (Eigen::Index dim : {2, 3, 6}) {
    const HermitianMatrix mixed(Matrix::Identity(dim, dim) / double(dim));
    for (double p : {1.0, 2.0, 5.0})
      CHECK(schatten_pnorm(mixed, p) ==
            doctest::Approx(std::pow(double(dim), (1.0 - p) / p)).epsilon(1e-12));
  }
}

TEST_CASE("schatten norm matches the two-level output spectrum closed form") {
  // spectrum {0, 1/2, 1/2}: the p=5 norm is (2 (1/2)^5)^(1/5) = 2^(-4/5)
  Rng rng(99);
  Vector psi = rng.gaussian_vector(3);
  psi /= psi.norm();
  const Matrix out = (Matrix::Identity(3, 3) - psi.conjugate() * psi.transpose()) / 2.0;
  CHECK(schatten_pnorm(HermitianMatrix(out), 5.0) ==
        doctest::Approx(std::pow(2.0, -0.8)).epsilon(1e-12));
  CHECK(std::pow(2.0, -0.8) == doctest::Approx(0.574349).epsilon(1e-6));
}

TEST_CASE("schatten norm is monotone non-increasing in p on states") {
  const HermitianMatrix g = random_psd(5, 31);
  const HermitianMatrix state(g.mat() / g.mat().trace().real());
  double prev = schatten_pnorm(state, 1.0);
  for (double p : {1.3, 1.7, 2.0, 2.6, 3.5, 5.0, 8.0}) {
    const double cur = schatten_pnorm(state, p);
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
}

TEST_CASE("schatten norm rejects p < 1") {
  CHECK_THROWS_AS(schatten_pnorm(HermitianMatrix::identity(2), 0.5), DomainError);
}

TEST_CASE("trace sums the diagonal") {
  const Matrix m = random_matrix(4, 54);
  Complex expected(0, 0);
  for (Eigen::Index i = 0; i < 4; ++i) expected += m(i, i);
  CHECK(std::abs(trace(m) - expected) < 1e-15);
}

TEST_CASE("block access on the identity") {
  const BlockIndex idx{3, 2};
  const Matrix id6 = Matrix::Identity(6, 6);
  CHECK(max_abs(block(id6, idx, 0, 0) - Matrix::Identity(2, 2)) == 0.0);
  CHECK(max_abs(block(id6, idx, 0, 1)) == 0.0);
  CHECK_THROWS_AS(block(id6, idx, 3, 0), DimensionError);
  CHECK_THROWS_AS(block(random_matrix(5, 2), idx, 0, 0), DimensionError);
}

TEST_CASE("stacking block rows reconstructs the matrix exactly") {
  const BlockIndex idx{3, 2};
  const Matrix m = random_matrix(6, 55);
  const std::vector<Matrix> rows = block_rows(m, idx);
  REQUIRE(rows.size() == 3);
  Matrix stacked(6, 6);
  for (int i = 0; i < 3; ++i) {
    CHECK(rows[size_t(i)].rows() == 2);
    CHECK(rows[size_t(i)].cols() == 6);
    stacked.block(2 * i, 0, 2, 6) = rows[size_t(i)];
  }
  CHECK(max_abs(stacked - m) == 0.0);
}

TEST_CASE("entropy: pure states, maximally mixed, and a frozen value") {
  Rng rng(63);
  Vector psi = rng.gaussian_vector(4);
  psi /= psi.norm();
  CHECK(von_neumann_entropy(HermitianMatrix(psi * psi.adjoint())) ==
        doctest::Approx(0.0).epsilon(1e-10));

  for (Eigen::Index dim : {2, 5})
    CHECK(von_neumann_entropy(HermitianMatrix(Matrix::Identity(dim, dim) / double(dim))) ==
          doctest::Approx(std::log(double(dim))).epsilon(1e-12));

  RealVector d(3);
  d << 0.5, 0.25, 0.25;
  // direct evaluation: -(1/2)log(1/2) - 2 (1/4)log(1/4) = (3/2) log 2
  CHECK(von_neumann_entropy(HermitianMatrix::diagonal(d)) ==
        doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-12));
  CHECK(1.5 * std::log(2.0) == doctest::Approx(1.039721).epsilon(1e-6));
}

TEST_CASE("entropy rejects non-unit trace") {
  CHECK_THROWS_AS(von_neumann_entropy(HermitianMatrix::identity(3)), DomainError);
}

TEST_CASE("hermitian construction symmetrizes exactly") {
  const Matrix g = random_matrix(4, 70);
  const HermitianMatrix h(g);
  CHECK(max_abs(h.mat() - h.mat().adjoint().eval()) == 0.0);
  CHECK_THROWS_AS(HermitianMatrix(Matrix(random_matrix(3, 71).block(0, 0, 2, 3))),
                  DimensionError);
}
