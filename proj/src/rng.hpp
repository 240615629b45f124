#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace hadchan {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Key for an independent substream of a master seed. Experiments derive one
// key per (instance, role) so batch results do not depend on scheduling.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

// Deterministic random stream. The Gaussian path is spelled out (Box-Muller
// on explicit 53-bit uniforms) because std::normal_distribution's output
// sequence is implementation-defined, and report bytes must reproduce.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  static Rng substream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(derive_seed(seed, stream));
  }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u in (0, 1] so the log is finite.
    const double u = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double two_pi_v = 2.0 * M_PI * v;
    spare_ = r * std::sin(two_pi_v);
    have_spare_ = true;
    return r * std::cos(two_pi_v);
  }

  std::complex<double> complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
  }

  // Entries filled row-major so the stream consumption order is fixed.
  Eigen::MatrixXcd gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = complex_gaussian();
    return m;
  }

  Eigen::VectorXcd gaussian_vector(Eigen::Index dim) {
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = complex_gaussian();
    return v;
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace hadchan
