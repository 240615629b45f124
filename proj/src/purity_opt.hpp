#pragma once

#include <cstdint>
#include <vector>

#include "channels.hpp"

namespace hadchan {

struct OptimizerConfig {
  int restarts = 20;       // Haar-random starts, on top of any injected ones
  int max_iters = 2000;
  double grad_tol = 1e-9;  // termination on tangent-gradient norm
  double step_init = 1.0;  // reset each iteration, halved on backtrack
  double backtrack_factor = 0.5;
  std::uint64_t seed = 0;
  bool inject_basis_states = true;
  bool record_trajectories = false;

  void validate() const;
};

// Result of a nu_p run. `value` is the norm estimate; per-restart entries
// are in start order (injected starts first, then basis states, then the
// Haar restarts).
struct PurityEstimate {
  double p;
  double value;
  PureState maximizer;
  std::vector<double> per_restart_values;
  std::vector<int> iterations_used;
  bool converged;  // false when some restart stopped only because of max_iters
  std::vector<std::vector<double>> trajectories;  // objective sequences, if recorded
};

struct EntropyEstimate {
  double value;
  PureState minimizer;
  std::vector<double> per_restart_values;
  std::vector<int> iterations_used;
  bool converged;
  std::vector<std::vector<double>> trajectories;  // entropy sequences, if recorded
};

// tr[Phi(psi psi*)^p] over the clamped output spectrum (the p-th power form,
// not the norm).
double objective(const Channel& ch, const PureState& psi, double p);

// Euclidean gradient with respect to conj(psi): 2p Phi†(sigma^{p-1}) psi,
// sigma = Phi(psi psi*). Output eigenvalues below 1e-12 are clamped before
// the (p-1) power, which is singular at 0 for p < 2.
Vector objective_gradient(const Channel& ch, const PureState& psi, double p);

// Projection onto the tangent space of the unit sphere at psi.
Vector tangent_project(const PureState& psi, const Vector& g);

// Multi-start projected gradient ascent for nu_p(Phi) = sup ||Phi(rho)||_p.
// The sup over states is attained at a pure state (the objective is convex
// in rho), so the search runs over the unit sphere. extra_starts are
// injected ahead of everything else, as restart 0, 1, ...
PurityEstimate estimate_nu_p(const Channel& ch, double p, const OptimizerConfig& cfg,
                             const std::vector<PureState>& extra_starts = {});

// Descent on S(Phi(psi psi*)) with the same sphere machinery; requires a
// trace-preserving channel.
EntropyEstimate estimate_s_min(const Channel& ch, const OptimizerConfig& cfg,
                               const std::vector<PureState>& extra_starts = {});

struct ProductBound {
  double value;       // nu_p(phi) * nu_p(psi), both estimated
  PureState witness;  // maximizer_phi (x) maximizer_psi
  PurityEstimate phi_estimate;
  PurityEstimate psi_estimate;
};

// Lower bound on nu_p of the product channel obtained from product states.
ProductBound product_state_lower_bound(const Channel& phi, const Channel& psi, double p,
                                       const OptimizerConfig& cfg);

}  // namespace hadchan
