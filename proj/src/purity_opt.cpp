#include "purity_opt.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace hadchan {

namespace {

constexpr double kGradientEigCutoff = 1e-12;
constexpr double kMinStep = 1e-14;

// sigma^f(lambda) in the eigenbasis of sigma, with eigenvalues clamped to
// [cutoff-floor] semantics chosen by the caller.
HermitianMatrix matrix_function(const HermitianMatrix& sigma,
                                const std::function<double(double)>& f) {
  const EigenDecomposition eig = herm_eig(sigma);
  RealVector lam = eig.eigenvalues;
  for (Eigen::Index i = 0; i < lam.size(); ++i) lam(i) = f(lam(i));
  return HermitianMatrix(eig.eigenvectors * lam.asDiagonal() * eig.eigenvectors.adjoint());
}

struct AscentResult {
  Vector point;
  double objective;
  int iterations;
  bool converged;
  std::vector<double> trajectory;
};

// Projected gradient ascent on the unit sphere with backtracking line
// search; the accepted objective sequence is strictly increasing.
AscentResult sphere_ascent(const Vector& start, const OptimizerConfig& cfg,
                           const std::function<double(const PureState&)>& value,
                           const std::function<Vector(const PureState&)>& euclidean_grad) {
  PureState x{start};
  double fx = value(x);
  AscentResult res{x.amplitudes(), fx, 0, false, {}};
  if (cfg.record_trajectories) res.trajectory.push_back(fx);

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    const Vector g = euclidean_grad(x);
    const Vector t = tangent_project(x, g);
    if (t.norm() < cfg.grad_tol) {
      res.converged = true;
      res.iterations = iter - 1;
      break;
    }
    double step = cfg.step_init;
    bool accepted = false;
    while (step >= kMinStep) {
      PureState candidate{x.amplitudes() + step * t};
      const double fc = value(candidate);
      if (fc > fx) {
        x = candidate;
        fx = fc;
        accepted = true;
        break;
      }
      step *= cfg.backtrack_factor;
    }
    res.iterations = iter;
    if (!accepted) {
      // No ascent direction improves at machine precision: stationary.
      res.converged = true;
      break;
    }
    if (cfg.record_trajectories) res.trajectory.push_back(fx);
    if (iter == cfg.max_iters) res.converged = false;
  }
  res.point = x.amplitudes();
  res.objective = fx;
  return res;
}

std::vector<PureState> collect_starts(Eigen::Index dim, const OptimizerConfig& cfg,
                                      const std::vector<PureState>& extra_starts) {
  std::vector<PureState> starts = extra_starts;
  if (cfg.inject_basis_states)
    for (Eigen::Index i = 0; i < dim; ++i) starts.push_back(PureState::basis(dim, i));
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng = Rng::substream(cfg.seed, static_cast<std::uint64_t>(r));
    starts.push_back(PureState::haar(dim, rng));
  }
  return starts;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (restarts < 1) throw DomainError("optimizer needs restarts >= 1");
  if (max_iters < 1) throw DomainError("optimizer needs max_iters >= 1");
  if (grad_tol <= 0.0) throw DomainError("grad_tol must be positive");
  if (backtrack_factor <= 0.0 || backtrack_factor >= 1.0)
    throw DomainError("backtrack_factor must lie in (0, 1)");
  if (step_init <= 0.0) throw DomainError("step_init must be positive");
}

double objective(const Channel& ch, const PureState& psi, double p) {
  if (p < 1.0) throw DomainError("objective requires p >= 1, got " + std::to_string(p));
  if (psi.dim() != ch.dim_in())
    throw DimensionError("state dimension " + std::to_string(psi.dim()) +
                         " does not match channel input " + std::to_string(ch.dim_in()));
  return trace_power(ch.apply(psi), p);
}

Vector objective_gradient(const Channel& ch, const PureState& psi, double p) {
  if (p < 1.0) throw DomainError("objective requires p >= 1, got " + std::to_string(p));
  const HermitianMatrix sigma = ch.apply(psi);
  const HermitianMatrix w = matrix_function(sigma, [p](double lam) {
    return std::pow(lam < kGradientEigCutoff ? 0.0 : lam, p - 1.0);
  });
  return 2.0 * p * (ch.adjoint().apply(w).mat() * psi.amplitudes());
}

Vector tangent_project(const PureState& psi, const Vector& g) {
  const double radial = psi.amplitudes().dot(g).real();
  return g - radial * psi.amplitudes();
}

PurityEstimate estimate_nu_p(const Channel& ch, double p, const OptimizerConfig& cfg,
                             const std::vector<PureState>& extra_starts) {
  cfg.validate();
  if (p < 1.0) throw DomainError("nu_p requires p >= 1, got " + std::to_string(p));

  if (p == 1.0) {
    // ||Phi(rho)||_1 = tr[Phi†(I) rho] is linear in rho; the sup is the top
    // eigenvector of Phi†(I). For a trace-preserving channel this is 1 at
    // every state.
    const HermitianMatrix h =
        ch.adjoint().apply(HermitianMatrix::identity(ch.dim_out()));
    const EigenDecomposition eig = herm_eig(h);
    PureState maximizer{eig.eigenvectors.col(h.dim() - 1)};
    const double value = schatten_pnorm(ch.apply(maximizer), 1.0);
    return PurityEstimate{p, value, maximizer, {value}, {0}, true, {}};
  }

  const auto value_fn = [&](const PureState& x) { return objective(ch, x, p); };
  const auto grad_fn = [&](const PureState& x) { return objective_gradient(ch, x, p); };

  const std::vector<PureState> starts = collect_starts(ch.dim_in(), cfg, extra_starts);
  PurityEstimate est{p, -1.0, starts.front(), {}, {}, true, {}};
  for (const PureState& start : starts) {
    const AscentResult run = sphere_ascent(start.amplitudes(), cfg, value_fn, grad_fn);
    const double norm_value = std::pow(run.objective, 1.0 / p);
    est.per_restart_values.push_back(norm_value);
    est.iterations_used.push_back(run.iterations);
    est.converged = est.converged && run.converged;
    if (cfg.record_trajectories) est.trajectories.push_back(run.trajectory);
    if (norm_value > est.value) {
      est.value = norm_value;
      est.maximizer = PureState{run.point};
    }
  }
  return est;
}

EntropyEstimate estimate_s_min(const Channel& ch, const OptimizerConfig& cfg,
                               const std::vector<PureState>& extra_starts) {
  cfg.validate();
  if (!ch.is_trace_preserving())
    throw DomainError("minimal output entropy needs a trace-preserving channel");

  const auto entropy_fn = [&](const PureState& x) {
    return von_neumann_entropy(ch.apply(x));
  };
  // Maximize -S; grad of -S is 2 Phi†(log sigma + I) psi, eigenvalues
  // floored at 1e-12 inside the log.
  const auto value_fn = [&](const PureState& x) { return -entropy_fn(x); };
  const auto grad_fn = [&](const PureState& x) {
    const HermitianMatrix sigma = ch.apply(x);
    const HermitianMatrix l = matrix_function(sigma, [](double lam) {
      return std::log(std::max(lam, kGradientEigCutoff)) + 1.0;
    });
    return Vector(2.0 * (ch.adjoint().apply(l).mat() * x.amplitudes()));
  };

  const std::vector<PureState> starts = collect_starts(ch.dim_in(), cfg, extra_starts);
  EntropyEstimate est{0.0, starts.front(), {}, {}, true, {}};
  double best = std::numeric_limits<double>::infinity();
  for (const PureState& start : starts) {
    const AscentResult run = sphere_ascent(start.amplitudes(), cfg, value_fn, grad_fn);
    const double s = -run.objective;
    est.per_restart_values.push_back(s);
    est.iterations_used.push_back(run.iterations);
    est.converged = est.converged && run.converged;
    if (cfg.record_trajectories) {
      std::vector<double> traj = run.trajectory;
      for (double& v : traj) v = -v;
      est.trajectories.push_back(std::move(traj));
    }
    if (s < best) {
      best = s;
      est.minimizer = PureState{run.point};
    }
  }
  est.value = best;
  return est;
}

ProductBound product_state_lower_bound(const Channel& phi, const Channel& psi, double p,
                                       const OptimizerConfig& cfg) {
  PurityEstimate phi_est = estimate_nu_p(phi, p, cfg);
  PurityEstimate psi_est = estimate_nu_p(psi, p, cfg);
  PureState witness = phi_est.maximizer.tensor(psi_est.maximizer);
  const double value = phi_est.value * psi_est.value;
  return ProductBound{value, std::move(witness), std::move(phi_est), std::move(psi_est)};
}

}  // namespace hadchan
