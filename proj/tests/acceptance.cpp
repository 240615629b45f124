// End-to-end acceptance suite. Each criterion prints one [PASS]/[FAIL] line
// with the measured numbers; the process exits nonzero if any fail.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "experiments.hpp"

using namespace hadchan;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", index, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

OptimizerConfig default_config(std::uint64_t seed) {
  OptimizerConfig cfg;
  cfg.seed = seed;
  return cfg;
}

// ---------------------------------------------------------------------------
// 1. certificate suite over the (n, k, p) grid

void criterion_certificates() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> ps{1.0, 1.5, 2.0, 3.0, 5.0};
  int instances_total = 0;
  int certificates = 0;
  int failures = 0;
  double worst_residual = 0.0;
  double worst_s1_scaled = 0.0;
  double worst_estimate_slack = 0.0;
  double worst_sharing = 0.0;

  for (int n : {2, 3, 4}) {
    for (int k : {2, 3, 4}) {
      const int instances = 23;  // 9 * 23 = 207 seeded instances
      const json rep = run_replay(n, k, ps, instances,
                                  1000 + 10 * std::uint64_t(n) + std::uint64_t(k),
                                  default_config(0));
      instances_total += instances;
      for (const json& rec : rep["instances"]) {
        const json& cert = rec["certificate"];
        ++certificates;
        if (cert["verdict"] != "pass") ++failures;
        for (const auto& [name, v] : cert["residuals"].items())
          worst_residual = std::max(worst_residual, v.get<double>());
        worst_s1_scaled = std::min(worst_s1_scaled, cert["slacks"]["s1"].get<double>() /
                                                        cert["s1_scale"].get<double>());
        for (const char* s : {"s2", "s3", "s4"})
          worst_estimate_slack =
              std::min(worst_estimate_slack, cert["slacks"][s].get<double>());
        worst_sharing =
            std::max(worst_sharing, cert["spectrum_sharing"].get<double>());
      }
    }
  }

  const bool pass = instances_total >= 200 && failures == 0 &&
                    worst_residual <= 1e-10 && worst_s1_scaled >= -1e-10 &&
                    worst_estimate_slack >= -1e-6 && worst_sharing <= 1e-10;
  std::ostringstream detail;
  detail << instances_total << " instances, " << certificates
         << " certificates, worst residual " << fmt(worst_residual) << ", s1/scale >= "
         << fmt(worst_s1_scaled) << ", s2-s4 >= " << fmt(worst_estimate_slack)
         << ", spectrum sharing <= " << fmt(worst_sharing) << ", "
         << fmt(seconds_since(t0)) << " s";
  report(1, "certificate suite", pass, detail.str());
}

// ---------------------------------------------------------------------------
// 2. multiplicativity reproduction

void criterion_mult_test() {
  const auto t0 = std::chrono::steady_clock::now();
  const json rep = run_mult_test(3, 2, {1.5, 2.0, 3.0}, 50, 42, default_config(0));
  const double max_gap = rep["summary"]["max_gap"].get<double>();
  const int flagged = rep["summary"]["flagged"].get<int>();
  const bool pass = flagged == 0 && max_gap <= 1e-5;
  report(2, "multiplicativity on 50 instances", pass,
         "max gap " + fmt(max_gap) + ", flagged " + std::to_string(flagged) + ", " +
             fmt(seconds_since(t0)) + " s");
}

// ---------------------------------------------------------------------------
// 3. the p = 5 counterexample and its absence at p = 2

void criterion_wh() {
  const json at5 = run_wh(3, 5.0, default_config(3));
  const json at2 = run_wh(3, 2.0, default_config(3));

  const double product_power = at5["product_state_power"].get<double>();
  const bool product_exact = product_power == std::pow(4.0, -4.0);

  // brute-force oracle: eigendecompose ((1 - 2/d) I + Omega Omega*) / (d-1)^2
  const Eigen::Index d = 3;
  const PureState omega = PureState::maximally_entangled(d);
  const Matrix oracle_matrix = ((1.0 - 2.0 / double(d)) * Matrix::Identity(d * d, d * d) +
                                omega.projector().mat()) /
                               double((d - 1) * (d - 1));
  const double oracle = trace_power(HermitianMatrix(oracle_matrix), 5.0);
  const double arithmetic = std::pow(3.0, -5.0) + 8.0 * std::pow(12.0, -5.0);
  const double entangled = at5["entangled_power"].get<double>();
  const bool entangled_ok = std::abs(entangled - oracle) <= 1e-9 * oracle &&
                            std::abs(entangled - arithmetic) <= 1e-9 * arithmetic;

  const double ratio = at5["power_ratio"].get<double>();
  const bool pass = product_exact && entangled_ok && ratio > 1.0 &&
                    at5["violation"] == true && at2["violation"] == false;
  report(3, "antisymmetric-pair counterexample", pass,
         "product power " + fmt(product_power) + ", entangled " + fmt(entangled) +
             ", ratio " + fmt(ratio) + ", p=2 violation " + at2["violation"].dump());
}

// ---------------------------------------------------------------------------
// 4. trace-inequality fuzz

void criterion_lt_fuzz() {
  const auto t0 = std::chrono::steady_clock::now();
  const json rep = run_lt_fuzz(3, 4, {1.0, 1.5, 2.0, 3.0, 5.0}, 1000, false, 7);
  const double min_slack = rep["summary"]["min_relative_slack"].get<double>();
  const double p1_worst = rep["summary"]["p1_max_abs_relative_slack"].get<double>();
  const bool pass = rep["summary"]["flagged"] == 0 && min_slack >= -1e-9 &&
                    p1_worst <= 1e-12;
  report(4, "trace-inequality fuzz on 1000 pairs", pass,
         "min slack/scale " + fmt(min_slack) + ", p=1 worst " + fmt(p1_worst) + ", " +
             fmt(seconds_since(t0)) + " s");
}

// ---------------------------------------------------------------------------
// 5. optimizer validity

double raw_objective(const Channel& ch, const Vector& v, double p) {
  return trace_power(ch.apply(HermitianMatrix(v * v.adjoint())), p);
}

Vector fd_gradient(const Channel& ch, const Vector& v, double p) {
  const double h = 1e-6;
  Vector g(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    Vector plus = v, minus = v;
    plus(i) += Complex(h, 0);
    minus(i) -= Complex(h, 0);
    const double re = (raw_objective(ch, plus, p) - raw_objective(ch, minus, p)) / (2 * h);
    plus = v;
    minus = v;
    plus(i) += Complex(0, h);
    minus(i) -= Complex(0, h);
    const double im = (raw_objective(ch, plus, p) - raw_objective(ch, minus, p)) / (2 * h);
    g(i) = Complex(re, im);
  }
  return g;
}

void criterion_optimizer() {
  double worst_fd = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    Rng rng(5000 + std::uint64_t(trial));
    const Eigen::Index dim = 2 + Eigen::Index(trial % 3);
    const Eigen::Index rank = 1 + Eigen::Index(trial % 2);
    const Channel ch{random_channel(dim, dim, rank, rng)};
    const PureState psi = PureState::haar(dim, rng);
    const double p = 1.1 + 3.9 * rng.uniform();
    const Vector g = objective_gradient(ch, psi, p);
    const Vector fd = fd_gradient(ch, psi.amplitudes(), p);
    worst_fd = std::max(worst_fd, (g - fd).norm() / std::max(1.0, fd.norm()));
  }
  const bool fd_ok = worst_fd <= 1e-5;

  OptimizerConfig cfg = default_config(17);
  cfg.record_trajectories = true;
  const PurityEstimate wh_est = estimate_nu_p(Channel(werner_holevo(3)), 5.0, cfg);
  const double wh_err = std::abs(wh_est.value - std::pow(2.0, -0.8));
  const PurityEstimate id_est = estimate_nu_p(Channel(identity_channel(4)), 3.0, cfg);
  const double id_err = std::abs(id_est.value - 1.0);

  bool monotone = true;
  std::vector<PurityEstimate> logged{wh_est, id_est};
  for (int i = 0; i < 5; ++i)
    logged.push_back(
        estimate_nu_p(Channel(random_channel(3, 3, 2, 600 + std::uint64_t(i))),
                      1.5 + i * 0.8, cfg));
  long trajectories = 0;
  for (const PurityEstimate& est : logged)
    for (const auto& traj : est.trajectories) {
      ++trajectories;
      for (std::size_t j = 1; j < traj.size(); ++j)
        if (traj[j] < traj[j - 1]) monotone = false;
    }

  const bool pass = fd_ok && wh_err <= 1e-6 && id_err <= 1e-10 && monotone;
  std::ostringstream detail;
  detail << "worst gradient mismatch " << fmt(worst_fd) << ", wh error " << fmt(wh_err)
         << ", identity error " << fmt(id_err) << ", " << trajectories
         << " trajectories monotone " << (monotone ? "yes" : "no");
  report(5, "optimizer validity", pass, detail.str());
}

// ---------------------------------------------------------------------------
// 6. entropy additivity

void criterion_entropy() {
  const auto t0 = std::chrono::steady_clock::now();
  const json rep = run_entropy_add(3, 2, 20, 11, default_config(0));
  const double max_gap = rep["summary"]["max_gap"].get<double>();
  const EntropyEstimate wh_est =
      estimate_s_min(Channel(werner_holevo(3)), default_config(19));
  const double wh_err = std::abs(wh_est.value - std::log(2.0));
  const bool pass = rep["summary"]["flagged"] == 0 && max_gap <= 1e-4 && wh_err <= 1e-6;
  report(6, "entropy additivity", pass,
         "max gap " + fmt(max_gap) + ", wh s_min error " + fmt(wh_err) + ", " +
             fmt(seconds_since(t0)) + " s");
}

// ---------------------------------------------------------------------------
// 7. byte-identical reruns, through the CLI and the library

std::string run_cli(const std::string& args, int& exit_code) {
  const std::string cmd = std::string(HADCHAN_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    exit_code = -1;
    return {};
  }
  std::string out;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int rc = pclose(pipe);
  exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return out;
}

void criterion_determinism() {
  const std::vector<std::string> commands{
      "wh --d 3 --p 5 --restarts 4 --seed 2",
      "mult-test --n 2 --k 2 --p 1.5,2 --instances 2 --seed 3 --restarts 4",
      "replay --n 2 --k 2 --p 2 --instances 2 --seed 4 --restarts 4",
      "lt-fuzz --k 3 --n 3 --p 1,2 --instances 5 --seed 5",
  };
  bool pass = true;
  std::string failing;
  for (const std::string& cmd : commands) {
    int code_a = 0, code_b = 0;
    const std::string a = run_cli(cmd, code_a);
    const std::string b = run_cli(cmd, code_b);
    if (a.empty() || a != b || code_a != 0 || code_b != 0) {
      pass = false;
      failing = cmd;
      break;
    }
  }
  // same contract at the library level
  const json a = run_replay(2, 2, {2.0}, 2, 21, default_config(1));
  const json b = run_replay(2, 2, {2.0}, 2, 21, default_config(1));
  if (a.dump() != b.dump()) {
    pass = false;
    failing = "run_replay";
  }
  report(7, "deterministic reruns", pass,
         pass ? std::to_string(commands.size()) + " commands byte-identical"
              : "mismatch in: " + failing);
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_certificates();
  criterion_mult_test();
  criterion_wh();
  criterion_lt_fuzz();
  criterion_optimizer();
  criterion_entropy();
  criterion_determinism();
  std::printf("%s: %d criterion(s) failed, total %.1f s\n",
              g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL", g_failures,
              seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
