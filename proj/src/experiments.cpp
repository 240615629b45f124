#include "experiments.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace hadchan {

namespace {

// Haar-random unitary via QR of a Gaussian matrix.
Matrix random_unitary(Eigen::Index dim, Rng& rng) {
  const Matrix g = rng.gaussian_matrix(dim, dim);
  Eigen::HouseholderQR<Matrix> qr(g);
  return qr.householderQ() * Matrix::Identity(dim, dim);
}

// desk-scale guard: the certificate's V matrix has n*k*n columns, so the
// batch runners keep channel dimensions small
void require_experiment_dims(Eigen::Index n, Eigen::Index k, int instances) {
  if (n < 1 || n > 8 || k < 1 || k > 8)
    throw DomainError("experiment channel dimensions must lie in 1..8");
  if (instances < 1) throw DomainError("need at least one instance");
}

struct InstanceStreams {
  Rng phi;
  Rng psi;
  Rng rho;
  std::uint64_t key;

  static InstanceStreams at(std::uint64_t seed, int instance) {
    const std::uint64_t key = derive_seed(seed, static_cast<std::uint64_t>(instance));
    return InstanceStreams{Rng::substream(key, 0), Rng::substream(key, 1),
                           Rng::substream(key, 2), key};
  }

  OptimizerConfig opt(const OptimizerConfig& base, std::uint64_t role) const {
    OptimizerConfig cfg = base;
    cfg.seed = derive_seed(key, 16 + role);
    return cfg;
  }
};

}  // namespace

Channel make_named_channel(const std::string& name) {
  const auto parse_dim = [&](std::size_t pos) -> Eigen::Index {
    try {
      std::size_t used = 0;
      const long d = std::stol(name.substr(pos), &used);
      if (used != name.size() - pos || d < 1) throw std::invalid_argument("");
      return d;
    } catch (const std::exception&) {
      throw ParseError("cannot parse dimension in named channel \"" + name + "\"");
    }
  };
  if (name.rfind("identity:", 0) == 0) return Channel(identity_channel(parse_dim(9)));
  if (name.rfind("dephase:", 0) == 0) return Channel(dephasing_channel(parse_dim(8)));
  if (name.rfind("wh:", 0) == 0) return Channel(werner_holevo(parse_dim(3)));
  if (name.rfind("wh", 0) == 0 && name.size() > 2 && std::isdigit(name[2]))
    return Channel(werner_holevo(parse_dim(2)));
  throw ParseError("unknown named channel \"" + name +
                   "\" (expected identity:<d>, dephase:<n>, or wh<d>)");
}

json run_nu(const Channel& ch, double p, const OptimizerConfig& cfg) {
  const PurityEstimate est = estimate_nu_p(ch, p, cfg);
  return json{{"command", "nu"},
              {"config", json{{"p", p}, {"optimizer", optimizer_config_to_json(cfg)}}},
              {"estimate", purity_estimate_to_json(est)},
              {"summary", json{{"value", est.value},
                               {"converged", est.converged},
                               {"flagged", est.converged ? 0 : 1}}}};
}

json run_mult_test(Eigen::Index n, Eigen::Index k, const std::vector<double>& ps,
                   int instances, std::uint64_t seed, const OptimizerConfig& cfg,
                   Eigen::Index kraus_rank) {
  require_experiment_dims(n, k, instances);
  json records = json::array();
  double max_gap = 0.0;
  int flagged = 0;
  for (int i = 0; i < instances; ++i) {
    InstanceStreams streams = InstanceStreams::at(seed, i);
    const DiagonalChannel phi = random_diagonal(n, n, streams.phi, /*trace_preserving=*/true);
    const KrausChannel psi = random_channel(k, k, kraus_rank, streams.psi);
    const Channel product{tensor(Channel(phi), Channel(psi))};
    for (std::size_t pi = 0; pi < ps.size(); ++pi) {
      const double p = ps[pi];
      const PurityEstimate est_phi =
          estimate_nu_p(Channel(phi), p, streams.opt(cfg, 3 * pi + 0));
      const PurityEstimate est_psi =
          estimate_nu_p(Channel(psi), p, streams.opt(cfg, 3 * pi + 1));
      const PureState witness = est_phi.maximizer.tensor(est_psi.maximizer);
      const PurityEstimate est_prod =
          estimate_nu_p(product, p, streams.opt(cfg, 3 * pi + 2), {witness});
      const double bound = est_phi.value * est_psi.value;
      const double gap = std::abs(est_prod.value - bound) / bound;
      const bool flag = gap > kMultGapThreshold;
      max_gap = std::max(max_gap, gap);
      flagged += flag ? 1 : 0;
      records.push_back(json{{"instance", i},
                             {"p", p},
                             {"nu_phi", est_phi.value},
                             {"nu_psi", est_psi.value},
                             {"nu_product", est_prod.value},
                             {"gap", gap},
                             {"flagged", flag}});
    }
  }
  return json{
      {"command", "mult-test"},
      {"config", json{{"n", n},
                      {"k", k},
                      {"p_values", ps},
                      {"instances", instances},
                      {"seed", seed},
                      {"kraus_rank", kraus_rank},
                      {"gap_threshold", kMultGapThreshold},
                      {"threshold_note", "gap threshold reflects optimizer precision"},
                      {"optimizer", optimizer_config_to_json(cfg)}}},
      {"instances", std::move(records)},
      {"summary", json{{"records", instances * static_cast<int>(ps.size())},
                       {"max_gap", max_gap},
                       {"flagged", flagged}}}};
}

namespace {

json replay_summary(const json& records) {
  std::map<std::string, double> worst_res;
  std::map<std::string, double> worst_slacks;
  double worst_sharing = 0.0;
  double worst_s1_scaled = 0.0;
  int passes = 0;
  for (const json& rec : records) {
    const json& cert = rec["certificate"];
    if (cert["verdict"] == "pass") ++passes;
    if (cert.contains("residuals"))
      for (const auto& [name, val] : cert["residuals"].items()) {
        const double v = val.get<double>();
        auto it = worst_res.find(name);
        if (it == worst_res.end() || v > it->second) worst_res[name] = v;
      }
    if (cert.contains("slacks"))
      for (const auto& [name, val] : cert["slacks"].items()) {
        const double v = val.get<double>();
        auto it = worst_slacks.find(name);
        if (it == worst_slacks.end() || v < it->second) worst_slacks[name] = v;
      }
    if (cert.contains("spectrum_sharing"))
      worst_sharing = std::max(worst_sharing, cert["spectrum_sharing"].get<double>());
    if (cert.contains("slacks") && cert.contains("s1_scale"))
      worst_s1_scaled = std::min(
          worst_s1_scaled, cert["slacks"]["s1"].get<double>() / cert["s1_scale"].get<double>());
  }
  return json{{"certificates", records.size()},
              {"passes", passes},
              {"flagged", static_cast<int>(records.size()) - passes},
              {"worst_residuals", json(worst_res)},
              {"worst_slacks", json(worst_slacks)},
              {"worst_s1_scaled", worst_s1_scaled},
              {"worst_spectrum_sharing", worst_sharing}};
}

}  // namespace

json run_replay(Eigen::Index n, Eigen::Index k, const std::vector<double>& ps, int instances,
                std::uint64_t seed, const OptimizerConfig& cfg, Eigen::Index kraus_rank) {
  require_experiment_dims(n, k, instances);
  json records = json::array();
  for (int i = 0; i < instances; ++i) {
    InstanceStreams streams = InstanceStreams::at(seed, i);
    const DiagonalChannel phi = random_diagonal(n, n, streams.phi, /*trace_preserving=*/true);
    const KrausChannel psi = random_channel(k, k, kraus_rank, streams.psi);
    const DensityMatrix rho = DensityMatrix::random(n * k, streams.rho);
    for (std::size_t pi = 0; pi < ps.size(); ++pi) {
      const CertificateReport rep =
          verify_certificate(phi, Channel(psi), rho, ps[pi], streams.opt(cfg, pi));
      records.push_back(json{{"instance", i}, {"certificate", certificate_to_json(rep)}});
    }
  }
  json summary = replay_summary(records);
  return json{{"command", "replay"},
              {"config", json{{"n", n},
                              {"k", k},
                              {"p_values", ps},
                              {"instances", instances},
                              {"seed", seed},
                              {"kraus_rank", kraus_rank},
                              {"optimizer", optimizer_config_to_json(cfg)}}},
              {"instances", std::move(records)},
              {"summary", std::move(summary)}};
}

json run_replay_single(const DiagonalChannel& phi, const Channel& psi, const DensityMatrix& rho,
                       double p, const OptimizerConfig& cfg) {
  json records = json::array();
  const CertificateReport rep = verify_certificate(phi, psi, rho, p, cfg);
  records.push_back(json{{"instance", 0}, {"certificate", certificate_to_json(rep)}});
  json summary = replay_summary(records);
  return json{{"command", "replay"},
              {"config", json{{"n", phi.dim()},
                              {"k", psi.dim_in()},
                              {"p_values", json::array({p})},
                              {"instances", 1},
                              {"optimizer", optimizer_config_to_json(cfg)}}},
              {"instances", std::move(records)},
              {"summary", std::move(summary)}};
}

json run_wh(Eigen::Index d, double p, const OptimizerConfig& cfg) {
  if (d < 2) throw DomainError("wh experiment needs d >= 2");
  if (p < 1.0) throw DomainError("wh experiment needs p >= 1");
  const Channel phi{werner_holevo(d)};

  // (a) best product-state p-th power: every pure input yields the spectrum
  // {0} u {1/(d-1)} x (d-1), so nu_p(Phi)^p = (d-1)^{1-p}.
  const double single_power = std::pow(static_cast<double>(d - 1), 1.0 - p);
  const double product_power = single_power * single_power;

  // (b) the maximally entangled input, by direct eigendecomposition.
  const PureState omega = PureState::maximally_entangled(d);
  const Channel product{tensor(phi, phi)};
  const HermitianMatrix sigma = product.apply(omega);
  const double entangled_power = trace_power(sigma, p);

  const double ratio = entangled_power / product_power;
  const bool violation = ratio > 1.0;

  // (c) optimizer on the product channel, seeded with both witnesses.
  const PureState product_witness =
      PureState::basis(d, 0).tensor(PureState::basis(d, 0));
  const PurityEstimate est = estimate_nu_p(product, p, cfg, {product_witness, omega});

  return json{
      {"command", "wh"},
      {"config",
       json{{"d", d}, {"p", p}, {"optimizer", optimizer_config_to_json(cfg)}}},
      {"product_state_power", product_power},
      {"entangled_power", entangled_power},
      {"power_ratio", ratio},
      {"violation", violation},
      {"nu_single_closed", std::pow(single_power, 1.0 / p)},
      {"nu_product_states", std::pow(product_power, 1.0 / p)},
      {"nu_entangled", std::pow(entangled_power, 1.0 / p)},
      {"nu_estimate", purity_estimate_to_json(est)},
      {"summary",
       json{{"violation", violation}, {"power_ratio", ratio}, {"flagged", 0}}}};
}

json run_entropy_add(Eigen::Index n, Eigen::Index k, int instances, std::uint64_t seed,
                     const OptimizerConfig& cfg, Eigen::Index kraus_rank) {
  require_experiment_dims(n, k, instances);
  json records = json::array();
  double max_gap = 0.0;
  int flagged = 0;
  int skipped = 0;
  for (int i = 0; i < instances; ++i) {
    InstanceStreams streams = InstanceStreams::at(seed, i);
    const DiagonalChannel phi = random_diagonal(n, n, streams.phi, /*trace_preserving=*/true);
    const KrausChannel psi = random_channel(k, k, kraus_rank, streams.psi);
    if (!Channel(phi).is_trace_preserving() || !Channel(psi).is_trace_preserving()) {
      ++skipped;
      records.push_back(json{{"instance", i}, {"skipped", "channel is not trace-preserving"}});
      continue;
    }
    const EntropyEstimate est_phi = estimate_s_min(Channel(phi), streams.opt(cfg, 0));
    const EntropyEstimate est_psi = estimate_s_min(Channel(psi), streams.opt(cfg, 1));
    const PureState witness = est_phi.minimizer.tensor(est_psi.minimizer);
    const Channel product{tensor(Channel(phi), Channel(psi))};
    const EntropyEstimate est_prod = estimate_s_min(product, streams.opt(cfg, 2), {witness});
    const double gap = std::abs(est_prod.value - est_phi.value - est_psi.value);
    const bool flag = gap > kEntropyGapThreshold;
    max_gap = std::max(max_gap, gap);
    flagged += flag ? 1 : 0;
    records.push_back(json{{"instance", i},
                           {"s_min_phi", est_phi.value},
                           {"s_min_psi", est_psi.value},
                           {"s_min_product", est_prod.value},
                           {"gap", gap},
                           {"flagged", flag}});
  }
  return json{
      {"command", "entropy-add"},
      {"config", json{{"n", n},
                      {"k", k},
                      {"instances", instances},
                      {"seed", seed},
                      {"kraus_rank", kraus_rank},
                      {"gap_threshold", kEntropyGapThreshold},
                      {"threshold_note", "gap threshold reflects optimizer precision"},
                      {"optimizer", optimizer_config_to_json(cfg)}}},
      {"instances", std::move(records)},
      {"summary",
       json{{"max_gap", max_gap}, {"flagged", flagged}, {"skipped", skipped}}}};
}

json run_lt_fuzz(Eigen::Index k, Eigen::Index n, const std::vector<double>& ps, int instances,
                 bool unitary_v, std::uint64_t seed) {
  if (k < 1 || n < 1 || k > 32 || n > 32)
    throw DomainError("fuzz matrix dimensions must lie in 1..32");
  if (instances < 1) throw DomainError("need at least one instance");
  json records = json::array();
  double min_rel_slack = 0.0;
  double p1_worst = 0.0;
  int flagged = 0;
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t key = derive_seed(seed, static_cast<std::uint64_t>(i));
    Rng v_rng = Rng::substream(key, 0);
    Rng k_rng = Rng::substream(key, 1);
    const Matrix v = unitary_v ? random_unitary(n, v_rng) : v_rng.gaussian_matrix(k, n);
    const Matrix g = k_rng.gaussian_matrix(n, n);
    const HermitianMatrix kmat(g * g.adjoint());
    for (double p : ps) {
      const LiebThirringResult lt = lieb_thirring_check(v, kmat, p);
      const double rel = lt.slack / lt.scale;
      const bool flag = rel < kFuzzSlackThreshold;
      min_rel_slack = std::min(min_rel_slack, rel);
      if (p == 1.0) p1_worst = std::max(p1_worst, std::abs(rel));
      flagged += flag ? 1 : 0;
      records.push_back(json{{"instance", i},
                             {"p", p},
                             {"lhs", lt.lhs},
                             {"rhs", lt.rhs},
                             {"slack", lt.slack},
                             {"scale", lt.scale},
                             {"relative_slack", rel},
                             {"flagged", flag}});
    }
  }
  return json{{"command", "lt-fuzz"},
              {"config", json{{"k", k},
                              {"n", n},
                              {"p_values", ps},
                              {"instances", instances},
                              {"unitary_v", unitary_v},
                              {"seed", seed},
                              {"slack_threshold", kFuzzSlackThreshold}}},
              {"instances", std::move(records)},
              {"summary", json{{"min_relative_slack", min_rel_slack},
                               {"p1_max_abs_relative_slack", p1_worst},
                               {"flagged", flagged}}}};
}

}  // namespace hadchan
