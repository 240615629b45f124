// Command-line front end. Talks to the core exclusively through the C API
// (include/hadchan.h); vendored headers handle flags and presentation.
//
// Exit codes: 0 success, 1 experiment-level failure (a flagged gap or
// slack), 2 input validation error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hadchan.h"

using nlohmann::json;

namespace {

constexpr int kExitFlagged = 1;
constexpr int kExitInvalid = 2;

struct OutputOptions {
  std::string format = "json";
  std::string out_path;
};

struct ChannelHandle {
  hadchan_channel* ptr = nullptr;
  ~ChannelHandle() { hadchan_channel_free(ptr); }
};

[[noreturn]] void die_invalid(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  std::exit(kExitInvalid);
}

void check(hadchan_status status) {
  if (status != HADCHAN_OK)
    die_invalid(std::string(hadchan_status_name(status)) + ": " + hadchan_last_error());
}

ChannelHandle load_channel(const std::string& file, const std::string& named) {
  if (file.empty() == named.empty())
    die_invalid("provide exactly one of --channel <file> or --named <id>");
  ChannelHandle ch;
  check(file.empty() ? hadchan_channel_named(named.c_str(), &ch.ptr)
                     : hadchan_channel_from_file(file.c_str(), &ch.ptr));
  return ch;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) die_invalid("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void render_summary(const json& rep) {
  std::cout << "command: " << rep["command"].get<std::string>() << "\n";
  for (const auto& [key, value] : rep["summary"].items())
    std::cout << "  " << key << ": " << value.dump() << "\n";
}

void render_table(const json& rep) {
  const std::string command = rep["command"].get<std::string>();
  if (command == "nu") {
    const json& est = rep["estimate"];
    std::cout << "command: nu\n"
              << "  p: " << est["p"].dump() << "\n"
              << "  value: " << fmt(est["value"].get<double>()) << "\n"
              << "  converged: " << est["converged"].dump() << "\n"
              << "  restarts: " << est["per_restart_values"].size() << "\n";
    return;
  }
  if (command == "wh") {
    std::cout << "command: wh\n"
              << "  product_state_power: " << fmt(rep["product_state_power"].get<double>())
              << "\n"
              << "  entangled_power:     " << fmt(rep["entangled_power"].get<double>()) << "\n"
              << "  power_ratio:         " << fmt(rep["power_ratio"].get<double>()) << "\n"
              << "  violation:           " << rep["violation"].dump() << "\n"
              << "  nu_estimate:         "
              << fmt(rep["nu_estimate"]["value"].get<double>()) << "\n";
    return;
  }
  if (command == "mult-test" || command == "entropy-add") {
    const bool mult = command == "mult-test";
    std::printf(mult ? "%8s %6s %12s %12s %12s %12s\n"
                     : "%8s %6s %12s %12s %12s %12s\n",
                "instance", mult ? "p" : "", mult ? "nu_phi" : "s_min_phi",
                mult ? "nu_psi" : "s_min_psi", mult ? "nu_product" : "s_min_product",
                "gap");
    for (const json& rec : rep["instances"]) {
      if (rec.contains("skipped")) continue;
      std::printf("%8d %6s %12s %12s %12s %12s\n", rec["instance"].get<int>(),
                  mult ? fmt(rec["p"].get<double>()).c_str() : "",
                  fmt(rec[mult ? "nu_phi" : "s_min_phi"].get<double>()).c_str(),
                  fmt(rec[mult ? "nu_psi" : "s_min_psi"].get<double>()).c_str(),
                  fmt(rec[mult ? "nu_product" : "s_min_product"].get<double>()).c_str(),
                  fmt(rec["gap"].get<double>()).c_str());
    }
    render_summary(rep);
    return;
  }
  if (command == "replay") {
    std::printf("%8s %6s %8s %12s %12s %14s\n", "instance", "p", "verdict", "worst_r",
                "s1", "spectrum");
    for (const json& rec : rep["instances"]) {
      const json& cert = rec["certificate"];
      double worst_r = 0.0;
      if (cert.contains("residuals"))
        for (const auto& [name, v] : cert["residuals"].items())
          worst_r = std::max(worst_r, v.get<double>());
      const std::string s1 = cert["slacks"].contains("s1")
                                 ? fmt(cert["slacks"]["s1"].get<double>())
                                 : std::string("-");
      std::printf("%8d %6s %8s %12s %12s %14s\n", rec["instance"].get<int>(),
                  fmt(cert["p"].get<double>()).c_str(),
                  cert["verdict"].get<std::string>().c_str(), fmt(worst_r).c_str(),
                  s1.c_str(), fmt(cert["spectrum_sharing"].get<double>()).c_str());
    }
    render_summary(rep);
    return;
  }
  render_summary(rep);
}

int finish(char* raw_report, const OutputOptions& opts) {
  const std::string report = raw_report ? raw_report : "";
  hadchan_string_free(raw_report);
  json rep;
  try {
    rep = json::parse(report);
  } catch (const json::parse_error& e) {
    die_invalid(std::string("internal: report is not valid JSON: ") + e.what());
  }
  if (!opts.out_path.empty()) {
    std::ofstream out(opts.out_path);
    if (!out) die_invalid("cannot write " + opts.out_path);
    out << report << "\n";
  }
  if (opts.format == "table")
    render_table(rep);
  else if (opts.out_path.empty())
    std::cout << report << "\n";
  const int flagged = rep.contains("summary") ? rep["summary"].value("flagged", 0) : 0;
  return flagged > 0 ? kExitFlagged : 0;
}

void add_output_flags(CLI::App* sub, OutputOptions& opts) {
  sub->add_option("--format", opts.format, "Report format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
  sub->add_option("--out", opts.out_path, "Write the JSON report to this file");
}

void add_optimizer_flags(CLI::App* sub, hadchan_opt_config& cfg) {
  sub->add_option("--restarts", cfg.restarts, "Random optimizer restarts")
      ->capture_default_str();
  sub->add_option("--max-iters", cfg.max_iters, "Iteration cap per restart")
      ->capture_default_str();
  sub->add_option("--grad-tol", cfg.grad_tol, "Tangent-gradient stopping norm")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diagonal-channel output purity experiments"};
  app.require_subcommand(1);

  hadchan_opt_config cfg;
  hadchan_opt_config_init(&cfg);
  std::uint64_t seed = 0;
  OutputOptions output;

  std::string channel_file, channel_named;
  double p_single = 2.0;
  std::vector<double> p_list{1.0, 1.5, 2.0, 3.0, 5.0};
  int instances = 10;
  int n = 3, k = 2, d = 3;
  int kraus_rank = 3;
  bool unitary_v = false;
  std::string phi_file, psi_file, rho_file;

  CLI::App* nu = app.add_subcommand("nu", "Estimate the maximal output p-norm of a channel");
  nu->add_option("--channel", channel_file, "Channel JSON file");
  nu->add_option("--named", channel_named, "Named channel (identity:<d>, dephase:<n>, wh<d>)");
  nu->add_option("--p", p_single, "Norm exponent p >= 1")->required();
  nu->add_option("--seed", seed, "Seed for the optimizer starts");
  add_optimizer_flags(nu, cfg);
  add_output_flags(nu, output);

  CLI::App* mult = app.add_subcommand(
      "mult-test", "Multiplicativity of nu_p for diagonal (x) random channel pairs");
  mult->add_option("--n", n, "Diagonal channel dimension")->capture_default_str();
  mult->add_option("--k", k, "Second channel dimension")->capture_default_str();
  mult->add_option("--p", p_list, "p grid")->delimiter(',')->capture_default_str();
  mult->add_option("--instances", instances, "Sampled channel pairs")->capture_default_str();
  mult->add_option("--seed", seed, "Master seed");
  mult->add_option("--kraus-rank", kraus_rank, "Kraus rank of the sampled second channel")
      ->capture_default_str();
  add_optimizer_flags(mult, cfg);
  add_output_flags(mult, output);

  CLI::App* replay = app.add_subcommand(
      "replay", "Factorization certificates on sampled or file-given instances");
  replay->add_option("--n", n, "Diagonal channel dimension")->capture_default_str();
  replay->add_option("--k", k, "Second channel dimension")->capture_default_str();
  replay->add_option("--p", p_list, "p grid")->delimiter(',')->capture_default_str();
  replay->add_option("--instances", instances, "Sampled instances")->capture_default_str();
  replay->add_option("--seed", seed, "Master seed");
  replay->add_option("--kraus-rank", kraus_rank, "Kraus rank of the sampled second channel")
      ->capture_default_str();
  replay->add_option("--phi", phi_file, "Diagonal channel JSON file (single instance)");
  replay->add_option("--psi", psi_file, "Second channel JSON file (single instance)");
  replay->add_option("--rho", rho_file, "Input state JSON file (single instance)");
  add_optimizer_flags(replay, cfg);
  add_output_flags(replay, output);

  CLI::App* wh = app.add_subcommand(
      "wh", "Antisymmetric-pair channel: product states versus the entangled input");
  wh->add_option("--d", d, "Channel dimension")->capture_default_str();
  wh->add_option("--p", p_single, "Norm exponent")->capture_default_str();
  wh->add_option("--seed", seed, "Seed for the optimizer starts");
  add_optimizer_flags(wh, cfg);
  add_output_flags(wh, output);

  CLI::App* entropy = app.add_subcommand(
      "entropy-add", "Additivity of the minimal output entropy on sampled pairs");
  entropy->add_option("--n", n, "Diagonal channel dimension")->capture_default_str();
  entropy->add_option("--k", k, "Second channel dimension")->capture_default_str();
  entropy->add_option("--instances", instances, "Sampled channel pairs")
      ->capture_default_str();
  entropy->add_option("--seed", seed, "Master seed");
  entropy->add_option("--kraus-rank", kraus_rank, "Kraus rank of the sampled second channel")
      ->capture_default_str();
  add_optimizer_flags(entropy, cfg);
  add_output_flags(entropy, output);

  CLI::App* fuzz = app.add_subcommand("lt-fuzz",
                                      "Fuzz the trace inequality on random (V, K) pairs");
  fuzz->add_option("--k", k, "Rows of V")->capture_default_str();
  fuzz->add_option("--n", n, "Dimension of K")->capture_default_str();
  fuzz->add_option("--p", p_list, "p grid")->delimiter(',')->capture_default_str();
  fuzz->add_option("--instances", instances, "Sampled pairs")->capture_default_str();
  fuzz->add_option("--seed", seed, "Master seed");
  fuzz->add_flag("--unitary-v", unitary_v, "Sample V Haar-unitary instead of Gaussian");
  add_output_flags(fuzz, output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  cfg.seed = seed;
  const auto started = std::chrono::steady_clock::now();
  char* report = nullptr;

  if (nu->parsed()) {
    ChannelHandle ch = load_channel(channel_file, channel_named);
    check(hadchan_run_nu(ch.ptr, p_single, &cfg, &report));
  } else if (mult->parsed()) {
    check(hadchan_run_mult_test(n, k, p_list.data(), p_list.size(), instances, seed,
                                kraus_rank, &cfg, &report));
  } else if (replay->parsed()) {
    const bool file_mode = !phi_file.empty() || !psi_file.empty() || !rho_file.empty();
    if (file_mode) {
      if (phi_file.empty() || psi_file.empty() || rho_file.empty())
        die_invalid("file-driven replay needs --phi, --psi, and --rho together");
      if (p_list.size() != 1)
        die_invalid("file-driven replay takes a single --p value");
      ChannelHandle phi, psi;
      check(hadchan_channel_from_file(phi_file.c_str(), &phi.ptr));
      check(hadchan_channel_from_file(psi_file.c_str(), &psi.ptr));
      const std::string rho = read_file(rho_file);
      check(hadchan_run_replay_single(phi.ptr, psi.ptr, rho.c_str(), p_list[0], &cfg,
                                      &report));
    } else {
      check(hadchan_run_replay(n, k, p_list.data(), p_list.size(), instances, seed,
                               kraus_rank, &cfg, &report));
    }
  } else if (wh->parsed()) {
    check(hadchan_run_wh(d, p_single, &cfg, &report));
  } else if (entropy->parsed()) {
    check(hadchan_run_entropy_add(n, k, instances, seed, kraus_rank, &cfg, &report));
  } else if (fuzz->parsed()) {
    check(hadchan_run_lt_fuzz(k, n, p_list.data(), p_list.size(), instances,
                              unitary_v ? 1 : 0, seed, &report));
  }

  const double elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
          .count();
  std::fprintf(stderr, "elapsed: %.1f ms\n", elapsed_ms);
  return finish(report, output);
}
