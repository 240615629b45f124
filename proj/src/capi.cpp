#include "hadchan.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "experiments.hpp"

struct hadchan_channel {
  hadchan::Channel impl;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
hadchan_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return HADCHAN_OK;
  } catch (const hadchan::DimensionError& e) {
    g_last_error = e.what();
    return HADCHAN_ERR_DIMENSION;
  } catch (const hadchan::NotPsdError& e) {
    g_last_error = e.what();
    return HADCHAN_ERR_NOT_PSD;
  } catch (const hadchan::DomainError& e) {
    g_last_error = e.what();
    return HADCHAN_ERR_DOMAIN;
  } catch (const hadchan::NumericError& e) {
    g_last_error = e.what();
    return HADCHAN_ERR_NUMERIC;
  } catch (const hadchan::ParseError& e) {
    g_last_error = e.what();
    return HADCHAN_ERR_PARSE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HADCHAN_ERR_INTERNAL;
  }
}

hadchan_status invalid(const char* message) {
  g_last_error = message;
  return HADCHAN_ERR_INVALID_ARGUMENT;
}

hadchan::OptimizerConfig to_config(const hadchan_opt_config* cfg) {
  hadchan::OptimizerConfig out;
  if (cfg) {
    out.restarts = cfg->restarts;
    out.max_iters = cfg->max_iters;
    out.grad_tol = cfg->grad_tol;
    out.step_init = cfg->step_init;
    out.backtrack_factor = cfg->backtrack_factor;
    out.seed = cfg->seed;
    out.inject_basis_states = cfg->inject_basis_states != 0;
  }
  return out;
}

std::vector<double> to_vector(const double* ps, size_t np) {
  if (!ps || np == 0) throw hadchan::DomainError("need at least one p value");
  return std::vector<double>(ps, ps + np);
}

void emit(const hadchan::json& report, char** out_json) {
  *out_json = dup_string(report.dump(2));
  if (!*out_json) throw hadchan::Error("allocation failure");
}

}  // namespace

extern "C" {

void hadchan_opt_config_init(hadchan_opt_config* cfg) {
  if (!cfg) return;
  const hadchan::OptimizerConfig d;
  cfg->restarts = d.restarts;
  cfg->max_iters = d.max_iters;
  cfg->grad_tol = d.grad_tol;
  cfg->step_init = d.step_init;
  cfg->backtrack_factor = d.backtrack_factor;
  cfg->seed = d.seed;
  cfg->inject_basis_states = d.inject_basis_states ? 1 : 0;
}

const char* hadchan_status_name(hadchan_status status) {
  switch (status) {
    case HADCHAN_OK: return "ok";
    case HADCHAN_ERR_DIMENSION: return "dimension error";
    case HADCHAN_ERR_DOMAIN: return "domain error";
    case HADCHAN_ERR_NOT_PSD: return "not positive semidefinite";
    case HADCHAN_ERR_NUMERIC: return "numeric error";
    case HADCHAN_ERR_PARSE: return "parse error";
    case HADCHAN_ERR_INVALID_ARGUMENT: return "invalid argument";
    case HADCHAN_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* hadchan_last_error(void) { return g_last_error.c_str(); }

void hadchan_string_free(char* s) { std::free(s); }

void hadchan_channel_free(hadchan_channel* ch) { delete ch; }

hadchan_status hadchan_channel_from_json(const char* json_text, hadchan_channel** out) {
  if (!json_text || !out) return invalid("null argument");
  return guarded([&] {
    hadchan::json j;
    try {
      j = hadchan::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
      throw hadchan::ParseError(std::string("invalid JSON: ") + e.what());
    }
    *out = new hadchan_channel{hadchan::channel_from_json(j)};
  });
}

hadchan_status hadchan_channel_from_file(const char* path, hadchan_channel** out) {
  if (!path || !out) return invalid("null argument");
  return guarded([&] {
    std::ifstream in(path);
    if (!in) throw hadchan::ParseError(std::string("cannot open file ") + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    hadchan::json j;
    try {
      j = hadchan::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
      throw hadchan::ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    *out = new hadchan_channel{hadchan::channel_from_json(j)};
  });
}

hadchan_status hadchan_channel_named(const char* name, hadchan_channel** out) {
  if (!name || !out) return invalid("null argument");
  return guarded([&] { *out = new hadchan_channel{hadchan::make_named_channel(name)}; });
}

hadchan_status hadchan_channel_random(int32_t dim_in, int32_t dim_out, int32_t kraus_rank,
                                      uint64_t seed, hadchan_channel** out) {
  if (!out) return invalid("null argument");
  return guarded([&] {
    *out = new hadchan_channel{
        hadchan::Channel(hadchan::random_channel(dim_in, dim_out, kraus_rank, seed))};
  });
}

hadchan_status hadchan_channel_random_diagonal(int32_t n, int32_t rank,
                                               int32_t trace_preserving, uint64_t seed,
                                               hadchan_channel** out) {
  if (!out) return invalid("null argument");
  return guarded([&] {
    *out = new hadchan_channel{
        hadchan::Channel(hadchan::random_diagonal(n, rank, seed, trace_preserving != 0))};
  });
}

hadchan_status hadchan_channel_tensor(const hadchan_channel* a, const hadchan_channel* b,
                                      hadchan_channel** out) {
  if (!a || !b || !out) return invalid("null argument");
  return guarded([&] {
    *out = new hadchan_channel{hadchan::Channel(hadchan::tensor(a->impl, b->impl))};
  });
}

hadchan_status hadchan_channel_to_json(const hadchan_channel* ch, char** out_json) {
  if (!ch || !out_json) return invalid("null argument");
  return guarded([&] { emit(hadchan::channel_to_json(ch->impl), out_json); });
}

int32_t hadchan_channel_dim_in(const hadchan_channel* ch) {
  return ch ? static_cast<int32_t>(ch->impl.dim_in()) : -1;
}

int32_t hadchan_channel_dim_out(const hadchan_channel* ch) {
  return ch ? static_cast<int32_t>(ch->impl.dim_out()) : -1;
}

int32_t hadchan_channel_is_diagonal(const hadchan_channel* ch) {
  return ch ? (ch->impl.kind() == hadchan::Channel::Kind::diagonal ? 1 : 0) : -1;
}

int32_t hadchan_channel_is_cp(const hadchan_channel* ch) {
  return ch ? (hadchan::is_cp(ch->impl) ? 1 : 0) : -1;
}

int32_t hadchan_channel_is_trace_preserving(const hadchan_channel* ch) {
  return ch ? (ch->impl.is_trace_preserving() ? 1 : 0) : -1;
}

hadchan_status hadchan_estimate_nu_p(const hadchan_channel* ch, double p,
                                     const hadchan_opt_config* cfg, char** out_json) {
  if (!ch || !out_json) return invalid("null argument");
  return guarded([&] {
    const hadchan::PurityEstimate est = hadchan::estimate_nu_p(ch->impl, p, to_config(cfg));
    emit(hadchan::purity_estimate_to_json(est), out_json);
  });
}

hadchan_status hadchan_estimate_s_min(const hadchan_channel* ch,
                                      const hadchan_opt_config* cfg, char** out_json) {
  if (!ch || !out_json) return invalid("null argument");
  return guarded([&] {
    const hadchan::EntropyEstimate est = hadchan::estimate_s_min(ch->impl, to_config(cfg));
    emit(hadchan::entropy_estimate_to_json(est), out_json);
  });
}

hadchan_status hadchan_run_nu(const hadchan_channel* ch, double p,
                              const hadchan_opt_config* cfg, char** out_json) {
  if (!ch || !out_json) return invalid("null argument");
  return guarded([&] { emit(hadchan::run_nu(ch->impl, p, to_config(cfg)), out_json); });
}

hadchan_status hadchan_run_mult_test(int32_t n, int32_t k, const double* ps, size_t np,
                                     int32_t instances, uint64_t seed, int32_t kraus_rank,
                                     const hadchan_opt_config* cfg, char** out_json) {
  if (!out_json) return invalid("null argument");
  return guarded([&] {
    emit(hadchan::run_mult_test(n, k, to_vector(ps, np), instances, seed, to_config(cfg),
                                kraus_rank),
         out_json);
  });
}

hadchan_status hadchan_run_replay(int32_t n, int32_t k, const double* ps, size_t np,
                                  int32_t instances, uint64_t seed, int32_t kraus_rank,
                                  const hadchan_opt_config* cfg, char** out_json) {
  if (!out_json) return invalid("null argument");
  return guarded([&] {
    emit(hadchan::run_replay(n, k, to_vector(ps, np), instances, seed, to_config(cfg),
                             kraus_rank),
         out_json);
  });
}

hadchan_status hadchan_run_replay_single(const hadchan_channel* phi,
                                         const hadchan_channel* psi, const char* rho_json,
                                         double p, const hadchan_opt_config* cfg,
                                         char** out_json) {
  if (!phi || !psi || !rho_json || !out_json) return invalid("null argument");
  return guarded([&] {
    if (phi->impl.kind() != hadchan::Channel::Kind::diagonal)
      throw hadchan::DomainError("replay needs a diagonal first channel");
    hadchan::json j;
    try {
      j = hadchan::json::parse(rho_json);
    } catch (const nlohmann::json::parse_error& e) {
      throw hadchan::ParseError(std::string("invalid state JSON: ") + e.what());
    }
    const hadchan::DensityMatrix rho = hadchan::density_from_json(j);
    emit(hadchan::run_replay_single(phi->impl.diagonal(), psi->impl, rho, p, to_config(cfg)),
         out_json);
  });
}

hadchan_status hadchan_run_wh(int32_t d, double p, const hadchan_opt_config* cfg,
                              char** out_json) {
  if (!out_json) return invalid("null argument");
  return guarded([&] { emit(hadchan::run_wh(d, p, to_config(cfg)), out_json); });
}

hadchan_status hadchan_run_entropy_add(int32_t n, int32_t k, int32_t instances, uint64_t seed,
                                       int32_t kraus_rank, const hadchan_opt_config* cfg,
                                       char** out_json) {
  if (!out_json) return invalid("null argument");
  return guarded([&] {
    emit(hadchan::run_entropy_add(n, k, instances, seed, to_config(cfg), kraus_rank),
         out_json);
  });
}

hadchan_status hadchan_run_lt_fuzz(int32_t k, int32_t n, const double* ps, size_t np,
                                   int32_t instances, int32_t unitary_v, uint64_t seed,
                                   char** out_json) {
  if (!out_json) return invalid("null argument");
  return guarded([&] {
    emit(hadchan::run_lt_fuzz(k, n, to_vector(ps, np), instances, unitary_v != 0, seed),
         out_json);
  });
}

}  // extern "C"
