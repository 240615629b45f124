/* hadchan: Hadamard-product (diagonal) quantum channels, maximal output
 * p-norms, and machine-checked multiplicativity certificates.
 *
 * C interface to the shared library. All functions that produce reports
 * return a heap-allocated JSON string through out_json; release it with
 * hadchan_string_free. Channels are opaque handles released with
 * hadchan_channel_free. Functions returning hadchan_status report failure
 * details through hadchan_last_error().
 *
 * Report runners are deterministic: identical arguments (including seeds)
 * reproduce the returned JSON byte for byte.
 */
#ifndef HADCHAN_H
#define HADCHAN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hadchan_status {
  HADCHAN_OK = 0,
  HADCHAN_ERR_DIMENSION = 1,   /* operand shapes violate the contract */
  HADCHAN_ERR_DOMAIN = 2,      /* scalar argument out of range */
  HADCHAN_ERR_NOT_PSD = 3,     /* required-PSD matrix has a bad eigenvalue */
  HADCHAN_ERR_NUMERIC = 4,     /* iterative routine failed to converge */
  HADCHAN_ERR_PARSE = 5,       /* malformed or invariant-violating input */
  HADCHAN_ERR_INVALID_ARGUMENT = 6, /* null pointer or bad handle */
  HADCHAN_ERR_INTERNAL = 7
} hadchan_status;

/* Opaque completely positive map (Kraus or diagonal representation). */
typedef struct hadchan_channel hadchan_channel;

typedef struct hadchan_opt_config {
  int32_t restarts;            /* Haar-random starts (default 20) */
  int32_t max_iters;           /* per-restart iteration cap (default 2000) */
  double grad_tol;             /* tangent-gradient stopping norm (default 1e-9) */
  double step_init;            /* line-search initial step (default 1.0) */
  double backtrack_factor;     /* step shrink factor in (0,1) (default 0.5) */
  uint64_t seed;
  int32_t inject_basis_states; /* nonzero: add basis vectors as starts (default 1) */
} hadchan_opt_config;

/* Fill cfg with the defaults above. */
void hadchan_opt_config_init(hadchan_opt_config* cfg);

const char* hadchan_status_name(hadchan_status status);

/* Message for the most recent failure on this thread; empty after success. */
const char* hadchan_last_error(void);

void hadchan_string_free(char* s);
void hadchan_channel_free(hadchan_channel* ch);

/* Channel JSON schema:
 *   {"kind": "kraus"|"diagonal"|"choi", "dim_in": n, "dim_out": m,
 *    "payload": ...}
 * payload is a list of matrices (kraus) or one Hermitian matrix (diagonal C,
 * choi). Matrices use {"rows": r, "cols": c, "data": [[re, im], ...]}
 * row-major. Loaders validate channel invariants and name the violated one
 * on failure. */
hadchan_status hadchan_channel_from_json(const char* json_text, hadchan_channel** out);
hadchan_status hadchan_channel_from_file(const char* path, hadchan_channel** out);

/* "identity:<d>", "dephase:<n>", "wh:<d>" (or "wh<d>"). */
hadchan_status hadchan_channel_named(const char* name, hadchan_channel** out);

/* Trace-preserving random channel, deterministic in seed. Requires
 * kraus_rank * dim_out >= dim_in. */
hadchan_status hadchan_channel_random(int32_t dim_in, int32_t dim_out, int32_t kraus_rank,
                                      uint64_t seed, hadchan_channel** out);

/* Random diagonal channel with C = G G†, rank-limited; trace_preserving
 * rescales so diag(C) = 1. */
hadchan_status hadchan_channel_random_diagonal(int32_t n, int32_t rank,
                                               int32_t trace_preserving, uint64_t seed,
                                               hadchan_channel** out);

hadchan_status hadchan_channel_tensor(const hadchan_channel* a, const hadchan_channel* b,
                                      hadchan_channel** out);

hadchan_status hadchan_channel_to_json(const hadchan_channel* ch, char** out_json);

/* Accessors return -1 on a null handle. */
int32_t hadchan_channel_dim_in(const hadchan_channel* ch);
int32_t hadchan_channel_dim_out(const hadchan_channel* ch);
int32_t hadchan_channel_is_diagonal(const hadchan_channel* ch);
int32_t hadchan_channel_is_cp(const hadchan_channel* ch);
int32_t hadchan_channel_is_trace_preserving(const hadchan_channel* ch);

/* Point estimates (JSON-encoded PurityEstimate / EntropyEstimate). */
hadchan_status hadchan_estimate_nu_p(const hadchan_channel* ch, double p,
                                     const hadchan_opt_config* cfg, char** out_json);
hadchan_status hadchan_estimate_s_min(const hadchan_channel* ch,
                                      const hadchan_opt_config* cfg, char** out_json);

/* Experiment runners; the returned JSON is exactly what the CLI prints.
 * Every report carries summary.flagged (records outside their threshold). */
hadchan_status hadchan_run_nu(const hadchan_channel* ch, double p,
                              const hadchan_opt_config* cfg, char** out_json);

hadchan_status hadchan_run_mult_test(int32_t n, int32_t k, const double* ps, size_t np,
                                     int32_t instances, uint64_t seed, int32_t kraus_rank,
                                     const hadchan_opt_config* cfg, char** out_json);

hadchan_status hadchan_run_replay(int32_t n, int32_t k, const double* ps, size_t np,
                                  int32_t instances, uint64_t seed, int32_t kraus_rank,
                                  const hadchan_opt_config* cfg, char** out_json);

/* Single-instance replay from explicit objects. phi must be diagonal; rho is
 * a density matrix in the matrix JSON encoding. */
hadchan_status hadchan_run_replay_single(const hadchan_channel* phi,
                                         const hadchan_channel* psi, const char* rho_json,
                                         double p, const hadchan_opt_config* cfg,
                                         char** out_json);

hadchan_status hadchan_run_wh(int32_t d, double p, const hadchan_opt_config* cfg,
                              char** out_json);

hadchan_status hadchan_run_entropy_add(int32_t n, int32_t k, int32_t instances, uint64_t seed,
                                       int32_t kraus_rank, const hadchan_opt_config* cfg,
                                       char** out_json);

hadchan_status hadchan_run_lt_fuzz(int32_t k, int32_t n, const double* ps, size_t np,
                                   int32_t instances, int32_t unitary_v, uint64_t seed,
                                   char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* HADCHAN_H */
