/*
 * transientnc C API: transient delay/backlog violation bounds and Monte
 * Carlo validation for N-hop tandems of i.i.d. block-fading links.
 *
 * All functions return TNC_OK on success; on failure they return a status
 * code and leave a human-readable message in tnc_last_error() (thread
 * local). Objects are opaque handles created and destroyed by the library.
 */
#ifndef TNC_H
#define TNC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TNC_API __declspec(dllexport)
#else
#define TNC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tnc_status {
  TNC_OK = 0,
  TNC_ERROR_ARGUMENT = 1,    /* bad argument / violated precondition */
  TNC_ERROR_PARSE = 2,       /* scenario file or override syntax */
  TNC_ERROR_NUMERIC = 3,     /* quadrature / optimization failure */
  TNC_ERROR_UNREACHABLE = 4, /* inverse target not reachable within cap */
  TNC_ERROR_INTERNAL = 5
} tnc_status;

typedef enum tnc_family {
  TNC_FAMILY_STATIONARY = 0,
  TNC_FAMILY_SOTAT = 1,
  TNC_FAMILY_WTB = 2,
  TNC_FAMILY_WTB_DELAYED = 3
} tnc_family;

/* Opaque scenario handle (channel + network + arrivals + timing + sweep). */
typedef struct tnc_scenario_s tnc_scenario;

/* Library semantic version, e.g. "0.1.0". */
TNC_API const char* tnc_version(void);

/* Message for the most recent failure on this thread ("" if none). */
TNC_API const char* tnc_last_error(void);

/*
 * Scenario creation. `overrides` is an optional array of "key=value" /
 * "section.key=value" strings applied before validation (the same syntax the
 * CLI's --override flag accepts). The handle must be released with
 * tnc_scenario_free.
 */
TNC_API tnc_status tnc_scenario_load(const char* path,
                                     const char* const* overrides,
                                     size_t n_overrides, tnc_scenario** out);
TNC_API tnc_status tnc_scenario_parse(const char* json_text,
                                      const char* const* overrides,
                                      size_t n_overrides, tnc_scenario** out);
TNC_API void tnc_scenario_free(tnc_scenario* sc);

/* Hex content hash of the parsed scenario (buffer of >= 17 bytes). */
TNC_API tnc_status tnc_scenario_hash(const tnc_scenario* sc, char* buf,
                                     size_t buf_len);

typedef struct tnc_bound_result {
  double probability;   /* min(1, exp(raw_log_value)) */
  double s_opt;         /* minimizing s */
  double raw_log_value; /* natural log of the unclipped bound */
  uint64_t evaluations; /* kernel evaluations spent */
  int at_boundary;      /* optimum pinned at the s search boundary */
  int feasible;         /* 0 for the stationary "no stable s" case */
} tnc_bound_result;

/* Minimized delay bound at the given target delay w (slots). */
TNC_API tnc_status tnc_bound_delay(const tnc_scenario* sc, tnc_family family,
                                   int target_delay, tnc_bound_result* out);

/* Minimized backlog bound P{B(t) > threshold_bits}. */
TNC_API tnc_status tnc_bound_backlog(const tnc_scenario* sc,
                                     double threshold_bits,
                                     tnc_bound_result* out);

/* Channel diagnostics: mean per-slot capacity (bits) and ln V(s). */
TNC_API tnc_status tnc_channel_mean_capacity(const tnc_scenario* sc,
                                             double* out_bits);
TNC_API tnc_status tnc_channel_ln_v(const tnc_scenario* sc, double s,
                                    double* out);

typedef struct tnc_sim_point {
  double sweep_value; /* w (slots) or backlog threshold (bits) */
  double p_hat;
  double ci_lo; /* Wilson 95% interval */
  double ci_hi;
  uint64_t trials;
} tnc_sim_point;

/*
 * Monte Carlo estimates of P(W(t_eval) > w) / P(B(t_eval) > x). `trials`,
 * `seed` and `threads` of 0 fall back to the scenario file's sim section.
 * `out_points` must hold `n` entries. Deterministic in (seed, trials,
 * scenario) for any thread count.
 */
TNC_API tnc_status tnc_sim_delay(const tnc_scenario* sc, const int* w_grid,
                                 size_t n, uint64_t trials, uint64_t seed,
                                 int threads, tnc_sim_point* out_points);
TNC_API tnc_status tnc_sim_backlog(const tnc_scenario* sc,
                                   const double* x_grid, size_t n,
                                   uint64_t trials, uint64_t seed, int threads,
                                   tnc_sim_point* out_points);

/* Smallest w with bound <= eps; smallest per-link SNR (dB) with bound <= eps
 * at the given w. */
TNC_API tnc_status tnc_inverse_delay(const tnc_scenario* sc, tnc_family family,
                                     double eps, int* out_w);
TNC_API tnc_status tnc_inverse_snr(const tnc_scenario* sc, tnc_family family,
                                   double eps, int target_delay,
                                   double* out_snr_db);

/*
 * Whole-report runners backing the CLI subcommands; each returns a CSV
 * document (caller frees with tnc_string_free). `families_csv` is a comma
 * list of family names, NULL or "all" for every applicable family.
 * tnc_report_compare additionally reports whether every verdict row passed.
 */
TNC_API tnc_status tnc_report_bound(const tnc_scenario* sc,
                                    const char* families_csv, char** out_csv);
TNC_API tnc_status tnc_report_simulate(const tnc_scenario* sc, char** out_csv);
TNC_API tnc_status tnc_report_compare(const tnc_scenario* sc,
                                      const char* families_csv, char** out_csv,
                                      int* out_all_valid);
TNC_API tnc_status tnc_report_inverse(const tnc_scenario* sc, const char* mode,
                                      double eps, const char* families_csv,
                                      char** out_csv);
TNC_API void tnc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* TNC_H */
