/* C interface to libsavchaos. Every call returns a status; on failure the
 * message is available from savchaos_last_error() on the calling thread. */
#ifndef SAVCHAOS_H
#define SAVCHAOS_H

#include <stddef.h>

#if defined(SAVCHAOS_BUILDING)
#define SAVCHAOS_API __attribute__((visibility("default")))
#else
#define SAVCHAOS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum savchaos_status {
  SAVCHAOS_OK = 0,
  SAVCHAOS_E_DOMAIN = 1,
  SAVCHAOS_E_PARAMETER = 2,
  SAVCHAOS_E_EMPTY_REQUEST = 3,
  SAVCHAOS_E_SINGULAR_RATE = 4,
  SAVCHAOS_E_DEGENERATE = 5,
  SAVCHAOS_E_PRECISION = 6,
  SAVCHAOS_E_NULL = 7,     /* required pointer argument was NULL */
  SAVCHAOS_E_BUFFER = 8,   /* caller buffer too small */
  SAVCHAOS_E_INTERNAL = 9
} savchaos_status;

typedef enum savchaos_arithmetic {
  SAVCHAOS_ARITH_AUTO = 0,
  SAVCHAOS_ARITH_BINARY64 = 1,
  SAVCHAOS_ARITH_EXTENDED = 2,
  SAVCHAOS_ARITH_ADAPTIVE = 3
} savchaos_arithmetic;

SAVCHAOS_API const char* savchaos_status_string(savchaos_status s);
SAVCHAOS_API const char* savchaos_last_error(void);
SAVCHAOS_API const char* savchaos_version(void);

/* ---- words ------------------------------------------------------------ */

/* Writes n symbols '0'/'1' and a terminating NUL; buf must hold n + 1. */
SAVCHAOS_API savchaos_status savchaos_fibonacci_word(size_t n, char* buf, size_t buflen);

/* Symbols 1/2 of T^k(x0), k = 0..n-1. */
SAVCHAOS_API savchaos_status savchaos_rotation_coding(double alpha, double x0, size_t n,
                                                      unsigned char* out);

/* ---- process ---------------------------------------------------------- */

typedef struct savchaos_process savchaos_process;

typedef struct savchaos_params {
  double r, v1, v2, rho;
  int chaotic;  /* nonzero when built from b */
  double b;
} savchaos_params;

typedef struct savchaos_chaotic_info {
  double b, delta, rho, r;
  size_t truncation_order;
  double truncation_bound;
  double eta;         /* 500 b (1 - 1/b) */
  double gap_length;  /* 500 (1 - 1/b) */
  double k_lo, k_hi;  /* attractor interval */
  double gap_lo, gap_hi;
  double breakpoint;  /* b (1 - delta) */
} savchaos_chaotic_info;

SAVCHAOS_API savchaos_status savchaos_process_create(double r, double v1, double v2, double rho,
                                                     savchaos_process** out);
SAVCHAOS_API savchaos_status savchaos_process_create_chaotic(double b, double precision_target,
                                                             savchaos_process** out);
SAVCHAOS_API void savchaos_process_destroy(savchaos_process* p);
SAVCHAOS_API savchaos_status savchaos_process_params(const savchaos_process* p, savchaos_params* out);
/* SAVCHAOS_E_PARAMETER for processes not built from b. */
SAVCHAOS_API savchaos_status savchaos_process_chaotic_info(const savchaos_process* p,
                                                           savchaos_chaotic_info* out);

SAVCHAOS_API savchaos_status savchaos_step(const savchaos_process* p, double x, double* out);
SAVCHAOS_API savchaos_status savchaos_closed_form(double v, double r, double s0, size_t n, double* out);
SAVCHAOS_API savchaos_status savchaos_absorbing_bound(const savchaos_process* p, double* out);

/* Writes S_0..S_n into out[0..n]. */
SAVCHAOS_API savchaos_status savchaos_simulate(const savchaos_process* p, double s0, size_t n,
                                               savchaos_arithmetic arithmetic, double* out);

/* ---- semiconjugacy ---------------------------------------------------- */

typedef struct savchaos_gaps savchaos_gaps;

SAVCHAOS_API savchaos_status savchaos_gaps_create(double alpha, double b, size_t order,
                                                  savchaos_gaps** out);
SAVCHAOS_API void savchaos_gaps_destroy(savchaos_gaps* g);
SAVCHAOS_API savchaos_status savchaos_gaps_tail_mass(const savchaos_gaps* g, double* out);
SAVCHAOS_API savchaos_status savchaos_h_evaluate(const savchaos_gaps* g, double x, double* out);
/* *defined is 0 where the residual is not evaluated (exclusion band). */
SAVCHAOS_API savchaos_status savchaos_semiconjugacy_residual(const savchaos_gaps* g,
                                                             const savchaos_process* chaotic,
                                                             double x, double* out, int* defined);
SAVCHAOS_API savchaos_status savchaos_breakpoint_from_gaps(const savchaos_gaps* g, double* out);
SAVCHAOS_API savchaos_status savchaos_predict_frequency(const savchaos_gaps* g,
                                                        const savchaos_process* chaotic, double lo,
                                                        double hi, double* predicted,
                                                        double* truncation_error);

/* ---- analysis --------------------------------------------------------- */

typedef enum savchaos_cycle_status {
  SAVCHAOS_CYCLE_FOUND = 0,
  SAVCHAOS_CYCLE_NOT_FOUND = 1,
  SAVCHAOS_CYCLE_INCONCLUSIVE = 2
} savchaos_cycle_status;

typedef struct savchaos_cycle_options {
  size_t max_iter;
  double tol;
  size_t max_period;
  savchaos_arithmetic arithmetic;
} savchaos_cycle_options;

SAVCHAOS_API void savchaos_cycle_options_default(savchaos_cycle_options* o);

typedef struct savchaos_cycle {
  savchaos_cycle_status status;
  size_t period;
  size_t transient_length;
  double residual;
} savchaos_cycle;

/* Cycle points go to points[0..period-1] when capacity allows; otherwise
 * SAVCHAOS_E_BUFFER with *out still filled. points may be NULL with
 * capacity 0. */
SAVCHAOS_API savchaos_status savchaos_detect_cycle(const savchaos_process* p, double s0,
                                                   const savchaos_cycle_options* o,
                                                   savchaos_cycle* out, double* points,
                                                   size_t capacity);

/* Cluster representatives; *count receives the number of clusters. */
SAVCHAOS_API savchaos_status savchaos_omega_limit(const savchaos_process* p, double s0,
                                                  size_t burn_in, size_t samples, double resolution,
                                                  savchaos_arithmetic arithmetic, double* points,
                                                  size_t capacity, size_t* count);

typedef enum savchaos_verdict_kind {
  SAVCHAOS_PERIODIC = 0,
  SAVCHAOS_CANTOR_LIKE = 1,
  SAVCHAOS_INCONCLUSIVE = 2
} savchaos_verdict_kind;

typedef struct savchaos_classify_options {
  savchaos_cycle_options cycle;
  size_t burn_in;
  size_t samples;
  const double* resolutions; /* NULL: (M/400) * {1, 1/2, 1/4, 1/8} */
  size_t resolution_count;
} savchaos_classify_options;

SAVCHAOS_API void savchaos_classify_options_default(savchaos_classify_options* o);

typedef struct savchaos_verdict savchaos_verdict;

SAVCHAOS_API savchaos_status savchaos_classify(const savchaos_process* p,
                                               const savchaos_classify_options* o,
                                               savchaos_verdict** out);
SAVCHAOS_API void savchaos_verdict_destroy(savchaos_verdict* v);
SAVCHAOS_API savchaos_verdict_kind savchaos_verdict_get_kind(const savchaos_verdict* v);
SAVCHAOS_API size_t savchaos_verdict_cycle_count(const savchaos_verdict* v);
/* Cycle i (0-based); *points stays valid until the verdict is destroyed. */
SAVCHAOS_API savchaos_status savchaos_verdict_cycle(const savchaos_verdict* v, size_t i,
                                                    savchaos_cycle* out, const double** points);
/* which: 0 for the orbit of f(rho-), 1 for f(rho). */
SAVCHAOS_API savchaos_status savchaos_verdict_critical(const savchaos_verdict* v, int which,
                                                       savchaos_cycle* out);
SAVCHAOS_API size_t savchaos_verdict_resolution_count(const savchaos_verdict* v);
SAVCHAOS_API savchaos_status savchaos_verdict_clusters(const savchaos_verdict* v, size_t i,
                                                       double* resolution, size_t* count);
SAVCHAOS_API const char* savchaos_verdict_evidence(const savchaos_verdict* v);

typedef struct savchaos_sensitivity {
  double s0, epsilon, eta;
  int found;
  double witness_s0prime;
  size_t witness_k;
  double achieved_separation;
  double deficit; /* eta minus best separation, rounded to double */
  size_t iterations;
} savchaos_sensitivity;

/* eta <= 0 selects 500 b (1 - 1/b); that default needs a process built from b. */
SAVCHAOS_API savchaos_status savchaos_sensitivity_probe(const savchaos_process* p, double s0,
                                                        double epsilon, double eta,
                                                        size_t max_iter,
                                                        savchaos_arithmetic arithmetic,
                                                        savchaos_sensitivity* out);

typedef struct savchaos_frequency {
  double lo, hi;
  size_t n;
  size_t count;
  double freq;
  int has_prediction;
  double predicted;
  double truncation_error;
} savchaos_frequency;

/* gaps may be NULL; when given, p must be built from the same b. */
SAVCHAOS_API savchaos_status savchaos_visit_frequency(const savchaos_process* p,
                                                      const savchaos_gaps* gaps, double s0,
                                                      double lo, double hi, size_t n,
                                                      savchaos_arithmetic arithmetic,
                                                      savchaos_frequency* out);

/* ---- sweep ------------------------------------------------------------ */

typedef struct savchaos_axis {
  double min, max, step;
} savchaos_axis;

typedef struct savchaos_sweep_spec {
  savchaos_axis r, v1, v2, rho;
  savchaos_classify_options options;
  unsigned threads; /* 0: hardware concurrency */
} savchaos_sweep_spec;

typedef struct savchaos_sweep_row {
  double r, v1, v2, rho;
  savchaos_verdict_kind verdict;
  size_t total_period;
} savchaos_sweep_row;

typedef void (*savchaos_sweep_sink)(const savchaos_sweep_row* row, void* user);

/* Rows are delivered in lexicographic (r, v1, v2, rho) order after all cells ran. */
SAVCHAOS_API savchaos_status savchaos_sweep(const savchaos_sweep_spec* spec,
                                            savchaos_sweep_sink sink, void* user);

/* ---- verify ----------------------------------------------------------- */

typedef struct savchaos_verify_options {
  int override_tol;
  double tol;
  size_t gap_order;
} savchaos_verify_options;

SAVCHAOS_API void savchaos_verify_options_default(savchaos_verify_options* o);

typedef struct savchaos_check {
  const char* module;
  const char* name;
  int passed;
  const char* detail;
  double seconds;
} savchaos_check;

typedef void (*savchaos_check_sink)(const savchaos_check* check, void* user);

/* Streams each check to sink; *failures receives the number of failed checks. */
SAVCHAOS_API savchaos_status savchaos_verify(const savchaos_verify_options* o,
                                             savchaos_check_sink sink, void* user,
                                             size_t* failures);

#ifdef __cplusplus
}
#endif

#endif
