/* C interface to the affq library: random walks on Aff(Q), p-adic boundary
 * extraction and the verification experiments. All objects are opaque and
 * owned by the caller once returned; free them with the matching *_free.
 * Functions return an affq_status; on failure affq_last_error() describes
 * the problem (thread-local, valid until the next call on that thread).
 *
 * Places are passed as uint64_t: a prime number, or AFFQ_INFINITY (0) for
 * the real place. Rationals are passed as "num/den" strings. */
#ifndef AFFQ_AFFQ_H
#define AFFQ_AFFQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(AFFQ_BUILDING_LIBRARY)
#define AFFQ_API __attribute__((visibility("default")))
#else
#define AFFQ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum affq_status {
  AFFQ_OK = 0,
  AFFQ_CHECK_FAILED = 1,
  AFFQ_CONFIG_ERROR = 2,
  AFFQ_BUDGET_EXCEEDED = 3,
  AFFQ_DOMAIN_ERROR = 4,
  AFFQ_PRECISION_ERROR = 5,
  AFFQ_INTERNAL_ERROR = 6
} affq_status;

#define AFFQ_INFINITY ((uint64_t)0)

typedef struct affq_measure affq_measure;
typedef struct affq_report affq_report;

typedef struct affq_run_options {
  int has_seed;
  uint64_t seed;
  int has_replicas;
  size_t replicas;
  size_t threads; /* 0 or 1: single-threaded */
  /* Optional JSON object merged into the experiment's config section. */
  const char* section_overrides;
} affq_run_options;

AFFQ_API const char* affq_version(void);
AFFQ_API const char* affq_last_error(void);
AFFQ_API const char* affq_status_name(affq_status status);

/* Arithmetic on single rationals. */
AFFQ_API affq_status affq_valuation(const char* q, uint64_t p, int64_t* value, int* is_infinite);
AFFQ_API affq_status affq_log_norm(const char* q, uint64_t place, double* out);
AFFQ_API affq_status affq_height(const char* q, double* out);
AFFQ_API affq_status affq_height_plus(const char* q, double* out);
/* Digit rendering "d_v d_{v+1} ... (base p), start=v" into buf. */
AFFQ_API affq_status affq_padic_digits(const char* q, uint64_t p, size_t precision, char* buf, size_t buf_size,
                                       size_t* needed);
AFFQ_API affq_status affq_gauge_count(double k, uint64_t* count);

/* Step distributions. json is the measure block: an array of
 * {"a": "num/den", "b": "num/den", "w": "num/den"}. */
AFFQ_API affq_status affq_measure_from_json(const char* json, affq_measure** out);
AFFQ_API void affq_measure_free(affq_measure* mu);
AFFQ_API size_t affq_measure_atom_count(const affq_measure* mu);
AFFQ_API affq_status affq_measure_validate(const affq_measure* mu, int* degenerate);
AFFQ_API affq_status affq_measure_drift(const affq_measure* mu, uint64_t place, double* out);
/* Writes up to capacity places of P* in ascending order (∞ last). */
AFFQ_API affq_status affq_measure_contracting_set(const affq_measure* mu, uint64_t* places, size_t capacity,
                                                  size_t* count);
AFFQ_API affq_status affq_measure_entropy(const affq_measure* mu, size_t n, double* out);

/* Experiments. config_json is the full config document; options override
 * the seed and replica count when set. */
AFFQ_API size_t affq_experiment_count(void);
AFFQ_API const char* affq_experiment_name(size_t index);
AFFQ_API affq_status affq_run(const char* experiment, const char* config_json, const affq_run_options* options,
                              affq_report** out);
AFFQ_API void affq_report_free(affq_report* report);
AFFQ_API int affq_report_passed(const affq_report* report);
/* 0 pass, 1 check failed, 3 budget exceeded. */
AFFQ_API int affq_report_status(const affq_report* report);
AFFQ_API const char* affq_report_csv(const affq_report* report);
AFFQ_API const char* affq_report_csv_body(const affq_report* report);
AFFQ_API const char* affq_report_json(const affq_report* report);

#ifdef __cplusplus
}
#endif

#endif /* AFFQ_AFFQ_H */
