#ifndef PQS_H
#define PQS_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pqs_status {
  PQS_OK = 0,
  PQS_ERR_INVALID_ARG = 1,
  PQS_ERR_DIMENSION = 2,
  PQS_ERR_RESOURCE = 3,
  PQS_ERR_PARSE = 4,
  PQS_ERR_IO = 5,
  PQS_ERR_NUMERIC = 6,
  PQS_ERR_UNKNOWN_NAME = 7,
  PQS_ERR_INTERNAL = 8
} pqs_status;

/* Opaque density-matrix handle. */
typedef struct pqs_state pqs_state;

typedef struct pqs_options {
  double tol;    /* <= 0 selects the default 1e-10 */
  uint64_t seed; /* randomized operations only */
  long max_dim;  /* <= 0 selects the default 16384 */
} pqs_options;

/* Message for the most recent failure on the calling thread; never NULL. */
const char* pqs_last_error(void);

/* Frees strings returned through char** outputs. */
void pqs_string_free(char* s);

/* Named constructors. Known names: max-entangled, gamma-v, flower,
 * basic-pdit, family, recurrence, squeezed-recurrence, npt-candidate,
 * random-keyed. params_json is an object with the numeric parameters the
 * construction uses (p, d, k, m, shield_dim, dA, dB, dAp, dBp); NULL or ""
 * selects all defaults. */
pqs_status pqs_state_gen(const char* name, const char* params_json,
                         const pqs_options* opt, pqs_state** out);

pqs_status pqs_state_from_json(const char* text, pqs_state** out);
pqs_status pqs_state_to_json(const pqs_state* state, char** out);
pqs_status pqs_state_load(const char* path, pqs_state** out);
pqs_status pqs_state_save(const pqs_state* state, const char* path);
long pqs_state_dim(const pqs_state* state);
void pqs_state_free(pqs_state* state);

/* JSON report: residuals, spectrum, transpose test, block norm, squeezed
 * state, measured-outcome summary, rate. */
pqs_status pqs_analyze(const pqs_state* state, const pqs_options* opt,
                       char** json_out);

/* Measured-outcome ensemble with the environment handed to the adversary,
 * serialized in the ensemble JSON format. */
pqs_status pqs_ccq(const pqs_state* state, const pqs_options* opt,
                   char** json_out);

/* Rate report. construction may be "", "gamma-v", "flower", or "basic-pdit";
 * a nonempty value enables the distillation upper bound, verified against the
 * state before it is reported. */
pqs_status pqs_rates(const pqs_state* state, const char* construction,
                     const pqs_options* opt, char** json_out);

/* CSV over the (p, d, k, m) grid in nested order. */
pqs_status pqs_family_sweep_csv(const double* ps, long np, const long* ds,
                                long nd, const long* ks, long nk,
                                const long* ms, long nm,
                                const pqs_options* opt, char** csv_out);

/* Invariant suite; *all_passed set to 1 when every group passes. */
pqs_status pqs_verify(uint64_t seed, double tol, char** json_out,
                      int* all_passed);

/* Text report for the controlled key demo. */
pqs_status pqs_pqc_demo(long d, long k, const pqs_options* opt,
                        char** text_out);

#ifdef __cplusplus
}
#endif

#endif
