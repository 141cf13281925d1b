/* C interface to the periodic-drift estimation library.
 *
 * All functions returning ctreg_status set a thread-local error message on
 * failure, readable via ctreg_last_error().  Strings returned through char**
 * out-parameters are heap-allocated; release them with ctreg_string_free().
 * Handles are opaque; each *_free accepts NULL.
 */

#ifndef CTREG_H
#define CTREG_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ctreg_status {
  CTREG_OK = 0,
  CTREG_ERR_INVALID_ARGUMENT = 1, /* bad handle, range or precondition */
  CTREG_ERR_PARSE = 2,            /* malformed config or path text */
  CTREG_ERR_IO = 3,               /* file write failed */
  CTREG_ERR_DOMAIN = 4,           /* undefined for these inputs */
  CTREG_ERR_INTERNAL = 5,
} ctreg_status;

typedef struct ctreg_config ctreg_config;         /* experiment settings */
typedef struct ctreg_report ctreg_report;         /* benchmark results */
typedef struct ctreg_validation ctreg_validation; /* identity-check results */

const char* ctreg_version(void);
/* message from the most recent failing call on this thread ("" if none) */
const char* ctreg_last_error(void);
void ctreg_string_free(char* s);

/* -- configuration ------------------------------------------------------ */

ctreg_status ctreg_config_create(ctreg_config** out); /* defaults */
ctreg_status ctreg_config_parse(const char* json_text, ctreg_config** out);
/* dot-path override, e.g. ("noise.a", "-0.5") or ("n_values", "[100]") */
ctreg_status ctreg_config_set(ctreg_config* cfg, const char* key,
                              const char* value);
ctreg_status ctreg_config_set_seed(ctreg_config* cfg, uint64_t seed);
/* switch to the long-run settings (more n, replications, resolution) */
ctreg_status ctreg_config_full_scale(ctreg_config* cfg);
ctreg_status ctreg_config_to_json(const ctreg_config* cfg, char** out);
void ctreg_config_free(ctreg_config* cfg);

/* -- replicated benchmark ----------------------------------------------- */

ctreg_status ctreg_benchmark(const ctreg_config* cfg, ctreg_report** out);
/* long form: n,estimator,risk,stderr */
ctreg_status ctreg_report_csv(const ctreg_report* rep, char** out);
/* wide form: one row per n */
ctreg_status ctreg_report_table_csv(const ctreg_report* rep, char** out);
ctreg_status ctreg_report_table_text(const ctreg_report* rep, char** out);
/* number of horizon values in the report (0 on NULL) */
int ctreg_report_n_count(const ctreg_report* rep);
/* horizon at a row index, -1 if out of range */
int ctreg_report_n_at(const ctreg_report* rep, int index);
/* first-replication fitted curves at a row index: t,truth,improved,lse */
ctreg_status ctreg_report_plot_csv(const ctreg_report* rep, int index,
                                   char** out);
void ctreg_report_free(ctreg_report* rep);

/* -- distributional validation ------------------------------------------ */

ctreg_status ctreg_validate(const ctreg_config* cfg, ctreg_validation** out);
ctreg_status ctreg_validation_text(const ctreg_validation* v, char** out);
ctreg_status ctreg_validation_json(const ctreg_validation* v, char** out);
/* 1 if every check passed, 0 otherwise (-1 on NULL) */
int ctreg_validation_passed(const ctreg_validation* v);
void ctreg_validation_free(ctreg_validation* v);

/* -- single paths -------------------------------------------------------- */

/* one observation path of the benchmark signal as "t,y" rows */
ctreg_status ctreg_simulate_path_csv(const ctreg_config* cfg, char** out);
/* fit both estimators to a "t,y" path; returns the fitted curves and a JSON
 * diagnostics object (selected weight, noise level, contraction constant) */
ctreg_status ctreg_estimate_from_path_csv(const ctreg_config* cfg,
                                          const char* path_csv,
                                          char** curve_csv_out,
                                          char** diagnostics_json_out);

/* sharp-constant helper: ((1+2k)r)^(1/(2k+1)) (k/(pi(k+1)))^(2k/(2k+1)) */
ctreg_status ctreg_pinsker_constant(double k, double r, double* out);

/* atomic text-file write (temp file + rename) */
ctreg_status ctreg_write_text_file(const char* path, const char* content);

#ifdef __cplusplus
}
#endif

#endif /* CTREG_H */
