/* C interface to the spectra library: opaque handles, status codes, and
 * heap-allocated report strings. Every entry point is thread-safe; error
 * detail for the calling thread is available from spectra_last_error(). */
#ifndef SPECTRA_C_H
#define SPECTRA_C_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum spectra_status {
  SPECTRA_OK = 0,
  SPECTRA_ERR_INVALID_ARGUMENT = 1,
  SPECTRA_ERR_DOMAIN = 2,
  SPECTRA_ERR_INFINITE_MASS = 3,
  SPECTRA_ERR_DIVERGENT = 4,
  SPECTRA_ERR_NUMERICAL = 5,
  SPECTRA_ERR_UNSUPPORTED = 6,
  SPECTRA_ERR_IO = 7,
} spectra_status;

typedef struct spectra_model spectra_model;     /* process model + spectral measure */
typedef struct spectra_filter spectra_filter;   /* filter frequency characteristic */
typedef struct spectra_options spectra_options; /* numeric knobs */

const char* spectra_status_name(spectra_status status);
const char* spectra_last_error(void);

/* Model configuration document, e.g. {"model":"ar1","V":1.0,"rho":0.5} or
 * {"model":"custom","density_csv":"f.csv","domain":"circle"}; optional keys
 * atoms [{"u":..,"mass":..}] and hints [{"u":..,"exponent":..}]. */
spectra_status spectra_model_from_json(const char* json_text, spectra_model** out);
void spectra_model_free(spectra_model* model);
int spectra_model_domain_is_line(const spectra_model* model);
int spectra_model_is_finite(const spectra_model* model);

/* Filter specification: "zero" | "kinetic" | "kinetic:<a>" | "const:<c>" |
 * "poly:<c1,c2,...>" | "table:<csv>". The bare "kinetic" takes `alpha` and
 * matches the model's domain. */
spectra_status spectra_filter_from_spec(const char* spec, const spectra_model* model,
                                        double alpha, spectra_filter** out);
void spectra_filter_free(spectra_filter* filter);

spectra_status spectra_options_create(spectra_options** out);
void spectra_options_free(spectra_options* opts);
/* Numeric keys: tol, max_panels, alpha, maxdeg, criteria_tol, n, seed,
 * grid, window, galerkin, s_max, tail_tol, threads. */
spectra_status spectra_options_set(spectra_options* opts, const char* key, double value);

/* scalar computations */
spectra_status spectra_beta(double alpha, double* out);
spectra_status spectra_closed_form_sigma2(const spectra_model* model, double alpha, double* out);
spectra_status spectra_total_mass(const spectra_model* model, const spectra_options* opts,
                                  double* value, double* abs_error);
spectra_status spectra_covariance(const spectra_model* model, double t,
                                  const spectra_options* opts, double* re, double* im);
spectra_status spectra_levy_check(const spectra_model* model, const spectra_options* opts,
                                  int* pass, double* value);
spectra_status spectra_sigma2_nonadaptive(const spectra_model* model,
                                          const spectra_filter* filter,
                                          const spectra_options* opts, double* sigma2,
                                          double* abs_error, int* infinite);

/* Structured reports. *out is heap-allocated; release with
 * spectra_string_free. JSON objects carry 12-significant-digit numbers. */
spectra_status spectra_error_report_json(const spectra_model* model,
                                         const spectra_filter* filter,
                                         const spectra_options* opts, char** out);
spectra_status spectra_kernel_csv(int discrete, double alpha, double tail_tol, char** out);
spectra_status spectra_criteria_report_json(const spectra_model* model,
                                            const spectra_filter* filter,
                                            const spectra_options* opts, char** out);
spectra_status spectra_interp_report_json(const spectra_model* model,
                                          const spectra_filter* filter,
                                          const spectra_options* opts, char** out);
/* mode: "spectral" | "time" */
spectra_status spectra_simulate_report_json(const char* mode, const spectra_model* model,
                                            const spectra_filter* filter,
                                            const spectra_options* opts, char** out);
spectra_status spectra_limit_csv(double alpha, double V, const double* deltas, size_t n_deltas,
                                 char** out);
spectra_status spectra_verify_report_json(const spectra_options* opts, int* failures,
                                          char** out);
void spectra_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SPECTRA_C_H */
