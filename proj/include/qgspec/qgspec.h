/* C interface to the quantum-graph spectral library.
 *
 * Objects are opaque handles created by qgs_*_create/parse/generate calls and
 * released with the matching *_free. Every fallible call returns a
 * qgs_status; on failure qgs_last_error() describes the problem (per thread).
 * Strings returned through char** are heap allocated; release them with
 * qgs_string_free.
 */
#ifndef QGSPEC_H
#define QGSPEC_H

#include <stddef.h>

#if defined(QGS_BUILDING_LIBRARY)
#define QGS_API __attribute__((visibility("default")))
#else
#define QGS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qgs_status {
  QGS_OK = 0,
  QGS_ERR_INVALID_ARGUMENT = 1,
  QGS_ERR_OUT_OF_RANGE = 2,
  QGS_ERR_UNCONVERGED = 3,
  QGS_ERR_IO = 4,
  QGS_ERR_INTERNAL = 5,
  QGS_ERR_NULL_POINTER = 6
} qgs_status;

typedef enum qgs_mode { QGS_MODE_GRAPH = 0, QGS_MODE_SIMPLIFIED = 1, QGS_MODE_VERBATIM = 2 } qgs_mode;

typedef enum qgs_precision { QGS_PRECISION_DOUBLE = 0, QGS_PRECISION_EXTENDED = 1 } qgs_precision;

typedef enum qgs_boundary { QGS_BC_DIRICHLET = 0, QGS_BC_NEUMANN = 1 } qgs_boundary;

typedef struct qgs_subshift qgs_subshift;
typedef struct qgs_word qgs_word;
typedef struct qgs_bandset qgs_bandset;
typedef struct qgs_spectrum qgs_spectrum;

QGS_API const char* qgs_version(void);
QGS_API const char* qgs_last_error(void);
QGS_API void qgs_string_free(char* s);
QGS_API const char* qgs_status_name(qgs_status status);

/* ---- sequences ---- */

/* fibonacci | constant:s | periodic:s ... | substitution:... | sturmian:... | explicit:path */
QGS_API qgs_status qgs_subshift_parse(const char* text, qgs_subshift** out);
QGS_API void qgs_subshift_free(qgs_subshift* spec);
QGS_API qgs_status qgs_subshift_describe(const qgs_subshift* spec, char** out);

QGS_API qgs_status qgs_word_generate(const qgs_subshift* spec, long origin, size_t length, qgs_word** out);
QGS_API qgs_status qgs_word_from_symbols(long origin, const int* symbols, size_t length, qgs_word** out);
QGS_API qgs_status qgs_word_read(const char* path, qgs_word** out);
QGS_API void qgs_word_free(qgs_word* word);
QGS_API size_t qgs_word_length(const qgs_word* word);
QGS_API long qgs_word_origin(const qgs_word* word);
/* copies min(cap, length) symbols */
QGS_API qgs_status qgs_word_symbols(const qgs_word* word, int* buffer, size_t cap);
/* word-file text: "origin=<n>" header plus symbols */
QGS_API qgs_status qgs_word_format(const qgs_word* word, char** out);
/* weight-file text for graph or simplified weights */
QGS_API qgs_status qgs_word_weights_format(const qgs_word* word, qgs_mode mode, char** out);
/* CSV factor,frequency for factors of length n, and the complexity p(n) */
QGS_API qgs_status qgs_word_factor_csv(const qgs_word* word, size_t n, char** csv, size_t* complexity);
/* CSV n,min_frequency,n_eta for n = 1..n_max */
QGS_API qgs_status qgs_word_boshernitzan_csv(const qgs_word* word, size_t n_max, char** csv, double* min_scaled);
QGS_API qgs_status qgs_shift_distance(const qgs_word* a, const qgs_word* b, double* value, double* tail_bound);

/* ---- Lyapunov exponents ---- */

/* CSV E,L_hat,spread,n_steps,classification */
QGS_API qgs_status qgs_lyapunov_sweep_csv(const qgs_subshift* spec, const double* energies, size_t n_energies,
                                          long n_steps, int n_bases, qgs_mode mode, double eps_zero, double eps_hyp,
                                          unsigned workers, char** out);
QGS_API qgs_status qgs_lyapunov(const qgs_subshift* spec, double E, long n_steps, int n_bases, qgs_mode mode,
                                double* value, double* spread);

/* ---- band sets ---- */

QGS_API void qgs_bandset_free(qgs_bandset* bands);
QGS_API size_t qgs_bandset_count(const qgs_bandset* bands);
QGS_API qgs_status qgs_bandset_interval(const qgs_bandset* bands, size_t index, double* lo, double* hi);
QGS_API double qgs_bandset_measure(const qgs_bandset* bands);
QGS_API double qgs_bandset_diagnostic(const qgs_bandset* bands);
QGS_API int qgs_bandset_conservative(const qgs_bandset* bands);
QGS_API qgs_status qgs_bandset_csv(const qgs_bandset* bands, char** out);
/* nonzero when every interval of inner lies in some interval of outer (up to slack) */
QGS_API int qgs_bandset_subset(const qgs_bandset* inner, const qgs_bandset* outer, double slack);

/* ---- trace map ---- */

/* letters (a, b) replace the Fibonacci letters (1, 2); (1, 1) is the free surrogate */
QGS_API qgs_status qgs_escape_bands(double E_lo, double E_hi, int N, double tol, qgs_mode mode, int letter_a,
                                    int letter_b, unsigned workers, qgs_bandset** out);
QGS_API qgs_status qgs_escape_index(double E, int N_max, qgs_mode mode, int letter_a, int letter_b, int* escaped,
                                    int* index, double* max_abs);

/* ---- Floquet bands ---- */

QGS_API qgs_status qgs_floquet_bands(const int* period, size_t length, qgs_mode mode, double E_lo, double E_hi,
                                     double tol, qgs_bandset** out);

/* ---- Weyl m-functions (profiles built from words starting at 0) ---- */

QGS_API qgs_status qgs_m_function(const qgs_word* word, qgs_mode mode, double re_z, double im_z, double tol,
                                  double* re_m, double* im_m, double* radius, int* converged);
/* CSV re_z,im_z,re_m,im_m,radius_bound,b,converged */
QGS_API qgs_status qgs_weyl_grid_csv(const qgs_word* word, qgs_mode mode, const double* re_z, const double* im_z,
                                     size_t n, double tol, unsigned workers, char** out);
QGS_API qgs_status qgs_shift_residual(const qgs_word* word, qgs_mode mode, double re_z, double im_z, int shifts,
                                      double* residual);
/* JSON {k, alpha, slope, r_squared, points, ...} */
QGS_API qgs_status qgs_bm_decay_json(const qgs_word* a, const qgs_word* b, double alpha, const double* abs_z,
                                     size_t n, qgs_precision precision, qgs_mode mode, char** json, double* slope,
                                     long* k);
/* shifts of the Fibonacci word agreeing on 0..k and differing at k+1 */
QGS_API qgs_status qgs_bm_preset(long k, size_t length, qgs_word** a, qgs_word** b);

/* ---- assembled spectrum ---- */

QGS_API qgs_status qgs_spectrum_assemble(const qgs_subshift* spec, double E_max, int N, double tol, unsigned workers,
                                         qgs_spectrum** out);
QGS_API void qgs_spectrum_free(qgs_spectrum* report);
QGS_API qgs_status qgs_spectrum_json(const qgs_spectrum* report, char** out);
QGS_API qgs_status qgs_spectrum_sigma_csv(const qgs_spectrum* report, char** out);
QGS_API qgs_status qgs_spectrum_plot_csv(const qgs_spectrum* report, size_t samples, char** out);
QGS_API qgs_status qgs_spectrum_continuum(const qgs_spectrum* report, qgs_bandset** out);

/* ---- finite-difference oracle ---- */

/* CSV index,E of the discretised operator on [x_lo, x_hi] built from the word's weights */
QGS_API qgs_status qgs_oracle_eigenvalues_csv(const qgs_word* word, qgs_mode mode, double x_lo, double x_hi, int M,
                                              qgs_boundary bc_lo, qgs_boundary bc_hi, double E_lo, double E_hi,
                                              char** out);
/* band clusters of a Dirichlet chain of n_periods copies of the period */
QGS_API qgs_status qgs_oracle_chain_bands(const int* period, size_t length, qgs_mode mode, int n_periods, int M,
                                          double E_max, qgs_bandset** out);

#ifdef __cplusplus
}
#endif

#endif /* QGSPEC_H */
