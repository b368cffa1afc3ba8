/* C interface to the interpolation lab. Complex vectors are interleaved (re, im) doubles of
 * length 2*dim. Exponents are doubles with INFINITY for the sup norm. Every call returns a status;
 * on failure cilab_last_error() describes it (thread-local, valid until the next failing call). */
#ifndef CILAB_H
#define CILAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(CILAB_BUILDING_LIBRARY)
#define CILAB_API __attribute__((visibility("default")))
#else
#define CILAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cilab_status {
  CILAB_OK = 0,
  CILAB_ERR_USAGE = 1,
  CILAB_ERR_NUMERIC = 2,
  CILAB_ERR_INVARIANT = 3,
  CILAB_ERR_DOMAIN = 4,
  CILAB_ERR_UNSUPPORTED_POINT = 5,
  CILAB_ERR_SINGULAR = 6,
  CILAB_ERR_ENDPOINT = 7,
  CILAB_ERR_PARSE = 8,
  CILAB_ERR_BUFFER = 9,
  CILAB_ERR_INTERNAL = 10
} cilab_status;

CILAB_API const char* cilab_last_error(void);
CILAB_API const char* cilab_status_name(cilab_status status);
CILAB_API const char* cilab_version(void);

/* Weighted l_p description; weight may be NULL (unweighted), otherwise weight_len entries. */
typedef struct cilab_space {
  double p;
  const double* weight;
  size_t weight_len;
} cilab_space;

typedef struct cilab_pair cilab_pair;
typedef struct cilab_family cilab_family;
typedef struct cilab_centralizer cilab_centralizer;
typedef struct cilab_table cilab_table;
typedef struct cilab_report cilab_report;

/* ---- spaces and pairs ---- */
CILAB_API cilab_status cilab_space_norm(const cilab_space* space, const double* x, size_t dim, double* out);
CILAB_API cilab_status cilab_pair_create(const cilab_space* x0, const cilab_space* x1, size_t dim, cilab_pair** out);
CILAB_API void cilab_pair_destroy(cilab_pair* pair);
CILAB_API size_t cilab_pair_dim(const cilab_pair* pair);
CILAB_API cilab_status cilab_pair_norm(const cilab_pair* pair, double theta, const double* x, double tol, double* out);
/* a0 and a1 receive 2*dim doubles each. */
CILAB_API cilab_status cilab_pair_factorize(const cilab_pair* pair, double theta, const double* x, double tol,
                                            double* a0, double* a1, double* value);
CILAB_API cilab_status cilab_pair_derivation(const cilab_pair* pair, double theta, const double* x, double tol,
                                             double* out);
CILAB_API cilab_status cilab_multi_product_norm(const cilab_space* specs, const double* exponents, size_t n,
                                                const double* x, size_t dim, double tol, double* out);
/* Exponent r of (l_p0, l_p1)_theta. */
CILAB_API cilab_status cilab_closed_form_exponent(double p0, double p1, double theta, double* r);
CILAB_API cilab_status cilab_linear_flow_check(const cilab_pair* pair, const double* g, double s, const double* x,
                                               double tol, double* residual);

/* ---- families ---- */
CILAB_API cilab_status cilab_family_parse(const char* json, cilab_family** out);
/* p_max = INFINITY leaves the upper exponent bound open. */
CILAB_API cilab_status cilab_family_variable_exponent(const char* alpha_expr, double p_max, cilab_family** out);
/* rule: "log1p", "linear", "constant" (uses entries[0]) or "explicit" (entries, n). */
CILAB_API cilab_status cilab_family_flat_diagonal(int power, const char* rule, const double* entries, size_t n,
                                                  cilab_family** out);
CILAB_API cilab_status cilab_family_recenter(const cilab_family* family, double z_re, double z_im, cilab_family** out);
CILAB_API void cilab_family_destroy(cilab_family* family);
CILAB_API const char* cilab_family_kind(const cilab_family* family);
/* Writes the canonical JSON (NUL-terminated) when capacity suffices; *needed includes the NUL. */
CILAB_API cilab_status cilab_family_serialize(const cilab_family* family, char* buf, size_t capacity, size_t* needed);
CILAB_API cilab_status cilab_family_norm(const cilab_family* family, double z_re, double z_im, const double* x,
                                         size_t dim, double tol, double* out);
CILAB_API cilab_status cilab_family_derivation(const cilab_family* family, double z_re, double z_im, const double* x,
                                               size_t dim, double tol, double* out);

/* ---- centralizers ---- */
CILAB_API cilab_status cilab_centralizer_kalton_peck(double r, double scale_re, double scale_im,
                                                     cilab_centralizer** out);
CILAB_API cilab_status cilab_centralizer_multiplication(const double* g, size_t dim, cilab_centralizer** out);
CILAB_API cilab_status cilab_centralizer_pair(const cilab_pair* pair, double theta, cilab_centralizer** out);
CILAB_API cilab_status cilab_centralizer_family(const cilab_family* family, double z_re, double z_im,
                                                cilab_centralizer** out);
CILAB_API cilab_status cilab_centralizer_zero(cilab_centralizer** out);
CILAB_API void cilab_centralizer_destroy(cilab_centralizer* c);
CILAB_API const char* cilab_centralizer_label(const cilab_centralizer* c);
CILAB_API cilab_status cilab_centralizer_eval(const cilab_centralizer* c, const double* x, size_t dim, double* out);
CILAB_API cilab_status cilab_twisted_quasinorm(const cilab_centralizer* c, const cilab_space* space, const double* f,
                                               const double* x, size_t dim, double* out);
CILAB_API cilab_status cilab_centralizer_defect(const cilab_centralizer* c, const cilab_space* space, const double* a,
                                                const double* x, size_t dim, double* out);
CILAB_API cilab_status cilab_centralizer_constant(const cilab_centralizer* c, const cilab_space* space, size_t dim,
                                                  int samples, uint64_t seed, double* out);
/* Table columns: dim, max_ratio, flat_ratio, argmax. Slopes against log(dim) go to the out params. */
CILAB_API cilab_status cilab_boundedness_probe(const cilab_centralizer* c, const cilab_space* space,
                                               const size_t* dims, size_t ndims, uint64_t seed, int flat_only,
                                               cilab_table** table, double* slope, double* flat_slope);
/* Same probe for Omega_z of a family, measured in the family's space at z for each dimension. */
CILAB_API cilab_status cilab_family_probe(const cilab_family* family, double z_re, double z_im, const size_t* dims,
                                          size_t ndims, uint64_t seed, int flat_only, cilab_table** table,
                                          double* slope, double* flat_slope);

/* ---- sweeps and tables ---- */
CILAB_API cilab_status cilab_scale_sweep(const cilab_pair* pair, const double* x, const double* grid, size_t n,
                                         double fd_step, double tol, cilab_table** out);
/* z: interleaved complex grid of nz points. */
CILAB_API cilab_status cilab_family_sweep(const cilab_family* family, const double* x, size_t dim, const double* z,
                                          size_t nz, const size_t* ladder, size_t nladder, uint64_t seed, double tol,
                                          cilab_table** out);
CILAB_API void cilab_table_destroy(cilab_table* t);
CILAB_API size_t cilab_table_rows(const cilab_table* t);
CILAB_API size_t cilab_table_cols(const cilab_table* t);
CILAB_API const char* cilab_table_column(const cilab_table* t, size_t col);
/* Numeric cell; complex cells report their real part. */
CILAB_API cilab_status cilab_table_get(const cilab_table* t, size_t row, size_t col, double* out);
CILAB_API cilab_status cilab_table_to_csv(const cilab_table* t, char* buf, size_t capacity, size_t* needed);

/* ---- indicators ---- */
CILAB_API cilab_status cilab_indicator(const cilab_space* space, const double* f, size_t n, double* out);
CILAB_API cilab_status cilab_indicator_numeric(const cilab_space* space, const double* f, size_t n, double tol,
                                               double* out);
CILAB_API cilab_status cilab_omega_lift(const cilab_centralizer* c, double p, const double* f, size_t n, double* out);
CILAB_API cilab_status cilab_phi_omega(const cilab_centralizer* c, double p, const double* f, size_t n, double* re,
                                       double* im);
CILAB_API cilab_status cilab_indicator_orientation(int* sigma, double* kappa);

/* ---- three arcs ---- */
/* beta receives 6 doubles (3 interleaved complex values). */
CILAB_API cilab_status cilab_three_arc_coefficients(const double cuts[3], double alpha[3], double beta[6],
                                                    double* det, double a[3], double b[3]);
/* weights receives 3*dim doubles, arc-major. */
CILAB_API cilab_status cilab_weights_from_multiplier(const double* f, size_t dim, const double cuts[3],
                                                     double* weights);

/* ---- disk and strip ---- */
CILAB_API cilab_status cilab_strip_conformal(double s_re, double s_im, double z_re, double z_im, double out[2]);
/* domain: 0 disk, 1 strip. */
CILAB_API cilab_status cilab_pseudo_hyperbolic_distance(int domain, double s_re, double s_im, double t_re,
                                                        double t_im, double* out);
CILAB_API cilab_status cilab_mobius_deviation(double a_re, double a_im, int samples, double* out);
CILAB_API cilab_status cilab_harmonic_measure(double z_re, double z_im, double start, double end, int nodes_per_arc,
                                              double* out);
/* Herglotz transform (derivative != 0: its derivative) of the piecewise-constant datum values[k] on
 * arc k of the partition with the given n cuts. */
CILAB_API cilab_status cilab_herglotz(const double* cuts, const double* values, size_t n, double z_re, double z_im,
                                      int derivative, double out[2]);

/* ---- invariant suites ---- */
CILAB_API cilab_status cilab_verify(const char* suite, uint64_t seed, cilab_report** out);
CILAB_API void cilab_report_destroy(cilab_report* r);
CILAB_API size_t cilab_report_count(const cilab_report* r);
CILAB_API int cilab_report_all_passed(const cilab_report* r);
CILAB_API cilab_status cilab_report_entry(const cilab_report* r, size_t i, const char** module, const char** property,
                                          const char** inputs, double* residual, double* tolerance, int* passed);
CILAB_API cilab_status cilab_report_to_csv(const cilab_report* r, char* buf, size_t capacity, size_t* needed);

#ifdef __cplusplus
}
#endif

#endif
