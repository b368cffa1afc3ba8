/* Exercises the C interface from plain C11. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "cilab/cilab.h"

static int failures = 0;

#define EXPECT(cond)                                                \
  do {                                                              \
    if (!(cond)) {                                                  \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                   \
    }                                                               \
  } while (0)

#define EXPECT_OK(call)                                                                     \
  do {                                                                                      \
    cilab_status st_ = (call);                                                              \
    if (st_ != CILAB_OK) {                                                                  \
      fprintf(stderr, "%s:%d: %s -> %s (%s)\n", __FILE__, __LINE__, #call, cilab_status_name(st_), \
              cilab_last_error());                                                          \
      ++failures;                                                                           \
    }                                                                                       \
  } while (0)

static int near(double a, double b, double tol) { return fabs(a - b) <= tol * (1.0 + fabs(b)); }

static void test_pair(void) {
  cilab_space x0 = {INFINITY, NULL, 0}, x1 = {1.0, NULL, 0};
  cilab_pair* pair = NULL;
  EXPECT_OK(cilab_pair_create(&x0, &x1, 2, &pair));
  EXPECT(cilab_pair_dim(pair) == 2);

  const double x[4] = {3, 0, 4, 0};
  double v = 0.0;
  EXPECT_OK(cilab_pair_norm(pair, 0.5, x, 1e-12, &v));
  EXPECT(near(v, 5.0, 1e-12));

  const double ones[4] = {1, 0, 1, 0};
  double d[4];
  EXPECT_OK(cilab_pair_derivation(pair, 0.5, ones, 1e-12, d));
  EXPECT(near(d[0], -log(2.0), 1e-10) && near(d[2], -log(2.0), 1e-10));
  EXPECT(fabs(d[1]) < 1e-15 && fabs(d[3]) < 1e-15);

  double a0[4], a1[4], value = 0.0;
  EXPECT_OK(cilab_pair_factorize(pair, 0.5, ones, 1e-12, a0, a1, &value));
  EXPECT(near(value, sqrt(2.0), 1e-12));
  EXPECT(near(a0[0], sqrt(2.0), 1e-10) && near(a1[0], sqrt(0.5), 1e-10));

  double grid[3] = {0.25, 0.5, 0.75};
  cilab_table* t = NULL;
  EXPECT_OK(cilab_scale_sweep(pair, ones, grid, 3, 1e-4, 1e-12, &t));
  EXPECT(cilab_table_rows(t) == 3 && cilab_table_cols(t) == 6);
  EXPECT(strcmp(cilab_table_column(t, 5), "logconv_residual") == 0);
  EXPECT(cilab_table_column(t, 6) == NULL);
  double cell = 0.0;
  EXPECT_OK(cilab_table_get(t, 1, 1, &cell));
  EXPECT(near(cell, sqrt(2.0), 1e-12));

  /* Two-call buffer protocol. */
  size_t need = 0;
  char small[4];
  EXPECT(cilab_table_to_csv(t, small, sizeof small, &need) == CILAB_ERR_BUFFER);
  EXPECT(need > sizeof small);
  char* buf = malloc(need);
  EXPECT_OK(cilab_table_to_csv(t, buf, need, &need));
  EXPECT(strncmp(buf, "t,norm,fd_left,fd_right,omega_norm,logconv_residual\n", 52) == 0);
  EXPECT(strlen(buf) + 1 == need);
  free(buf);
  cilab_table_destroy(t);

  double r = 0.0;
  EXPECT_OK(cilab_closed_form_exponent(2.0, 4.0, 0.5, &r));
  EXPECT(near(r, 8.0 / 3.0, 1e-14));
  cilab_pair_destroy(pair);
}

static void test_errors(void) {
  cilab_space bad = {0.5, NULL, 0}, ok = {2.0, NULL, 0};
  cilab_pair* pair = NULL;
  EXPECT(cilab_pair_create(&bad, &ok, 2, &pair) == CILAB_ERR_USAGE);
  EXPECT(pair == NULL);
  EXPECT(strlen(cilab_last_error()) > 0);
  EXPECT(cilab_pair_norm(NULL, 0.5, NULL, 1e-12, NULL) == CILAB_ERR_USAGE);

  double out[2];
  EXPECT(cilab_strip_conformal(1.5, 0.0, 0.5, 0.0, out) == CILAB_ERR_DOMAIN);
  double cuts[3] = {0.0, 2.0, 2.0};
  EXPECT(cilab_three_arc_coefficients(cuts, NULL, NULL, NULL, NULL, NULL) == CILAB_ERR_SINGULAR);

  cilab_family* fam = NULL;
  EXPECT(cilab_family_parse("{\"kind\": \"arcs-lp\"", &fam) == CILAB_ERR_PARSE);
  EXPECT(cilab_family_parse("{\"kind\": \"arcs-lp\", \"partition\": [\"0\", \"pi\"], \"exponents\": [\"2\", \"0.5\"]}",
                            &fam) == CILAB_ERR_PARSE);
  EXPECT(strstr(cilab_last_error(), "exponents") != NULL);
  EXPECT(strcmp(cilab_status_name(CILAB_ERR_NUMERIC), "numeric") == 0);
}

static void test_family(void) {
  cilab_family* fam = NULL;
  EXPECT_OK(cilab_family_variable_exponent("z^2+2", INFINITY, &fam));
  EXPECT(strcmp(cilab_family_kind(fam), "variable-exponent") == 0);
  const double x[4] = {1, 0, 1, 0};
  double d[4] = {9, 9, 9, 9};
  EXPECT_OK(cilab_family_derivation(fam, 0.0, 0.0, x, 2, 1e-12, d));
  EXPECT(d[0] == 0.0 && d[1] == 0.0 && d[2] == 0.0 && d[3] == 0.0);

  size_t need = 0;
  EXPECT(cilab_family_serialize(fam, NULL, 0, &need) == CILAB_ERR_BUFFER);
  char* text = malloc(need);
  EXPECT_OK(cilab_family_serialize(fam, text, need, &need));
  cilab_family* back = NULL;
  EXPECT_OK(cilab_family_parse(text, &back));
  char* again = malloc(need);
  EXPECT_OK(cilab_family_serialize(back, again, need, &need));
  EXPECT(strcmp(text, again) == 0);
  free(text);
  free(again);
  cilab_family_destroy(back);

  size_t dims[3] = {16, 256, 4096};
  cilab_table* t = NULL;
  double slope = 0.0, flat = 0.0;
  EXPECT_OK(cilab_family_probe(fam, 0.5, 0.0, dims, 3, 7, 1, &t, &slope, &flat));
  EXPECT(near(flat, 1.0 / (2.25 * 2.25), 1e-10));
  cilab_table_destroy(t);
  cilab_family_destroy(fam);
}

static void test_centralizers(void) {
  cilab_centralizer* kp = NULL;
  EXPECT_OK(cilab_centralizer_kalton_peck(2.0, 1.0, 0.0, &kp));
  const double x[4] = {1, 0, 1, 0};
  double y[4];
  EXPECT_OK(cilab_centralizer_eval(kp, x, 2, y));
  EXPECT(near(y[0], -log(sqrt(2.0)), 1e-14));
  cilab_space l2 = {2.0, NULL, 0};
  const double a[4] = {2, 0, 1, 0};
  double defect = 0.0;
  EXPECT_OK(cilab_centralizer_defect(kp, &l2, a, x, 2, &defect));
  EXPECT(near(defect, 0.656349, 1e-5));

  size_t dims[2] = {16, 64};
  cilab_table* t = NULL;
  double slope = 0.0;
  EXPECT_OK(cilab_boundedness_probe(kp, &l2, dims, 2, 7, 1, &t, &slope, NULL));
  EXPECT(near(slope, 0.5, 1e-10));
  cilab_table_destroy(t);

  const double f[2] = {0.5, 0.5};
  double re = 0.0, im = 0.0;
  cilab_centralizer* kp2 = NULL;
  EXPECT_OK(cilab_centralizer_kalton_peck(2.0, 2.0, 0.0, &kp2));
  EXPECT_OK(cilab_phi_omega(kp2, 2.0, f, 2, &re, &im));
  EXPECT(near(re, -log(2.0), 1e-13) && im == 0.0);
  int sigma = 0;
  double kappa = 0.0;
  EXPECT_OK(cilab_indicator_orientation(&sigma, &kappa));
  EXPECT(sigma == -1 || sigma == 1);
  cilab_centralizer_destroy(kp2);
  cilab_centralizer_destroy(kp);
}

static void test_disk(void) {
  double w[2];
  EXPECT_OK(cilab_strip_conformal(0.25, 0.0, 0.75, 0.0, w));
  EXPECT(near(sqrt(w[0] * w[0] + w[1] * w[1]), sqrt(0.5), 1e-12));
  double m = 0.0;
  EXPECT_OK(cilab_harmonic_measure(0.0, 0.0, 0.0, acos(-1.0) / 2, 0, &m));
  EXPECT(near(m, 0.25, 1e-13));
  EXPECT_OK(cilab_mobius_deviation(0.3, 0.0, 10000, &m));
  EXPECT(m <= 0.6 + 1e-12);
  double cuts[2] = {0.0, acos(-1.0)}, vals[2] = {1.0, 0.0};
  EXPECT_OK(cilab_herglotz(cuts, vals, 2, 0.0, 0.0, 1, w));
  EXPECT(fabs(w[0]) < 1e-13 && near(w[1], -2.0 / acos(-1.0), 1e-12));
}

static void test_verify(void) {
  cilab_report* rep = NULL;
  EXPECT_OK(cilab_verify("spaces", 7, &rep));
  EXPECT(cilab_report_count(rep) > 0);
  EXPECT(cilab_report_all_passed(rep) == 1);
  const char* module = NULL;
  int passed = 0;
  EXPECT_OK(cilab_report_entry(rep, 0, &module, NULL, NULL, NULL, NULL, &passed));
  EXPECT(strcmp(module, "spaces") == 0 && passed == 1);
  EXPECT(cilab_report_entry(rep, 10000, NULL, NULL, NULL, NULL, NULL, NULL) == CILAB_ERR_USAGE);
  cilab_report_destroy(rep);
  EXPECT(cilab_verify("nope", 7, &rep) == CILAB_ERR_USAGE);
}

int main(void) {
  test_pair();
  test_errors();
  test_family();
  test_centralizers();
  test_disk();
  test_verify();
  if (failures) fprintf(stderr, "%d failure(s)\n", failures);
  else printf("capi: all checks passed\n");
  return failures ? 1 : 0;
}
