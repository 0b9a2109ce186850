/* Exercises the shared library through its C header only. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "qgspec/qgspec.h"

static int failures = 0;

#define EXPECT(cond)                                             \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                \
    }                                                            \
  } while (0)

int main(void) {
  const double pi = acos(-1.0);
  EXPECT(strlen(qgs_version()) > 0);
  EXPECT(strcmp(qgs_status_name(QGS_ERR_UNCONVERGED), "unconverged") == 0);

  /* errors come back as codes with a message */
  qgs_subshift* bad = NULL;
  EXPECT(qgs_subshift_parse("nonsense", &bad) == QGS_ERR_INVALID_ARGUMENT);
  EXPECT(bad == NULL);
  EXPECT(strlen(qgs_last_error()) > 0);
  EXPECT(qgs_subshift_parse(NULL, &bad) == QGS_ERR_NULL_POINTER);

  qgs_subshift* fib = NULL;
  EXPECT(qgs_subshift_parse("fibonacci", &fib) == QGS_OK);
  qgs_word* w = NULL;
  EXPECT(qgs_word_generate(fib, 0, 8, &w) == QGS_OK);
  EXPECT(qgs_word_length(w) == 8);
  int sym[8];
  const int expect[8] = {1, 2, 1, 1, 2, 1, 2, 1};
  EXPECT(qgs_word_symbols(w, sym, 8) == QGS_OK);
  EXPECT(memcmp(sym, expect, sizeof sym) == 0);
  char* text = NULL;
  EXPECT(qgs_word_weights_format(w, QGS_MODE_GRAPH, &text) == QGS_OK);
  EXPECT(text && strstr(text, "2 2 1 2 2 2 2") != NULL);
  qgs_string_free(text);
  qgs_word_free(w);

  /* Boshernitzan floor */
  EXPECT(qgs_word_generate(fib, 0, 20000, &w) == QGS_OK);
  double floor_value = 0;
  EXPECT(qgs_word_boshernitzan_csv(w, 20, &text, &floor_value) == QGS_OK);
  EXPECT(floor_value > 0.2);
  qgs_string_free(text);
  qgs_word_free(w);

  /* free Floquet band */
  qgs_bandset* b = NULL;
  const int one[1] = {1};
  EXPECT(qgs_floquet_bands(one, 1, QGS_MODE_GRAPH, 0, 40, 1e-10, &b) == QGS_OK);
  EXPECT(qgs_bandset_count(b) == 1);
  double lo = -1, hi = -1;
  EXPECT(qgs_bandset_interval(b, 0, &lo, &hi) == QGS_OK);
  EXPECT(fabs(lo) < 1e-9 && fabs(hi - 40) < 1e-9);
  EXPECT(qgs_bandset_interval(b, 5, &lo, &hi) == QGS_ERR_OUT_OF_RANGE);
  EXPECT(qgs_bandset_csv(b, &text) == QGS_OK);
  EXPECT(strcmp(text, "lo,hi\n0,40\n") == 0);
  qgs_string_free(text);
  qgs_bandset_free(b);
  EXPECT(qgs_floquet_bands(one, 1, QGS_MODE_VERBATIM, 0, 40, 1e-10, &b) == QGS_ERR_INVALID_ARGUMENT);

  /* escape covers nest */
  qgs_bandset *b6 = NULL, *b9 = NULL;
  EXPECT(qgs_escape_bands(0, 40, 6, 1e-2, QGS_MODE_GRAPH, 1, 2, 2, &b6) == QGS_OK);
  EXPECT(qgs_escape_bands(0, 40, 9, 1e-2, QGS_MODE_GRAPH, 1, 2, 2, &b9) == QGS_OK);
  EXPECT(qgs_bandset_subset(b9, b6, 0.0));
  EXPECT(qgs_bandset_measure(b9) < qgs_bandset_measure(b6));
  qgs_bandset_free(b6);
  qgs_bandset_free(b9);
  int escaped = 0, index = 0;
  EXPECT(qgs_escape_index(-5.0, 20, QGS_MODE_GRAPH, 1, 2, &escaped, &index, NULL) == QGS_OK);
  EXPECT(escaped == 1);

  /* Lyapunov */
  qgs_subshift* free_spec = NULL;
  EXPECT(qgs_subshift_parse("constant:1", &free_spec) == QGS_OK);
  double L = 0, spread = 0;
  EXPECT(qgs_lyapunov(free_spec, -1.0, 10000, 2, QGS_MODE_GRAPH, &L, &spread) == QGS_OK);
  EXPECT(fabs(L - 1.0) < 1e-3);

  /* m-function */
  EXPECT(qgs_word_generate(free_spec, 0, 200, &w) == QGS_OK);
  double re = 0, im = 0, radius = 0;
  int conv = 0;
  EXPECT(qgs_m_function(w, QGS_MODE_SIMPLIFIED, 0, 1, 1e-8, &re, &im, &radius, &conv) == QGS_OK);
  EXPECT(conv == 1);
  EXPECT(fabs(re + cos(pi / 4)) < 1e-8 && fabs(im - sin(pi / 4)) < 1e-8);
  qgs_word_free(w);

  /* Borg-Marchenko preset */
  qgs_word *wa = NULL, *wb = NULL;
  EXPECT(qgs_bm_preset(3, 400, &wa, &wb) == QGS_OK);
  double z[8];
  for (int i = 0; i < 8; ++i) z[i] = 10.0 * pow(1e3, i / 7.0);
  double slope = 0;
  long k = -5;
  EXPECT(qgs_bm_decay_json(wa, wb, pi / 2, z, 8, QGS_PRECISION_DOUBLE, QGS_MODE_SIMPLIFIED, NULL, &slope, &k) == QGS_OK);
  EXPECT(k == 3);
  EXPECT(slope <= -3.325);
  qgs_word_free(wa);
  qgs_word_free(wb);

  /* assembled spectrum */
  qgs_spectrum* rep = NULL;
  EXPECT(qgs_spectrum_assemble(free_spec, 40, 8, 1e-3, 1, &rep) == QGS_OK);
  EXPECT(qgs_spectrum_sigma_csv(rep, &text) == QGS_OK);
  EXPECT(strcmp(text, "set,E,s_prev,s_mid,s_next,multiplicity\n") == 0);
  qgs_string_free(text);
  qgs_spectrum_free(rep);

  qgs_subshift_free(free_spec);
  qgs_subshift_free(fib);
  /* freeing NULL is harmless */
  qgs_word_free(NULL);
  qgs_bandset_free(NULL);
  qgs_spectrum_free(NULL);
  qgs_subshift_free(NULL);

  if (failures) {
    fprintf(stderr, "%d C API checks failed\n", failures);
    return 1;
  }
  printf("C API checks passed\n");
  return 0;
}
