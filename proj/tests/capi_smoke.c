/* Links against the shared library from plain C: no C++ runtime, no
 * test framework. Exercises one happy path and one error path per
 * object kind. */

#include <latmed/latmed.h>

#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond, what)                       \
  do {                                           \
    if (!(cond)) {                               \
      fprintf(stderr, "smoke: FAIL %s\n", what); \
      failures++;                                \
    }                                            \
  } while (0)

int main(void) {
  EXPECT(strcmp(latmed_version(), "1.0.0") == 0, "version");

  latmed_lattice* lat = NULL;
  char* err = NULL;
  latmed_status st = latmed_lattice_from_json("{\"kind\":\"chain\",\"size\":3}", &lat, &err);
  EXPECT(st == LATMED_OK, "chain parse");
  if (st != LATMED_OK) {
    if (err) fprintf(stderr, "smoke: %s\n", err);
    latmed_string_free(err);
    return 1;
  }
  EXPECT(latmed_lattice_size(lat) == 3, "size");

  int32_t v = -1;
  EXPECT(latmed_lattice_meet(lat, 2, 1, &v, &err) == LATMED_OK && v == 1, "meet");
  EXPECT(latmed_lattice_join(lat, 0, 2, &v, &err) == LATMED_OK && v == 2, "join");
  EXPECT(latmed_lattice_leq(lat, 1, 2, &v, &err) == LATMED_OK && v == 1, "leq");

  int32_t xs[3] = {2, 0, 1};
  EXPECT(latmed_median(lat, xs, 3, 2, NULL, &v, &err) == LATMED_OK && v == 1, "median");

  char* label = NULL;
  EXPECT(latmed_lattice_label(lat, 1, &label, &err) == LATMED_OK && label && strcmp(label, "1") == 0,
         "label");
  int32_t id = -1;
  EXPECT(label && latmed_lattice_find(lat, label, &id, &err) == LATMED_OK && id == 1, "find");
  latmed_string_free(label);

  char* find_err = NULL;
  EXPECT(latmed_lattice_find(lat, "bogus", &id, &find_err) == LATMED_ERR_FORMAT, "find unknown");
  EXPECT(find_err != NULL, "find error message");
  latmed_string_free(find_err);

  latmed_lattice_free(lat);

  if (failures == 0) printf("smoke: ok\n");
  return failures == 0 ? 0 : 1;
}
