#ifndef LATMED_H
#define LATMED_H

/* C interface to the lattice-median library.
 *
 * Conventions:
 *   - Every function returns a latmed_status; 0 is success.
 *   - Objects are opaque handles freed by their matching *_free.
 *   - Output strings (`char**` parameters) are heap-allocated; release them
 *     with latmed_string_free. On error they carry the message instead, and
 *     other out-parameters are left untouched.
 *   - Structured inputs and outputs are JSON text. Reports and lattices use
 *     the same schemas as the CLI.
 *   - Elements are dense indices 0..size-1, valid only for their lattice.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum latmed_status {
  LATMED_OK = 0,
  LATMED_ERR_CHECK_FAILED = 1, /* a law or verifier found a counterexample */
  LATMED_ERR_FORMAT = 2,
  LATMED_ERR_CAPACITY = 3,
  LATMED_ERR_PRECONDITION = 4,
  LATMED_ERR_INVALID_ARGUMENT = 5,
  LATMED_ERR_INTERNAL = 6
} latmed_status;

typedef struct latmed_lattice latmed_lattice;
typedef struct latmed_map latmed_map;

/* Library version as "major.minor.patch"; static storage, do not free. */
const char* latmed_version(void);

void latmed_string_free(char* s);

/* ---- lattices ---- */

latmed_status latmed_lattice_from_json(const char* json_text, latmed_lattice** out, char** err);
void latmed_lattice_free(latmed_lattice* lat);

int32_t latmed_lattice_size(const latmed_lattice* lat);
latmed_status latmed_lattice_label(const latmed_lattice* lat, int32_t elem, char** out, char** err);
/* Sets *out to the element index, or returns LATMED_ERR_FORMAT if unknown. */
latmed_status latmed_lattice_find(const latmed_lattice* lat, const char* label, int32_t* out,
                                  char** err);

latmed_status latmed_lattice_meet(const latmed_lattice* lat, int32_t a, int32_t b, int32_t* out,
                                  char** err);
latmed_status latmed_lattice_join(const latmed_lattice* lat, int32_t a, int32_t b, int32_t* out,
                                  char** err);
latmed_status latmed_lattice_leq(const latmed_lattice* lat, int32_t a, int32_t b, int32_t* out,
                                 char** err);

/* Serializes the lattice description; latmed_lattice_from_json accepts the
 * output. Explicit lattices export their operation tables. */
latmed_status latmed_lattice_to_json(const latmed_lattice* lat, char** out, char** err);

/* Full law scan. LATMED_OK when the tables satisfy the lattice laws,
 * LATMED_ERR_CHECK_FAILED with a JSON report in *report when they do not. */
latmed_status latmed_lattice_validate(const latmed_lattice* lat, const char* options_json,
                                      char** report, char** err);
latmed_status latmed_lattice_check_distributive(const latmed_lattice* lat, const char* options_json,
                                                char** report, char** err);

/* ---- medians ---- */

/* mode: "auto" (default when NULL), "direct", "dual", or "fast". */
latmed_status latmed_median(const latmed_lattice* lat, const int32_t* xs, int32_t n, int32_t k,
                            const char* mode, int32_t* out, char** err);
latmed_status latmed_median_relative(const latmed_lattice* lat, const int32_t* xs, int32_t n,
                                     int32_t k, int32_t m, int32_t* out, char** err);
/* Writes (M_1(x),...,M_n(x)) into out[0..n-1]. */
latmed_status latmed_total_orderization(const latmed_lattice* lat, const int32_t* xs, int32_t n,
                                        int32_t* out, char** err);

/* ---- maps ---- */

/* domain/codomain may be NULL when the JSON embeds its own lattices.
 * Implicit-chain builtins (weighted-geomean) are accepted; such maps
 * evaluate through latmed_map_eval_real only. */
latmed_status latmed_map_from_json(const char* json_text, const latmed_lattice* domain,
                                   const latmed_lattice* codomain, latmed_map** out, char** err);
void latmed_map_free(latmed_map* map);

int32_t latmed_map_arity(const latmed_map* map);
latmed_status latmed_map_eval(const latmed_map* map, const int32_t* xs, int32_t n, int32_t* out,
                              char** err);
latmed_status latmed_map_eval_real(const latmed_map* map, const double* xs, int32_t n, double* out,
                                   char** err);

/* check: "symmetric", "hom", "toi-def", "toi-c2", "toi-c3", "toi-c4", or
 * "toi-all". options_json (may be NULL): {"seed":0,"samples":100000,
 * "parallelism":0}. *report receives the JSON check report. Returns
 * LATMED_OK on pass (or sampled pass), LATMED_ERR_CHECK_FAILED on a
 * counterexample. */
latmed_status latmed_check(const latmed_map* map, const char* check, const char* options_json,
                           char** report, char** err);

/* All arity-n lattice homomorphisms domain^n -> codomain. *out receives
 * {"maps": [<row-major table>...], "homs": n, "table_space": n,
 * "tables_visited": n} with tables in lexicographic order. symmetric_only
 * prunes to the symmetric ones. */
latmed_status latmed_enumerate_homs(const latmed_lattice* domain, const latmed_lattice* codomain,
                                    int32_t arity, int32_t symmetric_only, char** out, char** err);

/* ---- verifiers ---- */

/* id: "prop-medians", "lemma-swap", "lemma-extend", "charsoftoi",
 * "multihom-toi", "sandwich", "kusraev", "alg", "diags", or "all".
 * config_json (may be NULL): {"lattice":<lattice>,"domain":<lattice>,
 * "codomain":<lattice>,"arity":n,"n_max":n} plus the options of
 * latmed_check. *report receives a JSON array of run reports. */
latmed_status latmed_verify(const char* id, const char* config_json, char** report, char** err);

#ifdef __cplusplus
}
#endif

#endif /* LATMED_H */
