#ifndef CHEREDNIK_H
#define CHEREDNIK_H

/* Generated by cbindgen from the cherednik-ffi crate. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * The call succeeded.
 */
#define CHEREDNIK_OK 0

/**
 * A required pointer argument was null.
 */
#define CHEREDNIK_NULL_POINTER 1

/**
 * Parameters were rejected: not coprime, out of range, or an unknown name.
 */
#define CHEREDNIK_INVALID_PARAMETER 2

/**
 * The computation failed internally.
 */
#define CHEREDNIK_COMPUTE_ERROR 3

/**
 * The computation ran but at least one verification check failed.
 */
#define CHEREDNIK_CHECK_FAILED 4

/**
 * Opaque handle to a built module L_{m/n}.
 */
typedef struct CherednikModel CherednikModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *cherednik_last_error(void);

/**
 * Builds L_{m/n} for coprime m, n and stores the handle in out. Free it
 * with cherednik_model_free.
 */
int cherednik_model_build(uint32_t m, uint32_t n, CherednikModel **out);

/**
 * Releases a handle returned by cherednik_model_build. Null is ignored.
 */
void cherednik_model_free(CherednikModel *model);

/**
 * Total dimension m^(n-1) of the module.
 */
int cherednik_model_dimension(const CherednikModel *model, uint64_t *out);

/**
 * The top weight mu = (m-1)(n-1)/2.
 */
int cherednik_model_mu(const CherednikModel *model, uint32_t *out);

/**
 * Serializes the module document as JSON. Free the string with
 * cherednik_string_free.
 */
int cherednik_model_json(const CherednikModel *model, char **out);

/**
 * Level table of one filtration kind (a, alg, alg-prime, ind, ind-prime)
 * as JSON. Free the string with cherednik_string_free.
 */
int cherednik_filtration_json(const CherednikModel *model, const char *kind, char **out);

/**
 * Bigraded characters of the associated graded module for one filtration
 * kind: the full character, the invariant component, and the super series.
 */
int cherednik_character_json(const CherednikModel *model, const char *kind, char **out);

/**
 * Dyck path count and the rational q,t-Catalan polynomial as JSON.
 */
int cherednik_catalan_json(uint32_t m, uint32_t n, char **out);

/**
 * Coinvariant lattice dimension certificates as JSON. Returns
 * CHEREDNIK_CHECK_FAILED when an identity fails, with the report still
 * written.
 */
int cherednik_lattice_json(uint32_t m, uint32_t n, char **out);

/**
 * Runs one verification suite (all, dunkl, irrep, filtration, coinvariant,
 * catalan) and writes the results as JSON. Returns CHEREDNIK_CHECK_FAILED
 * when any check fails, with the report still written.
 */
int cherednik_verify_json(const char *suite, char **out);

/**
 * Releases a string returned by any of the _json entry points. Null is
 * ignored.
 */
void cherednik_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHEREDNIK_H */
