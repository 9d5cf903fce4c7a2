#ifndef TRANSVERSAL_LAB_H
#define TRANSVERSAL_LAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

#define TL_OK 0

#define TL_ERR_NULL 1

#define TL_ERR_UTF8 2

#define TL_ERR_PARSE 3

#define TL_ERR_INVALID_ARGUMENT 4

#define TL_ERR_UNAVAILABLE 5

#define TL_ERR_RESOURCE 6

#define TL_ERR_INVALID_CERTIFICATE 7

#define TL_ERR_INTERNAL 8

#define TL_NO 0

#define TL_YES 1

#define TL_UNKNOWN 2

/**
 * Opaque permutation group.
 */
typedef struct TlGroup TlGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; valid until the next failing call.
 */
const char *tl_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void tl_string_free(char *s);

/**
 * Parse a group file (degree / name / gen lines).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
int32_t tl_group_parse(const char *text, struct TlGroup **out);

/**
 * Build a catalog group such as "M24" or "PGL,2,17".
 *
 * # Safety
 * `key` must be a NUL-terminated string and `out` a valid pointer.
 */
int32_t tl_group_catalog(const char *key, struct TlGroup **out);

/**
 * # Safety
 * `g` must come from `tl_group_parse` / `tl_group_catalog` or be null.
 */
void tl_group_free(struct TlGroup *g);

/**
 * # Safety
 * `g` must be a live handle or null (returns 0).
 */
size_t tl_group_degree(const struct TlGroup *g);

/**
 * Group order in decimal.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
int32_t tl_group_order(const struct TlGroup *g, char **out);

/**
 * Canonical group file text (image lists).
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
int32_t tl_group_emit(const struct TlGroup *g, char **out);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
int32_t tl_orbit_count(const struct TlGroup *g, size_t k, size_t *out);

/**
 * k-et verdict: TL_YES, TL_NO or TL_UNKNOWN. `max_nodes` 0 means the default cap.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
int32_t tl_ket(const struct TlGroup *g, size_t k, uint64_t max_nodes, int32_t *out);

/**
 * k-ut verdict, as for `tl_ket`.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
int32_t tl_kut(const struct TlGroup *g, size_t k, uint64_t max_nodes, int32_t *out);

/**
 * Is <G, t> regular for every t with image `points[0..len]` (1-based)?
 * Writes TL_YES, TL_NO or TL_UNKNOWN.
 *
 * # Safety
 * `g` must be a live handle, `points` must hold `len` values and `out` be valid.
 */
int32_t tl_regular(const struct TlGroup *g, const size_t *points, size_t len, int32_t *out);

/**
 * Run the command-line tool with `argv` (without the program name) and return the
 * JSON report in `out_json`; `out_exit` receives the tool's exit code.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings; the out pointers must be valid.
 */
int32_t tl_run(size_t argc, const char *const *argv, char **out_json, int32_t *out_exit);

/**
 * Check the certificate in a JSON report without search.
 * TL_OK when valid, TL_ERR_INVALID_CERTIFICATE otherwise.
 *
 * # Safety
 * `json` must be a NUL-terminated string.
 */
int32_t tl_verify_report(const char *json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TRANSVERSAL_LAB_H */
