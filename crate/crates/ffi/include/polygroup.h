#ifndef POLYGROUP_H
#define POLYGROUP_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every fallible call.
 */
typedef enum PgStatus {
  PG_STATUS_OK = 0,
  PG_STATUS_NULL_POINTER = 1,
  PG_STATUS_INVALID_UTF8 = 2,
  PG_STATUS_PARSE = 3,
  PG_STATUS_INVALID_ARGUMENT = 4,
  PG_STATUS_SPEC_MISMATCH = 5,
  PG_STATUS_EVALUATION = 6,
  PG_STATUS_UNSUPPORTED = 7,
  PG_STATUS_IO = 8,
  PG_STATUS_PANIC = 9,
} PgStatus;

/*
 An element in normal form, tagged with its group.
 */
typedef struct PgElement PgElement;

/*
 A scalar-valued function on a group.
 */
typedef struct PgFunction PgFunction;

/*
 A group descriptor.
 */
typedef struct PgGroup PgGroup;

/*
 A matrix representation.
 */
typedef struct PgRep PgRep;

/*
 The result of a check.
 */
typedef struct PgReport PgReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null. Free with
 [`pg_string_free`].
 */
char *pg_last_error(void);

/*
 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void pg_string_free(char *s);

/*
 Library version. Free with [`pg_string_free`].
 */
char *pg_version(void);

/*
 # Safety
 `descriptor` must be a NUL-terminated string, `out` writable.
 */
enum PgStatus pg_group_parse(const char *descriptor, struct PgGroup **out);

/*
 # Safety
 `g` must be null or a handle from [`pg_group_parse`], not yet freed.
 */
void pg_group_free(struct PgGroup *g);

/*
 Canonical descriptor of `g`, or null. Free with [`pg_string_free`].

 # Safety
 `g` must be a live group handle.
 */
char *pg_group_describe(const struct PgGroup *g);

/*
 # Safety
 `g` must be a live group handle, `text` a NUL-terminated string, `out`
 writable.
 */
enum PgStatus pg_element_parse(const struct PgGroup *g, const char *text, struct PgElement **out);

/*
 # Safety
 `x` must be null or an element handle, not yet freed.
 */
void pg_element_free(struct PgElement *x);

/*
 Element literal of `x`, or null. Free with [`pg_string_free`].

 # Safety
 `x` must be a live element handle.
 */
char *pg_element_format(const struct PgElement *x);

/*
 `*out = a · b`.

 # Safety
 `a`, `b` must be live element handles, `out` writable.
 */
enum PgStatus pg_element_mul(const struct PgElement *a,
                             const struct PgElement *b,
                             struct PgElement **out);

/*
 Builtin function by registry name, e.g. `heisenberg` or `gl-demo:2:0,1`.

 # Safety
 `name` must be a NUL-terminated string, `out` writable.
 */
enum PgStatus pg_function_builtin(const char *name, struct PgFunction **out);

/*
 Matrix element `ζ·π(w)·x`; vectors are comma-separated rationals.

 # Safety
 `r` must be a live rep handle, `x` and `zeta` NUL-terminated strings,
 `out` writable.
 */
enum PgStatus pg_function_matrix_element(const struct PgRep *r,
                                         const char *x,
                                         const char *zeta,
                                         struct PgFunction **out);

/*
 # Safety
 `f` must be null or a function handle, not yet freed.
 */
void pg_function_free(struct PgFunction *f);

/*
 `*out` receives `f(x)` as text (`p/q` or a float). Free with
 [`pg_string_free`].

 # Safety
 `f`, `x` must be live handles, `out` writable.
 */
enum PgStatus pg_function_eval(const struct PgFunction *f, const struct PgElement *x, char **out);

/*
 Polynomial (`kind = 0`) or semipolynomial (`kind = 1`) check of degree
 `degree`; `steps` and `bases` are `;`-separated element literals.

 # Safety
 `f` must be a live function handle, `steps` and `bases` NUL-terminated
 strings, `out` writable.
 */
enum PgStatus pg_check(const struct PgFunction *f,
                       uint32_t kind,
                       uint32_t degree,
                       const char *steps,
                       const char *bases,
                       struct PgReport **out);

/*
 Runs a JSON experiment config end to end.

 # Safety
 `json` must be a NUL-terminated string, `out` writable.
 */
enum PgStatus pg_check_config(const char *json, struct PgReport **out);

/*
 1 for pass, 0 for fail, -1 for a null handle.

 # Safety
 `r` must be null or a live report handle.
 */
int32_t pg_report_passed(const struct PgReport *r);

/*
 Number of witnesses, 0 for a null handle.

 # Safety
 `r` must be null or a live report handle.
 */
uintptr_t pg_report_witness_count(const struct PgReport *r);

/*
 JSON form of the report, or null. Free with [`pg_string_free`].

 # Safety
 `r` must be null or a live report handle.
 */
char *pg_report_to_json(const struct PgReport *r);

/*
 # Safety
 `r` must be null or a report handle, not yet freed.
 */
void pg_report_free(struct PgReport *r);

/*
 Parses the line-oriented representation format.

 # Safety
 `text` must be a NUL-terminated string, `out` writable.
 */
enum PgStatus pg_rep_parse(const char *text, struct PgRep **out);

/*
 # Safety
 `r` must be null or a rep handle, not yet freed.
 */
void pg_rep_free(struct PgRep *r);

/*
 Dimension of the semipolynomial subspace of degree `n`, intersected
 over words of length up to `max_word_length`.

 # Safety
 `r` must be a live rep handle, `out` writable.
 */
enum PgStatus pg_rep_sp_dim(const struct PgRep *r,
                            uint32_t n,
                            uint32_t max_word_length,
                            uintptr_t *out);

/*
 Dimension of the polynomial subspace of degree `n`.

 # Safety
 `r` must be a live rep handle, `out` writable.
 */
enum PgStatus pg_rep_p_dim(const struct PgRep *r, uint32_t n, uintptr_t *out);

/*
 `*out` is true when every `(n+1)`-fold product of the δ-algebra vanishes.

 # Safety
 `r` must be a live rep handle, `out` writable.
 */
enum PgStatus pg_rep_certify_degree(const struct PgRep *r, uint32_t n, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYGROUP_H */
