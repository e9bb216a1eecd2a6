#ifndef QSG_H
#define QSG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum QsgStatus {
  QSG_STATUS_OK = 0,
  // A required pointer argument was null.
  QSG_STATUS_NULL_POINTER = 1,
  // Malformed input: bad JSON, bad UTF-8, out-of-range indices.
  QSG_STATUS_INVALID_INPUT = 2,
  // The input is well formed but violates a precondition.
  QSG_STATUS_PRECONDITION = 3,
  // A computation exceeded its budget.
  QSG_STATUS_BUDGET_EXCEEDED = 4,
  // An unexpected internal failure (no panic crosses the boundary).
  QSG_STATUS_INTERNAL = 5,
} QsgStatus;

// Opaque quadratic form.
typedef struct QsgQForm QsgQForm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a quadratic form from its JSON encoding
// (`{"n": k, "terms": [[i, j, c], …]}`).
//
// # Safety
// `json` must be a valid NUL-terminated string and `out` a valid pointer
// to writable storage. On success `*out` owns a handle to be released
// with [`qsg_qform_free`].
enum QsgStatus qsg_qform_from_json(const char *json, struct QsgQForm **out);

// Releases a form handle. Null is ignored.
//
// # Safety
// `q` must be null or a handle from [`qsg_qform_from_json`] not yet freed.
void qsg_qform_free(struct QsgQForm *q);

// Number of variables of a form.
//
// # Safety
// `q` must be a live handle and `out` a valid writable pointer.
enum QsgStatus qsg_qform_n(const struct QsgQForm *q, size_t *out);

// The rank (least number of products of linear forms summing to the
// form).
//
// # Safety
// `q` must be a live handle and `out` a valid writable pointer.
enum QsgStatus qsg_qform_rank(const struct QsgQForm *q, size_t *out);

// Rank of the Gram matrix.
//
// # Safety
// `q` must be a live handle and `out` a valid writable pointer.
enum QsgStatus qsg_qform_gram_rank(const struct QsgQForm *q, size_t *out);

// The form's JSON encoding.
//
// # Safety
// `q` must be a live handle and `out` a valid writable pointer; the
// string written to `*out` must be released with [`qsg_string_free`].
enum QsgStatus qsg_qform_to_json(const struct QsgQForm *q, char **out);

// The minimal space as JSON (`{"n": k, "basis": [[…], …]}`).
//
// # Safety
// As for [`qsg_qform_to_json`].
enum QsgStatus qsg_qform_minimal_space_json(const struct QsgQForm *q, char **out);

// Whether the product of `factors[0..len]` lies in the radical of the
// ideal generated by `a` and `b`.
//
// # Safety
// `a` and `b` must be live handles; `factors` must point to `len` live
// handles (it may be null only when `len` is 0, which is rejected as a
// precondition error); `out` must be a valid writable pointer.
enum QsgStatus qsg_radical_product_member(const struct QsgQForm *a,
                                          const struct QsgQForm *b,
                                          const struct QsgQForm *const *factors,
                                          size_t len,
                                          bool *out);

// Classifies a pair against a third set. Input JSON:
// `{"A": form, "B": form, "third": [form, …]}`; the output JSON lists
// every structure case that holds, with witnesses.
//
// # Safety
// `input` must be a valid NUL-terminated string and `out` a valid
// writable pointer; the string written to `*out` must be released with
// [`qsg_string_free`].
enum QsgStatus qsg_classify_pair_json(const char *input, char **out);

// Runs one acceptance criterion (1-8) with the given seed.
//
// # Safety
// `passed` must be a valid writable pointer.
enum QsgStatus qsg_selftest_criterion(uint8_t id, uint64_t seed, bool *passed);

// The most recent error message on this thread, or null if none. The
// returned string must be released with [`qsg_string_free`].
char *qsg_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string returned by this library not yet freed.
void qsg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QSG_H */
