#ifndef QPL_H
#define QPL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QplStatus {
  QPL_STATUS_OK = 0,
  QPL_STATUS_NULL_POINTER = 1,
  QPL_STATUS_INVALID_ARGUMENT = 2,
  QPL_STATUS_PARSE_ERROR = 3,
  QPL_STATUS_NOT_FOUND = 4,
  QPL_STATUS_PANIC = 5,
} QplStatus;

// The cusp dissection.
typedef struct QplAtlas QplAtlas;

// Quadruple of 5x5 skew-symmetric integer matrices.
typedef struct QplQuadruple QplQuadruple;

typedef struct QplClassification {
  // False when the discriminant vanishes; the other fields are then zero.
  bool classified;
  // Number of complex-conjugate pairs among the five zeros.
  uint8_t i;
  bool reducible;
  bool s5_certified;
} QplClassification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next call into the library on the same thread.
const char *qpl_last_error(void);

// Static, nul-terminated version string.
const char *qpl_version(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void qpl_string_free(char *s);

// Build a quadruple from `len` (which must be 40) coordinates in the order
// a12..a45, b12..b45, c12..c45, d12..d45.
//
// # Safety
// `coords` must point to `len` readable values; `out` must be writable.
enum QplStatus qpl_quadruple_new(const int64_t *coords, size_t len, struct QplQuadruple **out);

// Parse one line of forty integers.
//
// # Safety
// `line` must be a nul-terminated string; `out` must be writable.
enum QplStatus qpl_quadruple_parse(const char *line, struct QplQuadruple **out);

// # Safety
// `q` must be null or a handle from this library, not yet freed.
void qpl_quadruple_free(struct QplQuadruple *q);

// Coordinates as a line of text; free with `qpl_string_free`.
//
// # Safety
// `q` must be a live handle; `out` must be writable.
enum QplStatus qpl_quadruple_to_string(const struct QplQuadruple *q, char **out);

// Act by (g4, g5), given row-major as 16 and 25 integers.
//
// # Safety
// `g4` and `g5` must point to 16 and 25 values; `q` must be live; `out` writable.
enum QplStatus qpl_quadruple_act(const struct QplQuadruple *q,
                                 const int64_t *g4,
                                 const int64_t *g5,
                                 struct QplQuadruple **out);

// # Safety
// `q` must be a live handle; `out` must be writable.
enum QplStatus qpl_classify(const struct QplQuadruple *q,
                            uint64_t seed,
                            struct QplClassification *out);

// # Safety
// `out` must be writable.
enum QplStatus qpl_atlas_generate(struct QplAtlas **out);

// # Safety
// `a` must be null or a live handle.
void qpl_atlas_free(struct QplAtlas *a);

// Number of cases, or 0 for a null handle.
//
// # Safety
// `a` must be null or a live handle.
size_t qpl_atlas_len(const struct QplAtlas *a);

// Label and bound numerator k (the case is bounded by X^(k/40)) of case `index`.
//
// # Safety
// `a` must be live; `label` and `bound_numerator` must be writable.
enum QplStatus qpl_atlas_case(const struct QplAtlas *a,
                              size_t index,
                              char **label,
                              uint32_t *bound_numerator);

// Local mass at `p` as a reduced fraction `"n/d"`. Fields come from
// `<fixtures_dir>/p<p>.tbl` when present (pass null to skip), else from the
// tame enumeration, which needs p > 5. `matches` receives whether the mass
// equals 1 + p^-2 - p^-4 - p^-5.
//
// # Safety
// `fixtures_dir` must be null or nul-terminated; `out` and `matches` writable.
enum QplStatus qpl_beta_p(uint64_t p, const char *fixtures_dir, char **out, bool *matches);

// Run the command-line front end with `argc` arguments (the first is the
// program name). Only `QPL_` variables of the process environment are
// consulted. Output goes to `out` (free it), the exit code to `exit_code`.
//
// # Safety
// `argv` must hold `argc` nul-terminated strings; `out` and `exit_code` writable.
enum QplStatus qpl_run(size_t argc, const char *const *argv, char **out, int32_t *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QPL_H */
