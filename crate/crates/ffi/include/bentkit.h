#ifndef BENTKIT_H
#define BENTKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the nonzero values match the CLI exit codes where they overlap.
 */
typedef enum BkStatus {
  BK_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  BK_STATUS_NULL_ARGUMENT = 1,
  /**
   * Malformed ANF, matrix or identifier.
   */
  BK_STATUS_PARSE = 2,
  /**
   * Input violates a precondition, e.g. a non-bent function where bentness is required.
   */
  BK_STATUS_PRECONDITION = 3,
  /**
   * The canonical-labeling search exhausted its node budget.
   */
  BK_STATUS_RESOURCE_LIMIT = 4,
  /**
   * An internal cross-check failed.
   */
  BK_STATUS_INCONSISTENCY = 5,
  /**
   * A string argument is not valid UTF-8.
   */
  BK_STATUS_UTF8 = 6,
  /**
   * The library panicked; the handle arguments are left untouched.
   */
  BK_STATUS_PANIC = 7,
} BkStatus;

typedef enum BkDesignKind {
  /**
   * dev(D_f) of a Boolean function.
   */
  BK_DESIGN_KIND_SUPPORT = 0,
  /**
   * dev(G_F).
   */
  BK_DESIGN_KIND_GRAPH = 1,
  /**
   * Supported by the minimum-weight codewords of C(F).
   */
  BK_DESIGN_KIND_ADDITION = 2,
} BkDesignKind;

/**
 * An incidence structure.
 */
typedef struct BkDesign BkDesign;

/**
 * An (n,m)-function.
 */
typedef struct BkFunction BkFunction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Owned by the library
 * and valid until the next failing call on the same thread.
 */
const char *bk_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *bk_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library that was not freed yet.
 */
void bk_string_free(char *s);

/**
 * Parses coordinate ANFs separated by ';' ("x1*x2 + x3*x4; x1*x3 + x2*x4") or a
 * JSON function record. `n = 0` infers the number of variables; nonzero
 * `digits` selects the digit shorthand ("12 + 34").
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BkStatus bk_function_parse(const char *text, size_t n, int digits, struct BkFunction **out);

/**
 * The catalog representative of class C{m}_{index} on six variables.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum BkStatus bk_function_catalog(size_t m, size_t index, struct BkFunction **out);

/**
 * # Safety
 * `f` must be null or a handle from this library that was not freed yet.
 */
void bk_function_free(struct BkFunction *f);

/**
 * Writes n, m and the algebraic degree; any out pointer may be null.
 *
 * # Safety
 * `f` must be a valid handle; non-null out pointers must be writable.
 */
enum BkStatus bk_function_shape(const struct BkFunction *f, size_t *n, size_t *m, uint32_t *degree);

/**
 * Coordinate `i` (0-based) as an ANF string; free with [`bk_string_free`].
 *
 * # Safety
 * `f` must be a valid handle and `out` a valid pointer.
 */
enum BkStatus bk_function_anf(const struct BkFunction *f, size_t i, char **out);

/**
 * # Safety
 * `f` must be a valid handle and `out` a valid pointer.
 */
enum BkStatus bk_function_is_bent(const struct BkFunction *f, int *out);

/**
 * # Safety
 * `f` must be a valid handle and `out` a valid pointer.
 */
enum BkStatus bk_function_nonlinearity(const struct BkFunction *f, uint32_t *out);

/**
 * EA-equivalence of two bent functions; `budget = 0` uses the default node budget.
 *
 * # Safety
 * `a`, `b` must be valid handles and `out` a valid pointer.
 */
enum BkStatus bk_ea_equivalent(const struct BkFunction *a,
                               const struct BkFunction *b,
                               uint64_t budget,
                               int *out);

/**
 * Builds a translation or addition design of `f`.
 *
 * # Safety
 * `f` must be a valid handle and `out` a valid pointer.
 */
enum BkStatus bk_design_new(const struct BkFunction *f,
                            enum BkDesignKind kind,
                            struct BkDesign **out);

/**
 * # Safety
 * `d` must be null or a handle from this library that was not freed yet.
 */
void bk_design_free(struct BkDesign *d);

/**
 * Number of points and blocks; either out pointer may be null.
 *
 * # Safety
 * `d` must be a valid handle; non-null out pointers must be writable.
 */
enum BkStatus bk_design_size(const struct BkDesign *d, size_t *points, size_t *blocks);

/**
 * Rank over GF(2) of the incidence matrix.
 *
 * # Safety
 * `d` must be a valid handle and `out` a valid pointer.
 */
enum BkStatus bk_design_gf2_rank(const struct BkDesign *d, size_t *out);

/**
 * Smith normal form of the incidence matrix as "1^a 2^b ..."; free with [`bk_string_free`].
 *
 * # Safety
 * `d` must be a valid handle and `out` a valid pointer.
 */
enum BkStatus bk_design_snf(const struct BkDesign *d, char **out);

/**
 * Incidence matrix in the text export format (header "b v", one 0/1 row per block).
 *
 * # Safety
 * `d` must be a valid handle and `out` a valid pointer.
 */
enum BkStatus bk_design_matrix(const struct BkDesign *d, char **out);

/**
 * Isomorphism of two designs; `budget = 0` uses the default node budget.
 *
 * # Safety
 * `a`, `b` must be valid handles and `out` a valid pointer.
 */
enum BkStatus bk_design_isomorphic(const struct BkDesign *a,
                                   const struct BkDesign *b,
                                   uint64_t budget,
                                   int *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BENTKIT_H */
