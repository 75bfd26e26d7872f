#ifndef VHCX_H
#define VHCX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define VHCX_SIDE_HORIZONTAL 0

#define VHCX_SIDE_VERTICAL 1

typedef enum VhcxStatus {
  VHCX_STATUS_OK = 0,
  /**
   * The mathematical check ran and failed.
   */
  VHCX_STATUS_MATH_FAIL = 1,
  /**
   * A resource cap was hit; the answer is unknown.
   */
  VHCX_STATUS_EXHAUSTED = 2,
  VHCX_STATUS_NULL_POINTER = 3,
  VHCX_STATUS_INVALID_UTF8 = 4,
  VHCX_STATUS_PARSE_ERROR = 5,
  VHCX_STATUS_INVALID_ARGUMENT = 6,
  VHCX_STATUS_INTERNAL = 7,
} VhcxStatus;

/**
 * Opaque handle to a parsed square complex.
 */
typedef struct VhcxComplex VhcxComplex;

typedef struct VhcxAmalgam {
  uint64_t vertex_rank;
  uint64_t edge_rank;
  uint64_t edge_index;
} VhcxAmalgam;

typedef struct VhcxAmalgamRanks {
  struct VhcxAmalgam horizontal_cut;
  struct VhcxAmalgam vertical_cut;
  int64_t euler_characteristic;
  bool euler_consistent;
} VhcxAmalgamRanks;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `.vh` text into a new handle stored in `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum VhcxStatus vhcx_complex_parse(const char *text, struct VhcxComplex **out);

/**
 * # Safety
 * `c` must come from [`vhcx_complex_parse`] and not be used afterwards.
 * Null is ignored.
 */
void vhcx_complex_free(struct VhcxComplex *c);

/**
 * Link condition: `*ok` is set, along with the covered and expected
 * corner counts. Returns `MathFail` when the condition fails.
 *
 * # Safety
 * All pointers must be valid.
 */
enum VhcxStatus vhcx_check_link(const struct VhcxComplex *c,
                                bool *ok,
                                size_t *covered,
                                size_t *expected);

/**
 * # Safety
 * All pointers must be valid.
 */
enum VhcxStatus vhcx_euler_characteristic(const struct VhcxComplex *c, int64_t *out);

/**
 * Order of the local group on the `depth`-sphere of the given side's tree,
 * as a decimal string in `*out`.
 *
 * # Safety
 * All pointers must be valid.
 */
enum VhcxStatus vhcx_local_group_order(const struct VhcxComplex *c,
                                       uint32_t side,
                                       uint32_t depth,
                                       char **out);

/**
 * Index of the normal closure of `word`; `cap = 0` selects the default.
 * Returns `Exhausted` when the enumeration hits the cap.
 *
 * # Safety
 * All pointers must be valid.
 */
enum VhcxStatus vhcx_normal_closure_index(const struct VhcxComplex *c,
                                          const char *word,
                                          size_t cap,
                                          size_t *out);

/**
 * Simplicity certificate for `<<word>>` as JSON in `*json_out`. A
 * certificate is produced even when it stops short of concluding
 * simplicity; `*simple` tells which.
 *
 * # Safety
 * All pointers must be valid.
 */
enum VhcxStatus vhcx_simplicity_certificate(const struct VhcxComplex *c,
                                            const char *word,
                                            bool assume_nrf,
                                            bool *simple,
                                            char **json_out);

/**
 * # Safety
 * `out` must be valid.
 */
enum VhcxStatus vhcx_amalgam_ranks(uint64_t m, uint64_t n, struct VhcxAmalgamRanks *out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is
 * ignored.
 */
void vhcx_string_free(char *s);

/**
 * Message for the last failed call on this thread; empty after a success.
 * Valid until the next call into the library on the same thread.
 */
const char *vhcx_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VHCX_H */
