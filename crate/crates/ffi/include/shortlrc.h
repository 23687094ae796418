#ifndef SHORTLRC_H
#define SHORTLRC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum ShortlrcStatus {
  SHORTLRC_STATUS_OK = 0,
  /**
   * A required pointer was null.
   */
  SHORTLRC_STATUS_NULL_POINTER = 1,
  /**
   * Parameters (q, n, k, r) rejected.
   */
  SHORTLRC_STATUS_INVALID_PARAMS = 2,
  /**
   * Symbols, lengths, indices or JSON malformed.
   */
  SHORTLRC_STATUS_INVALID_INPUT = 3,
  /**
   * Erasure pattern cannot be decoded.
   */
  SHORTLRC_STATUS_UNRECOVERABLE = 4,
  /**
   * Received word is not consistent with any codeword.
   */
  SHORTLRC_STATUS_INCONSISTENT_WORD = 5,
  /**
   * Verification would exceed the enumeration budget.
   */
  SHORTLRC_STATUS_BUDGET_EXCEEDED = 6,
  /**
   * A library invariant failed.
   */
  SHORTLRC_STATUS_INTERNAL = 7,
  /**
   * A Rust panic was caught at the boundary.
   */
  SHORTLRC_STATUS_PANIC = 8,
} ShortlrcStatus;

/**
 * Opaque code handle.
 */
typedef struct ShortlrcCode ShortlrcCode;

typedef struct ShortlrcBounds {
  int64_t singleton_like;
  /**
   * Valid only when `improved_applicable` is true.
   */
  int64_t improved;
  bool improved_applicable;
  bool rate_bound_holds;
  size_t delta;
} ShortlrcBounds;

typedef struct ShortlrcVerifyReport {
  bool rank_ok;
  size_t distance_found;
  size_t distance_expected;
  bool locality_ok;
  bool shortening_ok;
  bool erasure_ok;
  uint64_t enumerated_words;
  bool all_passed;
} ShortlrcVerifyReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next `shortlrc_*` call on this thread.
 */
const char *shortlrc_last_error(void);

/**
 * Builds the code for (q, n, k, r) and stores a new handle in `*out`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum ShortlrcStatus shortlrc_code_new(uint64_t q,
                                      size_t n,
                                      size_t k,
                                      size_t r,
                                      struct ShortlrcCode **out);

/**
 * Loads a code from its JSON spec text (NUL-terminated UTF-8).
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum ShortlrcStatus shortlrc_code_from_json(const char *json, struct ShortlrcCode **out);

/**
 * Serializes the code to JSON. Free the result with [`shortlrc_string_free`].
 *
 * # Safety
 * `code` must be a live handle and `out` writable.
 */
enum ShortlrcStatus shortlrc_code_to_json(const struct ShortlrcCode *code, char **out);

/**
 * # Safety
 * `s` must come from [`shortlrc_code_to_json`] or be null.
 */
void shortlrc_string_free(char *s);

/**
 * # Safety
 * `code` must come from a constructor in this library or be null.
 */
void shortlrc_code_free(struct ShortlrcCode *code);

/**
 * Code length n. Returns 0 for a null handle.
 *
 * # Safety
 * `code` must be a live handle or null.
 */
size_t shortlrc_code_length(const struct ShortlrcCode *code);

/**
 * Dimension k. Returns 0 for a null handle.
 *
 * # Safety
 * `code` must be a live handle or null.
 */
size_t shortlrc_code_dimension(const struct ShortlrcCode *code);

/**
 * Locality r. Returns 0 for a null handle.
 *
 * # Safety
 * `code` must be a live handle or null.
 */
size_t shortlrc_code_locality(const struct ShortlrcCode *code);

/**
 * Field order q. Returns 0 for a null handle.
 *
 * # Safety
 * `code` must be a live handle or null.
 */
size_t shortlrc_code_field_order(const struct ShortlrcCode *code);

/**
 * Designed minimum distance. Returns 0 for a null handle.
 *
 * # Safety
 * `code` must be a live handle or null.
 */
size_t shortlrc_code_distance(const struct ShortlrcCode *code);

/**
 * Encodes `k` message symbols into `n` codeword symbols.
 *
 * # Safety
 * `msg` must point to `msg_len` values and `out` to `out_len` writable values.
 */
enum ShortlrcStatus shortlrc_encode(const struct ShortlrcCode *code,
                                    const uint32_t *msg,
                                    size_t msg_len,
                                    uint32_t *out,
                                    size_t out_len);

/**
 * Recovers coordinate `index` (1-based) from its repair group. The value
 * currently stored at `index` in `word` is ignored.
 *
 * # Safety
 * `word` must point to `len` values and `value` must be writable.
 */
enum ShortlrcStatus shortlrc_repair(const struct ShortlrcCode *code,
                                    const uint32_t *word,
                                    size_t len,
                                    size_t index,
                                    uint32_t *value);

/**
 * Decodes a word with erasures. `erased[i] != 0` marks position `i` as
 * erased; its symbol in `word` is then ignored.
 *
 * # Safety
 * `word` and `erased` must point to `len` values; `out` to `out_len`.
 */
enum ShortlrcStatus shortlrc_decode(const struct ShortlrcCode *code,
                                    const uint32_t *word,
                                    const uint8_t *erased,
                                    size_t len,
                                    uint32_t *out,
                                    size_t out_len);

/**
 * Bound calculator for (n, k, r), independent of any field.
 *
 * # Safety
 * `out` must be writable.
 */
enum ShortlrcStatus shortlrc_bounds(size_t n, size_t k, size_t r, struct ShortlrcBounds *out);

/**
 * Runs the brute-force verification suite. A report whose checks fail is
 * still `Ok`; inspect `all_passed`.
 *
 * # Safety
 * `code` must be a live handle and `out` writable.
 */
enum ShortlrcStatus shortlrc_verify(const struct ShortlrcCode *code,
                                    uint64_t budget,
                                    uint64_t seed,
                                    size_t shortening_trials,
                                    struct ShortlrcVerifyReport *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SHORTLRC_H */
