#ifndef SKEWREC_H
#define SKEWREC_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every `skr_` call.
 */
typedef enum SkrStatus {
  SKR_STATUS_OK = 0,
  SKR_STATUS_NULL_POINTER = 1,
  SKR_STATUS_INVALID_ARGUMENT = 2,
  SKR_STATUS_SPACE_MISMATCH = 3,
  SKR_STATUS_NOT_A_PERMUTATION = 4,
  SKR_STATUS_PRECONDITION = 5,
  SKR_STATUS_OVERFLOW = 6,
  SKR_STATUS_CONSTRUCTION = 7,
  SKR_STATUS_JSON = 8,
  SKR_STATUS_PANIC = 9,
} SkrStatus;

typedef struct SkrPartition SkrPartition;

typedef struct SkrPerm SkrPerm;

typedef struct SkrSkew SkrSkew;

/**
 * Exact rational `num / den` with `den > 0`.
 */
typedef struct SkrRational {
  int64_t num;
  int64_t den;
} SkrRational;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread ("" after a success).
 */
const char *skr_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library that was not yet freed.
 */
void skr_string_free(char *s);

/**
 * Creates a permutation from its image table `forward[0..len]`; `len` must be a power of two.
 *
 * # Safety
 * `forward` must point to `len` readable values; `out` must be writable.
 */
enum SkrStatus skr_perm_new(const size_t *forward, size_t len, struct SkrPerm **out);

/**
 * # Safety
 * `p` must be null or a handle from this library that was not yet freed.
 */
void skr_perm_free(struct SkrPerm *p);

/**
 * Number of cells, 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t skr_perm_len(const struct SkrPerm *p);

/**
 * Copies the image table into `buf`, which must hold exactly `len` cells.
 *
 * # Safety
 * `p` must be a live handle and `buf` must point to `len` writable values.
 */
enum SkrStatus skr_perm_forward(const struct SkrPerm *p, size_t *buf, size_t len);

/**
 * `out = p ∘ q`.
 *
 * # Safety
 * `p`, `q` must be live handles; `out` must be writable.
 */
enum SkrStatus skr_perm_compose(const struct SkrPerm *p,
                                const struct SkrPerm *q,
                                struct SkrPerm **out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum SkrStatus skr_perm_inverse(const struct SkrPerm *p, struct SkrPerm **out);

/**
 * Length of the shortest cycle, 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t skr_perm_min_cycle_length(const struct SkrPerm *p);

/**
 * Halmos distance over the dyadic family of the permutations' space.
 *
 * # Safety
 * `p`, `q` must be live handles; `out` must be writable.
 */
enum SkrStatus skr_halmos_distance(const struct SkrPerm *p,
                                   const struct SkrPerm *q,
                                   struct SkrRational *out);

/**
 * Measure of the set where `p` and `q` disagree.
 *
 * # Safety
 * `p`, `q` must be live handles; `out` must be writable.
 */
enum SkrStatus skr_uniform_distance(const struct SkrPerm *p,
                                    const struct SkrPerm *q,
                                    struct SkrRational *out);

/**
 * Skew product over `base` with one fiber handle per base cell. Handles are copied, not consumed.
 *
 * # Safety
 * `base` must be a live handle, `fibers` must point to `count` live handles, `out` must be writable.
 */
enum SkrStatus skr_skew_new(const struct SkrPerm *base,
                            const struct SkrPerm *const *fibers,
                            size_t count,
                            struct SkrSkew **out);

/**
 * Parses `{"base": …, "fibers": […], "pool": […]}`.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum SkrStatus skr_skew_from_json(const char *json, struct SkrSkew **out);

/**
 * # Safety
 * `skew` must be a live handle; `out` must be writable. Free the result with `skr_string_free`.
 */
enum SkrStatus skr_skew_to_json(const struct SkrSkew *skew, char **out);

/**
 * # Safety
 * `skew` must be null or a handle from this library that was not yet freed.
 */
void skr_skew_free(struct SkrSkew *skew);

/**
 * `out = C(x, n, R)`.
 *
 * # Safety
 * `skew` must be a live handle; `out` must be writable.
 */
enum SkrStatus skr_skew_cocycle(const struct SkrSkew *skew,
                                size_t x,
                                size_t n,
                                struct SkrPerm **out);

/**
 * `μ(D(m, n, R, A))`; a null `subset` means `A = X`.
 *
 * # Safety
 * `skew` must be a live handle; `subset` null or `subset_len` readable values; `out` writable.
 */
enum SkrStatus skr_recurrence_measure(const struct SkrSkew *skew,
                                      uint64_t m,
                                      size_t n,
                                      const size_t *subset,
                                      size_t subset_len,
                                      struct SkrRational *out);

/**
 * Smallest `n` in `(floor, horizon]` with `μ(D(m, n, R, A)) > 0`. On exhaustion
 * `*found = false` and the status is still `Ok`.
 *
 * # Safety
 * `skew` must be a live handle; `subset` null or readable; `out_n` and `found` writable.
 */
enum SkrStatus skr_find_witness(const struct SkrSkew *skew,
                                uint64_t m,
                                size_t floor,
                                size_t horizon,
                                const size_t *subset,
                                size_t subset_len,
                                size_t *out_n,
                                bool *found);

/**
 * Tower JSON `{"base_set": …, "height": …, "residual": …}`.
 *
 * # Safety
 * `base` must be a live handle; `out` writable. Free the result with `skr_string_free`.
 */
enum SkrStatus skr_build_tower(const struct SkrPerm *base,
                               size_t height,
                               struct SkrRational eps,
                               char **out);

/**
 * Partition from per-cell block labels `0..block_count` and one fiber permutation per block.
 *
 * # Safety
 * `labels` must hold `cells` values, `perms` `block_count` live handles; `out` writable.
 */
enum SkrStatus skr_partition_new(const size_t *labels,
                                 size_t cells,
                                 const struct SkrPerm *const *perms,
                                 size_t block_count,
                                 struct SkrPartition **out);

/**
 * # Safety
 * `part` must be null or a handle from this library that was not yet freed.
 */
void skr_partition_free(struct SkrPartition *part);

/**
 * The simple cocycle `T_x = J_{k(Sx)}⁻¹ ∘ J_{k(x)}`.
 *
 * # Safety
 * `base`, `part` must be live handles; `out` writable.
 */
enum SkrStatus skr_simple_cocycle(const struct SkrPerm *base,
                                  const struct SkrPartition *part,
                                  struct SkrSkew **out);

/**
 * Certificate JSON `{"block": k, "n": n, "witness": […]}`; a null `subset` means every cell.
 *
 * # Safety
 * `base`, `part` must be live handles; `subset` null or readable; `out` writable.
 */
enum SkrStatus skr_certify(const struct SkrPerm *base,
                           const struct SkrPartition *part,
                           size_t floor,
                           const size_t *subset,
                           size_t subset_len,
                           char **out);

/**
 * Nearby certified-recurrent simple extension. Writes the new extension,
 * its product-cell distance from `skew`, and the certificate JSON.
 *
 * # Safety
 * `skew` must be a live handle; `subset` null or readable; all `out_*` writable.
 */
enum SkrStatus skr_recurrentize(const struct SkrSkew *skew,
                                struct SkrRational delta,
                                size_t floor,
                                const size_t *subset,
                                size_t subset_len,
                                struct SkrSkew **out_extension,
                                struct SkrRational *out_dist,
                                char **out_certificate);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SKEWREC_H */
