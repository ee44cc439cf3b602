#ifndef RIGHTGROUPS_H
#define RIGHTGROUPS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum RgStatus {
  RG_STATUS_OK = 0,
  RG_STATUS_NULL_POINTER = 1,
  RG_STATUS_PARSE = 2,
  RG_STATUS_NOT_ASSOCIATIVE = 3,
  RG_STATUS_NOT_A_RIGHT_GROUP = 4,
  RG_STATUS_ORDER_TOO_LARGE = 5,
  RG_STATUS_BUDGET_EXCEEDED = 6,
  RG_STATUS_INVALID_INPUT = 7,
  RG_STATUS_INTERNAL = 8,
} RgStatus;

/**
 * Opaque handle to a validated finite semigroup.
 */
typedef struct RgSemigroup RgSemigroup;

/**
 * Summary of a right-group decomposition.
 */
typedef struct RgDecomposition {
  size_t order;
  size_t idempotent_count;
  size_t base_idempotent;
  size_t group_order;
  bool group_is_abelian;
} RgDecomposition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a Cayley table in the text format into `*out`.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum RgStatus rg_semigroup_parse(const char *text, struct RgSemigroup **out);

/**
 * Builds a semigroup from `n * n` row-major entries.
 *
 * # Safety
 * `entries` must point to `n * n` values and `out` must be valid.
 */
enum RgStatus rg_semigroup_from_table(size_t n, const size_t *entries, struct RgSemigroup **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void rg_semigroup_free(struct RgSemigroup *s);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
size_t rg_semigroup_order(const struct RgSemigroup *s);

/**
 * The table in the text format; release with [`rg_string_free`].
 * Returns null for a null handle.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
char *rg_semigroup_to_text(const struct RgSemigroup *s);

/**
 * # Safety
 * `text` must come from this library and not be used afterwards.
 */
void rg_string_free(char *text);

/**
 * Writes whether `s` is a right group and how many idempotents it has.
 * Fails with `Internal` if the independent condition checks disagree.
 *
 * # Safety
 * `s` must be a live handle; the out pointers must be valid.
 */
enum RgStatus rg_check(const struct RgSemigroup *s, bool *is_right_group, size_t *idempotent_count);

/**
 * Splits a right group as group times right zero semigroup.
 *
 * # Safety
 * `s` must be a live handle and `out` valid.
 */
enum RgStatus rg_decompose(const struct RgSemigroup *s, struct RgDecomposition *out);

/**
 * Number of morphisms `dom -> cod`: from the structure theory when both are
 * right groups, otherwise by search scanning at most `budget` maps.
 *
 * # Safety
 * Both handles must be live and `out` valid.
 */
enum RgStatus rg_hom_count(const struct RgSemigroup *dom,
                           const struct RgSemigroup *cod,
                           uint64_t budget,
                           uint64_t *out);

/**
 * Right groups of each order `1..=n_max` up to isomorphism, written to
 * `counts[0..n_max]`.
 *
 * # Safety
 * `counts` must have room for `n_max` values.
 */
enum RgStatus rg_census(size_t n_max, size_t *counts);

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *rg_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RIGHTGROUPS_H */
