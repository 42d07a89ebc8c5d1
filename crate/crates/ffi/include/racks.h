#ifndef RACKS_H
#define RACKS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the first four match the exit codes of the `racks` binary.
 */
typedef enum RacksStatus {
  RACKS_STATUS_OK = 0,
  RACKS_STATUS_AXIOM_VIOLATION = 1,
  RACKS_STATUS_INPUT_ERROR = 2,
  RACKS_STATUS_CAP_EXCEEDED = 3,
  RACKS_STATUS_NULL_POINTER = 4,
  RACKS_STATUS_BUFFER_TOO_SMALL = 5,
  RACKS_STATUS_INTERNAL = 6,
} RacksStatus;

typedef enum RacksKind {
  RACKS_KIND_RACK = 0,
  RACKS_KIND_QUANDLE = 1,
  RACKS_KIND_INVOLUTARY = 2,
  RACKS_KIND_KEI = 3,
} RacksKind;

/**
 * Opaque handle to a census result.
 */
typedef struct RacksCensus RacksCensus;

/**
 * Opaque handle to a validated finite rack.
 */
typedef struct RacksRack RacksRack;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated, truncated
 * to `len`). Returns the buffer size needed for the full message.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t racks_last_error_message(char *buf, size_t len);

/**
 * Validates an `n × n` row-major table.
 *
 * # Safety
 * `table` must be valid for `n * n` reads; `out` must be valid for a write.
 */
enum RacksStatus racks_rack_new(size_t n, const uint32_t *table, struct RacksRack **out);

/**
 * # Safety
 * `rack` must be null or a handle returned by this library and not yet freed.
 */
void racks_rack_free(struct RacksRack *rack);

/**
 * Order of the rack, or 0 for a null handle.
 *
 * # Safety
 * `rack` must be null or a live handle.
 */
size_t racks_rack_order(const struct RacksRack *rack);

/**
 * # Safety
 * `rack` must be a live handle and `out` valid for a write.
 */
enum RacksStatus racks_rack_op(const struct RacksRack *rack, size_t x, size_t y, size_t *out);

/**
 * Copies the row-major table into `buf`, which must hold `n * n` entries.
 *
 * # Safety
 * `rack` must be a live handle and `buf` valid for `len` writes.
 */
enum RacksStatus racks_rack_table(const struct RacksRack *rack, uint32_t *buf, size_t len);

/**
 * Writes `F(x) = x ▷ x` for every `x` into `buf`, which must hold `n` entries.
 *
 * # Safety
 * `rack` must be a live handle and `buf` valid for `len` writes.
 */
enum RacksStatus racks_rack_canonical_automorphism(const struct RacksRack *rack,
                                                   uint32_t *buf,
                                                   size_t len);

/**
 * The strongest kind the rack belongs to.
 *
 * # Safety
 * `rack` must be a live handle.
 */
enum RacksKind racks_rack_kind(const struct RacksRack *rack);

/**
 * # Safety
 * `rack` must be null or a live handle.
 */
bool racks_rack_is_quandle(const struct RacksRack *rack);

/**
 * # Safety
 * `rack` must be null or a live handle.
 */
bool racks_rack_is_involutary(const struct RacksRack *rack);

/**
 * # Safety
 * `rack` must be null or a live handle.
 */
bool racks_rack_is_kei(const struct RacksRack *rack);

/**
 * `ℓ_x^m = id` for every `x`.
 *
 * # Safety
 * `rack` must be null or a live handle.
 */
bool racks_rack_is_power_trivial(const struct RacksRack *rack, int64_t m);

/**
 * Literal table equality.
 *
 * # Safety
 * Both arguments must be null or live handles.
 */
bool racks_rack_equal(const struct RacksRack *a, const struct RacksRack *b);

/**
 * `x □ y = F⁻¹(x ▷ y)`.
 *
 * # Safety
 * `rack` must be a live handle and `out` valid for a write.
 */
enum RacksStatus racks_rack_quandleify(const struct RacksRack *rack, struct RacksRack **out);

/**
 * `Ψ^m`: `x ▷^m y = ℓ_x^m(y)`.
 *
 * # Safety
 * `rack` must be a live handle and `out` valid for a write.
 */
enum RacksStatus racks_rack_power(const struct RacksRack *rack, int64_t m, struct RacksRack **out);

/**
 * Lexicographically minimal relabeling (orders up to 8).
 *
 * # Safety
 * `rack` must be a live handle and `out` valid for a write.
 */
enum RacksStatus racks_rack_canonical_form(const struct RacksRack *rack, struct RacksRack **out);

/**
 * Transports the structure along the permutation `perm` of length `n`.
 *
 * # Safety
 * `rack` must be a live handle, `perm` valid for `n` reads where `n` is the rack's
 * order, and `out` valid for a write.
 */
enum RacksStatus racks_rack_relabel(const struct RacksRack *rack,
                                    const uint32_t *perm,
                                    struct RacksRack **out);

/**
 * The permutation rack `x ▷ y = f(y)`.
 *
 * # Safety
 * `images` must be valid for `n` reads and `out` valid for a write.
 */
enum RacksStatus racks_perm_to_rack(size_t n, const uint32_t *images, struct RacksRack **out);

/**
 * # Safety
 * `out` must be valid for a write.
 */
enum RacksStatus racks_trivial_quandle(size_t n, struct RacksRack **out);

/**
 * Number of rack morphisms `source → target` (orders up to 5).
 *
 * # Safety
 * Both handles must be live and `out` valid for a write.
 */
enum RacksStatus racks_hom_count(const struct RacksRack *source,
                                 const struct RacksRack *target,
                                 size_t *out);

/**
 * Runs the identity suite; `all_hold` receives whether every identity held.
 *
 * # Safety
 * `rack` must be a live handle and `all_hold` valid for a write.
 */
enum RacksStatus racks_check_identities(const struct RacksRack *rack, bool *all_hold);

/**
 * Evaluates a rack word such as `(x > (x <| x))` in the free rack on one generator.
 *
 * # Safety
 * `word` must be a NUL-terminated string and `out` valid for a write.
 */
enum RacksStatus racks_free_rack_eval(const char *word, int64_t window, int64_t *out);

/**
 * Runs a census of the given order and kind.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum RacksStatus racks_census_new(size_t order,
                                  enum RacksKind kind,
                                  size_t workers,
                                  struct RacksCensus **out);

/**
 * # Safety
 * `census` must be null or a live handle.
 */
void racks_census_free(struct RacksCensus *census);

/**
 * # Safety
 * `census` must be null or a live handle.
 */
uint64_t racks_census_labeled_count(const struct RacksCensus *census);

/**
 * # Safety
 * `census` must be null or a live handle.
 */
size_t racks_census_iso_count(const struct RacksCensus *census);

/**
 * A new handle to representative `index`; release it with `racks_rack_free`.
 *
 * # Safety
 * `census` must be a live handle and `out` valid for a write.
 */
enum RacksStatus racks_census_representative(const struct RacksCensus *census,
                                             size_t index,
                                             struct RacksRack **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RACKS_H */
