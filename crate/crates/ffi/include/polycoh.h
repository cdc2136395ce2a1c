#ifndef POLYCOH_H
#define POLYCOH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PcStatus {
  PC_STATUS_OK = 0,
  PC_STATUS_NULL_POINTER = 1,
  PC_STATUS_INVALID_UTF8 = 2,
  /**
   * A degree list with an odd or zero entry.
   */
  PC_STATUS_INVALID_TYPE = 3,
  PC_STATUS_NOT_A_PRIME = 4,
  /**
   * Malformed ring text or catalog JSON.
   */
  PC_STATUS_PARSE_ERROR = 5,
  PC_STATUS_INVALID_ARGUMENT = 6,
  PC_STATUS_SIZE_LIMIT = 7,
  PC_STATUS_ARITHMETIC = 8,
  PC_STATUS_PANIC = 9,
} PcStatus;

/**
 * Opaque catalog handle.
 */
typedef struct PcCatalog PcCatalog;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or an empty string.
 */
const char *pc_last_error(void);

/**
 * Library version as a static string.
 */
const char *pc_version(void);

/**
 * The builtin table. Never null.
 */
struct PcCatalog *pc_catalog_builtin(void);

/**
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PcStatus pc_catalog_from_json(const char *json, struct PcCatalog **out);

/**
 * # Safety
 * `cat` must come from this library and `out` must be a valid pointer.
 */
enum PcStatus pc_catalog_to_json(const struct PcCatalog *cat, char **out);

/**
 * # Safety
 * `cat` must be null or come from this library and not be freed twice.
 */
void pc_catalog_free(struct PcCatalog *cat);

/**
 * Realizability report as JSON for the ring described by `ring`
 * (`Z`, `Q`, `F_p`, `Z[1/a,...]`, `primes=...`).
 *
 * # Safety
 * `degrees` must point to `len` values (or be null when `len` is 0), `ring`
 * must be a NUL-terminated string and `out_json` a valid pointer.
 */
enum PcStatus pc_check(const struct PcCatalog *cat,
                       const uint32_t *degrees,
                       size_t len,
                       const char *ring,
                       char **out_json);

/**
 * Writes whether the type is realizable at `p`. When it is and
 * `out_witness` is non-null, the witness is written there as text such as
 * `SU(2) + C_3`; otherwise `*out_witness` is set to null.
 *
 * # Safety
 * Pointer arguments as for [`pc_check`]; `out_realizable` must be valid.
 */
enum PcStatus pc_realizable_at_prime(const struct PcCatalog *cat,
                                     const uint32_t *degrees,
                                     size_t len,
                                     uint64_t p,
                                     bool *out_realizable,
                                     char **out_witness);

/**
 * The allowed prime set as a modulus and sorted residues. The residue array
 * is null when empty; release it with [`pc_residues_free`].
 *
 * # Safety
 * Pointer arguments as for [`pc_check`]; all out pointers must be valid.
 */
enum PcStatus pc_prime_set(const struct PcCatalog *cat,
                           const uint32_t *degrees,
                           size_t len,
                           uint64_t *out_modulus,
                           uint64_t **out_residues,
                           size_t *out_len);

/**
 * # Safety
 * `residues` and `len` must come from one [`pc_prime_set`] call.
 */
void pc_residues_free(uint64_t *residues, size_t len);

/**
 * Molien-series check of the classical degrees of `G(m, r, n)`. A `budget`
 * of 0 selects the default element cap.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PcStatus pc_verify_degrees(uint32_t m, uint32_t r, uint32_t n, uint64_t budget, bool *out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void pc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYCOH_H */
