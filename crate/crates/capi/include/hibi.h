/* C interface to the hibi-toric library. */

#ifndef HIBI_H
#define HIBI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible function.
 */
typedef enum HibiStatus {
  /**
   * Success.
   */
  HibiOk = 0,
  /**
   * A required pointer argument was null.
   */
  HibiNullPointer = 1,
  /**
   * The input could not be parsed or validated.
   */
  HibiInvalidInput = 2,
  /**
   * A size guard or computation error; see `hibi_last_error`.
   */
  HibiComputeError = 3,
} HibiStatus;

/**
 * Opaque handle to a finite distributive lattice.
 */
typedef struct HibiLattice HibiLattice;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent error on this thread. Valid until the
 * next failing call on the same thread; do not free.
 */
const char *hibi_last_error(void);

/**
 * Frees a string returned by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned through an out-parameter
 * of this library, or null.
 */
void hibi_string_free(char *s);

/**
 * Builds a lattice from a JSON spec: either a poset
 * `{"elements": [...], "covers": [[upper, lower], ...]}` or the
 * shortcut `{"type": "idn", "d": D, "n": N}`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` must be valid.
 */
enum HibiStatus hibi_lattice_from_json(const char *spec, struct HibiLattice **out);

/**
 * Builds the Grassmann lattice I_{d,n}.
 *
 * # Safety
 * `out` must be valid.
 */
enum HibiStatus hibi_lattice_idn(uint32_t d, uint32_t n, struct HibiLattice **out);

/**
 * Builds the 12-element interval of I_{3,6} on which the interval
 * smoothness criterion fails.
 *
 * # Safety
 * `out` must be valid.
 */
enum HibiStatus hibi_lattice_counterexample(struct HibiLattice **out);

/**
 * Frees a lattice handle.
 *
 * # Safety
 * `lat` must come from this library, or be null; not used afterwards.
 */
void hibi_lattice_free(struct HibiLattice *lat);

/**
 * Number of lattice elements.
 *
 * # Safety
 * `lat` and `out` must be valid.
 */
enum HibiStatus hibi_lattice_size(const struct HibiLattice *lat, size_t *out);

/**
 * Krull dimension of the Hibi ring (elements of a maximal chain).
 *
 * # Safety
 * `lat` and `out` must be valid.
 */
enum HibiStatus hibi_lattice_dim(const struct HibiLattice *lat, size_t *out);

/**
 * Multiplicity at the torus fixed point (number of maximal chains),
 * returned as a decimal string.
 *
 * # Safety
 * `lat` and `out` must be valid.
 */
enum HibiStatus hibi_fixed_point_mult(const struct HibiLattice *lat, char **out);

/**
 * Hook-length multiplicity of I_{d,n} as a decimal string.
 *
 * # Safety
 * `out` must be valid.
 */
enum HibiStatus hibi_hook_mult(uint32_t d, uint32_t n, char **out);

/**
 * Smoothness at the distinguished point of the face spanned by the
 * given lattice elements (indices into the element list, ascending
 * label order). Writes 1 for smooth, 0 for singular.
 *
 * # Safety
 * `lat`, `d` (length `d_len`), and `out` must be valid.
 */
enum HibiStatus hibi_face_is_smooth(const struct HibiLattice *lat,
                                    const size_t *d,
                                    size_t d_len,
                                    int32_t *out);

/**
 * Singular locus of I_{d,n} as a JSON report string.
 *
 * # Safety
 * `out` must be valid.
 */
enum HibiStatus hibi_singular_locus_json(uint32_t d, uint32_t n, char **out);

/**
 * Hilbert data of the square-free degeneration of the lattice's Hibi
 * ring, as a JSON string; includes a three-way crosscheck for
 * lattices of at most 12 elements.
 *
 * # Safety
 * `lat` and `out` must be valid.
 */
enum HibiStatus hibi_hilbert_json(const struct HibiLattice *lat, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HIBI_H */
