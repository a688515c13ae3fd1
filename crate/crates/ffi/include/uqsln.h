#ifndef UQSLN_H
#define UQSLN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

/**
 * Which generator family to read from a module.
 */
typedef enum UqGenerator {
  UQ_GENERATOR_K = 0,
  UQ_GENERATOR_K_INVERSE = 1,
  UQ_GENERATOR_E = 2,
  UQ_GENERATOR_F = 3,
} UqGenerator;

typedef enum UqStatus {
  UQ_STATUS_OK = 0,
  UQ_STATUS_NULL_POINTER = 1,
  UQ_STATUS_INVALID_UTF8 = 2,
  UQ_STATUS_INVALID_CONFIG = 3,
  UQ_STATUS_INVALID_ARGUMENT = 4,
  UQ_STATUS_INADMISSIBLE = 5,
  UQ_STATUS_BUDGET_EXCEEDED = 6,
  UQ_STATUS_DIVERGENCE = 7,
  UQ_STATUS_RELATION_VIOLATION = 8,
  UQ_STATUS_PRECONDITION = 9,
  UQ_STATUS_BUFFER_TOO_SMALL = 10,
  UQ_STATUS_PANIC = 11,
  UQ_STATUS_OTHER = 12,
} UqStatus;

/**
 * A built representation.
 */
typedef struct UqModule UqModule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next call into this library.
 */
const char *uq_last_error_message(void);

/**
 * Build a module from a JSON run configuration.
 *
 * # Safety
 * `config_json` must be a valid NUL-terminated string and `out` a valid
 * pointer.
 */
enum UqStatus uq_module_from_json(const char *config_json, struct UqModule **out);

/**
 * # Safety
 * `module` must come from [`uq_module_from_json`] and not be freed twice.
 */
void uq_module_free(struct UqModule *module);

/**
 * # Safety
 * `module` must be a live handle and `out` a valid pointer.
 */
enum UqStatus uq_module_dim(const struct UqModule *module, size_t *out);

/**
 * `N` of `U_q(sl(N))`.
 *
 * # Safety
 * `module` must be a live handle and `out` a valid pointer.
 */
enum UqStatus uq_module_n(const struct UqModule *module, size_t *out);

/**
 * Number of stored entries of generator `which` with index `l` (1-based).
 *
 * # Safety
 * `module` must be a live handle and `out` a valid pointer.
 */
enum UqStatus uq_module_nnz(const struct UqModule *module,
                            enum UqGenerator which,
                            size_t l,
                            size_t *out);

/**
 * Copy the entries of a generator as 0-based `(row, col, re, im)` arrays of
 * length `capacity`; at least `nnz` slots are needed.
 *
 * # Safety
 * `module` must be a live handle; the four arrays must hold `capacity`
 * elements each.
 */
enum UqStatus uq_module_triplets(const struct UqModule *module,
                                 enum UqGenerator which,
                                 size_t l,
                                 size_t *rows,
                                 size_t *cols,
                                 double *re,
                                 double *im,
                                 size_t capacity);

/**
 * Largest residual over the defining relations.
 *
 * # Safety
 * `module` must be a live handle and `out` a valid pointer.
 */
enum UqStatus uq_module_relation_residual(const struct UqModule *module, double *out);

/**
 * Classification report as JSON; free with [`uq_string_free`].
 *
 * # Safety
 * `module` must be a live handle and `out` a valid pointer.
 */
enum UqStatus uq_module_classify_json(const struct UqModule *module,
                                      size_t irreducibility_bound,
                                      uint64_t seed,
                                      char **out);

/**
 * `P_{i,m}` for `U_q(sl(N))` as a polynomial string in `c1 .. c{N-1}`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum UqStatus uq_sympoly(size_t i, uint32_t m, size_t n, char **out);

/**
 * Dimension of the truncated flat `U_q(sl(3))` module.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum UqStatus uq_sl3_flat_dimension(uint32_t m, uint32_t p13, uint64_t *out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void uq_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UQSLN_H */
