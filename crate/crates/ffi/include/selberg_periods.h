#ifndef SELBERG_PERIODS_H
#define SELBERG_PERIODS_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every function.
 */
typedef enum SpStatus {
  SP_STATUS_OK = 0,
  SP_STATUS_NULL_POINTER = 1,
  SP_STATUS_INVALID_ARGUMENT = 2,
  SP_STATUS_DOMAIN = 3,
  SP_STATUS_NUMERIC = 4,
  SP_STATUS_IO = 5,
  SP_STATUS_PANIC = 6,
} SpStatus;

/**
 * Opaque spectrum handle.
 */
typedef struct SpSpectrum SpSpectrum;

typedef struct SpComplex {
  double re;
  double im;
} SpComplex;

typedef struct SpSeriesValue {
  struct SpComplex value;
  double truncation_bound;
  uint64_t terms_used;
} SpSeriesValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Loads a JSON Lines spectrum file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum SpStatus sp_spectrum_load(const char *path, struct SpSpectrum **out);

/**
 * Builds a spectrum from parallel arrays of norms and weights, multiplicity 1.
 *
 * # Safety
 * The three arrays must hold `len` elements each; `out` must be valid.
 */
enum SpStatus sp_spectrum_from_norms(const double *norms,
                                     const double *weights_re,
                                     const double *weights_im,
                                     size_t len,
                                     struct SpSpectrum **out);

/**
 * Arithmetic spectrum for discriminants up to `d_max`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SpStatus sp_spectrum_pell(int64_t d_max, struct SpSpectrum **out);

/**
 * Seeded synthetic spectrum.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SpStatus sp_spectrum_synthetic(uint64_t seed,
                                    size_t count,
                                    double norm_min,
                                    double norm_max,
                                    double weight_scale,
                                    struct SpSpectrum **out);

/**
 * Number of classes; 0 for a null handle.
 *
 * # Safety
 * `spec` must be null or a live handle.
 */
size_t sp_spectrum_len(const struct SpSpectrum *spec);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `spec` must be null or a handle not yet freed.
 */
void sp_spectrum_free(struct SpSpectrum *spec);

/**
 * # Safety
 * `spec` must be a live handle and `out` valid.
 */
enum SpStatus sp_eval_xi(const struct SpSpectrum *spec,
                         uint32_t k,
                         struct SpComplex s,
                         double eps,
                         struct SpSeriesValue *out);

/**
 * # Safety
 * `spec` must be a live handle and `out` valid.
 */
enum SpStatus sp_eval_psi(const struct SpSpectrum *spec,
                          uint32_t k,
                          struct SpComplex s,
                          double eps,
                          struct SpSeriesValue *out);

/**
 * # Safety
 * `spec` must be a live handle and `out` valid.
 */
enum SpStatus sp_eval_psi_l(const struct SpSpectrum *spec,
                            uint32_t k,
                            uint32_t l,
                            struct SpComplex s,
                            double eps,
                            struct SpSeriesValue *out);

/**
 * # Safety
 * `spec` must be a live handle and `out` valid.
 */
enum SpStatus sp_eval_psi_sum_p(const struct SpSpectrum *spec,
                                uint32_t k,
                                uint32_t p,
                                struct SpComplex s,
                                double eps,
                                struct SpSeriesValue *out);

/**
 * Coefficient of the pole of `Xi` at `1/2 - j + sign i r`.
 *
 * # Safety
 * `out` must be valid.
 */
enum SpStatus sp_residue_coeff_xi(uint32_t k,
                                  uint32_t j,
                                  int32_t sign,
                                  double r,
                                  struct SpComplex *out);

/**
 * Coefficient of the pole of `Psi^[l]` at `1/2 - j + sign i r`.
 *
 * # Safety
 * `out` must be valid.
 */
enum SpStatus sp_residue_coeff_psi_l(uint32_t l,
                                     uint32_t j,
                                     int32_t sign,
                                     double r,
                                     struct SpComplex *out);

/**
 * Copies the last error message of this thread into `buf`, NUL-terminated and
 * truncated to `len` bytes. Returns the full message length.
 *
 * # Safety
 * `buf` must be null or hold `len` bytes.
 */
size_t sp_last_error_message(char *buf, size_t len);

/**
 * Library version as a static NUL-terminated string.
 */
const char *sp_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SELBERG_PERIODS_H */
