#ifndef HILBHODGE_H
#define HILBHODGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HilbStatus {
  HILB_STATUS_OK = 0,
  HILB_STATUS_NULL_POINTER = 1,
  HILB_STATUS_INVALID_ARGUMENT = 2,
  HILB_STATUS_PARSE_ERROR = 3,
  HILB_STATUS_VALIDATION_ERROR = 4,
  HILB_STATUS_UNKNOWN_PRESET = 5,
  HILB_STATUS_INSUFFICIENT_POWERS = 6,
  HILB_STATUS_VERIFY_FAILED = 7,
  HILB_STATUS_OVERFLOW = 8,
  HILB_STATUS_INTERNAL_ERROR = 9,
} HilbStatus;

/*
 Opaque surface dataset.
 */
typedef struct HilbDataset HilbDataset;

/*
 Opaque bigraded Hodge numbers of one space.
 */
typedef struct HilbPolynomial HilbPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or NULL. The string is
 newly allocated; release it with [`hilb_string_free`].
 */
char *hilb_last_error_message(void);

/*
 # Safety
 `s` must be NULL or a string returned by this library, not yet freed.
 */
void hilb_string_free(char *s);

/*
 # Safety
 `name` must be a NUL-terminated string; `out` must be writable.
 */
enum HilbStatus hilb_dataset_preset(const char *name, struct HilbDataset **out);

/*
 Parse a dataset from JSON text.

 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
enum HilbStatus hilb_dataset_from_json(const char *json, struct HilbDataset **out);

/*
 # Safety
 `ds` must be NULL or a handle from this library, not yet freed.
 */
void hilb_dataset_free(struct HilbDataset *ds);

/*
 Largest stored power `K` of the line bundle, or -1 for an empty table.

 # Safety
 `ds` must be a live dataset handle.
 */
int64_t hilb_dataset_max_power(const struct HilbDataset *ds);

/*
 `h^{p,q}(Hilb^n S, L_n)`.

 # Safety
 `ds` must be a live dataset handle; `out` must be writable.
 */
enum HilbStatus hilb_hodge(const struct HilbDataset *ds, uint32_t n, struct HilbPolynomial **out);

/*
 Hodge numbers of the nested Hilbert scheme `Hilb^{n,n+1} S`.

 # Safety
 `ds` must be a live dataset handle; `out` must be writable.
 */
enum HilbStatus hilb_nested(const struct HilbDataset *ds, uint32_t n, struct HilbPolynomial **out);

/*
 Hodge numbers of `S^{(a)}` with coefficients in `(L^k)_{(a)}`.

 # Safety
 `ds` must be a live dataset handle; `out` must be writable.
 */
enum HilbStatus hilb_sym_power(const struct HilbDataset *ds,
                               uint32_t a,
                               uint32_t k,
                               struct HilbPolynomial **out);

/*
 # Safety
 `poly` must be NULL or a handle from this library, not yet freed.
 */
void hilb_poly_free(struct HilbPolynomial *poly);

/*
 Complex dimension of the space the polynomial describes.

 # Safety
 `poly` must be a live polynomial handle.
 */
uint32_t hilb_poly_space_dim(const struct HilbPolynomial *poly);

/*
 Writes `h^{p,q}` to `out`; `HILB_STATUS_OVERFLOW` if it does not fit 64 bits.

 # Safety
 `poly` must be a live polynomial handle; `out` must be writable.
 */
enum HilbStatus hilb_poly_get(const struct HilbPolynomial *poly,
                              uint32_t p,
                              uint32_t q,
                              uint64_t *out);

/*
 JSON rendering `{"n", "space_dim", "terms": [{"p","q","h"}]}`; release
 with [`hilb_string_free`]. NULL on a NULL handle.

 # Safety
 `poly` must be NULL or a live polynomial handle.
 */
char *hilb_poly_to_json(const struct HilbPolynomial *poly);

/*
 `h^q(Hilb^n S, T)` for `q = 0..len-1`, written to `out[q]`.

 # Safety
 `ds` must be a live dataset handle; `out` must hold `len` values.
 */
enum HilbStatus hilb_deformation_dims(const struct HilbDataset *ds,
                                      uint32_t n,
                                      uint64_t *out,
                                      uintptr_t len);

/*
 Runs every consistency check up to `t^N`. `HILB_STATUS_VERIFY_FAILED`
 names the first failing check in the last error message.

 # Safety
 `ds` must be a live dataset handle.
 */
enum HilbStatus hilb_verify(const struct HilbDataset *ds, uint32_t upto);

/*
 Library version, a static string.
 */
const char *hilb_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HILBHODGE_H */
