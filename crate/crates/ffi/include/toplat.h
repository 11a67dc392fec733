#ifndef TOPLAT_H
#define TOPLAT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TlOp {
  TL_OP_ADD = 0,
  TL_OP_MUL = 1,
} TlOp;

typedef enum TlStatus {
  TL_STATUS_OK = 0,
  TL_STATUS_NULL_POINTER = 1,
  TL_STATUS_INVALID_UTF8 = 2,
  TL_STATUS_PARSE = 3,
  TL_STATUS_INVALID = 4,
  TL_STATUS_TOO_SMALL = 5,
  TL_STATUS_UNKNOWN = 6,
  TL_STATUS_PANIC = 7,
} TlStatus;

typedef struct TlAntichain TlAntichain;

typedef struct TlIntervalSet TlIntervalSet;

typedef struct TlPolyhedron TlPolyhedron;

typedef struct TlStructure TlStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 The message of the last failure on this thread, or null. Owned by the
 library; valid until the next call.
 */
const char *tl_last_error(void);

/*
 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void tl_string_free(char *s);

/*
 # Safety
 `h` must be null or a live handle from this library.
 */
void tl_structure_free(struct TlStructure *h);

/*
 # Safety
 `h` must be null or a live handle from this library.
 */
void tl_interval_free(struct TlIntervalSet *h);

/*
 # Safety
 `h` must be null or a live handle from this library.
 */
void tl_polyhedron_free(struct TlPolyhedron *h);

/*
 # Safety
 `h` must be null or a live handle from this library.
 */
void tl_antichain_free(struct TlAntichain *h);

/*
 Parses a structure file body.

 # Safety
 `json` must be a nul-terminated string; `out_structure` a valid pointer.
 */
enum TlStatus tl_structure_parse(const char *json, struct TlStructure **out_structure);

/*
 Evaluates a sentence, or a formula whose free variables are bound by
 `assignment` ("x=a y=b", may be null).

 # Safety
 Pointers must be valid; strings nul-terminated.
 */
enum TlStatus tl_eval(const struct TlStructure *structure,
                      const char *formula,
                      const char *assignment,
                      bool *out_value);

/*
 Parses "[a,b] [c,d]" with rational endpoints.

 # Safety
 `text_in` must be nul-terminated; `out_set` a valid pointer.
 */
enum TlStatus tl_interval_parse(const char *text_in, struct TlIntervalSet **out_set);

/*
 Number of connected components.

 # Safety
 `set` must be a live handle.
 */
enum TlStatus tl_interval_components(const struct TlIntervalSet *set, uintptr_t *out_count);

/*
 The bounded check of the interval predicate `I`.

 # Safety
 `set` must be a live handle.
 */
enum TlStatus tl_interval_check_i(const struct TlIntervalSet *set, bool *out_value);

/*
 # Safety
 `set` must be a live handle; the result is freed with [`tl_string_free`].
 */
enum TlStatus tl_interval_to_string(const struct TlIntervalSet *set, char **out_text);

/*
 Parses constraints "a*x + b*y (<|<=|=) c" separated by ';'.

 # Safety
 `text_in` must be nul-terminated; `out_poly` a valid pointer.
 */
enum TlStatus tl_polyhedron_parse(const char *text_in, struct TlPolyhedron **out_poly);

/*
 Inclusion `a ⊆ b`.

 # Safety
 Handles must be live.
 */
enum TlStatus tl_polyhedron_leq(const struct TlPolyhedron *a,
                                const struct TlPolyhedron *b,
                                bool *out_value);

/*
 A new handle holding the topological closure.

 # Safety
 `p` must be live; `out_poly` a valid pointer.
 */
enum TlStatus tl_polyhedron_closure(const struct TlPolyhedron *p, struct TlPolyhedron **out_poly);

/*
 # Safety
 `p` must be live.
 */
enum TlStatus tl_polyhedron_is_bounded(const struct TlPolyhedron *p, bool *out_value);

/*
 # Safety
 `p` must be live; the result is freed with [`tl_string_free`].
 */
enum TlStatus tl_polyhedron_to_string(const struct TlPolyhedron *p, char **out_text);

/*
 `m + n` or `m · n` through the interval lattice on a grid of `grid`
 points (0 picks the smallest that works). [`TlStatus::TooSmall`] when
 the grid cannot hold the computation; the message names the size needed.

 # Safety
 `out_value` must be a valid pointer.
 */
enum TlStatus tl_arith(enum TlOp op,
                       uintptr_t m,
                       uintptr_t n,
                       uintptr_t grid,
                       uintptr_t *out_value);

/*
 Parses a JSON array of integer pairs and checks that it is an anti-chain.

 # Safety
 `json` must be nul-terminated; `out_antichain` a valid pointer.
 */
enum TlStatus tl_antichain_parse(const char *json, struct TlAntichain **out_antichain);

/*
 Whether witnesses `G, H_A, H_B` with at most `cap` points exist for the
 coordinate system `o, p, q` on the `grid × grid` chain product.

 # Safety
 Handles must be live; `coords` must point to six values o.x o.y p.x p.y q.x q.y.
 */
enum TlStatus tl_antichain_equal_size(uint32_t grid,
                                      const struct TlAntichain *a,
                                      const struct TlAntichain *b,
                                      const uint32_t *coords,
                                      uintptr_t cap,
                                      bool *out_value);

/*
 Runs one verification suite with default sizes and the given seed,
 returning the JSON report and whether it passed.

 # Safety
 `suite` must be nul-terminated; outputs must be valid pointers. The JSON
 is freed with [`tl_string_free`].
 */
enum TlStatus tl_verify(const char *suite, uint64_t seed, char **out_json, bool *out_passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TOPLAT_H */
