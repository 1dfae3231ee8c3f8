#ifndef PI_WITT_H
#define PI_WITT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PwStatus {
  PW_STATUS_OK = 0,
  PW_STATUS_NULL_POINTER = 1,
  PW_STATUS_INVALID_UTF8 = 2,
  PW_STATUS_CONFIG = 3,
  PW_STATUS_PARSE = 4,
  PW_STATUS_ARITHMETIC = 5,
  PW_STATUS_SUITE_FAILED = 6,
  PW_STATUS_PANIC = 7,
} PwStatus;

// A ring, algebra and Frobenius lift.
typedef struct PwContext PwContext;

// A truncated Witt vector over the algebra of the context it came from.
typedef struct PwWitt PwWitt;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or "" after a success.
// The pointer stays valid until the next call into the library.
const char *pw_last_error(void);

// Builds a context from a TOML ring description. A null `config` gives
// 𝔽_2[t][u] with φ(u) = u².
//
// # Safety
// `config` is null or a NUL-terminated string; `out` is writable.
enum PwStatus pw_context_new(const char *config, struct PwContext **out);

// # Safety
// `ctx` is null or came from [`pw_context_new`] and is freed once.
void pw_context_free(struct PwContext *ctx);

// Parses "(x0, …, xn)" over the context's algebra.
//
// # Safety
// Pointers are valid; `text_in` is NUL-terminated.
enum PwStatus pw_witt_parse(const struct PwContext *ctx, const char *text_in, struct PwWitt **out);

// Recovers a Witt vector from ghost components "(w0, …, wn)".
//
// # Safety
// Pointers are valid; `text_in` is NUL-terminated.
enum PwStatus pw_witt_unghost(const struct PwContext *ctx,
                              const char *text_in,
                              struct PwWitt **out);

// # Safety
// `a` and `b` are live handles; `out` is writable.
enum PwStatus pw_witt_add(const struct PwWitt *a, const struct PwWitt *b, struct PwWitt **out);

// # Safety
// `a` and `b` are live handles; `out` is writable.
enum PwStatus pw_witt_mul(const struct PwWitt *a, const struct PwWitt *b, struct PwWitt **out);

// Writes the vector in the same notation [`pw_witt_parse`] accepts.
//
// # Safety
// `w` is a live handle; `out` is writable.
enum PwStatus pw_witt_format(const struct PwWitt *w, char **out);

// Writes the ghost components as "(w0, …, wn)".
//
// # Safety
// `w` is a live handle; `out` is writable.
enum PwStatus pw_witt_ghost(const struct PwWitt *w, char **out);

// Truncation level n of a vector with n + 1 components.
//
// # Safety
// `w` is null or a live handle.
size_t pw_witt_level(const struct PwWitt *w);

// # Safety
// `w` is null or came from this library and is freed once.
void pw_witt_free(struct PwWitt *w);

// The arithmetic exponential of a polynomial, truncated at level `n`.
//
// # Safety
// Pointers are valid; `poly` is NUL-terminated.
enum PwStatus pw_delta_exp(const struct PwContext *ctx,
                           const char *poly,
                           size_t n,
                           struct PwWitt **out);

// The arithmetic Taylor expansion modulo π, as text.
//
// # Safety
// Pointers are valid; `poly` is NUL-terminated.
enum PwStatus pw_delta_taylor(const struct PwContext *ctx, const char *poly, size_t n, char **out);

// Runs every suite on the context's ring and writes the JSON report
// array. `trials` = 0 keeps the default. Returns
// [`PwStatus::SuiteFailed`] when some suite fails; the report is written
// either way.
//
// # Safety
// `ctx` is a live handle; `out` is writable.
enum PwStatus pw_verify_all(const struct PwContext *ctx, uint64_t seed, size_t trials, char **out);

// # Safety
// `s` is null or a string returned by this library, freed once.
void pw_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* PI_WITT_H */
