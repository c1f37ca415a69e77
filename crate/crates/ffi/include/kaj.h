/* C interface to the kaj library: KAJ-transform cipher toolkit. */

#ifndef KAJ_H
#define KAJ_H

/* Generated by cbindgen from the kaj-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum KajStatus {
  KAJ_STATUS_OK = 0,
  // A required pointer argument was NULL.
  KAJ_STATUS_NULL_ARGUMENT,
  // A string argument was not valid UTF-8.
  KAJ_STATUS_INVALID_UTF8,
  // beta/modulus outside their domains, or not decimal integers.
  KAJ_STATUS_INVALID_PARAMS,
  // The message (or stream) was empty.
  KAJ_STATUS_EMPTY_MESSAGE,
  // An expression failed to parse.
  KAJ_STATUS_PARSE_ERROR,
  // A ciphertext or key file failed to parse.
  KAJ_STATUS_FORMAT_ERROR,
  // An image atom with no preimage under the inverse table.
  KAJ_STATUS_MALFORMED_IMAGE,
  // Ciphertext and key lengths disagree.
  KAJ_STATUS_LENGTH_MISMATCH,
  // Integrity failure: a coefficient was not divisible by its position
  // divisor.
  KAJ_STATUS_DIVISIBILITY_ERROR,
  // Integrity failure: a recovered symbol exceeded a byte.
  KAJ_STATUS_BYTE_RANGE_ERROR,
  // A remainder was not below the modulus.
  KAJ_STATUS_REMAINDER_OUT_OF_RANGE,
  // Recovered bytes were not valid text.
  KAJ_STATUS_INVALID_ENCODING,
} KajStatus;

// An encrypted remainder stream plus its public parameters.
typedef struct KajCiphertext KajCiphertext;

// A secret quotient stream.
typedef struct KajKeyStream KajKeyStream;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Most recent error description for this thread, or NULL when the last
// call succeeded. The pointer stays valid until the next `kaj_*` call on
// the same thread; do not free it.
const char *kaj_last_error_message(void);

// Encrypt `message_len` bytes under the given decimal `beta` and `modulus`.
// On success the caller owns `*out_ciphertext` and `*out_key`.
//
// # Safety
// `message` must point to `message_len` readable bytes (it may be NULL only
// when `message_len` is 0); `beta` and `modulus` must be NUL-terminated
// strings; `out_ciphertext` and `out_key` must be valid for writes.
enum KajStatus kaj_encrypt(const uint8_t *message,
                           size_t message_len,
                           const char *beta,
                           const char *modulus,
                           struct KajCiphertext **out_ciphertext,
                           struct KajKeyStream **out_key);

// Decrypt a ciphertext with its key. On success the caller owns
// `*out_message` (`*out_len` bytes; free with [`kaj_bytes_free`]).
//
// # Safety
// `ciphertext` and `key` must be live handles from this library;
// `out_message` and `out_len` must be valid for writes.
enum KajStatus kaj_decrypt(const struct KajCiphertext *ciphertext,
                           const struct KajKeyStream *key,
                           uint8_t **out_message,
                           size_t *out_len);

// Render a ciphertext in the `.kajc` file format.
//
// # Safety
// `ciphertext` must be a live handle; `out_text` must be valid for writes.
enum KajStatus kaj_ciphertext_serialize(const struct KajCiphertext *ciphertext, char **out_text);

// Parse `len` bytes of `.kajc` content.
//
// # Safety
// `data` must point to `len` readable bytes; `out_ciphertext` must be valid
// for writes.
enum KajStatus kaj_ciphertext_parse(const uint8_t *data,
                                    size_t len,
                                    struct KajCiphertext **out_ciphertext);

// Render a key stream in the `.kajk` file format.
//
// # Safety
// `key` must be a live handle; `out_text` must be valid for writes.
enum KajStatus kaj_key_serialize(const struct KajKeyStream *key, char **out_text);

// Parse `len` bytes of `.kajk` content.
//
// # Safety
// `data` must point to `len` readable bytes; `out_key` must be valid for
// writes.
enum KajStatus kaj_key_parse(const uint8_t *data, size_t len, struct KajKeyStream **out_key);

// Number of positions in a ciphertext (0 for NULL).
//
// # Safety
// `ciphertext` must be NULL or a live handle.
size_t kaj_ciphertext_len(const struct KajCiphertext *ciphertext);

// Number of quotients in a key stream (0 for NULL).
//
// # Safety
// `key` must be NULL or a live handle.
size_t kaj_key_len(const struct KajKeyStream *key);

// Keyless per-position candidate report, one
// `k=<pos> candidates=<count> {...}` line per position. With
// `printable_only`, candidates are restricted to printable ASCII.
//
// # Safety
// `ciphertext` must be a live handle; `out_report` must be valid for
// writes.
enum KajStatus kaj_crack_report(const struct KajCiphertext *ciphertext,
                                bool printable_only,
                                char **out_report);

// Display-only glyph rendering of the remainders (escaped, mod 256).
//
// # Safety
// `ciphertext` must be a live handle; `out_text` must be valid for writes.
enum KajStatus kaj_legacy_glyphs(const struct KajCiphertext *ciphertext, char **out_text);

// Transform a time-domain expression (`"2 sin 1 + 3 cosh 1"`) or, with
// `invert`, invert an image expression (`"2/c^(m+3)"`); the rendered result
// is returned through `out_text`.
//
// # Safety
// `expr` must be a NUL-terminated string; `out_text` must be valid for
// writes.
enum KajStatus kaj_transform_expr(const char *expr, bool invert, char **out_text);

// # Safety
// `ciphertext` must be NULL or a handle returned by this library, not yet
// freed.
void kaj_ciphertext_free(struct KajCiphertext *ciphertext);

// # Safety
// `key` must be NULL or a handle returned by this library, not yet freed.
void kaj_key_free(struct KajKeyStream *key);

// # Safety
// `text` must be NULL or a string returned by this library, not yet freed.
void kaj_string_free(char *text);

// # Safety
// `bytes` must be NULL or a buffer of exactly `len` bytes returned by this
// library, not yet freed.
void kaj_bytes_free(uint8_t *bytes, size_t len);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* KAJ_H */
