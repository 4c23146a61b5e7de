#ifndef ENRIQUES_LATTICE_H
#define ENRIQUES_LATTICE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes shared by all functions.
typedef enum EnqStatus {
  ENQ_STATUS_OK = 0,
  // The computation ran but a verification check failed.
  ENQ_STATUS_VERIFICATION_FAILED = 1,
  // Malformed input text (vector, label, element or model JSON).
  ENQ_STATUS_PARSE_ERROR = 2,
  // Well-formed input that violates a precondition, such as a wrong norm.
  ENQ_STATUS_PRECONDITION = 3,
  // A required pointer argument was null.
  ENQ_STATUS_NULL_POINTER = 4,
  // The string is not valid UTF-8.
  ENQ_STATUS_INVALID_UTF8 = 5,
  // An unexpected internal failure.
  ENQ_STATUS_INTERNAL = 6,
} EnqStatus;

// Opaque handle to an element of `S4 ⋉ (C2 * C2 * C2 * C2)`.
typedef struct EnqGroupElement EnqGroupElement;

// Opaque handle to a lattice model.
typedef struct EnqModel EnqModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null. The pointer
// stays valid until the next call into this library on the same thread.
const char *enq_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string returned by this library, freed once.
void enq_string_free(char *s);

// Creates the built-in model.
//
// # Safety
// `out` must be a valid pointer.
enum EnqStatus enq_model_bundled(struct EnqModel **out);

// Loads a model from its JSON document. Only structural problems are
// rejected; content is checked by [`enq_verify_json`].
//
// # Safety
// `json` must be a nul-terminated string and `out` a valid pointer.
enum EnqStatus enq_model_from_json(const char *json, struct EnqModel **out);

// # Safety
// `model` must be null or a handle from this library, freed once.
void enq_model_free(struct EnqModel *model);

// Serializes the model document.
//
// # Safety
// `model` must be a valid handle and `out` a valid pointer.
enum EnqStatus enq_model_to_json(const struct EnqModel *model, char **out);

// Writes the 20×20 pairing table, row-major, into `out[400]`.
//
// # Safety
// `out` must point to 400 writable `int64_t`.
enum EnqStatus enq_model_gram20(const struct EnqModel *model, int64_t *out);

// Runs the full verification and writes its JSON report. Returns
// `VerificationFailed` (with the report still written) if a section fails.
//
// # Safety
// `model` must be a valid handle and `out` a valid pointer.
enum EnqStatus enq_verify_json(const struct EnqModel *model,
                               int64_t max_degree,
                               size_t max_word_len,
                               char **out);

// The maximal parabolic subdiagrams as a JSON array.
//
// # Safety
// `model` must be a valid handle and `out` a valid pointer.
enum EnqStatus enq_parabolics_json(const struct EnqModel *model, char **out);

// Classifies a (-2)-vector. `vector` is either comma-separated coordinates
// or a label combination such as `G4` or `2E1+E12`.
//
// # Safety
// `model` must be a valid handle, `vector` nul-terminated and `out` valid.
enum EnqStatus enq_classify_curve_json(const struct EnqModel *model,
                                       const char *vector,
                                       char **out);

// Classifies a primitive isotropic vector (or twice one) by pencil type.
//
// # Safety
// `model` must be a valid handle, `vector` nul-terminated and `out` valid.
enum EnqStatus enq_classify_pencil_json(const struct EnqModel *model,
                                        const char *vector,
                                        char **out);

// Degree descent by the `σ_i`.
//
// # Safety
// `model` must be a valid handle, `vector` nul-terminated and `out` valid.
enum EnqStatus enq_reduce_json(const struct EnqModel *model, const char *vector, char **out);

// Parses an element such as `id`, `s1 s2` or `(1 2) s3 s1`.
//
// # Safety
// `text` must be nul-terminated and `out` a valid pointer.
enum EnqStatus enq_group_parse(const char *text, struct EnqGroupElement **out);

// The generator `σ_i`, `i` in 1..=4.
//
// # Safety
// `out` must be a valid pointer.
enum EnqStatus enq_group_sigma(uint8_t i, struct EnqGroupElement **out);

// # Safety
// `a`, `b` must be valid handles and `out` a valid pointer.
enum EnqStatus enq_group_multiply(const struct EnqGroupElement *a,
                                  const struct EnqGroupElement *b,
                                  struct EnqGroupElement **out);

// # Safety
// `g` must be a valid handle and `out` a valid pointer.
enum EnqStatus enq_group_inverse(const struct EnqGroupElement *g, struct EnqGroupElement **out);

// Normal form as text, e.g. `(1 2) s1 s3`.
//
// # Safety
// `g` must be a valid handle and `out` a valid pointer.
enum EnqStatus enq_group_to_string(const struct EnqGroupElement *g, char **out);

// 1 if the elements are equal, 0 if not, -1 if either handle is null.
//
// # Safety
// `a`, `b` must be null or valid handles.
int32_t enq_group_equal(const struct EnqGroupElement *a, const struct EnqGroupElement *b);

// Writes the integral 10×10 isometry matrix of `g`, row-major, into
// `out[100]`.
//
// # Safety
// `model`, `g` must be valid handles; `out` must point to 100 `int64_t`.
enum EnqStatus enq_group_isometry(const struct EnqModel *model,
                                  const struct EnqGroupElement *g,
                                  int64_t *out);

// # Safety
// `g` must be null or a handle from this library, freed once.
void enq_group_free(struct EnqGroupElement *g);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ENRIQUES_LATTICE_H */
