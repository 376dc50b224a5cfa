#ifndef FATLINES_H
#define FATLINES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes, aligned with the CLI exit convention where the two overlap.
 */
typedef enum FlStatus {
  /**
   * Success.
   */
  FlOk = 0,
  /**
   * Rejected input: bad JSON, unknown family, invalid field token.
   */
  FlInvalidInput = 2,
  /**
   * A computation gave up (retry budget or search bound exhausted).
   */
  FlComputation = 3,
  /**
   * I/O failure.
   */
  FlIo = 5,
  /**
   * A required pointer argument was null.
   */
  FlNullPointer = 6,
  /**
   * An internal panic was caught at the boundary.
   */
  FlPanic = 7,
} FlStatus;

/**
 * Opaque configuration handle. Create with fl_config_parse or
 * fl_config_generate; release with fl_config_free.
 */
typedef struct FlConfig FlConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string; never freed.
 */
const char *fl_version(void);

/**
 * Message for the calling thread's most recent failure, or null. The
 * pointer stays valid until this thread's next call into the library.
 */
const char *fl_last_error(void);

/**
 * Parses a configuration document (the same JSON schema the CLI reads and
 * writes) into a fresh handle.
 */
enum FlStatus fl_config_parse(const char *json, struct FlConfig **out);

/**
 * Generates a seeded family configuration. `family` takes the CLI names
 * (star-points, pseudostar, cone, coplanar, skew, fig2, collinear, random);
 * `param` is the size where the family needs one and negative otherwise.
 * `field` is "Q" or "GFP:<p>", with null meaning "Q".
 */
enum FlStatus fl_config_generate(const char *family,
                                 int64_t param,
                                 uint64_t seed,
                                 const char *field,
                                 struct FlConfig **out);

/**
 * Serializes the handle back to its canonical JSON document.
 */
enum FlStatus fl_config_to_json(const struct FlConfig *config, char **out);

/**
 * Number of components (points or lines) in the configuration.
 */
enum FlStatus fl_config_component_count(const struct FlConfig *config, uintptr_t *out);

/**
 * Least degree of a nonzero form in the m-th symbolic power (m >= 1).
 */
enum FlStatus fl_alpha(const struct FlConfig *config, uintptr_t m, uintptr_t *out);

/**
 * Hilbert function of the m-th symbolic power's quotient at degree t.
 */
enum FlStatus fl_hilbert(const struct FlConfig *config, uintptr_t m, uintptr_t t, uintptr_t *out);

/**
 * Alpha of the first and second symbolic powers.
 */
enum FlStatus fl_type(const struct FlConfig *config, uintptr_t *out_alpha1, uintptr_t *out_alpha2);

/**
 * Classifies a P3 line configuration. tmax of 0 means the default bound
 * (component count plus 2). The result is a JSON summary with keys alpha1,
 * alpha2, t, structure, acm_verdict, theorem_consistent.
 */
enum FlStatus fl_classify_json(const struct FlConfig *config,
                               uintptr_t tmax,
                               uint64_t seed,
                               char **out);

/**
 * Frees a string returned by this library. Null is ignored.
 */
void fl_string_free(char *s);

/**
 * Frees a configuration handle. Null is ignored.
 */
void fl_config_free(struct FlConfig *config);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FATLINES_H */
