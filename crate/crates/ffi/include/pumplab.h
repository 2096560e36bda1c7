#ifndef PUMPLAB_H
#define PUMPLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Normal form selector, passed as an `int32_t`.
 */
typedef enum PumplabForm {
  PUMPLAB_FORM_K_RATED = 0,
  PUMPLAB_FORM_LINEAR_UNIT = 1,
  PUMPLAB_FORM_CNF = 2,
} PumplabForm;

/**
 * Lemma selector, passed as an `int32_t`.
 */
typedef enum PumplabLemma {
  PUMPLAB_LEMMA_THM1 = 0,
  PUMPLAB_LEMMA_THM2 = 1,
  PUMPLAB_LEMMA_BAR_HILLEL = 2,
  PUMPLAB_LEMMA_LINEAR = 3,
  PUMPLAB_LEMMA_REGULAR = 4,
} PumplabLemma;

/**
 * Result of every fallible call.
 */
typedef enum PumplabStatus {
  PUMPLAB_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  PUMPLAB_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  PUMPLAB_STATUS_INVALID_UTF8 = 2,
  /**
   * The grammar text does not parse or declares inconsistent symbols.
   */
  PUMPLAB_STATUS_INVALID_GRAMMAR = 3,
  /**
   * An enum value, ratio, oracle spec or family template is malformed.
   */
  PUMPLAB_STATUS_INVALID_ARGUMENT = 4,
  /**
   * The grammar is outside the class the operation needs.
   */
  PUMPLAB_STATUS_NOT_IN_CLASS = 5,
  /**
   * The word is not in the language.
   */
  PUMPLAB_STATUS_NOT_IN_LANGUAGE = 6,
  /**
   * The word is shorter than the lemma constant.
   */
  PUMPLAB_STATUS_WORD_TOO_SHORT = 7,
  /**
   * The search could not decide.
   */
  PUMPLAB_STATUS_INCONCLUSIVE = 8,
  /**
   * A size cap was exceeded.
   */
  PUMPLAB_STATUS_LIMIT_EXCEEDED = 9,
  /**
   * An internal error; the message says which.
   */
  PUMPLAB_STATUS_INTERNAL = 10,
} PumplabStatus;

/**
 * Verdict of a report.
 */
typedef enum PumplabVerdict {
  PUMPLAB_VERDICT_SATISFIED_EVIDENCE = 0,
  PUMPLAB_VERDICT_REFUTED_UP_TO = 1,
  PUMPLAB_VERDICT_REFUTED_ON_WITNESSES = 2,
  PUMPLAB_VERDICT_INCONCLUSIVE = 3,
} PumplabVerdict;

/**
 * Opaque grammar handle.
 */
typedef struct PumplabGrammar PumplabGrammar;

/**
 * Opaque report handle from a check or refutation.
 */
typedef struct PumplabReport PumplabReport;

/**
 * The rate `g/h`; `h == 0` leaves the rate unset, so it is detected from
 * the grammar where one is needed.
 */
typedef struct PumplabRatio {
  uint64_t g;
  uint64_t h;
} PumplabRatio;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, a static string.
 */
const char *pumplab_version(void);

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *pumplab_last_error(void);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` is null or a string from this library not yet freed.
 */
void pumplab_string_free(char *s);

/**
 * Parses grammar text and validates it.
 *
 * # Safety
 * `source` is a nul-terminated string; `out` is writable.
 */
enum PumplabStatus pumplab_grammar_parse(const char *source, struct PumplabGrammar **out);

/**
 * Releases a grammar handle; null is ignored.
 *
 * # Safety
 * `g` is null or a grammar handle not yet freed.
 */
void pumplab_grammar_free(struct PumplabGrammar *g);

/**
 * The grammar in the text format.
 *
 * # Safety
 * `g` is a live grammar handle; `out` is writable.
 */
enum PumplabStatus pumplab_grammar_to_text(const struct PumplabGrammar *g, char **out);

/**
 * The classification report as JSON.
 *
 * # Safety
 * `g` is a live grammar handle; `out` is writable.
 */
enum PumplabStatus pumplab_grammar_classify_json(const struct PumplabGrammar *g, char **out);

/**
 * A new grammar in the normal form `form` (a [`PumplabForm`] value).
 * The rate is used by the k-rated form only.
 *
 * # Safety
 * `g` is a live grammar handle; `out` is writable.
 */
enum PumplabStatus pumplab_grammar_normalize(const struct PumplabGrammar *g,
                                             int32_t form,
                                             struct PumplabRatio k,
                                             struct PumplabGrammar **out);

/**
 * Whether `word` is in the language of `g`. Words use single-character
 * terminals, or commas between multi-character ones.
 *
 * # Safety
 * `g` is a live grammar handle; `word` is a nul-terminated string; `out`
 * is writable.
 */
enum PumplabStatus pumplab_grammar_accepts(const struct PumplabGrammar *g,
                                           const char *word,
                                           bool *out);

/**
 * Factorization of `word` under `lemma` (a [`PumplabLemma`] value) as
 * JSON. The grammar is brought into the lemma's normal form first.
 *
 * # Safety
 * `g` is a live grammar handle; `word` is a nul-terminated string; `out`
 * is writable.
 */
enum PumplabStatus pumplab_grammar_pump_json(const struct PumplabGrammar *g,
                                             const char *word,
                                             int32_t lemma,
                                             struct PumplabRatio k,
                                             char **out);

/**
 * Bounded satisfaction check of `lemma` at constant `n` on every word of
 * the oracle with `n <= |p| <= max_len`, pumping with `i <= imax`.
 * Oracle specs are as on the command line, e.g. `anbn`, `lh:squares`,
 * `pattern:(ab)*a`.
 *
 * # Safety
 * `oracle` is a nul-terminated string; `out` is writable.
 */
enum PumplabStatus pumplab_check(const char *oracle,
                                 int32_t lemma,
                                 struct PumplabRatio k,
                                 uint64_t n,
                                 size_t max_len,
                                 size_t imax,
                                 struct PumplabReport **out);

/**
 * Refutes `lemma` with the witness family `family` for the constants
 * `1..=nmax`. `family` is a template such as `a^n b^(2*n)` or the name of a
 * builtin family such as `evenlin-square`.
 *
 * # Safety
 * `oracle` and `family` are nul-terminated strings; `out` is writable.
 */
enum PumplabStatus pumplab_refute(const char *oracle,
                                  int32_t lemma,
                                  struct PumplabRatio k,
                                  const char *family,
                                  uint64_t nmax,
                                  size_t imax,
                                  struct PumplabReport **out);

/**
 * The verdict of a report; for the refuted verdicts, `n_out` receives the
 * largest refuted constant or the number of witnesses.
 *
 * # Safety
 * `r` is a live report handle; `verdict_out` is writable; `n_out` is null
 * or writable.
 */
enum PumplabStatus pumplab_report_verdict(const struct PumplabReport *r,
                                          enum PumplabVerdict *verdict_out,
                                          uint64_t *n_out);

/**
 * The full report as JSON.
 *
 * # Safety
 * `r` is a live report handle; `out` is writable.
 */
enum PumplabStatus pumplab_report_json(const struct PumplabReport *r, char **out);

/**
 * Releases a report handle; null is ignored.
 *
 * # Safety
 * `r` is null or a report handle not yet freed.
 */
void pumplab_report_free(struct PumplabReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PUMPLAB_H */
