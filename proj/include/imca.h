#ifndef IMCA_H
#define IMCA_H

/* C interface to the implicative-algebra model checker.
 *
 * All entry points are thread-compatible: distinct handles may be used from
 * distinct threads; one handle must not be shared without external locking.
 * Strings returned through `char **` out-parameters are heap-allocated JSON
 * documents (reports or `{"error": ...}` objects) and must be released with
 * imca_string_free.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct imca_algebra imca_algebra;
typedef struct imca_universe imca_universe;

/* Values double as CLI exit codes. */
typedef enum imca_status {
  IMCA_OK = 0,
  IMCA_INTERNAL_ERROR = 1,
  IMCA_PARSE_ERROR = 2,
  IMCA_VALIDATION_FAILED = 3,
  IMCA_VERIFICATION_FAILED = 4,
  IMCA_BUDGET_EXCEEDED = 5,
  IMCA_INVALID_ARGUMENT = 6
} imca_status;

const char* imca_version(void);
const char* imca_status_name(imca_status status);
void imca_string_free(char* s);

/* Loads and validates an algebra definition (JSON text or file path).
 * On success *out is a fresh handle. On validation failure the handle is
 * null, the status is IMCA_VALIDATION_FAILED and *report carries the
 * violation report; parse errors yield IMCA_PARSE_ERROR and an error
 * document. */
imca_status imca_algebra_load(const char* json_text, imca_algebra** out, char** report);
imca_status imca_algebra_load_file(const char* path, imca_algebra** out, char** report);
void imca_algebra_free(imca_algebra* alg);

/* Lattice and algebra law report for a loaded (hence valid) algebra. */
imca_status imca_validate(imca_algebra* alg, char** report);

/* Parses a term, compiles it, reports its element and separator membership. */
imca_status imca_eval_term(imca_algebra* alg, const char* term, char** report);

/* Judgement syntax: "x:1, y:0 |- x : 1"; empty context "|- \\x.x : 1". */
imca_status imca_check_sequent(imca_algebra* alg, const char* judgement, char** report);

/* Adjunction / Heyting / Beck-Chevalley law suite over index sets of size
 * <= size_bound; sampling is seeded and only used when exhaustive
 * enumeration would be too large. */
imca_status imca_tripos_suite(imca_algebra* alg, unsigned size_bound,
                              unsigned long long seed, unsigned samples, char** report);

/* Builds the truncated hierarchy W_1 ... W_depth. stratum_budget of 0 means
 * the default. */
imca_status imca_universe_build(imca_algebra* alg, unsigned depth,
                                unsigned long long stratum_budget, imca_universe** out,
                                char** report);
void imca_universe_free(imca_universe* u);

/* Stratum sizes, plus transport-realizer verification when verify_realizers
 * is nonzero. */
imca_status imca_model_report(imca_universe* u, int verify_realizers, char** report);

/* relation is "mem", "eq" or "sub"; operands use the element literal syntax
 * `{}`, `{{}:1}`, `{{}:0, {{}:1}:h}`. */
imca_status imca_model_eval(imca_universe* u, const char* relation, const char* lhs,
                            const char* rhs, char** report);

/* Formula syntax: "[x,y] |- sub(x,y) -> x in y". With args (comma-separated
 * `name=literal` bindings) the interpretation at that tuple is reported;
 * with args null or empty, satisfaction over all tuples is decided.
 * bounded_mode selects the domain-restricted interpretation of bounded
 * quantifiers. */
imca_status imca_eval_formula(imca_universe* u, const char* formula, const char* args,
                              int bounded_mode, char** report);

/* Runs the axiom suite. schemas_json may be null for the built-in instance
 * list; otherwise: {"sep": ["[x,z] |- ..."], "eps_ind": [...], "col": [...],
 * "inf_bound": 4}. Status is IMCA_VERIFICATION_FAILED when any verdict
 * fails. */
imca_status imca_check_axioms(imca_universe* u, const char* schemas_json, char** report);

#ifdef __cplusplus
}
#endif

#endif /* IMCA_H */
