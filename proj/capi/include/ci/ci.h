/* SPDX-License-Identifier: MIT */
/* C API of the cistruct library: conditional-independence structures,
 * frame closures, self-adhesion and lattice catalogues behind opaque
 * handles.  All functions return CI_OK (0) on success or a CI_E* error
 * code; ci_last_error() describes the most recent failure of the calling
 * thread.  Every char* output parameter receives a NUL-terminated string
 * owned by the caller and released with ci_str_free().
 *
 * Model text format (also used for premises of screening records):
 *
 *     # comment
 *     ground: a b c d
 *     a b |
 *     c d | a b
 *
 * Set-function format:  "ground:" header, then "set a b value 3" lines
 * ('-' denotes the empty set, values are integers or fractions).
 * Implication lists:    "a b | ; a d | b => a d | ; a b | d" per line.
 */

#ifndef CI_H
#define CI_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define CI_OK 0       /* success */
#define CI_EINVAL 1   /* invalid argument or handle misuse */
#define CI_EPARSE 2   /* malformed input text */
#define CI_EBACKEND 3 /* solver or LP backend failure */
#define CI_ECAP 4     /* a resource cap tripped (ground size, model count) */

/* Library version string, e.g. "0.1.0".  Static storage; do not free. */
const char* ci_version(void);

/* Message of the last failure on this thread ("" when the last call
 * succeeded).  Static storage; do not free. */
const char* ci_last_error(void);

/* Releases any string returned through a char** output parameter. */
void ci_str_free(char* s);

/* ------------------------------------------------------------------ */
/* Engines                                                            */
/* ------------------------------------------------------------------ */

/* A reasoning engine for one frame.  Caches solver state per ground-set
 * size across calls; not thread-safe (use one engine per thread). */
typedef struct ci_engine ci_engine;

/* frame:   "semigraphoid" | "graphoid" | "comp-semigraphoid" |
 *          "comp-graphoid" | "structural"
 * backend: "auto" | "sat" | "lp"        (NULL means "auto")
 * solver_exe: path of an external DIMACS solver, or NULL for the
 *          embedded one.
 * workers: number of worker threads for bulk operations (>= 1). */
int ci_engine_new(const char* frame, const char* backend,
                  const char* solver_exe, int workers, ci_engine** out);
void ci_engine_free(ci_engine* e);

/* Least frame model containing the given one. */
int ci_closure(ci_engine* e, const char* model_text, char** out);

/* Does the model belong to the frame?  *out = 0 or 1. */
int ci_member(ci_engine* e, const char* model_text, int* out);

/* Validates every implication of the list against the frame axioms.
 * *report receives one line per implication, "valid\t<implication>" or
 * "invalid\t<implication>"; *all_valid = 1 when none failed. */
int ci_check_implications(ci_engine* e, const char* implications_text,
                          char** report, int* all_valid);

/* Self-adhesive closure of the model at one gluing set L (labels of L
 * separated by spaces; "" denotes the empty set). */
int ci_sa_closure_at(ci_engine* e, const char* model_text,
                     const char* l_labels, char** out);

/* Least self-adhesive frame model containing the given one.
 * policy: "default" | "reduced" | "full"  (NULL means "default"). */
int ci_sa_closure(ci_engine* e, const char* model_text, const char* policy,
                  char** out);

/* Doubly self-adhesive closure (self-adhesion of the self-adhesive
 * closure operator itself). */
int ci_sa2_closure(ci_engine* e, const char* model_text, char** out);

/* k-fold gluing: k fresh copies glued along L with all global
 * independences between disjoint groups of copies. */
int ci_kfold_closure_at(ci_engine* e, const char* model_text,
                        const char* l_labels, int k, char** out);

/* Is the model self-adhesive?  *verdict = 0 or 1; when 0 and witness_l
 * is non-NULL, *witness_l receives the first violating L as a
 * space-separated label list. */
int ci_selfadhesive(ci_engine* e, const char* model_text, const char* policy,
                    int* verdict, char** witness_l);

/* Screens a multi-record ray file (supermodular set functions or plain
 * models, separated by "ground:" headers, optionally preceded by
 * "id: <name>" lines) for self-adhesivity in the engine's frame.
 * *csv receives "id,orbit_size,verdict,witness_L,millis" rows. */
int ci_screen(ci_engine* e, const char* rays_text, const char* policy,
              char** csv);

/* DIMACS CNF of the frame axioms over n variables, with statement-name
 * comments.  Engine-independent. */
int ci_axioms_dimacs(const char* frame, int n, char** out);

/* ------------------------------------------------------------------ */
/* Stateless model algebra                                            */
/* ------------------------------------------------------------------ */

/* Duality ij|K -> ij|N\(K u ij). */
int ci_dual(const char* model_text, char** out);

/* Restriction to the sub-ground set given by `labels` (space-separated). */
int ci_marginal(const char* model_text, const char* labels, char** out);

/* Statements common to two models over the same ground set. */
int ci_intersect(const char* a_text, const char* b_text, char** out);

/* Lifting into the larger ground set described by `big_labels` (a
 * space-separated label list containing every label of the model). */
int ci_lift(const char* model_text, const char* big_labels, char** out);

/* Tight replication of variable u by a fresh tight copy; v_label NULL or
 * "" derives a primed label automatically. */
int ci_replicate(const char* model_text, const char* u_label,
                 const char* v_label, char** out);

/* Least adhesion of two consonant models (they must agree on the
 * marginal over the shared variables). */
int ci_least_adhesion(const char* a_text, const char* b_text, char** out);

/* Expansion of the global statement [I, J | K] over the given ground
 * set; each of i/j/k_labels is a space-separated label list ("" = empty). */
int ci_expand_global(const char* ground_labels, const char* i_labels,
                     const char* j_labels, const char* k_labels, char** out);

/* Separation model of an undirected graph; edges like "a,b c,d". */
int ci_graph_model(const char* ground_labels, const char* edges, char** out);

/* Model induced by a supermodular set function (statements of vanishing
 * difference expressions).  Fails unless the function is supermodular. */
int ci_induced_model(const char* set_function_text, char** out);

/* ------------------------------------------------------------------ */
/* Catalogues                                                         */
/* ------------------------------------------------------------------ */

/* The full family of frame models over a ground set, with lattice
 * analyses computed on demand and cached. */
typedef struct ci_catalogue ci_catalogue;

int ci_catalogue_build(ci_engine* e, int n, ci_catalogue** out);

/* Sub-catalogue of the self-adhesive members (decided per orbit). */
int ci_catalogue_restrict_selfadhesive(ci_engine* e, ci_catalogue* c,
                                       ci_catalogue** out);

void ci_catalogue_free(ci_catalogue* c);

/* Number of members and of permutation orbits. */
int ci_catalogue_size(ci_catalogue* c, uint64_t* models, uint64_t* types);

/* CSV row (with header) of the standard summary:
 * family,models,types,irreducibles,irreducible_types,coatoms,coatom_types. */
int ci_catalogue_summary(ci_catalogue* c, const char* family_name,
                         char** csv);

/* Listings: a "ground:" header line, then one member per line as sorted
 * lowercase-hex statement indices ("-" = empty model).  types_only = 1
 * lists one orbit representative per line instead. */
int ci_catalogue_models(ci_catalogue* c, int types_only, char** out);
int ci_catalogue_irreducibles(ci_catalogue* c, int types_only, char** out);
int ci_catalogue_coatoms(ci_catalogue* c, int types_only, char** out);

/* Canonical (Guigues-Duquenne) implication basis of the catalogue as an
 * implication list; types_only = 1 keeps one implication per relabeling
 * class.  When perfect is non-NULL, *perfect reports whether every
 * premise is inclusion-minimal among non-closed sets. */
int ci_catalogue_basis(ci_catalogue* c, int types_only, int* perfect,
                       char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CI_H */
