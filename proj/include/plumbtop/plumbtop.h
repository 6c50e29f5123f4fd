/*
 * plumbtop: invariant Laurent series of weakly negative definite plumbed
 * 3-manifolds over a root lattice.
 *
 * C API. All functions return PLUMBTOP_OK (0) on success or a negative
 * error code; on failure *err (when non-NULL) receives a malloc'd message
 * to be released via plumbtop_string_free. All returned strings are
 * malloc'd UTF-8 and owned by the caller. Handles are opaque and freed
 * with their _free function. Handles are immutable after creation and may
 * be shared across threads.
 */

#ifndef PLUMBTOP_H
#define PLUMBTOP_H

#ifdef __cplusplus
extern "C" {
#endif

#define PLUMBTOP_OK 0
#define PLUMBTOP_ERR_PARSE -1      /* malformed input */
#define PLUMBTOP_ERR_DOMAIN -2     /* precondition violated (degenerate framing, ...) */
#define PLUMBTOP_ERR_INTERNAL -3

typedef struct plumbtop_lattice plumbtop_lattice;
typedef struct plumbtop_tree plumbtop_tree;
typedef struct plumbtop_series plumbtop_series;

const char* plumbtop_version(void);
void plumbtop_string_free(char* s);

/* --- root lattices ------------------------------------------------- */

/* kind: "A1", "A2", ... */
int plumbtop_lattice_new(const char* kind, plumbtop_lattice** out, char** err);
void plumbtop_lattice_free(plumbtop_lattice* lat);
int plumbtop_lattice_rank(const plumbtop_lattice* lat);
int plumbtop_lattice_weyl_order(const plumbtop_lattice* lat);
/* JSON: gram matrix, positive roots, 2*rho, fundamental weights, Weyl
 * elements with lengths. */
int plumbtop_lattice_describe(const plumbtop_lattice* lat, char** json, char** err);

/* --- plumbing trees ------------------------------------------------- */

/* JSON: {"vertices":[{"m":-2},...],"edges":[[0,1],...]} */
int plumbtop_tree_parse(const char* json, plumbtop_tree** out, char** err);
void plumbtop_tree_free(plumbtop_tree* t);
int plumbtop_tree_to_json(const plumbtop_tree* t, char** json, char** err);
/* Framing data, weak negative definiteness, reducedness. */
int plumbtop_tree_check(const plumbtop_tree* t, int search_depth, char** report_json, char** err);
/* move_json: {"kind":"Aplus","a":0,"b":1,...} */
int plumbtop_tree_move(const plumbtop_tree* t, const char* move_json, plumbtop_tree** out,
                       char** err);
int plumbtop_tree_reduce(const plumbtop_tree* t, int search_depth, plumbtop_tree** out,
                         char** trace_json, char** err);

/* --- admissible series ---------------------------------------------- */

/* spec: "W", "translate:<i>:<coords>", or a JSON term list. */
int plumbtop_series_create(const plumbtop_lattice* lat, const char* spec, plumbtop_series** out,
                           char** err);
void plumbtop_series_free(plumbtop_series* s);
int plumbtop_series_to_json(const plumbtop_series* s, char** json, char** err);
/* Even-Weyl-line extension (A2 only): P + c z^{2 gamma} L_x. */
int plumbtop_series_add_line(const plumbtop_series* s, const char* c_rat, const char* gamma_json,
                             int weyl_index, plumbtop_series** out, char** err);
/* Weyl twist P^w by the group element with the given enumeration index. */
int plumbtop_series_twist(const plumbtop_series* s, int weyl_index, plumbtop_series** out,
                          char** err);

/* Admissibility report for a closed-form series on a norm ball. */
int plumbtop_puzzle_verify(const plumbtop_series* s, const char* radius_rat, char** report_json,
                           char** err);
/* Admissibility report for a coefficient window given as JSON. */
int plumbtop_puzzle_verify_window(const plumbtop_lattice* lat, const char* window_json,
                                  char** report_json, char** err);
/* side: "vanish_positive" | "vanish_negative". */
int plumbtop_puzzle_solve_a1(const plumbtop_lattice* lat, const char* side,
                             const char* radius_rat, char** result_json, char** err);

/* --- generalized Spin^c structures ----------------------------------- */

/* JSON report: class count |det B|^r and the canonical representatives. */
int plumbtop_spinc_list(const plumbtop_tree* t, const plumbtop_lattice* lat, char** json,
                        char** err);

/* --- the invariant series -------------------------------------------- */

/* spinc_index: position in the canonical enumeration (plumbtop_spinc_list);
 * trunc_rat: kept exponent range above the minimal-exponent bound. */
int plumbtop_y_series(const plumbtop_tree* t, const plumbtop_lattice* lat,
                      const plumbtop_series* s, int spinc_index, const char* trunc_rat,
                      int threads, char** series_json, char** err);

/* Invariance verifications; each returns a JSON report with "equal". */
int plumbtop_verify_move(const plumbtop_tree* t, const plumbtop_lattice* lat,
                         const plumbtop_series* s, const char* move_json, int spinc_index,
                         const char* trunc_rat, int threads, char** report_json, char** err);
int plumbtop_verify_weyl(const plumbtop_tree* t, const plumbtop_lattice* lat,
                         const plumbtop_series* s, int spinc_index, int weyl_index,
                         const char* trunc_rat, int threads, char** report_json, char** err);
int plumbtop_verify_twist(const plumbtop_tree* t, const plumbtop_lattice* lat,
                          const plumbtop_series* s, int spinc_index, int weyl_index,
                          const char* trunc_rat, int threads, char** report_json, char** err);

/* --- Brieskorn spheres ------------------------------------------------ */

/* via: "tree", "closed-form", or "both" (adds an exact diff report). */
int plumbtop_brieskorn(long b1, long b2, long b3, const plumbtop_lattice* lat,
                       const plumbtop_series* s, const char* trunc_rat, const char* via,
                       int threads, char** json, char** err);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PLUMBTOP_H */
