/* tvk: exact Turaev-Viro / Reshetikhin-Turaev invariants.
 *
 * C interface over the C++ core. All objects are opaque handles created by
 * tvk_*_load / tvk_*_builtin and released with the matching tvk_*_free.
 * Functions return a status code:
 *   0  TVK_OK          success
 *   1  TVK_CHECK_FAIL  a mathematical check failed (validation, anomaly, ...)
 *   2  TVK_BAD_INPUT   malformed file or argument
 *   3  TVK_MATH_ERROR  division by zero, singular matrix
 *   4  TVK_INTERNAL    internal invariant violated
 * On failure tvk_last_error() returns a message for the calling thread.
 *
 * Strings returned through char** out-parameters are heap-allocated; release
 * them with tvk_string_free. Exact scalars use the text form
 * rat[p/q] / cyc(n)[e:p/q, ...] and round-trip bit-exactly.
 */

#ifndef TVK_H
#define TVK_H

#ifdef __cplusplus
extern "C" {
#endif

#define TVK_OK 0
#define TVK_CHECK_FAIL 1
#define TVK_BAD_INPUT 2
#define TVK_MATH_ERROR 3
#define TVK_INTERNAL 4

typedef struct tvk_category tvk_category;
typedef struct tvk_modular tvk_modular;
typedef struct tvk_triangulation tvk_triangulation;
typedef struct tvk_surgery tvk_surgery;

const char* tvk_version(void);
const char* tvk_last_error(void);
void tvk_string_free(char* s);

/* ---- categories ---- */
int tvk_category_load(const char* path, tvk_category** out);
void tvk_category_free(tvk_category* c);
int tvk_category_name(const tvk_category* c, char** out);
int tvk_category_global_dim(const tvk_category* c, char** exact_out);
/* runs the pentagon and orthonormality gates; *report_out is a one-line-per-
 * check text summary; returns TVK_CHECK_FAIL when any identity fails */
int tvk_category_validate(const tvk_category* c, char** report_out);

/* ---- modular data ---- */
int tvk_modular_load(const char* path, tvk_modular** out);
void tvk_modular_free(tvk_modular* m);
/* delta_out receives Delta+; anomaly_free is 0/1 */
int tvk_modular_info(const tvk_modular* m, char** delta_out, int* anomaly_free);

/* ---- triangulations ---- */
int tvk_triangulation_load(const char* path, tvk_triangulation** out);
int tvk_triangulation_builtin(const char* name, tvk_triangulation** out);
void tvk_triangulation_free(tvk_triangulation* t);
int tvk_triangulation_counts(const tvk_triangulation* t, long* vertices, long* edges,
                             long* faces, long* tets);
/* first homology as "Z/d1 + Z/d2 + Z^r" style divisor list "d1 d2 ... 0 0" */
int tvk_triangulation_homology(const tvk_triangulation* t, char** out);

/* ---- surgery presentations ---- */
int tvk_surgery_load(const char* path, tvk_surgery** out);
void tvk_surgery_free(tvk_surgery* s);

/* ---- invariants ---- */
int tvk_tv_invariant(const tvk_category* c, const tvk_triangulation* t, int threads,
                     char** exact_out);
int tvk_tv_invariant_report(const tvk_category* c, const tvk_triangulation* t,
                            int threads, char** exact_out, long* colorings_visited,
                            long* admissible_colorings, double* seconds);
int tvk_rt_invariant(const tvk_modular* m, const tvk_surgery* s, char** exact_out);
int tvk_s2_dimension(const tvk_category* c, int* out);
int tvk_genus_dimension(const tvk_category* c, int genus, int* rank, int* idempotent,
                        int* matrix_dim);

/* verify |M|_C = tau_{Z(C)}(M) over a manifest of (triangulation, surgery)
 * pairs; *report_out gets one line per pair; TVK_CHECK_FAIL on any mismatch */
int tvk_verify_manifest(const char* path, int threads, char** report_out);

/* decimal approximation of an exact scalar string; digits <= 50 */
int tvk_scalar_approx(const char* exact, int digits, char** re_out, char** im_out);

#ifdef __cplusplus
}
#endif

#endif /* TVK_H */
