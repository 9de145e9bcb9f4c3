/* gridohm: exact two-point resistances of infinite periodic resistor networks.
 *
 * All functions are thread-safe. Functions returning gridohm_status set a
 * per-thread error message, readable via gridohm_last_error(), on failure.
 * Strings returned through char** are heap-allocated; release them with
 * gridohm_string_free(). Site indices are 0-based at this level.
 */
#ifndef GRIDOHM_H
#define GRIDOHM_H

#include <stdint.h>

#if defined(_WIN32)
#define GRIDOHM_API __declspec(dllexport)
#else
#define GRIDOHM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gridohm_status {
  GRIDOHM_OK = 0,
  GRIDOHM_ERR_INVALID_ARGUMENT = 1,
  GRIDOHM_ERR_PARSE = 2,
  GRIDOHM_ERR_SELF_LOOP = 3,
  GRIDOHM_ERR_UNKNOWN_SITE = 4,
  GRIDOHM_ERR_NON_POSITIVE_RESISTANCE = 5,
  GRIDOHM_ERR_DISCONNECTED_LATTICE = 6,
  GRIDOHM_ERR_UNKNOWN_LATTICE = 7,
  GRIDOHM_ERR_SINGULAR_POINT = 8,
  GRIDOHM_ERR_NO_CONVERGENCE = 9, /* result is still filled in */
  GRIDOHM_ERR_IO = 10,
  GRIDOHM_ERR_INTERNAL = 11
} gridohm_status;

/* Opaque validated lattice. */
typedef struct gridohm_lattice gridohm_lattice;

typedef struct gridohm_quadrature_config {
  int order;               /* midpoint nodes per axis, even; 0 picks the dimension default */
  int max_refinements;     /* order doublings allowed after the first pass */
  double target_rel_error; /* refinement stops once |R_M - R_2M| <= target * |R| */
  int threads;             /* 0: GRIDOHM_THREADS env var, then hardware concurrency */
} gridohm_quadrature_config;

typedef struct gridohm_result {
  double value;
  double error_estimate; /* |R_M - R_2M| of the last two passes */
  int order_used;
  int converged;
  int64_t evaluations;
  double wall_seconds;
} gridohm_result;

GRIDOHM_API const char* gridohm_version(void);

/* Message of the calling thread's most recent failure; owned by the library,
 * valid until the next failing call on the same thread. */
GRIDOHM_API const char* gridohm_last_error(void);

GRIDOHM_API void gridohm_string_free(char* s);

GRIDOHM_API gridohm_quadrature_config gridohm_quadrature_config_default(void);

/* Construction. `name` is a catalog identifier (see gridohm_catalog_json). */
GRIDOHM_API gridohm_status gridohm_lattice_builtin(const char* name, gridohm_lattice** out);
GRIDOHM_API gridohm_status gridohm_lattice_chain(double r1, double r2, gridohm_lattice** out);
GRIDOHM_API gridohm_status gridohm_lattice_from_json(const char* text, gridohm_lattice** out);
GRIDOHM_API gridohm_status gridohm_lattice_from_file(const char* path, gridohm_lattice** out);
GRIDOHM_API void gridohm_lattice_free(gridohm_lattice* lat);

/* Canonical spec document; byte-stable across round trips. */
GRIDOHM_API gridohm_status gridohm_lattice_to_json(const gridohm_lattice* lat, char** out);

GRIDOHM_API int gridohm_lattice_dimension(const gridohm_lattice* lat);
GRIDOHM_API int gridohm_lattice_site_count(const gridohm_lattice* lat);
GRIDOHM_API gridohm_status gridohm_lattice_site_index(const gridohm_lattice* lat,
                                                      const char* name, int* out);
/* NULL when out of range; owned by the lattice. */
GRIDOHM_API const char* gridohm_lattice_site_name(const gridohm_lattice* lat, int site);
GRIDOHM_API gridohm_status gridohm_weighted_degree(const gridohm_lattice* lat, int site,
                                                   double* out);

/* Infinite-lattice resistance between site `from` in cell 0 and site `to` in
 * the cell given by `offset` (dimension entries). Returns
 * GRIDOHM_ERR_NO_CONVERGENCE when the target accuracy was not reached; the
 * result is still valid in that case. */
GRIDOHM_API gridohm_status gridohm_resistance(const gridohm_lattice* lat, int from, int to,
                                              const int* offset,
                                              const gridohm_quadrature_config* cfg,
                                              gridohm_result* out);

/* Integrand value at one point x of [-pi, pi]^d. */
GRIDOHM_API gridohm_status gridohm_resistance_integrand(const gridohm_lattice* lat, int from,
                                                        int to, const int* offset,
                                                        const double* x, double* out);

/* Fixed-order quadrature values for each of the strictly ascending orders. */
GRIDOHM_API gridohm_status gridohm_convergence_study(const gridohm_lattice* lat, int from, int to,
                                                     const int* offset, const int* orders,
                                                     int n_orders,
                                                     const gridohm_quadrature_config* cfg,
                                                     double* values);

/* Finite-torus resistance on N_1 x ... x N_d unit cells (all even, >= 2).
 * route: 0 = k-space sum, 1 = real-space sparse solve. */
GRIDOHM_API gridohm_status gridohm_torus_resistance(const gridohm_lattice* lat, int from, int to,
                                                    const int* offset, const int* sizes, int route,
                                                    double* out);

/* Closed form for the two-site chain; alpha, beta in {0, 1}. */
GRIDOHM_API gridohm_status gridohm_chain_resistance(double r1, double r2, int alpha, int beta,
                                                    long long m, double* out);

/* Appendix expansions over a reference lattice; `lattice` is "kagome", "dice"
 * or "decorated". When terms_json is non-NULL it receives the constant plus
 * per-term offsets, coefficients and reference values. */
GRIDOHM_API gridohm_status gridohm_mapped_resistance(const char* lattice, int alpha, int beta,
                                                     long long m, long long n,
                                                     const gridohm_quadrature_config* cfg,
                                                     gridohm_result* out, char** terms_json);

/* Memoized reference resistance; `lattice` is "square" or "triangular". */
GRIDOHM_API gridohm_status gridohm_reference_resistance(const char* lattice, long long m,
                                                        long long n,
                                                        const gridohm_quadrature_config* cfg,
                                                        gridohm_result* out);

/* Catalog listing: {"format":1, "lattices":[{name, description, dimension,
 * sites}, ...]} in stable order. */
GRIDOHM_API gridohm_status gridohm_catalog_json(char** out);

/* Runs the verification suite. `only` selects one check group (NULL or ""
 * runs everything), `profile` is "default" or "quick" (NULL means default).
 * report_json receives the per-check report, failed the failing-check count.
 * Check failures do NOT make the return status non-OK. */
GRIDOHM_API gridohm_status gridohm_verify(const char* only, const char* profile, int threads,
                                          char** report_json, int* failed);

#ifdef __cplusplus
}
#endif

#endif /* GRIDOHM_H */
