/* Multi-layer transport path computation engine: C API.
 *
 * Opaque handles, integer status codes, JSON/text payloads. Every function
 * returning mlpce_status sets a thread-local message retrievable with
 * mlpce_last_error() on failure. Strings returned through out-parameters are
 * heap-allocated; release them with mlpce_string_free().
 */
#ifndef MLPCE_H
#define MLPCE_H

#include <stdint.h>

#ifndef MLPCE_API
#if defined(_WIN32)
#define MLPCE_API __declspec(dllexport)
#else
#define MLPCE_API __attribute__((visibility("default")))
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mlpce_status {
  MLPCE_OK = 0,
  MLPCE_ERR = 1,            /* unexpected fault */
  MLPCE_ERR_VALIDATION = 2, /* malformed input or broken invariant */
  MLPCE_ERR_IO = 3,
  MLPCE_ERR_CAPACITY = 4,
  MLPCE_ERR_PARAM = 5,
  MLPCE_REJECTED = 6 /* request not satisfiable; graph state untouched */
} mlpce_status;

typedef struct mlpce_network mlpce_network; /* network description */
typedef struct mlpce_graph mlpce_graph;     /* auxiliary graph + state */

MLPCE_API const char* mlpce_version(void);
MLPCE_API const char* mlpce_last_error(void);
MLPCE_API void mlpce_string_free(char* s);

/* --- network descriptions ------------------------------------------------ */

/* params_json: generator knobs (empty/NULL for calibrated defaults). */
MLPCE_API mlpce_status mlpce_network_generate(const char* params_json,
                                              uint64_t seed,
                                              mlpce_network** out);
MLPCE_API mlpce_status mlpce_network_load(const char* path,
                                          mlpce_network** out);
MLPCE_API mlpce_status mlpce_network_save(const mlpce_network* net,
                                          const char* path);
MLPCE_API mlpce_status mlpce_network_stats_json(const mlpce_network* net,
                                                char** json_out);
MLPCE_API mlpce_status mlpce_requests_generate(const mlpce_network* net,
                                               int count, uint64_t seed,
                                               const char* out_path);
MLPCE_API void mlpce_network_free(mlpce_network* net);

/* --- auxiliary graph ----------------------------------------------------- */

/* weights_json keys: alpha, gamma, eta, scheme (plf|lf|wgm),
 * lf_normalize_distance, wgm_scale. Empty/NULL for defaults. */
MLPCE_API mlpce_status mlpce_graph_build(const mlpce_network* net,
                                         const char* weights_json,
                                         mlpce_graph** out);
MLPCE_API mlpce_status mlpce_graph_counts_json(const mlpce_graph* g,
                                               char** json_out);
MLPCE_API uint64_t mlpce_graph_state_hash(const mlpce_graph* g);
MLPCE_API void mlpce_graph_free(mlpce_graph* g);

/* --- path computation ---------------------------------------------------- */

/* request_line uses the requests-file record syntax, e.g.
 *   "req r1 src=l00-ac0-n0 dst=l01-ac1-n0 type=lpp n=1 rate=vc12"
 * With provision != 0 and n == 1 the chosen path is committed (logical links
 * created, capacity subtracted); rejections leave the graph bit-identical.
 * result_json_out (optional) receives paths, costs and created links. */
MLPCE_API mlpce_status mlpce_compute(mlpce_graph* g, const char* request_line,
                                     int provision, char** result_json_out);

/* --- evaluation ---------------------------------------------------------- */

MLPCE_API mlpce_status mlpce_sweep(const mlpce_network* net,
                                   const char* sweep_json,
                                   const char* csv_out_path);
MLPCE_API mlpce_status mlpce_report(const char* csv_path, char** text_out);

#ifdef __cplusplus
}
#endif

#endif /* MLPCE_H */
