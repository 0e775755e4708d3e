/* sparsemc C API: sparse-graph orderings, colourings, forests, dominating sets, first-order
 * model checking and the circuit reduction, behind opaque handles and status codes. */
#ifndef SPARSEMC_H
#define SPARSEMC_H

#include <stddef.h>
#include <stdint.h>

#if defined(SPARSEMC_BUILDING)
#define SMC_API __attribute__((visibility("default")))
#else
#define SMC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum smc_status {
  SMC_OK = 0,
  SMC_ERR_PARSE = 1,
  SMC_ERR_INVALID = 2,
  SMC_ERR_PROMISE = 3, /* input violates the promised sparsity parameters */
  SMC_ERR_GUARD = 4,   /* a resource guard stopped the computation */
  SMC_ERR_IO = 5,
  SMC_ERR_INTERNAL = 6
} smc_status;

typedef enum smc_bconn_mode { SMC_BCONN_EXACT = 0, SMC_BCONN_MONTE_CARLO = 1 } smc_bconn_mode;

typedef enum smc_cover_mode { SMC_COVER_AUTO = 0, SMC_COVER_COLORED = 1, SMC_COVER_SINGLE = 2 } smc_cover_mode;

typedef struct smc_config {
  int r;
  int d;
  int p;
  int delta; /* max degree promise for bounded-degree colouring, -1 = measured */
  smc_bconn_mode bconn_mode;
  int64_t trials; /* 0 = default trial count */
  uint64_t seed;
  smc_cover_mode cover;
} smc_config;

typedef struct smc_graph smc_graph;
typedef struct smc_structure smc_structure;
typedef struct smc_circuit smc_circuit;
typedef struct smc_result smc_result;

/* Message of the last failed call on this thread ("" if none). */
SMC_API const char *smc_last_error(void);
SMC_API const char *smc_status_name(smc_status status);
SMC_API const char *smc_version(void);
SMC_API void smc_config_default(smc_config *cfg);

/* Graphs: "graph <n>" then "e <u> <v>" lines. */
SMC_API smc_status smc_graph_parse(const char *text, smc_graph **out);
SMC_API smc_status smc_graph_load(const char *path, smc_graph **out);
/* edges holds m pairs (2m ints). */
SMC_API smc_status smc_graph_from_edges(int n, const int32_t *edges, size_t m, smc_graph **out);
SMC_API void smc_graph_free(smc_graph *g);
SMC_API int smc_graph_n(const smc_graph *g);
SMC_API size_t smc_graph_edge_count(const smc_graph *g);

SMC_API smc_status smc_structure_parse(const char *text, smc_structure **out);
SMC_API smc_status smc_structure_load(const char *path, smc_structure **out);
SMC_API void smc_structure_free(smc_structure *s);
SMC_API int smc_structure_n(const smc_structure *s);

SMC_API smc_status smc_circuit_parse(const char *text, smc_circuit **out);
SMC_API smc_status smc_circuit_load(const char *path, smc_circuit **out);
SMC_API void smc_circuit_free(smc_circuit *c);

/* Results carry a printable text, an integer vector, named metrics and a round ledger. */
SMC_API void smc_result_free(smc_result *res);
SMC_API const char *smc_result_text(const smc_result *res);
SMC_API const int32_t *smc_result_values(const smc_result *res, size_t *len);
/* SMC_ERR_INVALID if the metric is absent. */
SMC_API smc_status smc_result_metric(const smc_result *res, const char *name, int64_t *value);
SMC_API size_t smc_result_phase_count(const smc_result *res);
SMC_API smc_status smc_result_phase(const smc_result *res, size_t i, const char **name, int64_t *rounds);
/* "phase <name> rounds <k>" lines. */
SMC_API const char *smc_result_ledger_text(const smc_result *res);

/* Orderings. values = vertex sequence; metrics: degeneracy, blocks, admissibility, wcol, bound. */
SMC_API smc_status smc_order_greedy(const smc_graph *g, smc_result **out);
SMC_API smc_status smc_order_block(const smc_graph *g, const smc_config *cfg, smc_result **out);
SMC_API smc_status smc_order_adm(const smc_graph *g, const smc_config *cfg, smc_result **out);
SMC_API smc_status smc_order_wcol(const smc_graph *g, const smc_config *cfg, smc_result **out);
SMC_API smc_status smc_wcol_measure(const smc_graph *g, const int32_t *order, size_t len, int r, int *out);
SMC_API smc_status smc_ordering_degeneracy(const smc_graph *g, const int32_t *order, size_t len, int *out);
/* Threshold of the elimination procedure: least c with degeneracy_le(g, c). */
SMC_API smc_status smc_elimination_threshold(const smc_graph *g, int *out);
SMC_API smc_status smc_degeneracy_le(const smc_graph *g, int c, int *out);

/* Colourings. values = colour per vertex; metrics: colors, palette, proper (0/1), radius, wcol. */
SMC_API smc_status smc_color_bounded_degree(const smc_graph *g, const smc_config *cfg, smc_result **out);
SMC_API smc_status smc_color_degenerate(const smc_graph *g, const smc_config *cfg, smc_result **out);
SMC_API smc_status smc_color_low_treedepth(const smc_graph *g, const smc_config *cfg, smc_result **out);

/* DFS forest with depth promise < 2^h (h <= 0 picks the trivial bound). values = parents;
 * metrics: depth, separation (0/1). */
SMC_API smc_status smc_dfs_forest(const smc_graph *g, int h, smc_result **out);
/* Exact treedepth, small graphs only. */
SMC_API smc_status smc_treedepth_exact(const smc_graph *g, int *out);

/* Distance-r dominating set with radius cfg->r. values = dominators; metrics: size, wcol. */
SMC_API smc_status smc_domset(const smc_graph *g, const smc_config *cfg, smc_result **out);
SMC_API smc_status smc_domset_exact(const smc_graph *g, int r, int *out);
SMC_API smc_status smc_is_dominating(const smc_graph *g, const int32_t *set, size_t len, int r, int *out);

/* Model checking of a sentence. metrics: value (0/1), labels, subsets, colored, qe_types. */
SMC_API smc_status smc_model_check(const smc_structure *s, const char *sentence, const smc_config *cfg,
                                   smc_result **out);
SMC_API smc_status smc_naive_eval(const smc_structure *s, const char *sentence, int *out);

/* Circuit-to-graph reduction. metrics: degeneracy_le2, eval, agree (0/1), vertices, edges, gates. */
SMC_API smc_status smc_reduce_circuit(const smc_circuit *c, smc_result **out);
SMC_API smc_status smc_eval_circuit(const smc_circuit *c, int *out);
/* Structural self-test of the AND/OR gadgets; failures are listed in the result text. */
SMC_API smc_status smc_gadget_self_test(smc_result **out);

#ifdef __cplusplus
}
#endif

#endif
