#ifndef TRUSSMERGE_TRUSSMERGE_H
#define TRUSSMERGE_TRUSSMERGE_H

/* C interface to the trussmerge library. Every call that can fail returns a
 * tm_status; on failure a description is available from tm_last_error() on
 * the same thread. Objects returned through out-parameters are owned by the
 * caller and released with the matching *_free function. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TRUSSMERGE_BUILDING_LIBRARY)
#    define TM_API __declspec(dllexport)
#  else
#    define TM_API __declspec(dllimport)
#  endif
#else
#  define TM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tm_status {
  TM_OK = 0,
  TM_ERR_INVALID_ARGUMENT = 1,
  TM_ERR_PARSE = 2,
  TM_ERR_IO = 3,
  TM_ERR_DOMAIN = 4,
  TM_ERR_GUARD = 5,
  TM_ERR_INTERNAL = 6
} tm_status;

typedef struct tm_graph tm_graph;
typedef struct tm_string tm_string;

TM_API const char* tm_version(void);
/* Short machine-readable name such as "parse_error". */
TM_API const char* tm_status_name(tm_status status);
/* Message of the last failed call on this thread; "" if none. */
TM_API const char* tm_last_error(void);

TM_API const char* tm_string_data(const tm_string* s);
TM_API size_t tm_string_size(const tm_string* s);
TM_API void tm_string_free(tm_string* s);

/* ---- graphs ---------------------------------------------------------- */

TM_API tm_status tm_graph_load_file(const char* path, tm_graph** out);
TM_API tm_status tm_graph_from_text(const char* text, tm_graph** out);
TM_API void tm_graph_free(tm_graph* g);
TM_API tm_status tm_graph_stats(const tm_graph* g, size_t* nodes, size_t* edges);
TM_API tm_status tm_graph_largest_component(const tm_graph* g, tm_graph** out);
/* Edge list with external labels (labelled != 0) or dense ids. */
TM_API tm_status tm_graph_write_edge_list(const tm_graph* g, int labelled, tm_string** out);

/* ---- decomposition --------------------------------------------------- */

TM_API tm_status tm_truss_size(const tm_graph* g, int k, size_t* out);
TM_API tm_status tm_kmax(const tm_graph* g, int* out);
/* k,nodes,edges CSV for the given ks (may be empty). */
TM_API tm_status tm_decompose_csv(const tm_graph* g, const int* ks, size_t k_count, tm_string** out);
TM_API tm_status tm_trussness_csv(const tm_graph* g, tm_string** out);

/* ---- maximization ---------------------------------------------------- */

typedef struct tm_config {
  int k;
  size_t budget;
  size_t n_i;
  size_t n_o;
  size_t n_c;
  const char* method; /* BM, EQ, II, IO, RD, NE, NT or NAIVE */
  uint64_t seed;
  unsigned threads; /* 0: hardware concurrency */
  int literal_heuristics;
  int allow_no_op;
  const char* coords_path; /* NULL: no coordinates */
  double dist_threshold_km; /* negative: no distance constraint */
} tm_config;

/* Defaults: k 10, budget 10, n_i 100, n_o 50, n_c 10, method BM. */
TM_API void tm_config_init(tm_config* cfg);

/* Runs the configured method and returns the JSON run report. */
TM_API tm_status tm_maximize(const tm_graph* g, const tm_config* cfg, const char* dataset_name,
                             int include_timings, tm_string** report_json);

/* Re-applies the plan stored in a report and returns |E(T_k)|. */
TM_API tm_status tm_objective_from_report(const tm_graph* g, int k, const char* report_json, size_t* out);

/* CSV over methods x ks; RD is averaged over `trials` seeds. */
TM_API tm_status tm_compare(const tm_graph* g, const tm_config* base, const char* const* methods,
                            size_t method_count, const int* ks, size_t k_count, size_t trials,
                            int include_timings, tm_string** csv);

/* ---- fixtures -------------------------------------------------------- */

/* `sets` lists the sets separated by ';', elements by ',' (e.g. "1,2;2,3"). */
TM_API tm_status tm_hardness_fixture(const char* sets, int element_count, int k, int d, tm_graph** out);
/* The non-submodularity instance (evaluate at k = 5). */
TM_API tm_status tm_witness_fixture(int d, tm_graph** out);

/* ---- robustness studies ---------------------------------------------- */

typedef struct tm_study_config {
  const char* model;   /* "er", "ws" or "hk" */
  size_t n;
  double p;
  size_t model_param; /* ws: neighbors k; hk: edges per node m; unused for er */
  const char* metrics; /* comma separated targets, e.g. "VB,EB,ER,SG,NC" */
  const char* op;      /* "merge", "add" or "both" */
  size_t rounds;
  size_t seeds;
  uint64_t seed;
  unsigned threads;
} tm_study_config;

TM_API void tm_study_config_init(tm_study_config* cfg);

/* Greedy merge/add traces on generated graphs (largest component). */
TM_API tm_status tm_model_study(const tm_study_config* cfg, tm_string** csv);

/* Truss size, (k+1)-core size and robustness measures along a maximizer
 * run on the graph's largest component. */
TM_API tm_status tm_correlation_study(const tm_graph* g, const tm_config* cfg, size_t rounds,
                                      const char* dataset_name, tm_string** csv);

#ifdef __cplusplus
}
#endif

#endif
