#ifndef EPB_EPB_H
#define EPB_EPB_H

/* C interface to the exclusivity-bounds library. Every handle is opaque and
 * released with its matching *_free function. Strings returned through
 * `char** out` belong to the caller and are released with epb_string_free.
 * On failure the returned status is nonzero, no output is written and
 * epb_last_error() describes the problem (per thread). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define EPB_API __declspec(dllexport)
#else
#define EPB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum epb_status {
  EPB_OK = 0,
  EPB_ERR_INVALID_ARGUMENT = 1,
  EPB_ERR_PARSE = 2,
  EPB_ERR_CONTRADICTION = 3,
  EPB_ERR_UNKNOWN_OBSERVABLE = 4,
  EPB_ERR_INVALID_REGISTRY = 5,
  EPB_ERR_UNDEFINED_CONTEXT = 6,
  EPB_ERR_OUT_OF_RANGE = 7,
  EPB_ERR_INVALID_BEHAVIOR = 8,
  EPB_ERR_DUPLICATE_EVENT = 9,
  EPB_ERR_LENGTH_MISMATCH = 10,
  EPB_ERR_INVALID_GRAPH = 11,
  EPB_ERR_TOO_LARGE = 12,
  EPB_ERR_CLIQUE_EXPLOSION = 13,
  EPB_ERR_INFEASIBLE = 14,
  EPB_ERR_NUMERICAL_FAILURE = 15,
  EPB_ERR_INVALID_NINTH_EVENT = 16,
  EPB_ERR_NOT_REPRESENTABLE = 17,
  EPB_ERR_INTERNAL = 99
} epb_status;

typedef enum epb_method {
  EPB_METHOD_LR = 0,
  EPB_METHOD_FRACTIONAL_PACKING = 1,
  EPB_METHOD_THETA = 2
} epb_method;

typedef struct epb_event epb_event;
typedef struct epb_graph epb_graph;
typedef struct epb_behavior epb_behavior;
typedef struct epb_report epb_report;

EPB_API const char* epb_last_error(void);
EPB_API const char* epb_status_name(epb_status status);
EPB_API void epb_string_free(char* s);

/* Events over the standard two-copy CHSH observables, e.g. "A0+ B1- A0A'0+". */
EPB_API epb_status epb_event_parse(const char* text, epb_event** out);
EPB_API void epb_event_free(epb_event* e);
EPB_API epb_status epb_event_to_string(const epb_event* e, char** out);
EPB_API epb_status epb_event_equivalent(const epb_event* a, const epb_event* b, int* out);
/* `witness` may be NULL; otherwise it receives the observable id, or NULL
 * when the events are not exclusive. */
EPB_API epb_status epb_event_exclusive(const epb_event* a, const epb_event* b, int* exclusive, char** witness);

EPB_API epb_status epb_graph_chsh(epb_graph** out);
EPB_API epb_status epb_graph_pentagon(epb_graph** out);
/* `weights` may be NULL for unit weights. */
EPB_API epb_status epb_graph_from_events(const epb_event* const* events, const double* weights, size_t n,
                                         epb_graph** out);
EPB_API epb_status epb_graph_from_json(const char* json, epb_graph** out);
EPB_API void epb_graph_free(epb_graph* g);
EPB_API size_t epb_graph_vertex_count(const epb_graph* g);
EPB_API size_t epb_graph_edge_count(const epb_graph* g);
EPB_API epb_status epb_graph_to_json(const epb_graph* g, char** out);
EPB_API epb_status epb_graph_to_dot(const epb_graph* g, char** out);

EPB_API epb_status epb_bound_compute(const epb_graph* g, epb_method method, epb_report** out);
EPB_API void epb_report_free(epb_report* r);
EPB_API double epb_report_value(const epb_report* r);
/* Re-checks the certificate against the graph it was computed on.
 * `problems` may be NULL; otherwise it receives a JSON array of strings. */
EPB_API epb_status epb_report_verify(const epb_report* r, int* ok, char** problems);
EPB_API epb_status epb_report_to_json(const epb_report* r, char** out);

EPB_API epb_status epb_behavior_from_json(const char* json, epb_behavior** out);
EPB_API epb_status epb_behavior_symmetric(double p, epb_behavior** out);
EPB_API epb_status epb_behavior_product(const epb_behavior* first, const epb_behavior* second, epb_behavior** out);
EPB_API void epb_behavior_free(epb_behavior* b);
EPB_API epb_status epb_behavior_chsh(const epb_behavior* b, double* out);
/* `out` receives a JSON array of violation strings (empty when valid). */
EPB_API epb_status epb_behavior_validate(const epb_behavior* b, double tolerance, int check_no_signaling,
                                         char** out);
EPB_API epb_status epb_behavior_to_json(const epb_behavior* b, char** out);
EPB_API epb_status epb_sum_identity_residual(const epb_behavior* b, double* out);

/* Proof documents, as JSON. A NULL `p` leaves the table symbolic only. */
EPB_API epb_status epb_table1_json(int verify, const double* p, char** out);
EPB_API epb_status epb_enumerate_json(const char* ninth, char** out);
/* mode: "symmetric" or "general". */
EPB_API epb_status epb_prove_json(const char* mode, char** out);
EPB_API epb_status epb_identity_check_json(uint64_t seed, size_t samples, char** out);

#ifdef __cplusplus
}
#endif

#endif
