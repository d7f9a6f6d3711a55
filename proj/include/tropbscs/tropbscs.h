/*
 * tropbscs C API.
 *
 * Every function returns a tb_status. On failure the out-parameters are left
 * untouched and tb_last_error() describes the problem for the calling thread.
 * Handles are opaque; release them with the matching *_free function.
 * Strings returned through char** are owned by the caller and released with
 * tb_string_free.
 */
#ifndef TROPBSCS_H
#define TROPBSCS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TROPBSCS_BUILDING)
#    define TB_API __declspec(dllexport)
#  else
#    define TB_API __declspec(dllimport)
#  endif
#else
#  define TB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tb_status {
    TB_OK = 0,
    TB_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad name, bad count */
    TB_ERR_DIMENSION = 2,
    TB_ERR_DOMAIN = 3,
    TB_ERR_PRECONDITION = 4,
    TB_ERR_PARSE = 5,
    TB_ERR_INFEASIBLE = 6,
    TB_ERR_TOO_LARGE = 7,
    TB_ERR_INTERNAL = 8
} tb_status;

typedef struct tb_matrix tb_matrix;
typedef struct tb_station tb_station;
typedef struct tb_trace tb_trace;
typedef struct tb_network tb_network;
typedef struct tb_plan tb_plan;

TB_API const char* tb_version(void);
TB_API const char* tb_status_name(tb_status status);
/* Message for the last failing call on this thread ("" if none). */
TB_API const char* tb_last_error(void);
TB_API void tb_string_free(char* s);

/* ---- max-plus matrices ---------------------------------------------------
 * JSON interchange: [[5, "-inf"], [0, 105]]; "-inf" is the zero element.
 * Scalars come back as doubles with -INFINITY for the zero element.
 */
TB_API tb_status tb_matrix_from_json(const char* json, tb_matrix** out);
TB_API tb_status tb_matrix_to_json(const tb_matrix* a, char** out);
TB_API tb_status tb_matrix_shape(const tb_matrix* a, size_t* rows, size_t* cols);
TB_API tb_status tb_matrix_get(const tb_matrix* a, size_t i, size_t j, double* out);
TB_API void tb_matrix_free(tb_matrix* a);

TB_API tb_status tb_matrix_add(const tb_matrix* a, const tb_matrix* b, tb_matrix** out);
TB_API tb_status tb_matrix_mul(const tb_matrix* a, const tb_matrix* b, tb_matrix** out);
TB_API tb_status tb_matrix_pow(const tb_matrix* a, size_t p, tb_matrix** out);
TB_API tb_status tb_matrix_conjugate(const tb_matrix* a, tb_matrix** out);
TB_API tb_status tb_matrix_kleene_star(const tb_matrix* a, tb_matrix** out);
/* Solves A x (+) b = x; b is an n x 1 matrix and so is the result. */
TB_API tb_status tb_matrix_solve_implicit(const tb_matrix* a, const tb_matrix* b, tb_matrix** out);
TB_API tb_status tb_matrix_trace(const tb_matrix* a, double* out);
TB_API tb_status tb_matrix_tropical_det(const tb_matrix* a, double* out);
TB_API tb_status tb_matrix_norm(const tb_matrix* a, double* out);
TB_API tb_status tb_matrix_spectral_radius(const tb_matrix* a, double* out);
/* x^(num/den) for a scalar x (-INFINITY for the zero element). */
TB_API tb_status tb_scalar_pow(double x, int64_t num, int64_t den, double* out);

/* ---- single station ------------------------------------------------------ */
/* {"dist": {"exp": {"mean": 25}}, "b": 5, "c": 100, "m": 4} */
TB_API tb_status tb_station_from_json(const char* json, tb_station** out);
TB_API tb_status tb_station_to_json(const tb_station* st, char** out);
/* Copy of st with one parameter replaced. name is one of "a", "b", "c", "m";
 * changing "a" rescales the interarrival distribution to the new mean. */
TB_API tb_status tb_station_with(const tb_station* st, const char* name, double value,
                                 tb_station** out);
TB_API void tb_station_free(tb_station* st);

/* max(a, b, (b+c)/m) */
TB_API tb_status tb_station_exact_cycle_time(const tb_station* st, double* out);
/* Monte Carlo Lyapunov exponent over `replications` independent runs. */
TB_API tb_status tb_station_estimate_cycle_time(const tb_station* st, size_t horizon,
                                                size_t replications, uint64_t seed,
                                                double* estimate, double* std_error);
/* *equal = 1 iff the scalar recurrence and the matrix product agree exactly. */
TB_API tb_status tb_station_check_equivalence(const tb_station* st, size_t horizon,
                                              uint64_t seed, int* equal);

TB_API tb_status tb_simulate(const tb_station* st, size_t horizon, uint64_t seed, tb_trace** out);
TB_API tb_status tb_trace_length(const tb_trace* tr, size_t* out);
TB_API tb_status tb_trace_row(const tb_trace* tr, size_t index, size_t* k, double* x, double* y,
                              double* lambda_hat);
/* CSV "k,x,y,lambda_hat" at k = stride, 2 stride, ... */
TB_API tb_status tb_trace_to_csv(const tb_trace* tr, size_t stride, char** out);
/* CSV "k,lambda_hat" at the stride plus a trailing "exact,<value>" line. */
TB_API tb_status tb_trace_to_figure_csv(const tb_trace* tr, size_t stride, double exact,
                                        char** out);
TB_API void tb_trace_free(tb_trace* tr);

/* ---- station networks ---------------------------------------------------- */
/* [{"a":..,"b":..,"c":..,"r":..}, ...] or {"stations": [...], "M": 12}.
 * *fleet receives M, or 0 when the document does not set it. */
TB_API tb_status tb_network_from_json(const char* json, tb_network** out, size_t* fleet);
TB_API tb_status tb_network_size(const tb_network* net, size_t* out);
TB_API void tb_network_free(tb_network* net);

TB_API tb_status tb_allocate_heuristic(const tb_network* net, size_t fleet, tb_plan** out);
TB_API tb_status tb_allocate_bruteforce(const tb_network* net, size_t fleet, tb_plan** out);
TB_API tb_status tb_plan_objective(const tb_plan* plan, double* out);
TB_API tb_status tb_plan_count(const tb_plan* plan, size_t station, size_t* out);
/* {counts, objective, thresholds, saturated, warning?} */
TB_API tb_status tb_plan_to_json(const tb_plan* plan, const tb_network* net, char** out);
TB_API void tb_plan_free(tb_plan* plan);

#ifdef __cplusplus
}
#endif

#endif /* TROPBSCS_H */
