#ifndef AMSVRG_AMSVRG_H
#define AMSVRG_AMSVRG_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define AMSVRG_API __declspec(dllexport)
#else
#define AMSVRG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum amsvrg_status {
  AMSVRG_OK = 0,
  AMSVRG_ERR_INVALID_ARGUMENT = 1,
  AMSVRG_ERR_PARSE = 2,
  AMSVRG_ERR_IO = 3,
  AMSVRG_ERR_VALIDATION = 4,
  AMSVRG_ERR_NUMERIC = 5,
  AMSVRG_ERR_INTERNAL = 6
} amsvrg_status;

typedef struct amsvrg_dataset amsvrg_dataset;
typedef struct amsvrg_objective amsvrg_objective;
typedef struct amsvrg_config amsvrg_config;
typedef struct amsvrg_result amsvrg_result;
typedef struct amsvrg_comparison amsvrg_comparison;
typedef struct amsvrg_verify_report amsvrg_verify_report;

/* Message of the last failed call on this thread; "" if none. */
AMSVRG_API const char* amsvrg_last_error(void);
AMSVRG_API const char* amsvrg_status_name(amsvrg_status status);
AMSVRG_API const char* amsvrg_version(void);

/* Datasets. binary_labels != 0 maps two classes onto {-1, +1} (smaller label
   to -1). scale is "none" or "unit_row_norm"; NULL means "none". */
AMSVRG_API amsvrg_status amsvrg_dataset_load(const char* path, int binary_labels, size_t min_dim,
                                             const char* scale, amsvrg_dataset** out);
AMSVRG_API size_t amsvrg_dataset_size(const amsvrg_dataset* ds);
AMSVRG_API size_t amsvrg_dataset_dim(const amsvrg_dataset* ds);
AMSVRG_API void amsvrg_dataset_free(amsvrg_dataset* ds);

/* Writes a synthetic LIBSVM file; kind is least_squares, logistic or
   multinomial. meta_path may be NULL. */
AMSVRG_API amsvrg_status amsvrg_generate_synthetic(size_t n, size_t d, const char* kind,
                                                   double noise, uint64_t seed,
                                                   const char* path, const char* meta_path);

/* Objectives. The objective keeps its dataset alive. */
AMSVRG_API amsvrg_status amsvrg_objective_create(const amsvrg_dataset* ds, const char* kind,
                                                 double lambda, amsvrg_objective** out);
AMSVRG_API size_t amsvrg_objective_dim(const amsvrg_objective* obj);
AMSVRG_API double amsvrg_objective_smoothness(const amsvrg_objective* obj);
AMSVRG_API amsvrg_status amsvrg_objective_value(const amsvrg_objective* obj, const double* x,
                                                size_t len, double* value);
AMSVRG_API amsvrg_status amsvrg_objective_gradient(const amsvrg_objective* obj, const double* x,
                                                   size_t len, double* grad);
AMSVRG_API void amsvrg_objective_free(amsvrg_objective* obj);

/* Run configuration, set by key. Keys: method, restart, eta, p, q, option, m,
   stage_V, stage_gap, batch, epoch_length, tau, seed, max_stages, max_iters,
   max_evals ("auto" = 100 n), target_gap, fstar ("auto", "none" or a number),
   reference_iters, record_time, tag. */
AMSVRG_API amsvrg_status amsvrg_config_create(amsvrg_config** out);
AMSVRG_API amsvrg_status amsvrg_config_set_string(amsvrg_config* cfg, const char* key,
                                                  const char* value);
AMSVRG_API amsvrg_status amsvrg_config_set_double(amsvrg_config* cfg, const char* key,
                                                  double value);
AMSVRG_API amsvrg_status amsvrg_config_set_int(amsvrg_config* cfg, const char* key,
                                               int64_t value);
AMSVRG_API void amsvrg_config_free(amsvrg_config* cfg);

/* Single run from the origin. */
AMSVRG_API amsvrg_status amsvrg_run(const amsvrg_objective* obj, const amsvrg_config* cfg,
                                    amsvrg_result** out);
AMSVRG_API const char* amsvrg_result_method(const amsvrg_result* res);
AMSVRG_API const char* amsvrg_result_stop_reason(const amsvrg_result* res);
AMSVRG_API double amsvrg_result_final_objective(const amsvrg_result* res);
/* Returns 0 and leaves *gap untouched when no f* was available. */
AMSVRG_API int amsvrg_result_final_gap(const amsvrg_result* res, double* gap);
AMSVRG_API int64_t amsvrg_result_component_calls(const amsvrg_result* res);
AMSVRG_API int64_t amsvrg_result_paper_axis(const amsvrg_result* res);
AMSVRG_API double amsvrg_result_wall_seconds(const amsvrg_result* res);
AMSVRG_API size_t amsvrg_result_trace_length(const amsvrg_result* res);
AMSVRG_API size_t amsvrg_result_warning_count(const amsvrg_result* res);
AMSVRG_API const char* amsvrg_result_warning(const amsvrg_result* res, size_t i);
/* Copies min(len, dim) entries of the final point; returns dim. */
AMSVRG_API size_t amsvrg_result_solution(const amsvrg_result* res, double* x, size_t len);
/* Owned by the result, valid until amsvrg_result_free. */
AMSVRG_API const char* amsvrg_result_summary_json(const amsvrg_result* res);
AMSVRG_API const char* amsvrg_result_trace_csv(const amsvrg_result* res);
AMSVRG_API amsvrg_status amsvrg_result_write_trace(const amsvrg_result* res, const char* path);
AMSVRG_API void amsvrg_result_free(amsvrg_result* res);

/* Comparison of count runs (objs[i], cfgs[i]) under one evaluation-axis budget.
   All objectives must share a dataset. */
AMSVRG_API amsvrg_status amsvrg_compare(const amsvrg_objective* const* objs,
                                        const amsvrg_config* const* cfgs, size_t count,
                                        amsvrg_comparison** out);
AMSVRG_API int64_t amsvrg_comparison_budget(const amsvrg_comparison* cmp);
AMSVRG_API size_t amsvrg_comparison_run_count(const amsvrg_comparison* cmp);
AMSVRG_API const char* amsvrg_comparison_table(const amsvrg_comparison* cmp);
AMSVRG_API const char* amsvrg_comparison_summary_json(const amsvrg_comparison* cmp);
AMSVRG_API const char* amsvrg_comparison_trace_csv(const amsvrg_comparison* cmp);
AMSVRG_API amsvrg_status amsvrg_comparison_write_trace(const amsvrg_comparison* cmp,
                                                       const char* path);
AMSVRG_API void amsvrg_comparison_free(amsvrg_comparison* cmp);

/* Oracle verification suite; scale is "small" or "full". */
AMSVRG_API amsvrg_status amsvrg_verify(const char* scale, uint64_t seed,
                                       amsvrg_verify_report** out);
AMSVRG_API int amsvrg_verify_passed(const amsvrg_verify_report* rep);
AMSVRG_API size_t amsvrg_verify_check_count(const amsvrg_verify_report* rep);
AMSVRG_API const char* amsvrg_verify_check_name(const amsvrg_verify_report* rep, size_t i);
AMSVRG_API int amsvrg_verify_check_passed(const amsvrg_verify_report* rep, size_t i);
AMSVRG_API const char* amsvrg_verify_table(const amsvrg_verify_report* rep);
AMSVRG_API void amsvrg_verify_free(amsvrg_verify_report* rep);

#ifdef __cplusplus
}
#endif

#endif
