/*
 * (C) Copyright 2026 grouplect developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 *
 * grouplect C API: cost-constrained multi-label group feature selection.
 *
 * All functions returning gfs_status use out-parameters for results.  On
 * any status other than GFS_OK the out-parameters are untouched and
 * gfs_last_error() describes the failure (thread local).  Handles are
 * opaque and owned by the caller once returned; release them with the
 * matching *_free function.  Strings returned through char** are heap
 * allocated and released with gfs_string_free.  All handles are immutable
 * after creation and safe to share across threads.
 */
#ifndef GROUPLECT_H
#define GROUPLECT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GFS_API __declspec(dllexport)
#else
#define GFS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gfs_status {
  GFS_OK = 0,
  GFS_ERR_INVALID_ARGUMENT = 1, /* bad parameter or violated precondition */
  GFS_ERR_IO = 2,               /* file could not be read or written */
  GFS_ERR_PARSE = 3,            /* file content violates the documented format */
  GFS_ERR_REFUSED = 4,          /* documented size limit would be exceeded */
  GFS_ERR_INTERNAL = 5
} gfs_status;

typedef enum gfs_method {
  GFS_METHOD_SFS = 0,      /* penalized sequential forward selection */
  GFS_METHOD_PROPOSED = 1  /* two-step selection with shadow stop rule */
} gfs_method;

typedef enum gfs_budget_mode {
  GFS_BUDGET_AFFORDABLE_ONLY = 0, /* never exceed the budget */
  GFS_BUDGET_PAPER_STRICT = 1    /* always add, flag infeasible on overshoot */
} gfs_budget_mode;

typedef enum gfs_stop_mode {
  GFS_STOP_FIRST_SHADOW_WIN = 0,
  GFS_STOP_FRACTION_OF_WINS = 1
} gfs_stop_mode;

typedef enum gfs_criterion {
  GFS_CRITERION_CMI = 0,        /* per-label-term CMI given the full selected set */
  GFS_CRITERION_LOWER_BOUND = 1 /* low-order lower-bound sum (orders a, b) */
} gfs_criterion;

typedef enum gfs_stop_reason {
  GFS_STOP_BUDGET_EXHAUSTED = 0,
  GFS_STOP_SHADOW_STOP = 1,
  GFS_STOP_POOL_EXHAUSTED = 2,
  GFS_STOP_INFEASIBLE = 3
} gfs_stop_reason;

typedef struct gfs_dataset gfs_dataset;
typedef struct gfs_groups gfs_groups;
typedef struct gfs_trace gfs_trace;
typedef struct gfs_report gfs_report;
typedef struct gfs_oracle_result gfs_oracle_result;

GFS_API const char* gfs_version(void);

/* Message for the most recent failing call on this thread; never NULL. */
GFS_API const char* gfs_last_error(void);

GFS_API void gfs_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Datasets                                                            */

/* Strict CSV pair: header of unique names, features are reals with '.'
 * decimal point, labels are 0/1 cells, equal row counts. */
GFS_API gfs_status gfs_dataset_load(const char* features_csv, const char* labels_csv,
                                    gfs_dataset** out);

GFS_API gfs_status gfs_dataset_save(const gfs_dataset* d, const char* features_csv,
                                    const char* labels_csv);

/* Synthetic benchmark: five normal features, three sigmoid labels, two
 * corrupted copy columns, three groups of cost 1.  Reproducible per seed. */
GFS_API gfs_status gfs_generate_illustrative(int64_t n_rows, double rho, uint64_t seed,
                                             gfs_dataset** out_data, gfs_groups** out_groups);

/* Deterministic row split; training part takes floor(n * train_fraction). */
GFS_API gfs_status gfs_dataset_split(const gfs_dataset* d, double train_fraction,
                                     uint64_t seed, gfs_dataset** out_train,
                                     gfs_dataset** out_valid);

GFS_API int64_t gfs_dataset_rows(const gfs_dataset* d);
GFS_API int64_t gfs_dataset_features(const gfs_dataset* d);
GFS_API int64_t gfs_dataset_labels(const gfs_dataset* d);
/* Borrowed pointer, valid while the dataset lives; NULL when out of range. */
GFS_API const char* gfs_dataset_feature_name(const gfs_dataset* d, int64_t index);
GFS_API void gfs_dataset_free(gfs_dataset* d);

/* ------------------------------------------------------------------ */
/* Group structure                                                     */

/* Manifest: JSON array of {"name", "cost" >= 0, "features": [names]};
 * must partition the dataset's features. */
GFS_API gfs_status gfs_groups_load(const char* manifest_json, const gfs_dataset* d,
                                   gfs_groups** out);
GFS_API gfs_status gfs_groups_save(const gfs_groups* g, const gfs_dataset* d,
                                   const char* manifest_json);
GFS_API int64_t gfs_groups_count(const gfs_groups* g);

/* Group cost of a feature subset; each touched group counted once. */
GFS_API gfs_status gfs_subset_cost(const gfs_groups* g, const int64_t* features,
                                   size_t count, double* out_cost);
GFS_API void gfs_groups_free(gfs_groups* g);

/* ------------------------------------------------------------------ */
/* Selection                                                           */

typedef struct gfs_select_options {
  gfs_method method;
  double budget;
  double lambda;          /* SFS penalty weight; ignored by the proposed method */
  int use_lambda_max;     /* nonzero: replace lambda with the computed maximum */
  gfs_budget_mode budget_mode;
  gfs_stop_mode stop_mode;
  double stop_fraction;   /* in (0, 1]; used by fraction-of-wins */
  int bins;               /* discretization bins, >= 2 */
  int order_a;            /* lower-bound feature order, 1 or 2 */
  int order_b;            /* label order, 1 or 2 */
  gfs_criterion criterion;
  uint64_t shadow_seed;
} gfs_select_options;

/* Defaults: proposed method, budget 0, lambda 0, affordable-only,
 * first shadow win, fraction 0.05, bins 5, a=2, b=1, CMI criterion. */
GFS_API void gfs_select_options_init(gfs_select_options* opts);

GFS_API gfs_status gfs_select(const gfs_dataset* d, const gfs_groups* g,
                              const gfs_select_options* opts, gfs_trace** out);

/* Penalty weight at which the cheapest group wins the first step. */
GFS_API gfs_status gfs_lambda_max(const gfs_dataset* d, const gfs_groups* g,
                                  const gfs_select_options* opts, double* out);

typedef struct gfs_step_info {
  int64_t feature;
  int phase;            /* 1 or 2 */
  double score;
  int has_shadow_max;   /* phase-2 steps record the shadow comparison */
  double shadow_max;
  double cumulative_cost;
} gfs_step_info;

GFS_API size_t gfs_trace_step_count(const gfs_trace* t);
GFS_API gfs_status gfs_trace_step(const gfs_trace* t, size_t index, gfs_step_info* out);
GFS_API size_t gfs_trace_selected_count(const gfs_trace* t);
GFS_API int64_t gfs_trace_selected_feature(const gfs_trace* t, size_t index);
GFS_API gfs_stop_reason gfs_trace_stop_reason(const gfs_trace* t);
GFS_API double gfs_trace_total_cost(const gfs_trace* t);
/* {"steps": [...], "stop_reason", "selected": [names], "total_cost"} */
GFS_API gfs_status gfs_trace_to_json(const gfs_trace* t, char** out_json);
GFS_API void gfs_trace_free(gfs_trace* t);

/* ------------------------------------------------------------------ */
/* Oracle                                                              */

/* Exhaustive search over feature subsets within budget, maximizing the
 * plug-in joint MI with all labels.  Refuses more than max_p features. */
GFS_API gfs_status gfs_oracle(const gfs_dataset* d, const gfs_groups* g, double budget,
                              int bins, int max_p, gfs_oracle_result** out);
GFS_API size_t gfs_oracle_subset_count(const gfs_oracle_result* r);
GFS_API int64_t gfs_oracle_subset_feature(const gfs_oracle_result* r, size_t index);
GFS_API double gfs_oracle_mi(const gfs_oracle_result* r);
GFS_API double gfs_oracle_cost(const gfs_oracle_result* r);
GFS_API void gfs_oracle_result_free(gfs_oracle_result* r);

/* Plug-in joint MI between all labels and an arbitrary feature subset. */
GFS_API gfs_status gfs_subset_mi(const gfs_dataset* d, const int64_t* features, size_t count,
                                 int bins, double* out_mi);

/* ------------------------------------------------------------------ */
/* Evaluation                                                          */

/* ML-kNN (k neighbours, smoothing s) trained on `train` over the subset,
 * scored on `valid` with the seven multi-label metrics. */
GFS_API gfs_status gfs_evaluate(const gfs_dataset* train, const gfs_dataset* valid,
                                const gfs_groups* g, const int64_t* subset, size_t count,
                                int knn_k, double knn_s, gfs_report** out);

/* Metric names: hamming_loss, ranking_loss, coverage_error, zero_one_loss,
 * subset_accuracy, micro_f1, micro_auc, total_cost. */
GFS_API gfs_status gfs_report_metric(const gfs_report* r, const char* name, double* out);
GFS_API gfs_status gfs_report_to_json(const gfs_report* r, char** out_json);
GFS_API void gfs_report_free(gfs_report* r);

#ifdef __cplusplus
}
#endif

#endif /* GROUPLECT_H */
