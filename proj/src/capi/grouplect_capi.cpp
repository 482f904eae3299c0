/*
 * (C) Copyright 2026 grouplect developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "grouplect.h"

#include <cstring>
#include <string>

#include "core/common.hpp"
#include "core/dataset.hpp"
#include "core/evaluate.hpp"
#include "core/groups.hpp"
#include "core/info_theory.hpp"
#include "core/metrics.hpp"
#include "core/selection.hpp"
#include "core/synthetic.hpp"

using namespace grouplect;

struct gfs_dataset {
  Dataset data;
};
struct gfs_groups {
  GroupStructure groups;
};
struct gfs_trace {
  SelectionTrace trace;
  std::vector<std::string> feature_names;
};
struct gfs_report {
  EvalReport report;
};
struct gfs_oracle_result {
  OracleResult result;
};

namespace {

thread_local std::string t_last_error = "no error";

void set_error(const std::string& msg) { t_last_error = msg; }

template <typename Fn>
gfs_status guarded(Fn&& fn) {
  try {
    fn();
    return GFS_OK;
  } catch (const IoError& e) {
    set_error(e.what());
    return GFS_ERR_IO;
  } catch (const ParseError& e) {
    set_error(e.what());
    return GFS_ERR_PARSE;
  } catch (const RefusedError& e) {
    set_error(e.what());
    return GFS_ERR_REFUSED;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return GFS_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return GFS_ERR_INTERNAL;
  }
}

gfs_status require(bool ok, const char* msg) {
  if (ok) return GFS_OK;
  set_error(msg);
  return GFS_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::size_t> to_indices(const int64_t* features, size_t count, std::size_t p) {
  std::vector<std::size_t> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    if (features[i] < 0 || static_cast<std::size_t>(features[i]) >= p)
      throw std::invalid_argument("feature index out of range");
    out.push_back(static_cast<std::size_t>(features[i]));
  }
  return out;
}

SelectionConfig to_selection_config(const gfs_select_options& o) {
  SelectionConfig cfg;
  cfg.budget = o.budget;
  cfg.lambda = o.lambda;
  cfg.budget_mode = o.budget_mode == GFS_BUDGET_PAPER_STRICT ? BudgetMode::paper_strict
                                                             : BudgetMode::affordable_only;
  cfg.stop_mode = o.stop_mode == GFS_STOP_FRACTION_OF_WINS ? StopMode::fraction_of_wins
                                                           : StopMode::first_shadow_win;
  cfg.stop_fraction = o.stop_fraction;
  cfg.shadow_seed = o.shadow_seed;
  cfg.score.feature_order = o.order_a;
  cfg.score.label_order = o.order_b;
  cfg.score.criterion = o.criterion == GFS_CRITERION_LOWER_BOUND
                            ? ScoreCriterion::lower_bound_sum
                            : ScoreCriterion::exact_cmi;
  return cfg;
}

}  // namespace

extern "C" {

const char* gfs_version(void) { return kVersion; }

const char* gfs_last_error(void) { return t_last_error.c_str(); }

void gfs_string_free(char* s) { delete[] s; }

gfs_status gfs_dataset_load(const char* features_csv, const char* labels_csv,
                            gfs_dataset** out) {
  if (auto st = require(features_csv && labels_csv && out, "gfs_dataset_load: null argument"))
    return st;
  return guarded([&] { *out = new gfs_dataset{load_dataset(features_csv, labels_csv)}; });
}

gfs_status gfs_dataset_save(const gfs_dataset* d, const char* features_csv,
                            const char* labels_csv) {
  if (auto st = require(d && features_csv && labels_csv, "gfs_dataset_save: null argument"))
    return st;
  return guarded([&] { save_dataset(d->data, features_csv, labels_csv); });
}

gfs_status gfs_generate_illustrative(int64_t n_rows, double rho, uint64_t seed,
                                     gfs_dataset** out_data, gfs_groups** out_groups) {
  if (auto st = require(out_data && out_groups, "gfs_generate_illustrative: null argument"))
    return st;
  if (auto st = require(n_rows >= 1, "gfs_generate_illustrative: n_rows must be positive"))
    return st;
  return guarded([&] {
    auto [data, groups] = generate_illustrative(static_cast<std::size_t>(n_rows), rho, seed);
    *out_data = new gfs_dataset{std::move(data)};
    *out_groups = new gfs_groups{std::move(groups)};
  });
}

gfs_status gfs_dataset_split(const gfs_dataset* d, double train_fraction, uint64_t seed,
                             gfs_dataset** out_train, gfs_dataset** out_valid) {
  if (auto st = require(d && out_train && out_valid, "gfs_dataset_split: null argument"))
    return st;
  return guarded([&] {
    auto [train, valid] = train_valid_split(d->data, train_fraction, seed);
    *out_train = new gfs_dataset{std::move(train)};
    *out_valid = new gfs_dataset{std::move(valid)};
  });
}

int64_t gfs_dataset_rows(const gfs_dataset* d) {
  return d ? static_cast<int64_t>(d->data.n_rows()) : 0;
}
int64_t gfs_dataset_features(const gfs_dataset* d) {
  return d ? static_cast<int64_t>(d->data.n_features()) : 0;
}
int64_t gfs_dataset_labels(const gfs_dataset* d) {
  return d ? static_cast<int64_t>(d->data.n_labels()) : 0;
}
const char* gfs_dataset_feature_name(const gfs_dataset* d, int64_t index) {
  if (!d || index < 0 || static_cast<std::size_t>(index) >= d->data.n_features()) return nullptr;
  return d->data.feature_names[static_cast<std::size_t>(index)].c_str();
}
void gfs_dataset_free(gfs_dataset* d) { delete d; }

gfs_status gfs_groups_load(const char* manifest_json, const gfs_dataset* d, gfs_groups** out) {
  if (auto st = require(manifest_json && d && out, "gfs_groups_load: null argument")) return st;
  return guarded([&] { *out = new gfs_groups{load_groups(manifest_json, d->data)}; });
}

gfs_status gfs_groups_save(const gfs_groups* g, const gfs_dataset* d,
                           const char* manifest_json) {
  if (auto st = require(g && d && manifest_json, "gfs_groups_save: null argument")) return st;
  return guarded([&] { save_groups(g->groups, d->data, manifest_json); });
}

int64_t gfs_groups_count(const gfs_groups* g) {
  return g ? static_cast<int64_t>(g->groups.n_groups()) : 0;
}

gfs_status gfs_subset_cost(const gfs_groups* g, const int64_t* features, size_t count,
                           double* out_cost) {
  if (auto st = require(g && out_cost && (features || count == 0), "gfs_subset_cost: null argument"))
    return st;
  return guarded([&] {
    const auto idx = to_indices(features, count, g->groups.n_features());
    *out_cost = subset_cost(idx, g->groups);
  });
}

void gfs_groups_free(gfs_groups* g) { delete g; }

void gfs_select_options_init(gfs_select_options* opts) {
  if (!opts) return;
  opts->method = GFS_METHOD_PROPOSED;
  opts->budget = 0.0;
  opts->lambda = 0.0;
  opts->use_lambda_max = 0;
  opts->budget_mode = GFS_BUDGET_AFFORDABLE_ONLY;
  opts->stop_mode = GFS_STOP_FIRST_SHADOW_WIN;
  opts->stop_fraction = 0.05;
  opts->bins = 5;
  opts->order_a = 2;
  opts->order_b = 1;
  opts->criterion = GFS_CRITERION_CMI;
  opts->shadow_seed = 0;
}

gfs_status gfs_select(const gfs_dataset* d, const gfs_groups* g,
                      const gfs_select_options* opts, gfs_trace** out) {
  if (auto st = require(d && g && opts && out, "gfs_select: null argument")) return st;
  return guarded([&] {
    const DiscretizedView view = discretize(d->data, opts->bins);
    SelectionConfig cfg = to_selection_config(*opts);
    if (opts->use_lambda_max) cfg.lambda = lambda_max(view, g->groups, cfg.score);
    const SelectionTrace trace = opts->method == GFS_METHOD_PROPOSED
                                     ? proposed_select(view, g->groups, cfg)
                                     : sfs_penalized(view, g->groups, cfg);
    *out = new gfs_trace{trace, d->data.feature_names};
  });
}

gfs_status gfs_lambda_max(const gfs_dataset* d, const gfs_groups* g,
                          const gfs_select_options* opts, double* out) {
  if (auto st = require(d && g && opts && out, "gfs_lambda_max: null argument")) return st;
  return guarded([&] {
    const DiscretizedView view = discretize(d->data, opts->bins);
    *out = lambda_max(view, g->groups, to_selection_config(*opts).score);
  });
}

size_t gfs_trace_step_count(const gfs_trace* t) { return t ? t->trace.steps.size() : 0; }

gfs_status gfs_trace_step(const gfs_trace* t, size_t index, gfs_step_info* out) {
  if (auto st = require(t && out, "gfs_trace_step: null argument")) return st;
  if (auto st = require(index < t->trace.steps.size(), "gfs_trace_step: index out of range"))
    return st;
  const SelectionStep& s = t->trace.steps[index];
  out->feature = static_cast<int64_t>(s.feature);
  out->phase = s.phase;
  out->score = s.score;
  out->has_shadow_max = s.shadow_max.has_value() ? 1 : 0;
  out->shadow_max = s.shadow_max.value_or(0.0);
  out->cumulative_cost = s.cumulative_cost;
  return GFS_OK;
}

size_t gfs_trace_selected_count(const gfs_trace* t) { return t ? t->trace.selected.size() : 0; }

int64_t gfs_trace_selected_feature(const gfs_trace* t, size_t index) {
  if (!t || index >= t->trace.selected.size()) return -1;
  return static_cast<int64_t>(t->trace.selected[index]);
}

gfs_stop_reason gfs_trace_stop_reason(const gfs_trace* t) {
  if (!t) return GFS_STOP_POOL_EXHAUSTED;
  switch (t->trace.stop_reason) {
    case StopReason::budget_exhausted: return GFS_STOP_BUDGET_EXHAUSTED;
    case StopReason::shadow_stop: return GFS_STOP_SHADOW_STOP;
    case StopReason::pool_exhausted: return GFS_STOP_POOL_EXHAUSTED;
    case StopReason::infeasible: return GFS_STOP_INFEASIBLE;
  }
  return GFS_STOP_POOL_EXHAUSTED;
}

double gfs_trace_total_cost(const gfs_trace* t) { return t ? t->trace.total_cost : 0.0; }

gfs_status gfs_trace_to_json(const gfs_trace* t, char** out_json) {
  if (auto st = require(t && out_json, "gfs_trace_to_json: null argument")) return st;
  return guarded([&] { *out_json = dup_string(trace_to_json(t->trace, t->feature_names)); });
}

void gfs_trace_free(gfs_trace* t) { delete t; }

gfs_status gfs_oracle(const gfs_dataset* d, const gfs_groups* g, double budget, int bins,
                      int max_p, gfs_oracle_result** out) {
  if (auto st = require(d && g && out, "gfs_oracle: null argument")) return st;
  if (auto st = require(max_p >= 1, "gfs_oracle: max_p must be positive")) return st;
  return guarded([&] {
    const DiscretizedView view = discretize(d->data, bins);
    *out = new gfs_oracle_result{
        exhaustive_oracle(view, g->groups, budget, static_cast<std::size_t>(max_p))};
  });
}

size_t gfs_oracle_subset_count(const gfs_oracle_result* r) {
  return r ? r->result.subset.size() : 0;
}
int64_t gfs_oracle_subset_feature(const gfs_oracle_result* r, size_t index) {
  if (!r || index >= r->result.subset.size()) return -1;
  return static_cast<int64_t>(r->result.subset[index]);
}
double gfs_oracle_mi(const gfs_oracle_result* r) { return r ? r->result.mi : 0.0; }
double gfs_oracle_cost(const gfs_oracle_result* r) { return r ? r->result.cost : 0.0; }
void gfs_oracle_result_free(gfs_oracle_result* r) { delete r; }

gfs_status gfs_subset_mi(const gfs_dataset* d, const int64_t* features, size_t count,
                         int bins, double* out_mi) {
  if (auto st = require(d && out_mi && (features || count == 0), "gfs_subset_mi: null argument"))
    return st;
  return guarded([&] {
    const DiscretizedView view = discretize(d->data, bins);
    const auto idx = to_indices(features, count, d->data.n_features());
    *out_mi = subset_joint_mi(view, idx);
  });
}

gfs_status gfs_evaluate(const gfs_dataset* train, const gfs_dataset* valid,
                        const gfs_groups* g, const int64_t* subset, size_t count, int knn_k,
                        double knn_s, gfs_report** out) {
  if (auto st = require(train && valid && g && subset && out, "gfs_evaluate: null argument"))
    return st;
  return guarded([&] {
    const auto idx = to_indices(subset, count, train->data.n_features());
    *out = new gfs_report{
        evaluate_subset(train->data, valid->data, idx, g->groups, knn_k, knn_s)};
  });
}

gfs_status gfs_report_metric(const gfs_report* r, const char* name, double* out) {
  if (auto st = require(r && name && out, "gfs_report_metric: null argument")) return st;
  const std::string key(name);
  const EvalReport& rep = r->report;
  if (key == "hamming_loss") *out = rep.hamming_loss;
  else if (key == "ranking_loss") *out = rep.ranking_loss;
  else if (key == "coverage_error") *out = rep.coverage_error;
  else if (key == "zero_one_loss") *out = rep.zero_one_loss;
  else if (key == "subset_accuracy") *out = rep.subset_accuracy;
  else if (key == "micro_f1") *out = rep.micro_f1;
  else if (key == "micro_auc") *out = rep.micro_auc;
  else if (key == "total_cost") *out = rep.total_cost;
  else {
    set_error("gfs_report_metric: unknown metric '" + key + "'");
    return GFS_ERR_INVALID_ARGUMENT;
  }
  return GFS_OK;
}

gfs_status gfs_report_to_json(const gfs_report* r, char** out_json) {
  if (auto st = require(r && out_json, "gfs_report_to_json: null argument")) return st;
  return guarded([&] { *out_json = dup_string(report_to_json(r->report)); });
}

void gfs_report_free(gfs_report* r) { delete r; }

}  // extern "C"
