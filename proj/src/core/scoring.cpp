/*
 * (C) Copyright 2026 grouplect developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/scoring.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "core/common.hpp"

namespace grouplect {

void ScoreConfig::validate(std::size_t n_labels) const {
  if (feature_order != 1 && feature_order != 2)
    throw std::invalid_argument("score config: feature_order must be 1 or 2");
  if (label_order != 1 && label_order != 2)
    throw std::invalid_argument("score config: label_order must be 1 or 2");
  if (label_order == 2 && n_labels < 2)
    throw std::invalid_argument("score config: label_order 2 needs at least two labels");
}

namespace {

// Label column groupings: singletons for b=1, unordered pairs for b=2.
std::vector<std::vector<ColumnRef>> label_terms(const DiscretizedView& view, int label_order) {
  std::vector<std::vector<ColumnRef>> terms;
  if (label_order == 1) {
    for (std::size_t l = 0; l < view.n_labels; ++l)
      terms.push_back({column_ref(view, view.label_col(l))});
  } else {
    for (std::size_t l = 0; l < view.n_labels; ++l)
      for (std::size_t m = l + 1; m < view.n_labels; ++m)
        terms.push_back({column_ref(view, view.label_col(l)), column_ref(view, view.label_col(m))});
  }
  return terms;
}

}  // namespace

double score_candidate(const DiscretizedView& view, const ColumnRef& candidate,
                       std::span<const std::size_t> selected, const ScoreConfig& cfg) {
  cfg.validate(view.n_labels);
  const ColumnRef cand_arr[] = {candidate};
  const std::span<const ColumnRef> cand(cand_arr);
  const auto terms = label_terms(view, cfg.label_order);

  double total = 0.0;
  if (cfg.criterion == ScoreCriterion::exact_cmi) {
    std::vector<ColumnRef> cond;
    cond.reserve(selected.size());
    for (std::size_t j : selected) cond.push_back(column_ref(view, view.feature_col(j)));
    for (const auto& term : terms)
      total += conditional_mi_refs(cand, term, cond, view.n_rows);
    return total;
  }

  // lower_bound_sum
  if (cfg.feature_order == 1 || selected.empty()) {
    for (const auto& term : terms)
      total += mutual_information_refs(cand, term, view.n_rows);
    return total;
  }
  for (const auto& term : terms) {
    for (std::size_t j : selected) {
      const ColumnRef cond_arr[] = {column_ref(view, view.feature_col(j))};
      total += conditional_mi_refs(cand, term, cond_arr, view.n_rows);
    }
  }
  return total;
}

double score_candidate(const DiscretizedView& view, std::size_t feature,
                       std::span<const std::size_t> selected, const ScoreConfig& cfg) {
  if (feature >= view.n_features)
    throw std::invalid_argument("score_candidate: feature index out of range");
  if (std::find(selected.begin(), selected.end(), feature) != selected.end())
    throw std::invalid_argument("score_candidate: candidate already selected");
  return score_candidate(view, column_ref(view, view.feature_col(feature)), selected, cfg);
}

ColumnRef ShadowPool::shadow_of(std::size_t feature) const {
  for (std::size_t i = 0; i < sources.size(); ++i)
    if (sources[i] == feature) return {std::span<const std::int32_t>(columns[i]), arities[i]};
  throw std::invalid_argument("shadow pool: feature has no shadow");
}

ShadowPool make_shadow_pool(const DiscretizedView& view,
                            std::span<const std::size_t> features, std::uint64_t seed) {
  if (features.empty()) throw std::invalid_argument("make_shadow_pool: empty feature set");
  ShadowPool pool;
  pool.seed = seed;
  for (std::size_t j : features) {
    if (j >= view.n_features)
      throw std::invalid_argument("make_shadow_pool: feature index out of range");
    Codes shadow = view.columns[view.feature_col(j)];
    Rng rng(mix64(seed) ^ mix64(static_cast<std::uint64_t>(j) + 0x517cc1b727220a95ULL));
    rng.shuffle(shadow.data(), shadow.size());
    pool.sources.push_back(j);
    pool.arities.push_back(view.arity[view.feature_col(j)]);
    pool.columns.push_back(std::move(shadow));
  }
  return pool;
}

double max_shadow_score(const DiscretizedView& view, const ShadowPool& pool,
                        std::span<const std::size_t> remaining,
                        std::span<const std::size_t> selected, const ScoreConfig& cfg) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j : remaining)
    best = std::max(best, score_candidate(view, pool.shadow_of(j), selected, cfg));
  return best;
}

}  // namespace grouplect
