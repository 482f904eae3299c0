/*
 * (C) Copyright 2026 grouplect developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/info_theory.hpp"

namespace grouplect {

/// How candidate relevance is scored against the selected set.
///
/// exact_cmi sums, over the label terms, the conditional mutual information
/// of the candidate with each term given the full selected set.  It is the
/// default and what the two-step selection method is built on.
///
/// lower_bound_sum replaces full conditioning with low-order terms: with
/// feature_order 1 the purely marginal sum, with feature_order 2 the
/// JMI-style sum over single selected partners.  label_order 2 swaps single
/// labels for label pairs in either criterion.
enum class ScoreCriterion { lower_bound_sum, exact_cmi };

struct ScoreConfig {
  int feature_order = 2;  // a in {1, 2}; used by lower_bound_sum
  int label_order = 1;    // b in {1, 2}
  ScoreCriterion criterion = ScoreCriterion::exact_cmi;

  void validate(std::size_t n_labels) const;
};

/// Relevance of a candidate column given already selected features.
/// The candidate may be any coded column (a view feature or a shadow).
double score_candidate(const DiscretizedView& view, const ColumnRef& candidate,
                       std::span<const std::size_t> selected, const ScoreConfig& cfg);

/// Overload for a real feature; rejects candidates already in `selected`.
double score_candidate(const DiscretizedView& view, std::size_t feature,
                       std::span<const std::size_t> selected, const ScoreConfig& cfg);

/// One permuted copy per pooled feature.  Permutations preserve each
/// column's marginal exactly and are seeded per (seed, source index), so a
/// pool is reproducible and immutable once built.
struct ShadowPool {
  std::uint64_t seed = 0;
  std::vector<std::size_t> sources;
  std::vector<Codes> columns;
  std::vector<std::int32_t> arities;

  ColumnRef shadow_of(std::size_t feature) const;  // throws if not pooled
};

ShadowPool make_shadow_pool(const DiscretizedView& view,
                            std::span<const std::size_t> features, std::uint64_t seed);

/// Maximum score over the shadows of `remaining`, conditioned on `selected`.
/// Returns -infinity when `remaining` is empty so the stop rule can never
/// fire on an exhausted pool.
double max_shadow_score(const DiscretizedView& view, const ShadowPool& pool,
                        std::span<const std::size_t> remaining,
                        std::span<const std::size_t> selected, const ScoreConfig& cfg);

}  // namespace grouplect
