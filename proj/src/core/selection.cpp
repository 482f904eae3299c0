/*
 * (C) Copyright 2026 grouplect developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "core/common.hpp"

namespace grouplect {

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::budget_exhausted: return "budget_exhausted";
    case StopReason::shadow_stop: return "shadow_stop";
    case StopReason::pool_exhausted: return "pool_exhausted";
    case StopReason::infeasible: return "infeasible";
  }
  return "unknown";
}

void SelectionConfig::validate() const {
  if (!(budget >= 0.0)) throw std::invalid_argument("selection config: budget must be >= 0");
  if (!(lambda >= 0.0)) throw std::invalid_argument("selection config: lambda must be >= 0");
  if (stop_mode == StopMode::fraction_of_wins &&
      !(stop_fraction > 0.0 && stop_fraction <= 1.0))
    throw std::invalid_argument("selection config: stop_fraction must be in (0, 1]");
}

namespace {

struct Candidate {
  std::size_t feature = 0;
  double value = -std::numeric_limits<double>::infinity();
  bool valid = false;
};

// Deterministic argmax: strictly greater wins, ties go to the lowest index.
void consider(Candidate& best, std::size_t feature, double value) {
  if (!best.valid || value > best.value) {
    best = {feature, value, true};
  }
}

std::vector<std::size_t> all_features_except(std::size_t p,
                                             const std::vector<std::size_t>& taken) {
  std::vector<bool> in(p, false);
  for (std::size_t j : taken) in[j] = true;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < p; ++j)
    if (!in[j]) out.push_back(j);
  return out;
}

}  // namespace

SelectionTrace sfs_penalized(const DiscretizedView& view, const GroupStructure& g,
                             const SelectionConfig& cfg) {
  cfg.validate();
  cfg.score.validate(view.n_labels);
  if (g.n_features() != view.n_features)
    throw std::invalid_argument("sfs_penalized: group structure does not match view");

  SelectionTrace trace;
  const std::size_t p = view.n_features;
  double cost_so_far = 0.0;

  while (true) {
    const auto remaining = all_features_except(p, trace.selected);
    if (remaining.empty()) {
      trace.stop_reason = StopReason::pool_exhausted;
      break;
    }
    if (cfg.budget_mode == BudgetMode::affordable_only && cost_so_far >= cfg.budget) {
      trace.stop_reason = StopReason::budget_exhausted;
      break;
    }

    Candidate best;
    for (std::size_t k : remaining) {
      const double inc = incremental_cost(k, trace.selected, g);
      const double penalized = score_candidate(view, k, trace.selected, cfg.score) -
                               cfg.lambda * inc;
      consider(best, k, penalized);
    }

    const double inc = incremental_cost(best.feature, trace.selected, g);
    if (cfg.budget_mode == BudgetMode::affordable_only &&
        cost_so_far + inc > cfg.budget) {
      trace.stop_reason = StopReason::budget_exhausted;
      break;
    }

    cost_so_far += inc;
    trace.selected.push_back(best.feature);
    trace.steps.push_back({best.feature, 1, best.value, std::nullopt, cost_so_far});

    if (cfg.budget_mode == BudgetMode::paper_strict && cost_so_far > cfg.budget) {
      trace.stop_reason = StopReason::infeasible;
      break;
    }
  }

  trace.total_cost = cost_so_far;
  return trace;
}

double lambda_max(const DiscretizedView& view, const GroupStructure& g,
                  const ScoreConfig& cfg) {
  cfg.validate(view.n_labels);
  if (g.n_features() != view.n_features)
    throw std::invalid_argument("lambda_max: group structure does not match view");

  std::vector<double> distinct(g.costs);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() < 2) return 0.0;

  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < distinct.size(); ++i)
    min_gap = std::min(min_gap, distinct[i] - distinct[i - 1]);

  double r_min = std::numeric_limits<double>::infinity();
  double r_max = -std::numeric_limits<double>::infinity();
  const std::span<const std::size_t> empty;
  for (std::size_t k = 0; k < view.n_features; ++k) {
    const double r = score_candidate(view, k, empty, cfg);
    r_min = std::min(r_min, r);
    r_max = std::max(r_max, r);
  }
  return (r_max - r_min) / min_gap * (1.0 + 1e-6);
}

SelectionTrace proposed_select(const DiscretizedView& view, const GroupStructure& g,
                               const SelectionConfig& cfg) {
  cfg.validate();
  cfg.score.validate(view.n_labels);

  // Phase 1: cost-blind forward selection, never exceeding the budget.
  SelectionConfig phase1 = cfg;
  phase1.lambda = 0.0;
  phase1.budget_mode = BudgetMode::affordable_only;
  SelectionTrace trace = sfs_penalized(view, g, phase1);

  const auto pool_features = zero_cost_pool(trace.selected, g);
  if (pool_features.empty()) {
    trace.stop_reason = StopReason::pool_exhausted;
    return trace;
  }

  const ShadowPool shadows = make_shadow_pool(view, pool_features, cfg.shadow_seed);
  const auto win_threshold = static_cast<std::size_t>(
      std::ceil(cfg.stop_fraction * static_cast<double>(pool_features.size())));
  std::size_t wins = 0;

  std::vector<std::size_t> picked;  // phase-2 additions
  while (true) {
    std::vector<std::size_t> remaining;
    for (std::size_t j : pool_features)
      if (std::find(picked.begin(), picked.end(), j) == picked.end()) remaining.push_back(j);
    if (remaining.empty()) {
      trace.stop_reason = StopReason::pool_exhausted;
      break;
    }

    Candidate best;
    for (std::size_t k : remaining)
      consider(best, k, score_candidate(view, k, trace.selected, cfg.score));
    const double shadow_best =
        max_shadow_score(view, shadows, remaining, trace.selected, cfg.score);

    const bool shadow_won = shadow_best > best.value;
    if (shadow_won && cfg.stop_mode == StopMode::first_shadow_win) {
      trace.stop_reason = StopReason::shadow_stop;
      break;
    }

    // Zero cost by construction of the pool.
    trace.selected.push_back(best.feature);
    picked.push_back(best.feature);
    trace.steps.push_back({best.feature, 2, best.value, shadow_best, trace.total_cost});

    if (shadow_won) {
      ++wins;
      if (wins >= win_threshold) {
        trace.stop_reason = StopReason::shadow_stop;
        break;
      }
    }
  }
  return trace;
}

double subset_joint_mi(const DiscretizedView& view, std::span<const std::size_t> subset) {
  if (subset.empty()) return 0.0;
  std::vector<std::size_t> label_cols(view.n_labels);
  for (std::size_t l = 0; l < view.n_labels; ++l) label_cols[l] = view.label_col(l);
  std::vector<std::size_t> feature_cols;
  feature_cols.reserve(subset.size());
  for (std::size_t j : subset) feature_cols.push_back(view.feature_col(j));
  return mutual_information(view, label_cols, feature_cols);
}

OracleResult exhaustive_oracle(const DiscretizedView& view, const GroupStructure& g,
                               double budget, std::size_t max_p) {
  if (!(budget >= 0.0)) throw std::invalid_argument("exhaustive_oracle: budget must be >= 0");
  if (g.n_features() != view.n_features)
    throw std::invalid_argument("exhaustive_oracle: group structure does not match view");
  const std::size_t p = view.n_features;
  if (p > max_p)
    throw RefusedError("exhaustive_oracle: refusing " + std::to_string(p) + " features (limit " +
                       std::to_string(max_p) + "); the search is exponential in p");

  OracleResult best;  // empty subset: mi 0, cost 0, always feasible
  std::vector<std::size_t> subset;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << p); ++mask) {
    subset.clear();
    for (std::size_t j = 0; j < p; ++j)
      if (mask & (std::uint64_t{1} << j)) subset.push_back(j);
    const double cost = subset_cost(subset, g);
    if (cost > budget) continue;
    const double mi = subset_joint_mi(view, subset);
    const bool better =
        mi > best.mi ||
        (mi == best.mi && (subset.size() < best.subset.size() ||
                           (subset.size() == best.subset.size() &&
                            std::lexicographical_compare(subset.begin(), subset.end(),
                                                         best.subset.begin(), best.subset.end()))));
    if (better) best = {subset, mi, cost};
  }
  return best;
}

std::string trace_to_json(const SelectionTrace& trace,
                          std::span<const std::string> feature_names, int indent) {
  nlohmann::ordered_json out;
  auto steps = nlohmann::ordered_json::array();
  for (const auto& s : trace.steps) {
    nlohmann::ordered_json step;
    step["feature"] = feature_names[s.feature];
    step["phase"] = s.phase;
    step["score"] = s.score;
    if (s.shadow_max) step["shadow_max"] = *s.shadow_max;
    step["cum_cost"] = s.cumulative_cost;
    steps.push_back(step);
  }
  out["steps"] = steps;
  out["stop_reason"] = to_string(trace.stop_reason);
  auto names = nlohmann::ordered_json::array();
  for (std::size_t j : trace.selected) names.push_back(feature_names[j]);
  out["selected"] = names;
  out["total_cost"] = trace.total_cost;
  return out.dump(indent);
}

}  // namespace grouplect
