/*
 * (C) Copyright 2026 grouplect developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/groups.hpp"
#include "core/scoring.hpp"

namespace grouplect {

/// How the sequential loop treats the budget.
///
/// affordable_only never exceeds the budget: the loop stops once the budget
/// is fully consumed or the best candidate no longer fits.  paper_strict
/// always adds the best candidate and only exits once the running cost has
/// exceeded the budget; the resulting over-budget selection is flagged
/// infeasible.
enum class BudgetMode { affordable_only, paper_strict };

/// Phase-2 stop accounting: stop on the first shadow win (the beaten
/// candidate is not added), or count wins and stop once they reach
/// ceil(fraction * pool size) (candidates keep being added).
enum class StopMode { first_shadow_win, fraction_of_wins };

enum class StopReason { budget_exhausted, shadow_stop, pool_exhausted, infeasible };

const char* to_string(StopReason r);

struct SelectionConfig {
  double budget = 0.0;
  ScoreConfig score;
  double lambda = 0.0;
  BudgetMode budget_mode = BudgetMode::affordable_only;
  StopMode stop_mode = StopMode::first_shadow_win;
  double stop_fraction = 0.05;
  std::uint64_t shadow_seed = 0;

  void validate() const;
};

struct SelectionStep {
  std::size_t feature = 0;
  int phase = 1;                          // 1 = budgeted pass, 2 = zero-cost pass
  double score = 0.0;
  std::optional<double> shadow_max;       // present on phase-2 steps only
  double cumulative_cost = 0.0;
};

struct SelectionTrace {
  std::vector<SelectionStep> steps;
  StopReason stop_reason = StopReason::pool_exhausted;
  std::vector<std::size_t> selected;      // step order, no duplicates
  double total_cost = 0.0;
};

/// Penalized sequential forward selection: each step adds the candidate
/// maximizing score - lambda * incremental cost.  lambda = 0 is the
/// traditional cost-blind method.  Ties resolve to the lowest feature index.
SelectionTrace sfs_penalized(const DiscretizedView& view, const GroupStructure& g,
                             const SelectionConfig& cfg);

/// Smallest penalty weight at which the first selected feature is forced
/// into a cheapest group regardless of relevance: with r_k the empty-set
/// scores and D the minimum positive gap between distinct group costs,
/// (max r - min r) / D scaled up by 1e-6.  Zero when all costs are equal.
double lambda_max(const DiscretizedView& view, const GroupStructure& g, const ScoreConfig& cfg);

/// Two-step selection.  Phase 1 runs cost-blind affordable-only SFS within
/// the budget.  Phase 2 harvests the zero-cost pool: before committing each
/// best candidate, the maximal shadow score over the remaining pool is
/// compared against it, and the stop rule fires when a shadow wins.
/// Phase-2 additions never change the cumulative cost.
SelectionTrace proposed_select(const DiscretizedView& view, const GroupStructure& g,
                               const SelectionConfig& cfg);

struct OracleResult {
  std::vector<std::size_t> subset;
  double mi = 0.0;
  double cost = 0.0;
};

/// Exhaustive maximizer of the plug-in joint MI between all labels and the
/// feature subset over every subset within budget.  Ties prefer smaller
/// subsets, then lexicographically smaller ones.  Refuses p > max_p.
OracleResult exhaustive_oracle(const DiscretizedView& view, const GroupStructure& g,
                               double budget, std::size_t max_p = 15);

/// Plug-in joint MI between all labels and the given feature subset
/// (0 for an empty subset); the objective the oracle maximizes.
double subset_joint_mi(const DiscretizedView& view, std::span<const std::size_t> subset);

/// JSON with fixed key order: steps, stop_reason, selected (names), total_cost.
std::string trace_to_json(const SelectionTrace& trace,
                          std::span<const std::string> feature_names, int indent = 2);

}  // namespace grouplect
