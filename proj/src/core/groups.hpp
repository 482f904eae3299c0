/*
 * (C) Copyright 2026 grouplect developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <span>
#include <string>
#include <vector>

#include "core/dataset.hpp"

namespace grouplect {

/// Partition of the feature indices {0..p-1} into disjoint nonempty groups,
/// each carrying a nonnegative acquisition cost.  Paying a group's cost once
/// unlocks every feature in it.
struct GroupStructure {
  std::vector<std::string> names;                  // K
  std::vector<std::vector<std::size_t>> groups;    // K disjoint index lists
  std::vector<double> costs;                       // K, each >= 0
  std::vector<std::size_t> group_of;               // p, feature -> group index

  std::size_t n_groups() const { return groups.size(); }
  std::size_t n_features() const { return group_of.size(); }

  /// Throws std::invalid_argument unless groups form a partition of {0..p-1}
  /// with nonempty members and nonnegative costs.
  void validate() const;
};

GroupStructure make_group_structure(std::vector<std::string> names,
                                    std::vector<std::vector<std::size_t>> groups,
                                    std::vector<double> costs, std::size_t n_features);

/// Total cost of a subset: each touched group's cost counted once.
double subset_cost(std::span<const std::size_t> subset, const GroupStructure& g);

/// Marginal cost of adding feature k to subset: zero when k's group is
/// already touched, the full group cost otherwise.  Requires k not in subset.
double incremental_cost(std::size_t k, std::span<const std::size_t> subset,
                        const GroupStructure& g);

/// Unselected features whose groups are already paid for.
std::vector<std::size_t> zero_cost_pool(std::span<const std::size_t> subset,
                                        const GroupStructure& g);

/// Manifest schema: [{"name": str, "cost": number >= 0, "features": [str...]}, ...]
/// Feature membership is by name and must cover every dataset feature exactly once.
GroupStructure load_groups(const std::string& manifest_path, const Dataset& d);

void save_groups(const GroupStructure& g, const Dataset& d, const std::string& manifest_path);

}  // namespace grouplect
