/*
 * (C) Copyright 2026 grouplect developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/groups.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "core/common.hpp"

namespace grouplect {

void GroupStructure::validate() const {
  const std::size_t p = group_of.size();
  if (groups.empty()) throw std::invalid_argument("groups: need at least one group");
  if (groups.size() != costs.size() || groups.size() != names.size())
    throw std::invalid_argument("groups: name/group/cost count mismatch");
  std::vector<bool> covered(p, false);
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    if (groups[gi].empty()) throw std::invalid_argument("groups: empty group '" + names[gi] + "'");
    if (!(costs[gi] >= 0.0)) throw std::invalid_argument("groups: negative cost for '" + names[gi] + "'");
    for (std::size_t j : groups[gi]) {
      if (j >= p) throw std::invalid_argument("groups: feature index out of range");
      if (covered[j]) throw std::invalid_argument("groups: feature in two groups");
      covered[j] = true;
      if (group_of[j] != gi) throw std::invalid_argument("groups: inconsistent group_of map");
    }
  }
  for (std::size_t j = 0; j < p; ++j)
    if (!covered[j]) throw std::invalid_argument("groups: uncovered feature index " + std::to_string(j));
}

GroupStructure make_group_structure(std::vector<std::string> names,
                                    std::vector<std::vector<std::size_t>> groups,
                                    std::vector<double> costs, std::size_t n_features) {
  GroupStructure g;
  g.names = std::move(names);
  g.groups = std::move(groups);
  g.costs = std::move(costs);
  g.group_of.assign(n_features, static_cast<std::size_t>(-1));
  for (std::size_t gi = 0; gi < g.groups.size(); ++gi)
    for (std::size_t j : g.groups[gi]) {
      if (j >= n_features) throw std::invalid_argument("groups: feature index out of range");
      if (g.group_of[j] != static_cast<std::size_t>(-1))
        throw std::invalid_argument("groups: feature in two groups");
      g.group_of[j] = gi;
    }
  g.validate();
  return g;
}

double subset_cost(std::span<const std::size_t> subset, const GroupStructure& g) {
  std::vector<bool> touched(g.n_groups(), false);
  double total = 0.0;
  for (std::size_t j : subset) {
    if (j >= g.n_features()) throw std::invalid_argument("subset_cost: feature index out of range");
    const std::size_t gi = g.group_of[j];
    if (!touched[gi]) {
      touched[gi] = true;
      total += g.costs[gi];
    }
  }
  return total;
}

double incremental_cost(std::size_t k, std::span<const std::size_t> subset,
                        const GroupStructure& g) {
  if (k >= g.n_features()) throw std::invalid_argument("incremental_cost: feature index out of range");
  const std::size_t gi = g.group_of[k];
  for (std::size_t j : subset) {
    if (j == k) throw std::invalid_argument("incremental_cost: feature already selected");
    if (j >= g.n_features()) throw std::invalid_argument("incremental_cost: feature index out of range");
  }
  for (std::size_t j : subset)
    if (g.group_of[j] == gi) return 0.0;
  return g.costs[gi];
}

std::vector<std::size_t> zero_cost_pool(std::span<const std::size_t> subset,
                                        const GroupStructure& g) {
  std::vector<bool> touched(g.n_groups(), false);
  std::vector<bool> selected(g.n_features(), false);
  for (std::size_t j : subset) {
    if (j >= g.n_features()) throw std::invalid_argument("zero_cost_pool: feature index out of range");
    touched[g.group_of[j]] = true;
    selected[j] = true;
  }
  std::vector<std::size_t> pool;
  for (std::size_t j = 0; j < g.n_features(); ++j)
    if (!selected[j] && touched[g.group_of[j]]) pool.push_back(j);
  return pool;
}

GroupStructure load_groups(const std::string& manifest_path, const Dataset& d) {
  std::ifstream in(manifest_path);
  if (!in) throw IoError("cannot open '" + manifest_path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(manifest_path + ": invalid JSON: " + e.what());
  }
  if (!j.is_array()) throw ParseError(manifest_path + ": manifest must be a JSON array");

  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> groups;
  std::vector<double> costs;
  std::unordered_set<std::string> seen_names;
  for (const auto& entry : j) {
    if (!entry.is_object() || !entry.contains("name") || !entry.contains("cost") ||
        !entry.contains("features"))
      throw ParseError(manifest_path + ": each group needs name, cost and features");
    const auto name = entry["name"].get<std::string>();
    if (!seen_names.insert(name).second)
      throw ParseError(manifest_path + ": duplicate group name '" + name + "'");
    if (!entry["cost"].is_number())
      throw ParseError(manifest_path + ": cost of '" + name + "' must be a number");
    const double cost = entry["cost"].get<double>();
    if (cost < 0.0) throw ParseError(manifest_path + ": negative cost for group '" + name + "'");
    if (!entry["features"].is_array() || entry["features"].empty())
      throw ParseError(manifest_path + ": group '" + name + "' needs a nonempty feature list");
    std::vector<std::size_t> members;
    for (const auto& f : entry["features"]) {
      const auto fname = f.get<std::string>();
      try {
        members.push_back(d.feature_index(fname));
      } catch (const std::invalid_argument&) {
        throw ParseError(manifest_path + ": unknown feature name '" + fname + "' in group '" + name + "'");
      }
    }
    names.push_back(name);
    groups.push_back(std::move(members));
    costs.push_back(cost);
  }

  try {
    return make_group_structure(std::move(names), std::move(groups), std::move(costs),
                                d.n_features());
  } catch (const std::invalid_argument& e) {
    // Name the offending feature for the common partition violations.
    std::vector<bool> covered(d.n_features(), false);
    std::vector<std::size_t> counts(d.n_features(), 0);
    for (const auto& entry : j)
      for (const auto& f : entry["features"]) counts[d.feature_index(f.get<std::string>())]++;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      if (counts[k] == 0)
        throw ParseError(manifest_path + ": uncovered feature '" + d.feature_names[k] + "'");
      if (counts[k] > 1)
        throw ParseError(manifest_path + ": feature '" + d.feature_names[k] + "' appears in two groups");
    }
    throw ParseError(manifest_path + ": " + e.what());
  }
}

void save_groups(const GroupStructure& g, const Dataset& d, const std::string& manifest_path) {
  g.validate();
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (std::size_t gi = 0; gi < g.n_groups(); ++gi) {
    nlohmann::ordered_json entry;
    entry["name"] = g.names[gi];
    entry["cost"] = g.costs[gi];
    auto feats = nlohmann::ordered_json::array();
    for (std::size_t j : g.groups[gi]) feats.push_back(d.feature_names[j]);
    entry["features"] = feats;
    out.push_back(entry);
  }
  std::ofstream f(manifest_path);
  if (!f) throw IoError("cannot write '" + manifest_path + "'");
  f << out.dump(2) << "\n";
  if (!f.flush()) throw IoError("write failed for '" + manifest_path + "'");
}

}  // namespace grouplect
