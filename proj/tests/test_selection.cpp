#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "core/common.hpp"
#include "core/selection.hpp"
#include "core/synthetic.hpp"

using namespace grouplect;

namespace {

Dataset coded_dataset(const std::vector<std::vector<int>>& feature_cols,
                      const std::vector<std::vector<std::uint8_t>>& label_cols) {
  Dataset d;
  for (std::size_t j = 0; j < feature_cols.size(); ++j) {
    d.features.emplace_back(feature_cols[j].begin(), feature_cols[j].end());
    d.feature_names.push_back("f" + std::to_string(j));
  }
  for (std::size_t l = 0; l < label_cols.size(); ++l) {
    d.labels.push_back(label_cols[l]);
    d.label_names.push_back("y" + std::to_string(l));
  }
  return d;
}

// Random instance for property tests: continuous features, labels driven by
// a couple of them, random group partition and costs.
struct Instance {
  Dataset data;
  GroupStructure groups;
};

Instance random_instance(Rng& rng, std::size_t max_p = 10) {
  const std::size_t n = 40 + rng.uniform_below(80);
  const std::size_t p = 3 + rng.uniform_below(max_p - 2);
  const std::size_t q = 1 + rng.uniform_below(3);

  Dataset d;
  for (std::size_t j = 0; j < p; ++j) {
    std::vector<double> col(n);
    for (double& v : col) v = rng.normal();
    d.features.push_back(std::move(col));
    d.feature_names.push_back("f" + std::to_string(j));
  }
  for (std::size_t l = 0; l < q; ++l) {
    const std::size_t src = rng.uniform_below(p);
    const double coef = 0.5 + 2.5 * rng.uniform();
    std::vector<std::uint8_t> col(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double s = coef * d.features[src][i];
      col[i] = rng.uniform() < 1.0 / (1.0 + std::exp(-s)) ? 1 : 0;
    }
    d.labels.push_back(std::move(col));
    d.label_names.push_back("y" + std::to_string(l));
  }

  // Random partition into 2..p groups.
  const std::size_t k_groups = 2 + rng.uniform_below(p - 1);
  std::vector<std::size_t> order(p);
  for (std::size_t j = 0; j < p; ++j) order[j] = j;
  rng.shuffle(order.data(), order.size());
  std::vector<std::vector<std::size_t>> members(k_groups);
  for (std::size_t j = 0; j < p; ++j) members[j % k_groups].push_back(order[j]);
  std::vector<double> costs(k_groups);
  std::vector<std::string> names(k_groups);
  for (std::size_t gi = 0; gi < k_groups; ++gi) {
    std::sort(members[gi].begin(), members[gi].end());
    costs[gi] = 0.5 + 2.5 * rng.uniform();
    names[gi] = "g" + std::to_string(gi);
  }
  return {std::move(d), make_group_structure(std::move(names), std::move(members),
                                             std::move(costs), p)};
}

std::set<std::size_t> as_set(const std::vector<std::size_t>& v) {
  return {v.begin(), v.end()};
}

double total_group_cost(const GroupStructure& g) {
  double total = 0.0;
  for (double c : g.costs) total += c;
  return total;
}

}  // namespace

TEST_CASE("sfs on a controlled fixture follows score order within budget") {
  // f0 mirrors the label, f1 is a weaker copy, f2 is noise.
  const Dataset d = coded_dataset(
      {{0, 0, 1, 1, 0, 0, 1, 1}, {0, 0, 1, 0, 0, 1, 1, 1}, {0, 1, 0, 1, 0, 1, 0, 1}},
      {{0, 0, 1, 1, 0, 0, 1, 1}});
  const GroupStructure g =
      make_group_structure({"a", "b", "c"}, {{0}, {1}, {2}}, {1.0, 1.0, 1.0}, 3);
  const DiscretizedView v = discretize(d, 5);

  SelectionConfig cfg;
  cfg.budget = 2.0;
  const SelectionTrace t = sfs_penalized(v, g, cfg);
  REQUIRE(t.steps.size() == 2);
  CHECK(t.selected[0] == 0);  // perfect predictor first
  CHECK(t.stop_reason == StopReason::budget_exhausted);
  CHECK(t.total_cost == 2.0);
  for (const auto& s : t.steps) CHECK(s.phase == 1);
  CHECK(!t.steps[0].shadow_max.has_value());
}

TEST_CASE("sfs budget saturation stops before zero-cost leftovers") {
  // Both features share one group; selecting the first consumes the budget
  // exactly, and the baseline must not harvest the now-free second feature.
  const Dataset d = coded_dataset({{0, 0, 1, 1}, {0, 1, 0, 1}}, {{0, 0, 1, 1}});
  const GroupStructure g = make_group_structure({"a"}, {{0, 1}}, {1.0}, 2);
  const DiscretizedView v = discretize(d, 5);

  SelectionConfig cfg;
  cfg.budget = 1.0;
  const SelectionTrace t = sfs_penalized(v, g, cfg);
  CHECK(t.selected == std::vector<std::size_t>{0});
  CHECK(t.stop_reason == StopReason::budget_exhausted);
}

TEST_CASE("sfs paper_strict overshoots and flags infeasible") {
  const auto [d, g] = generate_illustrative(400, 0.2, 3);
  const DiscretizedView v = discretize(d, 5);

  SelectionConfig cfg;
  cfg.budget = 0.5;  // tighter than any group cost
  cfg.budget_mode = BudgetMode::paper_strict;
  const SelectionTrace t = sfs_penalized(v, g, cfg);
  CHECK(t.stop_reason == StopReason::infeasible);
  CHECK(t.total_cost > cfg.budget);
  CHECK(!t.selected.empty());

  cfg.budget_mode = BudgetMode::affordable_only;
  const SelectionTrace safe = sfs_penalized(v, g, cfg);
  CHECK(safe.selected.empty());
  CHECK(safe.stop_reason == StopReason::budget_exhausted);
}

TEST_CASE("paper_strict with a generous budget selects everything feasibly") {
  const auto [d, g] = generate_illustrative(300, 0.2, 5);
  const DiscretizedView v = discretize(d, 5);
  SelectionConfig cfg;
  cfg.budget = 100.0;
  cfg.budget_mode = BudgetMode::paper_strict;
  const SelectionTrace t = sfs_penalized(v, g, cfg);
  CHECK(t.selected.size() == 5);
  CHECK(t.stop_reason == StopReason::pool_exhausted);
}

TEST_CASE("lambda_max on the two-feature fixture") {
  // Cheap constant feature (score 0) versus an expensive perfect one
  // (score 1 bit); costs 1 and 2.
  const Dataset d = coded_dataset({{5, 5, 5, 5}, {0, 0, 1, 1}}, {{0, 0, 1, 1}});
  const GroupStructure g = make_group_structure({"cheap", "dear"}, {{0}, {1}}, {1.0, 2.0}, 2);
  const DiscretizedView v = discretize(d, 5);

  const double lm = lambda_max(v, g, ScoreConfig{});
  CHECK(lm == doctest::Approx(1.0 * (1.0 + 1e-6)).epsilon(1e-12));

  // At lambda_max the cheap feature's penalized score strictly dominates.
  CHECK(0.0 - lm * 1.0 > 1.0 - lm * 2.0);

  SelectionConfig cfg;
  cfg.budget = 10.0;
  cfg.lambda = lm;
  const SelectionTrace t = sfs_penalized(v, g, cfg);
  REQUIRE(!t.selected.empty());
  CHECK(t.selected[0] == 0);
}

TEST_CASE("lambda_max is zero when all group costs are equal") {
  const auto [d, g] = generate_illustrative(200, 0.2, 7);
  const DiscretizedView v = discretize(d, 5);
  CHECK(lambda_max(v, g, ScoreConfig{}) == 0.0);
}

TEST_CASE("lambda_max forces a cheapest group first over random instances") {
  Rng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    Instance inst = random_instance(rng);
    // Ensure at least two distinct costs.
    if (inst.groups.costs[0] == inst.groups.costs[1]) inst.groups.costs[1] += 0.75;
    const DiscretizedView v = discretize(inst.data, 5);
    const double lm = lambda_max(v, inst.groups, ScoreConfig{});

    SelectionConfig cfg;
    cfg.budget = 1000.0;
    cfg.lambda = lm;
    const SelectionTrace t = sfs_penalized(v, inst.groups, cfg);
    REQUIRE(!t.selected.empty());
    const double min_cost =
        *std::min_element(inst.groups.costs.begin(), inst.groups.costs.end());
    CHECK(inst.groups.costs[inst.groups.group_of[t.selected[0]]] == min_cost);
  }
}

TEST_CASE("proposed and sfs share the phase-1 prefix at lambda 0") {
  const auto [d, g] = generate_illustrative(1200, 0.2, 11);
  const DiscretizedView v = discretize(d, 5);
  SelectionConfig cfg;
  cfg.budget = 2.0;
  cfg.shadow_seed = 5;

  const SelectionTrace sfs = sfs_penalized(v, g, cfg);
  const SelectionTrace prop = proposed_select(v, g, cfg);
  REQUIRE(prop.steps.size() >= sfs.steps.size());
  for (std::size_t i = 0; i < sfs.steps.size(); ++i) {
    CHECK(prop.steps[i].feature == sfs.steps[i].feature);
    CHECK(prop.steps[i].phase == 1);
    CHECK(prop.steps[i].score == sfs.steps[i].score);
  }
}

TEST_CASE("proposed with empty zero-cost pool stops as pool_exhausted") {
  // Singleton groups: nothing is ever free.
  const Dataset d = coded_dataset({{0, 0, 1, 1}, {0, 1, 0, 1}}, {{0, 0, 1, 1}});
  const GroupStructure g = make_group_structure({"a", "b"}, {{0}, {1}}, {1.0, 1.0}, 2);
  const DiscretizedView v = discretize(d, 5);
  SelectionConfig cfg;
  cfg.budget = 1.0;
  const SelectionTrace t = proposed_select(v, g, cfg);
  CHECK(t.selected == std::vector<std::size_t>{0});
  CHECK(t.stop_reason == StopReason::pool_exhausted);
}

TEST_CASE("proposed with unlimited budget selects every feature") {
  const auto [d, g] = generate_illustrative(600, 0.2, 13);
  const DiscretizedView v = discretize(d, 5);
  SelectionConfig cfg;
  cfg.budget = 1e18;
  const SelectionTrace t = proposed_select(v, g, cfg);
  CHECK(t.selected.size() == 5);
  CHECK(as_set(t.selected) == std::set<std::size_t>{0, 1, 2, 3, 4});
  CHECK(t.stop_reason == StopReason::pool_exhausted);
  CHECK(t.total_cost == 3.0);
}

TEST_CASE("phase-2 additions never change the cumulative cost") {
  const auto [d, g] = generate_illustrative(1000, 0.2, 19);
  const DiscretizedView v = discretize(d, 5);
  SelectionConfig cfg;
  cfg.budget = 1.0;
  cfg.shadow_seed = 2;
  const SelectionTrace t = proposed_select(v, g, cfg);
  for (const auto& s : t.steps) {
    if (s.phase == 2) {
      CHECK(s.cumulative_cost == t.total_cost);
      CHECK(s.shadow_max.has_value());
    }
  }
}

TEST_CASE("first-shadow-win trace is a prefix of the fraction-of-wins trace") {
  // Both stop modes follow the same argmax sequence; they differ only in
  // when they stop, so the strict mode's selection is always a prefix.
  Rng rng(555);
  for (int trial = 0; trial < 15; ++trial) {
    const Instance inst = random_instance(rng, 8);
    const DiscretizedView v = discretize(inst.data, 5);
    SelectionConfig cfg;
    cfg.budget = total_group_cost(inst.groups) * 0.5;
    cfg.shadow_seed = static_cast<std::uint64_t>(trial);

    const SelectionTrace strict = proposed_select(v, inst.groups, cfg);

    cfg.stop_mode = StopMode::fraction_of_wins;
    cfg.stop_fraction = 1.0;
    const SelectionTrace lax = proposed_select(v, inst.groups, cfg);

    REQUIRE(lax.selected.size() >= strict.selected.size());
    for (std::size_t i = 0; i < strict.selected.size(); ++i)
      CHECK(lax.selected[i] == strict.selected[i]);
  }
}

TEST_CASE("determinism: identical configuration reproduces the trace bitwise") {
  const auto [d, g] = generate_illustrative(900, 0.2, 23);
  const DiscretizedView v = discretize(d, 5);
  SelectionConfig cfg;
  cfg.budget = 2.0;
  cfg.shadow_seed = 77;
  const SelectionTrace a = proposed_select(v, g, cfg);
  const SelectionTrace b = proposed_select(v, g, cfg);
  CHECK(a.selected == b.selected);
  CHECK(a.total_cost == b.total_cost);
  CHECK(a.stop_reason == b.stop_reason);
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    CHECK(a.steps[i].score == b.steps[i].score);
    CHECK(a.steps[i].shadow_max == b.steps[i].shadow_max);
  }
}

TEST_CASE("oracle: empty budget keeps the empty set") {
  const auto [d, g] = generate_illustrative(200, 0.2, 29);
  const DiscretizedView v = discretize(d, 5);
  const OracleResult r = exhaustive_oracle(v, g, 0.0);
  CHECK(r.subset.empty());
  CHECK(r.mi == 0.0);
  CHECK(r.cost == 0.0);
}

TEST_CASE("oracle tie-breaking returns the smallest subset achieving the maximum") {
  // f0 determines the label; f1 duplicates f0; f2 is noise.  The full set
  // ties with {f0}, and the oracle must return {f0}.
  const Dataset d = coded_dataset(
      {{0, 0, 1, 1, 0, 1}, {0, 0, 1, 1, 0, 1}, {0, 1, 0, 1, 1, 0}}, {{0, 0, 1, 1, 0, 1}});
  const GroupStructure g =
      make_group_structure({"a", "b", "c"}, {{0}, {1}, {2}}, {1.0, 1.0, 1.0}, 3);
  const DiscretizedView v = discretize(d, 5);

  const OracleResult r = exhaustive_oracle(v, g, 100.0);
  CHECK(r.subset == std::vector<std::size_t>{0});
  const std::vector<std::size_t> full = {0, 1, 2};
  CHECK(r.mi == subset_joint_mi(v, full));  // exactly tied with the full set
}

TEST_CASE("oracle matches the greedy optimum on the synthetic benchmark at budget 1") {
  const auto [d, g] = generate_illustrative(3000, 0.2, 5);
  const DiscretizedView v = discretize(d, 5);
  SelectionConfig cfg;
  cfg.budget = 1.0;
  cfg.shadow_seed = 5;
  const SelectionTrace t = proposed_select(v, g, cfg);
  const OracleResult r = exhaustive_oracle(v, g, 1.0);
  const double greedy_mi = subset_joint_mi(v, t.selected);
  CHECK(r.mi >= greedy_mi);
  // The whole first group is the unique budget-1 optimum here, so the
  // greedy result coincides with the oracle.
  CHECK(as_set(t.selected) == as_set(r.subset));
  CHECK(r.mi == doctest::Approx(greedy_mi).epsilon(1e-9));
}

TEST_CASE("oracle refuses oversized problems") {
  Rng rng(31);
  Instance inst = random_instance(rng, 6);  // at least 3 features
  const DiscretizedView v = discretize(inst.data, 5);
  CHECK_THROWS_AS(exhaustive_oracle(v, inst.groups, 1.0, 2), RefusedError);
}

TEST_CASE("oracle dominates greedy selection on random instances") {
  Rng rng(808);
  for (int trial = 0; trial < 8; ++trial) {
    const Instance inst = random_instance(rng, 8);
    const DiscretizedView v = discretize(inst.data, 5);
    const double budget = total_group_cost(inst.groups) * (0.3 + 0.5 * rng.uniform());

    SelectionConfig cfg;
    cfg.budget = budget;
    cfg.shadow_seed = trial;
    const SelectionTrace t = proposed_select(v, inst.groups, cfg);
    const OracleResult r = exhaustive_oracle(v, inst.groups, budget);
    CHECK(r.mi >= subset_joint_mi(v, t.selected));
    CHECK(r.cost <= budget);
  }
}

TEST_CASE("trace serializes to the documented JSON shape") {
  const auto [d, g] = generate_illustrative(700, 0.2, 37);
  const DiscretizedView v = discretize(d, 5);
  SelectionConfig cfg;
  cfg.budget = 1.0;
  const SelectionTrace t = proposed_select(v, g, cfg);
  const auto parsed = nlohmann::json::parse(trace_to_json(t, d.feature_names));

  CHECK(parsed.contains("steps"));
  CHECK(parsed.contains("stop_reason"));
  CHECK(parsed.contains("selected"));
  CHECK(parsed.contains("total_cost"));
  CHECK(parsed["selected"].size() == t.selected.size());
  CHECK(parsed["steps"].size() == t.steps.size());
  for (const auto& s : parsed["steps"]) {
    CHECK(s.contains("feature"));
    CHECK(s.contains("phase"));
    CHECK(s.contains("score"));
    CHECK(s.contains("cum_cost"));
    if (s["phase"] == 1) CHECK(!s.contains("shadow_max"));
    if (s["phase"] == 2) CHECK(s.contains("shadow_max"));
  }
  CHECK(parsed["total_cost"].get<double>() == t.total_cost);
}
