#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "core/common.hpp"
#include "core/dataset.hpp"
#include "core/info_theory.hpp"

using namespace grouplect;

namespace {

// Dataset whose feature columns hold small integers so discretization is a
// plain code mapping (provided arity stays within the bin count).
Dataset coded_dataset(const std::vector<std::vector<int>>& feature_cols,
                      const std::vector<std::vector<std::uint8_t>>& label_cols) {
  Dataset d;
  for (std::size_t j = 0; j < feature_cols.size(); ++j) {
    std::vector<double> col(feature_cols[j].begin(), feature_cols[j].end());
    d.features.push_back(std::move(col));
    d.feature_names.push_back("f" + std::to_string(j));
  }
  for (std::size_t l = 0; l < label_cols.size(); ++l) {
    d.labels.push_back(label_cols[l]);
    d.label_names.push_back("y" + std::to_string(l));
  }
  return d;
}

// Independent oracle: joint distributions via ordered maps, entropies and
// informations evaluated from the probability-ratio formulas directly.
using Key = std::vector<int>;

std::map<Key, double> joint_prob(const DiscretizedView& view,
                                 const std::vector<std::size_t>& cols) {
  std::map<Key, double> p;
  for (std::size_t i = 0; i < view.n_rows; ++i) {
    Key key;
    for (std::size_t c : cols) key.push_back(view.columns[c][i]);
    p[key] += 1.0 / static_cast<double>(view.n_rows);
  }
  return p;
}

double oracle_entropy(const DiscretizedView& view, const std::vector<std::size_t>& cols) {
  double h = 0.0;
  for (const auto& [key, prob] : joint_prob(view, cols))
    if (prob > 0.0) h -= prob * std::log2(prob);
  return h;
}

Key slice(const Key& key, std::size_t from, std::size_t len) {
  return Key(key.begin() + static_cast<std::ptrdiff_t>(from),
             key.begin() + static_cast<std::ptrdiff_t>(from + len));
}

double oracle_mi(const DiscretizedView& view, const std::vector<std::size_t>& a,
                 const std::vector<std::size_t>& b) {
  std::vector<std::size_t> ab(a);
  ab.insert(ab.end(), b.begin(), b.end());
  const auto pab = joint_prob(view, ab);
  const auto pa = joint_prob(view, a);
  const auto pb = joint_prob(view, b);
  double mi = 0.0;
  for (const auto& [key, p] : pab) {
    const double qa = pa.at(slice(key, 0, a.size()));
    const double qb = pb.at(slice(key, a.size(), b.size()));
    mi += p * std::log2(p / (qa * qb));
  }
  return mi;
}

double oracle_cmi(const DiscretizedView& view, const std::vector<std::size_t>& a,
                  const std::vector<std::size_t>& b, const std::vector<std::size_t>& c) {
  if (c.empty()) return oracle_mi(view, a, b);
  std::vector<std::size_t> abc(a);
  abc.insert(abc.end(), b.begin(), b.end());
  abc.insert(abc.end(), c.begin(), c.end());
  const auto pabc = joint_prob(view, abc);
  std::vector<std::size_t> ac(a);
  ac.insert(ac.end(), c.begin(), c.end());
  std::vector<std::size_t> bc(b);
  bc.insert(bc.end(), c.begin(), c.end());
  const auto pac = joint_prob(view, ac);
  const auto pbc = joint_prob(view, bc);
  const auto pc = joint_prob(view, c);
  double cmi = 0.0;
  for (const auto& [key, p] : pabc) {
    Key ka = slice(key, 0, a.size());
    Key kb = slice(key, a.size(), b.size());
    Key kc = slice(key, a.size() + b.size(), c.size());
    Key kac(ka);
    kac.insert(kac.end(), kc.begin(), kc.end());
    Key kbc(kb);
    kbc.insert(kbc.end(), kc.begin(), kc.end());
    cmi += p * std::log2(pc.at(kc) * p / (pac.at(kac) * pbc.at(kbc)));
  }
  return cmi;
}

std::vector<std::size_t> cols(std::initializer_list<std::size_t> xs) { return xs; }

}  // namespace

TEST_CASE("discretize equal-frequency example") {
  const Dataset d =
      coded_dataset({{1, 2, 3, 4, 5, 6, 7, 8, 9, 10}}, {{0, 1, 0, 1, 0, 1, 0, 1, 0, 1}});
  const DiscretizedView v = discretize(d, 5);
  CHECK(v.columns[0] == Codes{0, 0, 1, 1, 2, 2, 3, 3, 4, 4});
  CHECK(v.arity[0] == 5);
}

TEST_CASE("discretize passes small-arity columns through") {
  const Dataset d = coded_dataset({{0, 1, 0, 1}}, {{0, 1, 0, 1}});
  const DiscretizedView v = discretize(d, 5);
  CHECK(v.columns[0] == Codes{0, 1, 0, 1});
  CHECK(v.arity[0] == 2);
  CHECK(v.columns[1] == Codes{0, 1, 0, 1});  // label pass-through
}

TEST_CASE("discretize constant column") {
  const Dataset d = coded_dataset({{7, 7, 7, 7}}, {{0, 1, 0, 1}});
  const DiscretizedView v = discretize(d, 5);
  CHECK(v.arity[0] == 1);
  CHECK(entropy(v, cols({0})) == 0.0);
}

TEST_CASE("discretize handles heavy duplication in the quantile path") {
  // 6 distinct values but mass concentrated at 0; codes must stay dense.
  const Dataset d = coded_dataset({{0, 0, 0, 0, 0, 0, 1, 2, 3, 4, 5, 5}},
                                  {{0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1}});
  const DiscretizedView v = discretize(d, 5);
  std::int32_t max_code = 0;
  for (auto c : v.columns[0]) max_code = std::max(max_code, c);
  CHECK(v.arity[0] == max_code + 1);
  // Equal values never straddle a boundary.
  for (std::size_t i = 0; i < 6; ++i) CHECK(v.columns[0][i] == v.columns[0][0]);
  CHECK(v.n_rows == 12);
}

TEST_CASE("discretize rejects bad bins and is deterministic") {
  const auto d = coded_dataset({{1, 2, 3}}, {{0, 1, 0}});
  CHECK_THROWS_AS(discretize(d, 1), std::invalid_argument);
  const DiscretizedView a = discretize(d, 2);
  const DiscretizedView b = discretize(d, 2);
  CHECK(a.columns == b.columns);
}

TEST_CASE("entropy basic values") {
  const Dataset d = coded_dataset({{0, 1, 0, 1}, {0, 1, 0, 1}, {3, 3, 3, 3}},
                                  {{0, 0, 1, 1}});
  const DiscretizedView v = discretize(d, 5);
  CHECK(entropy(v, cols({0})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(entropy(v, cols({2})) == 0.0);
  // Duplicated column adds nothing.
  CHECK(entropy(v, cols({0, 1})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(entropy(v, cols({})), std::invalid_argument);
}

TEST_CASE("mutual information: deterministic copy of a 4-code uniform column") {
  const Dataset d = coded_dataset({{0, 1, 2, 3}, {0, 1, 2, 3}}, {{0, 0, 1, 1}});
  const DiscretizedView v = discretize(d, 5);
  CHECK(mutual_information(v, cols({0}), cols({1})) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("mutual information matches the probability-ratio oracle on a known joint") {
  // Empirical joint p(0,0)=p(1,1)=0.4, p(0,1)=p(1,0)=0.1 over 10 rows.
  const Dataset d = coded_dataset(
      {{0, 0, 0, 0, 1, 1, 1, 1, 0, 1}, {0, 0, 0, 0, 1, 1, 1, 1, 1, 0}}, {{0, 0, 0, 0, 0, 1, 1, 1, 1, 1}});
  const DiscretizedView v = discretize(d, 5);
  const double mi = mutual_information(v, cols({0}), cols({1}));
  CHECK(mi == doctest::Approx(0.2780719051126377).epsilon(1e-12));
  CHECK(mi == doctest::Approx(oracle_mi(v, {0}, {1})).epsilon(1e-12));
}

TEST_CASE("mutual information of independent uniform binary columns is near zero") {
  Rng rng(13);
  const std::size_t n = 10000;
  std::vector<int> a(n), b(n);
  std::vector<std::uint8_t> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = rng.uniform() < 0.5;
    b[i] = rng.uniform() < 0.5;
    y[i] = 0;
  }
  const Dataset d = coded_dataset({a, b}, {{y}});
  const DiscretizedView v = discretize(d, 5);
  const double mi = mutual_information(v, cols({0}), cols({1}));
  CHECK(mi >= 0.0);
  CHECK(mi <= 0.01);
}

TEST_CASE("mutual information rejects overlapping sets") {
  const Dataset d = coded_dataset({{0, 1}, {1, 0}}, {{0, 1}});
  const DiscretizedView v = discretize(d, 5);
  CHECK_THROWS_AS(mutual_information(v, cols({0}), cols({0})), std::invalid_argument);
  CHECK_THROWS_AS(conditional_mi(v, cols({0}), cols({1}), cols({1})), std::invalid_argument);
}

TEST_CASE("conditional MI with empty conditioning equals MI") {
  const Dataset d = coded_dataset({{0, 1, 1, 0}, {0, 1, 0, 1}}, {{0, 1, 1, 1}});
  const DiscretizedView v = discretize(d, 5);
  CHECK(conditional_mi(v, cols({0}), cols({2}), cols({})) ==
        mutual_information(v, cols({0}), cols({2})));
}

TEST_CASE("XOR: marginally independent, conditionally fully informative") {
  // The 8-row truth table, every (Xk, Xj) combination twice.
  const Dataset d = coded_dataset({{0, 0, 0, 0, 1, 1, 1, 1}, {0, 0, 1, 1, 0, 0, 1, 1}},
                                  {{0, 0, 1, 1, 1, 1, 0, 0}});
  const DiscretizedView v = discretize(d, 5);
  const std::size_t y = v.label_col(0);
  CHECK(std::abs(mutual_information(v, cols({0}), {&y, 1})) <= 1e-12);
  CHECK(conditional_mi(v, cols({0}), {&y, 1}, cols({1})) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(interaction_information(v, y, 0, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("interaction information is negative for a duplicated feature") {
  const Dataset d = coded_dataset({{0, 1, 0, 1, 0, 1}, {0, 1, 0, 1, 0, 1}},
                                  {{0, 1, 0, 1, 1, 0}});
  const DiscretizedView v = discretize(d, 5);
  const std::size_t y = v.label_col(0);
  const double mi = mutual_information(v, cols({0}), {&y, 1});
  CHECK(mi > 0.0);
  CHECK(interaction_information(v, y, 0, 1) == doctest::Approx(-mi).epsilon(1e-12));
  CHECK_THROWS_AS(interaction_information(v, y, 0, 0), std::invalid_argument);
}

TEST_CASE("interaction information near zero for independent columns") {
  Rng rng(5);
  const std::size_t n = 20000;
  std::vector<int> a(n), b(n);
  std::vector<std::uint8_t> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = static_cast<int>(rng.uniform_below(3));
    b[i] = static_cast<int>(rng.uniform_below(3));
    y[i] = rng.uniform() < 0.5;
  }
  const Dataset d = coded_dataset({a, b}, {{y}});
  const DiscretizedView v = discretize(d, 5);
  CHECK(std::abs(interaction_information(v, v.label_col(0), 0, 1)) < 0.01);
}

TEST_CASE("estimators agree with the independent oracle on random discrete data") {
  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 20 + rng.uniform_below(180);
    std::vector<std::vector<int>> feats(2);
    for (auto& col : feats) {
      col.resize(n);
      for (auto& x : col) x = static_cast<int>(rng.uniform_below(3));
    }
    std::vector<std::uint8_t> lab(n);
    for (auto& x : lab) x = rng.uniform() < 0.5;
    const Dataset d = coded_dataset(feats, {lab});
    const DiscretizedView v = discretize(d, 5);
    const std::size_t y = v.label_col(0);

    CHECK(entropy(v, cols({0, 1})) == doctest::Approx(oracle_entropy(v, {0, 1})).epsilon(1e-10));
    CHECK(mutual_information(v, cols({0}), {&y, 1}) ==
          doctest::Approx(std::max(0.0, oracle_mi(v, {0}, {y}))).epsilon(1e-10));
    CHECK(conditional_mi(v, cols({0}), {&y, 1}, cols({1})) ==
          doctest::Approx(std::max(0.0, oracle_cmi(v, {0}, {y}, {1}))).epsilon(1e-10));
  }
}

TEST_CASE("plug-in identities and inequalities on random views") {
  Rng rng(123);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 30 + rng.uniform_below(100);
    std::vector<std::vector<int>> feats(3);
    for (auto& col : feats) {
      col.resize(n);
      for (auto& x : col) x = static_cast<int>(rng.uniform_below(4));
    }
    std::vector<std::uint8_t> lab(n);
    for (auto& x : lab) x = rng.uniform() < 0.4;
    const Dataset d = coded_dataset(feats, {lab});
    const DiscretizedView v = discretize(d, 5);

    const double ha = entropy(v, cols({0}));
    const double hb = entropy(v, cols({1}));
    const double hab = entropy(v, cols({0, 1}));
    CHECK(ha >= 0.0);
    CHECK(hab <= ha + hb + 1e-12);                       // subadditivity
    CHECK(hab >= std::max(ha, hb) - 1e-12);              // monotonicity
    // Chain identity: the MI code path is exactly this expression.
    CHECK(mutual_information(v, cols({0}), cols({1})) == std::max(0.0, ha + hb - hab));

    // Conditioning reduces entropy: H(B | A,C) <= H(B | C).
    const double lhs = entropy(v, cols({0, 1, 2})) - entropy(v, cols({0, 2}));
    const double rhs = entropy(v, cols({1, 2})) - entropy(v, cols({2}));
    CHECK(lhs <= rhs + 1e-12);
    CHECK(conditional_mi(v, cols({0}), cols({1}), cols({2})) >= 0.0);
  }
}

TEST_CASE("joint entropy survives the wide-key fallback") {
  // 40 columns of arity 3 overflow any 64-bit mixed radix.
  const std::size_t n = 50;
  Rng rng(77);
  std::vector<std::vector<int>> feats(40);
  for (auto& col : feats) {
    col.resize(n);
    for (auto& x : col) x = static_cast<int>(rng.uniform_below(3));
  }
  std::vector<std::uint8_t> lab(n, 0);
  const Dataset d = coded_dataset(feats, {lab});
  const DiscretizedView v = discretize(d, 5);
  std::vector<std::size_t> all;
  for (std::size_t j = 0; j < 40; ++j) all.push_back(j);
  const double h = entropy(v, all);
  // Every row distinct with overwhelming probability.
  CHECK(h == doctest::Approx(std::log2(50.0)).epsilon(1e-9));
}
