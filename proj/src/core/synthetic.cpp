/*
 * (C) Copyright 2026 grouplect developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/synthetic.hpp"

#include <cmath>
#include <numeric>

#include "core/common.hpp"

namespace grouplect {

namespace {

double sigmoid(double s) { return 1.0 / (1.0 + std::exp(-s)); }

// Permute the values at round(rho*n) randomly chosen positions of col.
void corrupt_column(std::vector<double>& col, double rho, Rng& rng) {
  const std::size_t n = col.size();
  const auto m = static_cast<std::size_t>(std::llround(rho * static_cast<double>(n)));
  if (m < 2) return;
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Partial Fisher-Yates: first m entries become the corrupted row subset.
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(n - i));
    std::swap(idx[i], idx[j]);
  }
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  rng.shuffle(perm.data(), perm.size());
  std::vector<double> old(m);
  for (std::size_t t = 0; t < m; ++t) old[t] = col[idx[t]];
  for (std::size_t t = 0; t < m; ++t) col[idx[t]] = old[perm[t]];
}

}  // namespace

std::pair<Dataset, GroupStructure> generate_illustrative(std::size_t n, double rho,
                                                         std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("generate_illustrative: n must be positive");
  if (!(rho >= 0.0 && rho <= 1.0))
    throw std::invalid_argument("generate_illustrative: rho must be in [0, 1]");

  Rng rng(seed);
  Dataset d;
  d.feature_names = {"X1", "X2", "X3", "X4", "X5"};
  d.label_names = {"Y1", "Y2", "Y3"};
  d.features.assign(5, std::vector<double>(n));
  d.labels.assign(3, std::vector<std::uint8_t>(n));

  for (auto& col : d.features)
    for (double& v : col) v = rng.normal();

  const struct { std::size_t source; double coef; } label_spec[3] = {
      {0, 3.0}, {3, 2.0}, {4, 1.0}};
  for (std::size_t l = 0; l < 3; ++l)
    for (std::size_t i = 0; i < n; ++i)
      d.labels[l][i] =
          rng.uniform() < sigmoid(label_spec[l].coef * d.features[label_spec[l].source][i]) ? 1 : 0;

  d.features[1] = d.features[3];
  corrupt_column(d.features[1], rho, rng);
  d.features[2] = d.features[4];
  corrupt_column(d.features[2], rho, rng);

  GroupStructure g = make_group_structure({"G1", "G2", "G3"}, {{0, 1, 2}, {3}, {4}},
                                          {1.0, 1.0, 1.0}, 5);
  d.validate();
  return {std::move(d), std::move(g)};
}

}  // namespace grouplect
