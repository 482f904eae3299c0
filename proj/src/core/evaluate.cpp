/*
 * (C) Copyright 2026 grouplect developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/evaluate.hpp"

#include "core/mlknn.hpp"

namespace grouplect {

EvalReport evaluate_subset(const Dataset& train, const Dataset& valid,
                           std::span<const std::size_t> subset, const GroupStructure& g,
                           int knn_k, double knn_s) {
  const MlknnModel model = fit_mlknn(train, subset, knn_k, knn_s);
  const Predictions pred = predict(model, valid);

  const std::size_t n = valid.n_rows();
  const std::size_t q = valid.n_labels();
  std::vector<std::vector<std::uint8_t>> truth(n, std::vector<std::uint8_t>(q));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < q; ++l) truth[i][l] = valid.labels[l][i];

  EvalReport report = compute_metrics(truth, pred.scores, pred.decisions);
  for (std::size_t j : subset) report.subset.push_back(train.feature_names[j]);
  report.total_cost = subset_cost(subset, g);
  return report;
}

}  // namespace grouplect
