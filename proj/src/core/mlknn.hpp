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

#include "core/dataset.hpp"

namespace grouplect {

/// Multi-label k-nearest-neighbour classifier with smoothed per-label priors
/// and neighbour-count posteriors.  Distances are Euclidean on the selected
/// feature columns standardized with training statistics only.
struct MlknnModel {
  int k = 10;
  double smoothing = 1.0;
  std::size_t source_features = 0;             // p of the training dataset
  std::vector<std::size_t> subset;             // selected feature indices
  std::vector<double> mean, sd;                // per subset column
  std::vector<double> prior1;                  // q
  std::vector<std::vector<double>> post1;      // q x (k+1), rows sum to 1
  std::vector<std::vector<double>> post0;      // q x (k+1), rows sum to 1
  std::vector<std::vector<double>> train_points;        // n x |subset|, standardized
  std::vector<std::vector<std::uint8_t>> train_labels;  // q x n
};

MlknnModel fit_mlknn(const Dataset& train, std::span<const std::size_t> subset, int k,
                     double smoothing);

struct Predictions {
  std::vector<std::vector<double>> scores;         // n x q, posterior in [0,1]
  std::vector<std::vector<std::uint8_t>> decisions;  // n x q, score >= 0.5
};

Predictions predict(const MlknnModel& model, const Dataset& instances);

}  // namespace grouplect
