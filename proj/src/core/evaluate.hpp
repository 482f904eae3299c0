/*
 * (C) Copyright 2026 grouplect developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <span>

#include "core/dataset.hpp"
#include "core/groups.hpp"
#include "core/metrics.hpp"

namespace grouplect {

/// Fit ML-kNN on the training split restricted to the subset, predict the
/// validation split, compute the seven metrics, and attach the subset's
/// group cost.
EvalReport evaluate_subset(const Dataset& train, const Dataset& valid,
                           std::span<const std::size_t> subset, const GroupStructure& g,
                           int knn_k, double knn_s);

}  // namespace grouplect
