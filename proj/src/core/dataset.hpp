/*
 * (C) Copyright 2026 grouplect developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace grouplect {

/// Immutable table of real-valued features and binary labels, column major.
/// Invariants (enforced by validate()): at least one row, feature and label,
/// shared row count, labels in {0,1}, unique feature and label names.
struct Dataset {
  std::vector<std::vector<double>> features;        // p columns of length n
  std::vector<std::vector<std::uint8_t>> labels;    // q columns of length n
  std::vector<std::string> feature_names;           // p
  std::vector<std::string> label_names;             // q

  std::size_t n_rows() const { return features.empty() ? 0 : features[0].size(); }
  std::size_t n_features() const { return features.size(); }
  std::size_t n_labels() const { return labels.size(); }

  /// Throws std::invalid_argument on any invariant violation.
  void validate() const;

  std::size_t feature_index(const std::string& name) const;  // throws if unknown
};

/// Deterministic row split: training part takes floor(n * train_fraction)
/// rows of a seeded shuffle, both parts sorted back to original row order.
std::pair<Dataset, Dataset> train_valid_split(const Dataset& d, double train_fraction,
                                              std::uint64_t seed);

/// Strict CSV ingestion: header row, comma separated, '.' decimal point.
/// Label cells must be exactly 0 or 1.  Errors name the file and line.
Dataset load_dataset(const std::string& features_path, const std::string& labels_path);

void save_dataset(const Dataset& d, const std::string& features_path,
                  const std::string& labels_path);

}  // namespace grouplect
