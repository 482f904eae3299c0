/*
 * (C) Copyright 2026 grouplect developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace grouplect {

/// The seven multi-label evaluation metrics plus bookkeeping.
/// subset_accuracy is exactly 1 - zero_one_loss.  Rows without both a
/// positive and a negative label are skipped by ranking_loss; rows without
/// any positive are skipped by coverage_error; both skips are counted.
struct EvalReport {
  double hamming_loss = 0.0;
  double ranking_loss = 0.0;
  double coverage_error = 0.0;
  double zero_one_loss = 0.0;
  double subset_accuracy = 0.0;
  double micro_f1 = 0.0;
  double micro_auc = 0.0;
  std::vector<std::string> subset;
  double total_cost = 0.0;
  std::size_t ranking_rows_skipped = 0;
  std::size_t coverage_rows_skipped = 0;
};

/// truth/decisions are n x q binary, scores n x q reals.  Ranking ties count
/// one half (Wilcoxon convention) in ranking_loss and micro_auc.
EvalReport compute_metrics(const std::vector<std::vector<std::uint8_t>>& truth,
                           const std::vector<std::vector<double>>& scores,
                           const std::vector<std::vector<std::uint8_t>>& decisions);

/// Fixed key order; metric keys exactly: hamming_loss, ranking_loss,
/// coverage_error, zero_one_loss, subset_accuracy, micro_f1, micro_auc,
/// total_cost, plus the subset names.
std::string report_to_json(const EvalReport& report, int indent = 2);

}  // namespace grouplect
