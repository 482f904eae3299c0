/*
 * (C) Copyright 2026 grouplect developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/metrics.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace grouplect {

EvalReport compute_metrics(const std::vector<std::vector<std::uint8_t>>& truth,
                           const std::vector<std::vector<double>>& scores,
                           const std::vector<std::vector<std::uint8_t>>& decisions) {
  const std::size_t n = truth.size();
  if (n == 0) throw std::invalid_argument("compute_metrics: no rows");
  const std::size_t q = truth[0].size();
  if (q == 0) throw std::invalid_argument("compute_metrics: no labels");
  if (scores.size() != n || decisions.size() != n)
    throw std::invalid_argument("compute_metrics: shape mismatch");
  for (std::size_t i = 0; i < n; ++i)
    if (truth[i].size() != q || scores[i].size() != q || decisions[i].size() != q)
      throw std::invalid_argument("compute_metrics: shape mismatch");

  EvalReport r;

  // Hamming and zero-one.
  std::size_t bit_errors = 0, row_errors = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bool any = false;
    for (std::size_t l = 0; l < q; ++l) {
      if (decisions[i][l] != truth[i][l]) {
        ++bit_errors;
        any = true;
      }
    }
    if (any) ++row_errors;
  }
  r.hamming_loss = static_cast<double>(bit_errors) / static_cast<double>(n * q);
  r.zero_one_loss = static_cast<double>(row_errors) / static_cast<double>(n);
  r.subset_accuracy = 1.0 - r.zero_one_loss;

  // Ranking loss: misordered (positive, negative) pairs per row, ties half.
  double ranking_sum = 0.0;
  std::size_t ranking_rows = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t pos = 0;
    for (std::size_t l = 0; l < q; ++l) pos += truth[i][l];
    const std::size_t neg = q - pos;
    if (pos == 0 || neg == 0) {
      ++r.ranking_rows_skipped;
      continue;
    }
    double bad = 0.0;
    for (std::size_t a = 0; a < q; ++a) {
      if (!truth[i][a]) continue;
      for (std::size_t b = 0; b < q; ++b) {
        if (truth[i][b]) continue;
        if (scores[i][a] < scores[i][b])
          bad += 1.0;
        else if (scores[i][a] == scores[i][b])
          bad += 0.5;
      }
    }
    ranking_sum += bad / static_cast<double>(pos * neg);
    ++ranking_rows;
  }
  r.ranking_loss = ranking_rows ? ranking_sum / static_cast<double>(ranking_rows) : 0.0;

  // Coverage error: rank depth needed to reach every positive, 1-based,
  // ties counted in (rank of a score is the number of scores >= it).
  double coverage_sum = 0.0;
  std::size_t coverage_rows = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bool has_pos = false;
    std::size_t depth = 0;
    for (std::size_t a = 0; a < q; ++a) {
      if (!truth[i][a]) continue;
      has_pos = true;
      std::size_t rank = 0;
      for (std::size_t b = 0; b < q; ++b)
        if (scores[i][b] >= scores[i][a]) ++rank;
      depth = std::max(depth, rank);
    }
    if (!has_pos) {
      ++r.coverage_rows_skipped;
      continue;
    }
    coverage_sum += static_cast<double>(depth);
    ++coverage_rows;
  }
  r.coverage_error = coverage_rows ? coverage_sum / static_cast<double>(coverage_rows) : 1.0;

  // Micro F1 over pooled confusion counts.
  double tp = 0.0, fp = 0.0, fn = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < q; ++l) {
      if (decisions[i][l] && truth[i][l]) tp += 1.0;
      if (decisions[i][l] && !truth[i][l]) fp += 1.0;
      if (!decisions[i][l] && truth[i][l]) fn += 1.0;
    }
  r.micro_f1 = (2.0 * tp + fp + fn) > 0.0 ? 2.0 * tp / (2.0 * tp + fp + fn) : 1.0;

  // Micro AUC: rank-sum statistic over all pooled cells, average ranks on ties.
  {
    std::vector<std::pair<double, std::uint8_t>> cells;
    cells.reserve(n * q);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < q; ++l) cells.emplace_back(scores[i][l], truth[i][l]);
    std::sort(cells.begin(), cells.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    double pos_total = 0.0, rank_sum = 0.0;
    std::size_t i = 0;
    while (i < cells.size()) {
      std::size_t j = i;
      while (j < cells.size() && cells[j].first == cells[i].first) ++j;
      const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
      for (std::size_t t = i; t < j; ++t)
        if (cells[t].second) {
          rank_sum += avg_rank;
          pos_total += 1.0;
        }
      i = j;
    }
    const double neg_total = static_cast<double>(cells.size()) - pos_total;
    r.micro_auc = (pos_total > 0.0 && neg_total > 0.0)
                      ? (rank_sum - pos_total * (pos_total + 1.0) / 2.0) / (pos_total * neg_total)
                      : 0.5;
  }
  return r;
}

std::string report_to_json(const EvalReport& report, int indent) {
  nlohmann::ordered_json out;
  out["hamming_loss"] = report.hamming_loss;
  out["ranking_loss"] = report.ranking_loss;
  out["coverage_error"] = report.coverage_error;
  out["zero_one_loss"] = report.zero_one_loss;
  out["subset_accuracy"] = report.subset_accuracy;
  out["micro_f1"] = report.micro_f1;
  out["micro_auc"] = report.micro_auc;
  out["total_cost"] = report.total_cost;
  out["subset"] = report.subset;
  return out.dump(indent);
}

}  // namespace grouplect
