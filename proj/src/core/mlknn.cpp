/*
 * (C) Copyright 2026 grouplect developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/mlknn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace grouplect {

namespace {

// Indices of the k nearest points to `query` among `points`, excluding
// `exclude` (pass size_t(-1) to keep all).  Distance ties break toward the
// lower row index.
std::vector<std::size_t> k_nearest(const std::vector<std::vector<double>>& points,
                                   const std::vector<double>& query, int k,
                                   std::size_t exclude) {
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i == exclude) continue;
    double d2 = 0.0;
    for (std::size_t c = 0; c < query.size(); ++c) {
      const double diff = points[i][c] - query[c];
      d2 += diff * diff;
    }
    dist.emplace_back(d2, i);
  }
  const auto kk = static_cast<std::size_t>(k);
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(kk), dist.end());
  std::vector<std::size_t> out(kk);
  for (std::size_t i = 0; i < kk; ++i) out[i] = dist[i].second;
  return out;
}

}  // namespace

MlknnModel fit_mlknn(const Dataset& train, std::span<const std::size_t> subset, int k,
                     double smoothing) {
  if (subset.empty()) throw std::invalid_argument("fit_mlknn: empty feature subset");
  if (k < 1) throw std::invalid_argument("fit_mlknn: k must be at least 1");
  const std::size_t n = train.n_rows();
  if (static_cast<std::size_t>(k) >= n)
    throw std::invalid_argument("fit_mlknn: k must be smaller than the training size");
  if (smoothing < 0.0) throw std::invalid_argument("fit_mlknn: smoothing must be >= 0");
  for (std::size_t j : subset)
    if (j >= train.n_features()) throw std::invalid_argument("fit_mlknn: feature index out of range");

  MlknnModel m;
  m.k = k;
  m.smoothing = smoothing;
  m.source_features = train.n_features();
  m.subset.assign(subset.begin(), subset.end());
  m.train_labels = train.labels;

  // Standardize with training statistics; constant columns stay at 0.
  m.mean.resize(subset.size());
  m.sd.resize(subset.size());
  for (std::size_t c = 0; c < subset.size(); ++c) {
    const auto& col = train.features[subset[c]];
    double sum = 0.0;
    for (double v : col) sum += v;
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double v : col) ss += (v - mean) * (v - mean);
    double sd = std::sqrt(ss / static_cast<double>(n));
    if (sd == 0.0) sd = 1.0;
    m.mean[c] = mean;
    m.sd[c] = sd;
  }
  m.train_points.assign(n, std::vector<double>(subset.size()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < subset.size(); ++c)
      m.train_points[i][c] = (train.features[subset[c]][i] - m.mean[c]) / m.sd[c];

  const std::size_t q = train.n_labels();
  const double s = smoothing;
  m.prior1.resize(q);
  for (std::size_t l = 0; l < q; ++l) {
    double pos = 0.0;
    for (std::uint8_t v : train.labels[l]) pos += v;
    m.prior1[l] = (s + pos) / (2.0 * s + static_cast<double>(n));
  }

  // Neighbour-count histograms per label, self excluded.
  std::vector<std::vector<double>> count_pos(q, std::vector<double>(static_cast<std::size_t>(k) + 1, 0.0));
  std::vector<std::vector<double>> count_neg(q, std::vector<double>(static_cast<std::size_t>(k) + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto nn = k_nearest(m.train_points, m.train_points[i], k, i);
    for (std::size_t l = 0; l < q; ++l) {
      std::size_t c = 0;
      for (std::size_t idx : nn) c += train.labels[l][idx];
      if (train.labels[l][i])
        count_pos[l][c] += 1.0;
      else
        count_neg[l][c] += 1.0;
    }
  }

  m.post1.assign(q, std::vector<double>(static_cast<std::size_t>(k) + 1, 0.0));
  m.post0.assign(q, std::vector<double>(static_cast<std::size_t>(k) + 1, 0.0));
  for (std::size_t l = 0; l < q; ++l) {
    double total_pos = 0.0, total_neg = 0.0;
    for (std::size_t c = 0; c <= static_cast<std::size_t>(k); ++c) {
      total_pos += count_pos[l][c];
      total_neg += count_neg[l][c];
    }
    const double denom_pos = s * (k + 1) + total_pos;
    const double denom_neg = s * (k + 1) + total_neg;
    for (std::size_t c = 0; c <= static_cast<std::size_t>(k); ++c) {
      m.post1[l][c] = denom_pos > 0.0 ? (s + count_pos[l][c]) / denom_pos
                                      : 1.0 / static_cast<double>(k + 1);
      m.post0[l][c] = denom_neg > 0.0 ? (s + count_neg[l][c]) / denom_neg
                                      : 1.0 / static_cast<double>(k + 1);
    }
  }
  return m;
}

Predictions predict(const MlknnModel& model, const Dataset& instances) {
  if (instances.n_features() != model.source_features)
    throw std::invalid_argument("predict: instance columns do not match the fitted model");
  const std::size_t n = instances.n_rows();
  const std::size_t q = model.train_labels.size();

  Predictions out;
  out.scores.assign(n, std::vector<double>(q, 0.0));
  out.decisions.assign(n, std::vector<std::uint8_t>(q, 0));

  std::vector<double> point(model.subset.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < model.subset.size(); ++c)
      point[c] = (instances.features[model.subset[c]][i] - model.mean[c]) / model.sd[c];
    const auto nn = k_nearest(model.train_points, point, model.k,
                              static_cast<std::size_t>(-1));
    for (std::size_t l = 0; l < q; ++l) {
      std::size_t c = 0;
      for (std::size_t idx : nn) c += model.train_labels[l][idx];
      const double p1 = model.prior1[l] * model.post1[l][c];
      const double p0 = (1.0 - model.prior1[l]) * model.post0[l][c];
      const double score = (p1 + p0) > 0.0 ? p1 / (p1 + p0) : 0.5;
      out.scores[i][l] = score;
      out.decisions[i][l] = score >= 0.5 ? 1 : 0;
    }
  }
  return out;
}

}  // namespace grouplect
