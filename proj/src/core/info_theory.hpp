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

using Codes = std::vector<std::int32_t>;

/// Integer-coded view of a dataset: feature columns quantile-binned to at
/// most `bins` codes, label columns passed through as {0,1}.  The substrate
/// for every plug-in entropy estimate.  Columns 0..p-1 are features,
/// p..p+q-1 labels.
struct DiscretizedView {
  enum class Origin { feature, label, shadow };

  std::vector<Codes> columns;
  std::vector<std::int32_t> arity;
  std::vector<Origin> origin;
  std::size_t n_rows = 0;
  std::size_t n_features = 0;
  std::size_t n_labels = 0;

  std::size_t n_columns() const { return columns.size(); }
  std::size_t feature_col(std::size_t j) const { return j; }
  std::size_t label_col(std::size_t l) const { return n_features + l; }
};

/// Equal-frequency discretization.  Columns with more than `bins` distinct
/// values get quantile cut points; columns with at most `bins` distinct
/// values are code-mapped as-is.  Equal values always share a code.
DiscretizedView discretize(const Dataset& d, int bins);

/// A borrowed coded column; lets shadow columns enter the same estimators
/// as view columns.
struct ColumnRef {
  std::span<const std::int32_t> codes;
  std::int32_t arity = 0;
};

ColumnRef column_ref(const DiscretizedView& view, std::size_t col);

/// Plug-in joint entropy in bits over the contingency table of the given
/// columns.  Cell probabilities are count/n, 0*log(0) = 0.  Cell terms are
/// accumulated over sorted counts, so column sets inducing the same row
/// partition produce bit-identical values.
double joint_entropy(std::span<const ColumnRef> cols, std::size_t n_rows);

double entropy(const DiscretizedView& view, std::span<const std::size_t> cols);

/// M(A;B) = H(A) + H(B) - H(A,B), clamped at zero from below.
double mutual_information_refs(std::span<const ColumnRef> a, std::span<const ColumnRef> b,
                               std::size_t n_rows);
double mutual_information(const DiscretizedView& view, std::span<const std::size_t> a,
                          std::span<const std::size_t> b);

/// M(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C), clamped at zero from below.
/// Empty C reduces to mutual information.
double conditional_mi_refs(std::span<const ColumnRef> a, std::span<const ColumnRef> b,
                           std::span<const ColumnRef> c, std::size_t n_rows);
double conditional_mi(const DiscretizedView& view, std::span<const std::size_t> a,
                      std::span<const std::size_t> b, std::span<const std::size_t> c);

/// II(Y_l, X_k, X_j) = M(X_k;Y_l|X_j) - M(X_k;Y_l).  Negative values signal
/// redundancy, positive values synergy; not clamped.
double interaction_information(const DiscretizedView& view, std::size_t label_col,
                               std::size_t feature_col_k, std::size_t feature_col_j);

}  // namespace grouplect
