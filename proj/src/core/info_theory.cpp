/*
 * (C) Copyright 2026 grouplect developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/info_theory.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace grouplect {

DiscretizedView discretize(const Dataset& d, int bins) {
  if (bins < 2) throw std::invalid_argument("discretize: bins must be at least 2");
  d.validate();
  const std::size_t n = d.n_rows();

  DiscretizedView view;
  view.n_rows = n;
  view.n_features = d.n_features();
  view.n_labels = d.n_labels();
  view.columns.reserve(view.n_features + view.n_labels);
  view.arity.reserve(view.n_features + view.n_labels);
  view.origin.reserve(view.n_features + view.n_labels);

  for (const auto& col : d.features) {
    std::vector<double> sorted(col);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> distinct(sorted);
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    Codes codes(n);
    if (distinct.size() <= static_cast<std::size_t>(bins)) {
      // Few distinct values: map them to dense codes directly.
      for (std::size_t i = 0; i < n; ++i) {
        const auto it = std::lower_bound(distinct.begin(), distinct.end(), col[i]);
        codes[i] = static_cast<std::int32_t>(it - distinct.begin());
      }
      view.columns.push_back(std::move(codes));
      view.arity.push_back(static_cast<std::int32_t>(distinct.size()));
    } else {
      // Quantile cut points on the sorted values; a code counts the cut
      // points at or below the value, so equal values share a code.
      std::vector<double> cuts;
      cuts.reserve(static_cast<std::size_t>(bins) - 1);
      for (int t = 1; t < bins; ++t)
        cuts.push_back(sorted[(static_cast<std::size_t>(t) * n) / static_cast<std::size_t>(bins)]);
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      for (std::size_t i = 0; i < n; ++i) {
        const auto it = std::upper_bound(cuts.begin(), cuts.end(), col[i]);
        codes[i] = static_cast<std::int32_t>(it - cuts.begin());
      }
      // Duplicated data can leave unused codes; remap densely.
      std::int32_t max_code = 0;
      for (auto c : codes) max_code = std::max(max_code, c);
      std::vector<std::int32_t> used(static_cast<std::size_t>(max_code) + 1, 0);
      for (auto c : codes) used[static_cast<std::size_t>(c)] = 1;
      std::vector<std::int32_t> remap(used.size(), -1);
      std::int32_t next = 0;
      for (std::size_t c = 0; c < used.size(); ++c)
        if (used[c]) remap[c] = next++;
      for (auto& c : codes) c = remap[static_cast<std::size_t>(c)];
      view.columns.push_back(std::move(codes));
      view.arity.push_back(next);
    }
    view.origin.push_back(DiscretizedView::Origin::feature);
  }

  for (const auto& col : d.labels) {
    Codes codes(n);
    for (std::size_t i = 0; i < n; ++i) codes[i] = col[i];
    view.columns.push_back(std::move(codes));
    view.arity.push_back(2);
    view.origin.push_back(DiscretizedView::Origin::label);
  }
  return view;
}

ColumnRef column_ref(const DiscretizedView& view, std::size_t col) {
  if (col >= view.n_columns()) throw std::invalid_argument("column_ref: column out of range");
  return {std::span<const std::int32_t>(view.columns[col]), view.arity[col]};
}

namespace {

double entropy_from_counts(std::vector<std::uint32_t>& counts, std::size_t n_rows) {
  std::sort(counts.begin(), counts.end());
  const double n = static_cast<double>(n_rows);
  double h = 0.0;
  for (std::uint32_t c : counts) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h < 0.0 ? 0.0 : h;
}

// Mixed-radix cell keys fit in 64 bits for every realistic query; the
// vector-key path covers the rest exactly.
bool strides_fit_u64(std::span<const ColumnRef> cols, std::vector<std::uint64_t>& strides) {
  strides.resize(cols.size());
  std::uint64_t stride = 1;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    strides[c] = stride;
    const auto arity = static_cast<std::uint64_t>(std::max<std::int32_t>(cols[c].arity, 1));
    if (arity != 0 && stride > (std::uint64_t{1} << 62) / arity) return false;
    stride *= arity;
  }
  return true;
}

}  // namespace

double joint_entropy(std::span<const ColumnRef> cols, std::size_t n_rows) {
  if (cols.empty()) throw std::invalid_argument("joint_entropy: needs at least one column");
  if (n_rows == 0) throw std::invalid_argument("joint_entropy: empty view");
  for (const auto& c : cols)
    if (c.codes.size() != n_rows) throw std::invalid_argument("joint_entropy: column length mismatch");

  std::vector<std::uint32_t> counts;
  std::vector<std::uint64_t> strides;
  if (strides_fit_u64(cols, strides)) {
    std::unordered_map<std::uint64_t, std::uint32_t> table;
    table.reserve(n_rows * 2);
    for (std::size_t i = 0; i < n_rows; ++i) {
      std::uint64_t key = 0;
      for (std::size_t c = 0; c < cols.size(); ++c)
        key += strides[c] * static_cast<std::uint64_t>(cols[c].codes[i]);
      ++table[key];
    }
    counts.reserve(table.size());
    for (const auto& [key, cnt] : table) counts.push_back(cnt);
  } else {
    std::map<std::vector<std::int32_t>, std::uint32_t> table;
    std::vector<std::int32_t> key(cols.size());
    for (std::size_t i = 0; i < n_rows; ++i) {
      for (std::size_t c = 0; c < cols.size(); ++c) key[c] = cols[c].codes[i];
      ++table[key];
    }
    counts.reserve(table.size());
    for (const auto& [k, cnt] : table) counts.push_back(cnt);
  }
  return entropy_from_counts(counts, n_rows);
}

namespace {

std::vector<ColumnRef> refs_for(const DiscretizedView& view, std::span<const std::size_t> cols) {
  std::vector<ColumnRef> refs;
  refs.reserve(cols.size());
  for (std::size_t c : cols) refs.push_back(column_ref(view, c));
  return refs;
}

std::vector<ColumnRef> concat(std::span<const ColumnRef> a, std::span<const ColumnRef> b) {
  std::vector<ColumnRef> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void require_disjoint(std::span<const std::size_t> a, std::span<const std::size_t> b,
                      const char* what) {
  for (std::size_t x : a)
    for (std::size_t y : b)
      if (x == y) throw std::invalid_argument(std::string(what) + ": column sets overlap");
}

bool same_column(const ColumnRef& a, const ColumnRef& b) {
  return a.codes.data() == b.codes.data() && a.codes.size() == b.codes.size();
}

void require_disjoint_refs(std::span<const ColumnRef> a, std::span<const ColumnRef> b,
                           const char* what) {
  for (const auto& x : a)
    for (const auto& y : b)
      if (same_column(x, y)) throw std::invalid_argument(std::string(what) + ": column sets overlap");
}

}  // namespace

double entropy(const DiscretizedView& view, std::span<const std::size_t> cols) {
  const auto refs = refs_for(view, cols);
  return joint_entropy(refs, view.n_rows);
}

double mutual_information_refs(std::span<const ColumnRef> a, std::span<const ColumnRef> b,
                               std::size_t n_rows) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("mutual_information: column sets must be nonempty");
  require_disjoint_refs(a, b, "mutual_information");
  const auto ab = concat(a, b);
  const double mi = joint_entropy(a, n_rows) + joint_entropy(b, n_rows) - joint_entropy(ab, n_rows);
  return mi < 0.0 ? 0.0 : mi;
}

double mutual_information(const DiscretizedView& view, std::span<const std::size_t> a,
                          std::span<const std::size_t> b) {
  require_disjoint(a, b, "mutual_information");
  const auto ra = refs_for(view, a);
  const auto rb = refs_for(view, b);
  return mutual_information_refs(ra, rb, view.n_rows);
}

double conditional_mi_refs(std::span<const ColumnRef> a, std::span<const ColumnRef> b,
                           std::span<const ColumnRef> c, std::size_t n_rows) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("conditional_mi: column sets must be nonempty");
  require_disjoint_refs(a, b, "conditional_mi");
  if (c.empty()) return mutual_information_refs(a, b, n_rows);
  require_disjoint_refs(a, c, "conditional_mi");
  require_disjoint_refs(b, c, "conditional_mi");
  const auto ac = concat(a, c);
  const auto bc = concat(b, c);
  const auto abc = concat(ac, b);
  const double cmi = joint_entropy(ac, n_rows) + joint_entropy(bc, n_rows) -
                     joint_entropy(abc, n_rows) - joint_entropy(c, n_rows);
  return cmi < 0.0 ? 0.0 : cmi;
}

double conditional_mi(const DiscretizedView& view, std::span<const std::size_t> a,
                      std::span<const std::size_t> b, std::span<const std::size_t> c) {
  require_disjoint(a, b, "conditional_mi");
  require_disjoint(a, c, "conditional_mi");
  require_disjoint(b, c, "conditional_mi");
  const auto ra = refs_for(view, a);
  const auto rb = refs_for(view, b);
  const auto rc = refs_for(view, c);
  return conditional_mi_refs(ra, rb, rc, view.n_rows);
}

double interaction_information(const DiscretizedView& view, std::size_t label_col,
                               std::size_t feature_col_k, std::size_t feature_col_j) {
  if (label_col == feature_col_k || label_col == feature_col_j ||
      feature_col_k == feature_col_j)
    throw std::invalid_argument("interaction_information: columns must be distinct");
  const std::size_t k[] = {feature_col_k};
  const std::size_t l[] = {label_col};
  const std::size_t j[] = {feature_col_j};
  return conditional_mi(view, k, l, j) - mutual_information(view, k, l);
}

}  // namespace grouplect
