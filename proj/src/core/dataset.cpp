/*
 * (C) Copyright 2026 grouplect developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "core/common.hpp"

namespace grouplect {

void Dataset::validate() const {
  if (features.empty()) throw std::invalid_argument("dataset: needs at least one feature");
  if (labels.empty()) throw std::invalid_argument("dataset: needs at least one label");
  const std::size_t n = features[0].size();
  if (n == 0) throw std::invalid_argument("dataset: needs at least one row");
  for (const auto& col : features)
    if (col.size() != n) throw std::invalid_argument("dataset: ragged feature columns");
  for (const auto& col : labels) {
    if (col.size() != n) throw std::invalid_argument("dataset: row count mismatch between features and labels");
    for (std::uint8_t v : col)
      if (v > 1) throw std::invalid_argument("dataset: non-binary label");
  }
  if (feature_names.size() != features.size())
    throw std::invalid_argument("dataset: feature name count mismatch");
  if (label_names.size() != labels.size())
    throw std::invalid_argument("dataset: label name count mismatch");
  std::unordered_set<std::string> seen;
  for (const auto& s : feature_names)
    if (!seen.insert(s).second) throw std::invalid_argument("dataset: duplicate feature name '" + s + "'");
  seen.clear();
  for (const auto& s : label_names)
    if (!seen.insert(s).second) throw std::invalid_argument("dataset: duplicate label name '" + s + "'");
}

std::size_t Dataset::feature_index(const std::string& name) const {
  for (std::size_t j = 0; j < feature_names.size(); ++j)
    if (feature_names[j] == name) return j;
  throw std::invalid_argument("dataset: unknown feature name '" + name + "'");
}

namespace {

Dataset take_rows(const Dataset& d, const std::vector<std::size_t>& rows) {
  Dataset out;
  out.feature_names = d.feature_names;
  out.label_names = d.label_names;
  out.features.resize(d.n_features());
  out.labels.resize(d.n_labels());
  for (std::size_t j = 0; j < d.n_features(); ++j) {
    out.features[j].reserve(rows.size());
    for (std::size_t i : rows) out.features[j].push_back(d.features[j][i]);
  }
  for (std::size_t l = 0; l < d.n_labels(); ++l) {
    out.labels[l].reserve(rows.size());
    for (std::size_t i : rows) out.labels[l].push_back(d.labels[l][i]);
  }
  return out;
}

}  // namespace

std::pair<Dataset, Dataset> train_valid_split(const Dataset& d, double train_fraction,
                                              std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::invalid_argument("train_valid_split: fraction must be in (0, 1)");
  const std::size_t n = d.n_rows();
  const auto n_train = static_cast<std::size_t>(std::floor(static_cast<double>(n) * train_fraction));
  if (n_train == 0 || n_train == n)
    throw std::invalid_argument("train_valid_split: fraction produces an empty part");

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(idx.data(), idx.size());

  std::vector<std::size_t> train_rows(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::vector<std::size_t> valid_rows(idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(valid_rows.begin(), valid_rows.end());
  return {take_rows(d, train_rows), take_rows(d, valid_rows)};
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  cells.push_back(cur);
  return cells;
}

[[noreturn]] void csv_fail(const std::string& path, std::size_t line_no, const std::string& what) {
  throw ParseError(path + ":" + std::to_string(line_no) + ": " + what);
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  CsvTable t;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      t.header = split_csv_line(line);
      if (t.header.empty() || (t.header.size() == 1 && t.header[0].empty()))
        csv_fail(path, line_no, "empty header");
      continue;
    }
    if (line.empty() && in.eof()) break;
    auto cells = split_csv_line(line);
    if (cells.size() != t.header.size())
      csv_fail(path, line_no, "expected " + std::to_string(t.header.size()) + " cells, got " +
                                  std::to_string(cells.size()));
    t.rows.push_back(std::move(cells));
  }
  if (t.header.empty()) csv_fail(path, 1, "missing header row");
  return t;
}

double parse_real(const std::string& cell, const std::string& path, std::size_t line_no) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) csv_fail(path, line_no, "bad real value '" + cell + "'");
  return v;
}

}  // namespace

Dataset load_dataset(const std::string& features_path, const std::string& labels_path) {
  const CsvTable ft = read_csv(features_path);
  const CsvTable lt = read_csv(labels_path);
  if (ft.rows.size() != lt.rows.size())
    throw ParseError("row count mismatch: '" + features_path + "' has " +
                     std::to_string(ft.rows.size()) + " rows, '" + labels_path + "' has " +
                     std::to_string(lt.rows.size()));

  Dataset d;
  d.feature_names = ft.header;
  d.label_names = lt.header;
  d.features.assign(ft.header.size(), {});
  d.labels.assign(lt.header.size(), {});
  for (auto& col : d.features) col.reserve(ft.rows.size());
  for (auto& col : d.labels) col.reserve(lt.rows.size());

  for (std::size_t i = 0; i < ft.rows.size(); ++i) {
    for (std::size_t j = 0; j < ft.header.size(); ++j)
      d.features[j].push_back(parse_real(ft.rows[i][j], features_path, i + 2));
    for (std::size_t l = 0; l < lt.header.size(); ++l) {
      const std::string& cell = lt.rows[i][l];
      if (cell == "0")
        d.labels[l].push_back(0);
      else if (cell == "1")
        d.labels[l].push_back(1);
      else
        csv_fail(labels_path, i + 2, "non-binary label '" + cell + "'");
    }
  }
  d.validate();
  return d;
}

namespace {

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_real failed");
  return std::string(buf, ptr);
}

}  // namespace

void save_dataset(const Dataset& d, const std::string& features_path,
                  const std::string& labels_path) {
  d.validate();
  std::ofstream ff(features_path);
  if (!ff) throw IoError("cannot write '" + features_path + "'");
  for (std::size_t j = 0; j < d.n_features(); ++j)
    ff << (j ? "," : "") << d.feature_names[j];
  ff << "\n";
  for (std::size_t i = 0; i < d.n_rows(); ++i) {
    for (std::size_t j = 0; j < d.n_features(); ++j)
      ff << (j ? "," : "") << format_real(d.features[j][i]);
    ff << "\n";
  }
  if (!ff.flush()) throw IoError("write failed for '" + features_path + "'");

  std::ofstream lf(labels_path);
  if (!lf) throw IoError("cannot write '" + labels_path + "'");
  for (std::size_t l = 0; l < d.n_labels(); ++l)
    lf << (l ? "," : "") << d.label_names[l];
  lf << "\n";
  for (std::size_t i = 0; i < d.n_rows(); ++i) {
    for (std::size_t l = 0; l < d.n_labels(); ++l)
      lf << (l ? "," : "") << static_cast<int>(d.labels[l][i]);
    lf << "\n";
  }
  if (!lf.flush()) throw IoError("write failed for '" + labels_path + "'");
}

}  // namespace grouplect
