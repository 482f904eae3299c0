/*
 * (C) Copyright 2026 grouplect developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 *
 * grouplect command line: synthetic data generation, budgeted selection
 * runs, budget sweeps with ML-kNN evaluation, and the exhaustive oracle.
 * Talks to the library through the public C API only.
 */
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "grouplect.h"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitBadInput = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

struct CliError {
  int exit_code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& msg) { throw CliError{code, msg}; }

void check(gfs_status st, const std::string& context) {
  if (st == GFS_OK) return;
  const std::string msg = context + ": " + gfs_last_error();
  switch (st) {
    case GFS_ERR_IO:
    case GFS_ERR_PARSE:
      fail(kExitBadInput, msg);
    default:
      fail(kExitConfig, msg);
  }
}

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

struct DatasetDeleter { void operator()(gfs_dataset* p) const { gfs_dataset_free(p); } };
struct GroupsDeleter { void operator()(gfs_groups* p) const { gfs_groups_free(p); } };
struct TraceDeleter { void operator()(gfs_trace* p) const { gfs_trace_free(p); } };
struct ReportDeleter { void operator()(gfs_report* p) const { gfs_report_free(p); } };
struct OracleDeleter { void operator()(gfs_oracle_result* p) const { gfs_oracle_result_free(p); } };

using DatasetPtr = std::unique_ptr<gfs_dataset, DatasetDeleter>;
using GroupsPtr = std::unique_ptr<gfs_groups, GroupsDeleter>;
using TracePtr = std::unique_ptr<gfs_trace, TraceDeleter>;
using ReportPtr = std::unique_ptr<gfs_report, ReportDeleter>;
using OraclePtr = std::unique_ptr<gfs_oracle_result, OracleDeleter>;

std::string take_json(gfs_status st, char* raw, const std::string& context) {
  check(st, context);
  std::string out(raw);
  gfs_string_free(raw);
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) fail(kExitBadInput, "cannot write '" + path.string() + "'");
  f << content;
  if (!f.flush()) fail(kExitBadInput, "write failed for '" + path.string() + "'");
}

/// Options shared by the selection-running commands.
struct CommonOptions {
  std::string features, labels, groups;
  int bins = 5;
  int order_a = 2;
  int order_b = 1;
  std::string criterion = "cmi";
  std::uint64_t seed = 1;
  bool seed_given = false;
};

void add_input_flags(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--features", o.features, "Features CSV path")->required();
  cmd->add_option("--labels", o.labels, "Labels CSV path")->required();
  cmd->add_option("--groups", o.groups, "Group manifest JSON path")->required();
}

void add_scoring_flags(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--bins", o.bins, "Equal-frequency discretization bins (default 5)");
  cmd->add_option("--order-a", o.order_a, "Lower-bound feature order, 1 or 2 (default 2)");
  cmd->add_option("--order-b", o.order_b, "Label order, 1 or 2 (default 1)");
  cmd->add_option("--criterion", o.criterion, "Score criterion: cmi | lower-bound (default cmi)")
      ->check(CLI::IsMember({"cmi", "lower-bound"}));
}

CLI::Option* add_seed_flag(CLI::App* cmd, CommonOptions& o) {
  return cmd->add_option("--seed", o.seed, "RNG seed (fallback: GROUPLECT_SEED, then 1)");
}

void resolve_seed(CLI::Option* opt, CommonOptions& o) {
  if (opt->count() > 0) return;
  if (const char* env = std::getenv("GROUPLECT_SEED")) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), v);
    if (ec != std::errc() || *ptr != '\0')
      fail(kExitConfig, std::string("GROUPLECT_SEED is not an integer: '") + env + "'");
    o.seed = v;
  }
}

gfs_criterion parse_criterion(const std::string& s) {
  return s == "lower-bound" ? GFS_CRITERION_LOWER_BOUND : GFS_CRITERION_CMI;
}

DatasetPtr load_data(const CommonOptions& o) {
  gfs_dataset* d = nullptr;
  check(gfs_dataset_load(o.features.c_str(), o.labels.c_str(), &d), "loading dataset");
  return DatasetPtr(d);
}

GroupsPtr load_group_manifest(const CommonOptions& o, const gfs_dataset* d) {
  gfs_groups* g = nullptr;
  check(gfs_groups_load(o.groups.c_str(), d, &g), "loading groups");
  return GroupsPtr(g);
}

ordered_json base_manifest(const std::string& command, const CommonOptions& o) {
  ordered_json m;
  m["tool"] = "grouplect";
  m["version"] = gfs_version();
  m["command"] = command;
  ordered_json inputs;
  if (!o.features.empty()) {
    inputs["features"] = o.features;
    inputs["labels"] = o.labels;
    inputs["groups"] = o.groups;
  }
  m["inputs"] = inputs;
  return m;
}

/* ------------------------------------------------------------------ */
/* synth                                                               */

struct SynthOptions {
  std::uint64_t n = 5000;
  double rho = 0.2;
  std::string out_dir;
};

int run_synth(const SynthOptions& so, CommonOptions& co) {
  const std::filesystem::path dir(so.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(kExitBadInput, "cannot create '" + so.out_dir + "': " + ec.message());

  gfs_dataset* d = nullptr;
  gfs_groups* g = nullptr;
  check(gfs_generate_illustrative(static_cast<int64_t>(so.n), so.rho, co.seed, &d, &g),
        "generating data");
  DatasetPtr data(d);
  GroupsPtr groups(g);

  const auto features = dir / "features.csv";
  const auto labels = dir / "labels.csv";
  const auto manifest = dir / "groups.json";
  check(gfs_dataset_save(data.get(), features.string().c_str(), labels.string().c_str()),
        "writing CSVs");
  check(gfs_groups_save(groups.get(), data.get(), manifest.string().c_str()),
        "writing group manifest");

  ordered_json m = base_manifest("synth", co);
  m["options"] = {{"n", so.n}, {"rho", so.rho}, {"seed", co.seed}, {"out", so.out_dir}};
  write_file(dir / "manifest.json", m.dump(2) + "\n");

  std::cout << "wrote " << features.string() << ", " << labels.string() << ", "
            << manifest.string() << "\n";
  return 0;
}

/* ------------------------------------------------------------------ */
/* select                                                              */

struct SelectOptions {
  double budget = 0.0;
  std::string method = "proposed";
  double lambda = 0.0;
  bool lambda_max = false;
  std::string budget_mode = "affordable-only";
  std::string stop_mode = "first-shadow-win";
  double stop_fraction = 0.05;
  std::string out_path = "trace.json";
};

gfs_select_options build_select_options(const SelectOptions& so, const CommonOptions& co) {
  gfs_select_options opts;
  gfs_select_options_init(&opts);
  opts.method = so.method == "proposed" ? GFS_METHOD_PROPOSED : GFS_METHOD_SFS;
  opts.budget = so.budget;
  opts.lambda = so.lambda;
  opts.use_lambda_max = so.lambda_max ? 1 : 0;
  opts.budget_mode = so.budget_mode == "paper-strict" ? GFS_BUDGET_PAPER_STRICT
                                                      : GFS_BUDGET_AFFORDABLE_ONLY;
  opts.stop_mode = so.stop_mode == "fraction-of-wins" ? GFS_STOP_FRACTION_OF_WINS
                                                      : GFS_STOP_FIRST_SHADOW_WIN;
  opts.stop_fraction = so.stop_fraction;
  opts.bins = co.bins;
  opts.order_a = co.order_a;
  opts.order_b = co.order_b;
  opts.criterion = parse_criterion(co.criterion);
  opts.shadow_seed = co.seed;
  return opts;
}

ordered_json select_manifest(const SelectOptions& so, const CommonOptions& co) {
  ordered_json m = base_manifest("select", co);
  m["options"] = {{"budget", so.budget},
                  {"method", so.method},
                  {"lambda", so.lambda},
                  {"lambda_max", so.lambda_max},
                  {"budget_mode", so.budget_mode},
                  {"stop_mode", so.stop_mode},
                  {"stop_fraction", so.stop_fraction},
                  {"bins", co.bins},
                  {"order_a", co.order_a},
                  {"order_b", co.order_b},
                  {"criterion", co.criterion},
                  {"seed", co.seed},
                  {"out", so.out_path}};
  return m;
}

const char* stop_reason_name(gfs_stop_reason r) {
  switch (r) {
    case GFS_STOP_BUDGET_EXHAUSTED: return "budget_exhausted";
    case GFS_STOP_SHADOW_STOP: return "shadow_stop";
    case GFS_STOP_POOL_EXHAUSTED: return "pool_exhausted";
    case GFS_STOP_INFEASIBLE: return "infeasible";
  }
  return "unknown";
}

std::string short_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

void print_step_table(const gfs_trace* trace, const gfs_dataset* data) {
  std::string set;
  for (size_t i = 0; i < gfs_trace_step_count(trace); ++i) {
    gfs_step_info s{};
    check(gfs_trace_step(trace, i, &s), "reading trace");
    if (!set.empty()) set += ", ";
    set += gfs_dataset_feature_name(data, s.feature);
    std::ostringstream row;
    row << "Step " << (i + 1) << " (phase " << s.phase << "): {" << set << "}";
    std::string line = row.str();
    if (line.size() < 44) line.append(44 - line.size(), ' ');
    std::cout << line << " score " << short_real(s.score);
    if (s.has_shadow_max) std::cout << "  shadow_max " << short_real(s.shadow_max);
    std::cout << "  cost " << short_real(s.cumulative_cost) << "\n";
  }
  std::cout << "stop: " << stop_reason_name(gfs_trace_stop_reason(trace)) << "\n";
  std::cout << "selected:";
  for (size_t i = 0; i < gfs_trace_selected_count(trace); ++i)
    std::cout << (i ? ", " : " ")
              << gfs_dataset_feature_name(data, gfs_trace_selected_feature(trace, i));
  std::cout << "  (total cost " << format_real(gfs_trace_total_cost(trace)) << ")\n";
}

int run_select(const SelectOptions& so, CommonOptions& co) {
  DatasetPtr data = load_data(co);
  GroupsPtr groups = load_group_manifest(co, data.get());

  const gfs_select_options opts = build_select_options(so, co);
  gfs_trace* t = nullptr;
  check(gfs_select(data.get(), groups.get(), &opts, &t), "selection");
  TracePtr trace(t);

  char* raw = nullptr;
  const gfs_status json_status = gfs_trace_to_json(trace.get(), &raw);
  const std::string trace_json = take_json(json_status, raw, "serializing trace");

  ordered_json out;
  out["manifest"] = select_manifest(so, co);
  out["trace"] = ordered_json::parse(trace_json);
  write_file(so.out_path, out.dump(2) + "\n");

  print_step_table(trace.get(), data.get());
  return gfs_trace_stop_reason(trace.get()) == GFS_STOP_INFEASIBLE ? kExitInfeasible : 0;
}

/* ------------------------------------------------------------------ */
/* sweep                                                               */

struct SweepOptions {
  std::vector<double> budgets;
  std::vector<std::string> methods = {"proposed", "traditional"};
  int repeats = 5;
  double train_fraction = 0.8;
  int knn_k = 10;
  double knn_s = 1.0;
  int jobs = 1;
  std::string out_dir;
};

struct SweepCell {
  double budget;
  std::string method;
  int repeat;
  std::vector<std::pair<std::string, double>> values;  // metric -> value
  std::string status = "ok";
};

void run_sweep_cell(const gfs_dataset* data, const gfs_groups* groups,
                    const SweepOptions& sw, const CommonOptions& co, SweepCell& cell) {
  gfs_dataset *train_raw = nullptr, *valid_raw = nullptr;
  check(gfs_dataset_split(data, sw.train_fraction,
                          co.seed + static_cast<std::uint64_t>(cell.repeat), &train_raw,
                          &valid_raw),
        "splitting");
  DatasetPtr train(train_raw), valid(valid_raw);

  gfs_select_options opts;
  gfs_select_options_init(&opts);
  opts.budget = cell.budget;
  opts.bins = co.bins;
  opts.order_a = co.order_a;
  opts.order_b = co.order_b;
  opts.criterion = parse_criterion(co.criterion);
  opts.shadow_seed = co.seed + static_cast<std::uint64_t>(cell.repeat);
  if (cell.method == "proposed") {
    opts.method = GFS_METHOD_PROPOSED;
  } else if (cell.method == "traditional") {
    opts.method = GFS_METHOD_SFS;
    opts.lambda = 0.0;
  } else if (cell.method == "sfs-lambda-max") {
    opts.method = GFS_METHOD_SFS;
    opts.use_lambda_max = 1;
  } else if (cell.method == "sfs-half-lambda-max") {
    opts.method = GFS_METHOD_SFS;
    double lm = 0.0;
    check(gfs_lambda_max(train.get(), groups, &opts, &lm), "lambda_max");
    opts.lambda = 0.5 * lm;
  } else {
    fail(kExitConfig, "unknown method '" + cell.method + "'");
  }

  gfs_trace* t = nullptr;
  check(gfs_select(train.get(), groups, &opts, &t), "selection");
  TracePtr trace(t);

  std::vector<int64_t> subset;
  for (size_t i = 0; i < gfs_trace_selected_count(trace.get()); ++i)
    subset.push_back(gfs_trace_selected_feature(trace.get(), i));
  if (subset.empty()) {
    cell.status = "error: empty selection";
    return;
  }

  gfs_report* r = nullptr;
  check(gfs_evaluate(train.get(), valid.get(), groups, subset.data(), subset.size(), sw.knn_k,
                     sw.knn_s, &r),
        "evaluation");
  ReportPtr report(r);

  static const char* kMetrics[] = {"hamming_loss", "ranking_loss", "coverage_error",
                                   "zero_one_loss", "subset_accuracy", "micro_f1",
                                   "micro_auc", "total_cost"};
  for (const char* name : kMetrics) {
    double v = 0.0;
    check(gfs_report_metric(report.get(), name, &v), "metric lookup");
    cell.values.emplace_back(name, v);
  }
  cell.values.emplace_back("n_selected", static_cast<double>(subset.size()));
}

int run_sweep(const SweepOptions& sw, CommonOptions& co) {
  if (sw.budgets.empty()) fail(kExitConfig, "sweep needs at least one --budgets value");
  if (sw.repeats < 1) fail(kExitConfig, "--repeats must be positive");

  const std::filesystem::path dir(sw.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(kExitBadInput, "cannot create '" + sw.out_dir + "': " + ec.message());

  DatasetPtr data = load_data(co);
  GroupsPtr groups = load_group_manifest(co, data.get());

  std::vector<SweepCell> cells;
  for (double b : sw.budgets)
    for (const auto& m : sw.methods)
      for (int rep = 0; rep < sw.repeats; ++rep) cells.push_back({b, m, rep, {}, "ok"});

  // Cells are independent and deterministic; output order never depends on
  // the execution schedule.
  std::size_t next = 0;
  std::mutex next_mutex;
  auto worker = [&] {
    while (true) {
      std::size_t i;
      {
        std::lock_guard<std::mutex> lock(next_mutex);
        if (next >= cells.size()) return;
        i = next++;
      }
      try {
        run_sweep_cell(data.get(), groups.get(), sw, co, cells[i]);
      } catch (const CliError& e) {
        cells[i].status = "error: " + e.message;
      } catch (const std::exception& e) {
        cells[i].status = std::string("error: ") + e.what();
      }
    }
  };
  const int jobs = std::max(1, sw.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Long-format rows, sorted for stable bytes.
  struct Row {
    double budget;
    std::string method;
    int repeat;
    std::string metric;
    std::string value;
    std::string status;
  };
  std::vector<Row> rows;
  for (const auto& c : cells) {
    if (c.status != "ok") {
      rows.push_back({c.budget, c.method, c.repeat, "error", "", c.status});
      continue;
    }
    for (const auto& [metric, value] : c.values)
      rows.push_back({c.budget, c.method, c.repeat, metric, format_real(value), "ok"});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.budget, a.method, a.repeat, a.metric) <
           std::tie(b.budget, b.method, b.repeat, b.metric);
  });
  std::ostringstream csv;
  csv << "budget,method,repeat,metric,value,status\n";
  for (const auto& r : rows)
    csv << format_real(r.budget) << "," << r.method << "," << r.repeat << "," << r.metric
        << "," << r.value << "," << r.status << "\n";
  write_file(dir / "metrics.csv", csv.str());

  // Mean and sample sd per (budget, method, metric) over ok repeats.
  struct Agg {
    std::vector<double> values;
  };
  std::map<std::tuple<double, std::string, std::string>, Agg> agg;
  for (const auto& c : cells) {
    if (c.status != "ok") continue;
    for (const auto& [metric, value] : c.values)
      agg[{c.budget, c.method, metric}].values.push_back(value);
  }
  std::ostringstream sum;
  sum << "budget,method,metric,mean,sd\n";
  for (const auto& [key, a] : agg) {
    const auto& [budget, method, metric] = key;
    double mean = 0.0;
    for (double v : a.values) mean += v;
    mean /= static_cast<double>(a.values.size());
    double sd = 0.0;
    if (a.values.size() > 1) {
      for (double v : a.values) sd += (v - mean) * (v - mean);
      sd = std::sqrt(sd / static_cast<double>(a.values.size() - 1));
    }
    sum << format_real(budget) << "," << method << "," << metric << "," << format_real(mean)
        << "," << format_real(sd) << "\n";
  }
  write_file(dir / "summary.csv", sum.str());

  ordered_json m = base_manifest("sweep", co);
  m["options"] = {{"budgets", sw.budgets},
                  {"methods", sw.methods},
                  {"repeats", sw.repeats},
                  {"train_fraction", sw.train_fraction},
                  {"knn_k", sw.knn_k},
                  {"knn_s", sw.knn_s},
                  {"bins", co.bins},
                  {"order_a", co.order_a},
                  {"order_b", co.order_b},
                  {"criterion", co.criterion},
                  {"seed", co.seed},
                  {"out", sw.out_dir}};
  write_file(dir / "manifest.json", m.dump(2) + "\n");

  std::cout << "wrote " << (dir / "metrics.csv").string() << " (" << rows.size()
            << " rows) and " << (dir / "summary.csv").string() << "\n";
  return 0;
}

/* ------------------------------------------------------------------ */
/* oracle                                                              */

struct OracleOptions {
  double budget = 0.0;
  int max_p = 15;
  std::string out_path = "oracle.json";
};

int run_oracle(const OracleOptions& oo, CommonOptions& co) {
  DatasetPtr data = load_data(co);
  GroupsPtr groups = load_group_manifest(co, data.get());

  gfs_oracle_result* raw = nullptr;
  const gfs_status st =
      gfs_oracle(data.get(), groups.get(), oo.budget, co.bins, oo.max_p, &raw);
  if (st == GFS_ERR_REFUSED) fail(kExitConfig, gfs_last_error());
  check(st, "oracle");
  OraclePtr oracle(raw);

  auto subset_names = [&](const std::vector<int64_t>& subset) {
    ordered_json names = ordered_json::array();
    for (int64_t j : subset) names.push_back(gfs_dataset_feature_name(data.get(), j));
    return names;
  };

  std::vector<int64_t> oracle_subset;
  for (size_t i = 0; i < gfs_oracle_subset_count(oracle.get()); ++i)
    oracle_subset.push_back(gfs_oracle_subset_feature(oracle.get(), i));

  ordered_json out;
  ordered_json m = base_manifest("oracle", co);
  m["options"] = {{"budget", oo.budget},
                  {"max_p", oo.max_p},
                  {"bins", co.bins},
                  {"seed", co.seed},
                  {"out", oo.out_path}};
  out["manifest"] = m;
  out["oracle"] = {{"subset", subset_names(oracle_subset)},
                   {"mi", gfs_oracle_mi(oracle.get())},
                   {"cost", gfs_oracle_cost(oracle.get())}};

  // Greedy methods at the same budget, for comparison.
  ordered_json comparison;
  for (const std::string method : {"proposed", "traditional"}) {
    gfs_select_options opts;
    gfs_select_options_init(&opts);
    opts.method = method == "proposed" ? GFS_METHOD_PROPOSED : GFS_METHOD_SFS;
    opts.budget = oo.budget;
    opts.bins = co.bins;
    opts.order_a = co.order_a;
    opts.order_b = co.order_b;
    opts.criterion = parse_criterion(co.criterion);
    opts.shadow_seed = co.seed;
    gfs_trace* t = nullptr;
    check(gfs_select(data.get(), groups.get(), &opts, &t), "selection");
    TracePtr trace(t);
    std::vector<int64_t> subset;
    for (size_t i = 0; i < gfs_trace_selected_count(trace.get()); ++i)
      subset.push_back(gfs_trace_selected_feature(trace.get(), i));
    double mi = 0.0;
    check(gfs_subset_mi(data.get(), subset.data(), subset.size(), co.bins, &mi), "subset MI");
    double cost = 0.0;
    check(gfs_subset_cost(groups.get(), subset.data(), subset.size(), &cost), "subset cost");
    comparison[method] = {{"subset", subset_names(subset)}, {"mi", mi}, {"cost", cost}};
  }
  out["comparison"] = comparison;
  write_file(oo.out_path, out.dump(2) + "\n");

  std::cout << "oracle MI " << format_real(gfs_oracle_mi(oracle.get())) << " at cost "
            << format_real(gfs_oracle_cost(oracle.get())) << "; wrote " << oo.out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grouplect: cost-constrained multi-label group feature selection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gfs_version()));

  CommonOptions co;

  auto* synth = app.add_subcommand("synth", "Generate the synthetic benchmark dataset");
  SynthOptions so;
  synth->add_option("--n", so.n, "Number of rows (default 5000)");
  synth->add_option("--rho", so.rho, "Corrupted fraction for the copy columns (default 0.2)")
      ->check(CLI::Range(0.0, 1.0));
  synth->add_option("--out", so.out_dir, "Output directory")->required();
  auto* synth_seed = add_seed_flag(synth, co);

  auto* select = app.add_subcommand("select", "Run one budgeted selection");
  SelectOptions sel;
  add_input_flags(select, co);
  select->add_option("--budget", sel.budget, "Budget")->required();
  select->add_option("--method", sel.method, "proposed | sfs (default proposed)")
      ->check(CLI::IsMember({"proposed", "sfs"}));
  auto* lambda_opt = select->add_option("--lambda", sel.lambda, "SFS cost penalty (default 0)");
  select->add_flag("--lambda-max", sel.lambda_max, "Use the computed maximal penalty")
      ->excludes(lambda_opt);
  select->add_option("--budget-mode", sel.budget_mode,
                     "affordable-only | paper-strict (default affordable-only)")
      ->check(CLI::IsMember({"affordable-only", "paper-strict"}));
  select->add_option("--stop-mode", sel.stop_mode,
                     "first-shadow-win | fraction-of-wins (default first-shadow-win)")
      ->check(CLI::IsMember({"first-shadow-win", "fraction-of-wins"}));
  select->add_option("--stop-fraction", sel.stop_fraction,
                     "Win fraction for fraction-of-wins (default 0.05)");
  add_scoring_flags(select, co);
  auto* select_seed = add_seed_flag(select, co);
  select->add_option("--out", sel.out_path, "Trace JSON path (default trace.json)");

  auto* sweep = app.add_subcommand("sweep", "Budget sweep with ML-kNN evaluation");
  SweepOptions sw;
  add_input_flags(sweep, co);
  sweep->add_option("--budgets", sw.budgets, "Budgets to sweep")->required()->delimiter(',');
  sweep->add_option("--methods", sw.methods,
                    "proposed | traditional | sfs-lambda-max | sfs-half-lambda-max")
      ->delimiter(',')
      ->check(CLI::IsMember({"proposed", "traditional", "sfs-lambda-max", "sfs-half-lambda-max"}));
  sweep->add_option("--repeats", sw.repeats, "Split repetitions per cell (default 5)");
  sweep->add_option("--train-fraction", sw.train_fraction, "Training fraction (default 0.8)");
  sweep->add_option("--knn-k", sw.knn_k, "ML-kNN neighbour count (default 10)");
  sweep->add_option("--knn-s", sw.knn_s, "ML-kNN smoothing (default 1.0)");
  sweep->add_option("--jobs", sw.jobs, "Concurrent sweep cells (default 1)");
  add_scoring_flags(sweep, co);
  auto* sweep_seed = add_seed_flag(sweep, co);
  sweep->add_option("--out", sw.out_dir, "Output directory")->required();

  auto* oracle = app.add_subcommand("oracle", "Exhaustive oracle within budget");
  OracleOptions oo;
  add_input_flags(oracle, co);
  oracle->add_option("--budget", oo.budget, "Budget")->required();
  oracle->add_option("--max-p", oo.max_p, "Refusal limit on feature count (default 15)");
  add_scoring_flags(oracle, co);
  auto* oracle_seed = add_seed_flag(oracle, co);
  oracle->add_option("--out", oo.out_path, "Oracle JSON path (default oracle.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (synth->parsed()) {
      resolve_seed(synth_seed, co);
      return run_synth(so, co);
    }
    if (select->parsed()) {
      resolve_seed(select_seed, co);
      return run_select(sel, co);
    }
    if (sweep->parsed()) {
      resolve_seed(sweep_seed, co);
      return run_sweep(sw, co);
    }
    if (oracle->parsed()) {
      resolve_seed(oracle_seed, co);
      return run_oracle(oo, co);
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return 0;
}
