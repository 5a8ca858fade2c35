#pragma once

#include "acara/instances.hpp"
#include "acara/solver.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace acara {

struct ExperimentConfig {
  std::string instance = "random";  // random | rank1 | euclid | slack | separable | custom-file
  std::string custom_file;
  int d = 5;
  int n = 1;
  double p = 2.0;
  NormKind kind = NormKind::lp;
  std::vector<Method> methods = {Method::ordered, Method::greedy};
  int samples = 20;
  std::optional<long long> k_max = 1000;
  std::optional<double> epsilon;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  int atom_count = 32;  // oracle size for the separable instance
  int mix_terms = 3;    // atoms mixed into the separable target
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg);
/// Reads a JSON config file; the ACARA_OUT_DIR environment variable overrides
/// the configured output directory.
ExperimentConfig load_config(const std::string& path);

struct SampleRun {
  Method method = Method::ordered;
  int sample = 0;
  std::uint64_t seed = 0;
  bool infeasible = false;
  std::string infeasible_reason;
  RunTrace trace;
};

struct MethodSeries {
  Method method = Method::ordered;
  std::vector<double> mean;    // indexed by k-1
  std::vector<double> stddev;
  std::vector<int> count;      // samples contributing at each k
};

struct ExperimentReport {
  ExperimentConfig config;
  double diameter = 0.0;
  std::vector<SampleRun> runs;
  std::vector<MethodSeries> series;
  std::vector<double> envelope;  // error_bound(k, diam, p) per k
  long long max_k = 0;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Writes trace_<i>.csv / trace_<i>.json per run plus report.json,
/// aggregate.csv and plot.svg. Returns the number of infeasible runs.
int write_report_files(const ExperimentReport& report, const std::string& out_dir);

struct ScanRow {
  int d = 0;
  long long achieved_k = 0;
  int witness_rank = 0;        // distinct atoms used, the nn-rank witness
  long long budget = 0;
  double achieved_error = 0.0;
  double witness_error = 0.0;  // recomputed from the returned combination
  // a nonnegative witness (nonnegative atoms and weights) bounds the
  // approximate rank and psd-rank as well as the nonnegative rank
  bool nn_witness_valid = false;
  std::optional<double> lower_bound_log2d;
  bool feasible = true;
};

struct ScanResult {
  std::string family;
  double epsilon = 0.0;
  double p = 2.0;
  Method method = Method::greedy;
  std::uint64_t seed = 0;
  std::vector<ScanRow> rows;
};

/// Runs the entrywise-norm solver on basis atoms for each dimension and
/// reports the achieved witness size against the dimension-free budget.
ScanResult run_separation_scan(const std::string& family, const std::vector<int>& dims,
                               double epsilon, double p, Method method, std::uint64_t seed);

std::string scan_csv(const ScanResult& scan);
nlohmann::ordered_json scan_json(const ScanResult& scan);

/// Log-log plot of the mean error per iteration with one-sigma bands, solid
/// vs dashed per method and the k^{-1/2} guide line.
std::string emit_svg(const ExperimentReport& report);

}  // namespace acara
