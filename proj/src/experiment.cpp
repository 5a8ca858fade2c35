#include "acara/experiment.hpp"

#include "acara/gauge.hpp"
#include "acara/rng.hpp"
#include "acara/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

namespace acara {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  const std::vector<std::string> known = {"instance", "custom_file", "d", "n", "p",
                                          "norm_kind", "methods", "samples", "k_max", "epsilon",
                                          "seed", "out_dir", "atom_count", "mix_terms"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end())
      throw std::invalid_argument("config: unknown key '" + it.key() + "'");

  if (j.contains("instance")) cfg.instance = j.at("instance").get<std::string>();
  if (j.contains("custom_file")) cfg.custom_file = j.at("custom_file").get<std::string>();
  if (j.contains("d")) cfg.d = j.at("d").get<int>();
  if (j.contains("n")) cfg.n = j.at("n").get<int>();
  if (j.contains("p")) cfg.p = j.at("p").get<double>();
  if (j.contains("norm_kind")) cfg.kind = norm_kind_from_string(j.at("norm_kind").get<std::string>());
  if (j.contains("methods")) {
    cfg.methods.clear();
    for (const auto& m : j.at("methods")) cfg.methods.push_back(method_from_string(m.get<std::string>()));
    if (cfg.methods.empty()) throw std::invalid_argument("config: methods must be nonempty");
  }
  if (j.contains("samples")) cfg.samples = j.at("samples").get<int>();
  if (j.contains("k_max")) {
    if (j.at("k_max").is_null())
      cfg.k_max.reset();
    else
      cfg.k_max = j.at("k_max").get<long long>();
  }
  if (j.contains("epsilon")) {
    if (j.at("epsilon").is_null())
      cfg.epsilon.reset();
    else
      cfg.epsilon = j.at("epsilon").get<double>();
  }
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
  if (j.contains("atom_count")) cfg.atom_count = j.at("atom_count").get<int>();
  if (j.contains("mix_terms")) cfg.mix_terms = j.at("mix_terms").get<int>();

  if (cfg.samples < 1) throw std::invalid_argument("config: samples >= 1 required");
  if (cfg.d < 1) throw std::invalid_argument("config: d >= 1 required");
  if (!cfg.k_max && !cfg.epsilon) throw std::invalid_argument("config: need k_max or epsilon");
  if (!p_in_range(cfg.p, cfg.kind))
    throw std::invalid_argument("config: (p, norm_kind) outside the solver range");
  const std::vector<std::string> instances = {"random", "rank1",     "euclid",
                                              "slack",  "separable", "custom-file"};
  if (std::find(instances.begin(), instances.end(), cfg.instance) == instances.end())
    throw std::invalid_argument("config: unknown instance '" + cfg.instance + "'");
  if (cfg.instance == "custom-file" && cfg.custom_file.empty())
    throw std::invalid_argument("config: custom-file instance needs custom_file");
  if (cfg.instance == "separable" && cfg.kind != NormKind::schatten)
    throw std::invalid_argument("config: separable instance runs in schatten mode");
  return cfg;
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["instance"] = cfg.instance;
  if (!cfg.custom_file.empty()) j["custom_file"] = cfg.custom_file;
  j["d"] = cfg.d;
  j["n"] = cfg.n;
  j["p"] = cfg.p;
  j["norm_kind"] = to_string(cfg.kind);
  std::vector<std::string> methods;
  for (Method m : cfg.methods) methods.push_back(to_string(m));
  j["methods"] = methods;
  j["samples"] = cfg.samples;
  if (cfg.k_max)
    j["k_max"] = *cfg.k_max;
  else
    j["k_max"] = nullptr;
  if (cfg.epsilon)
    j["epsilon"] = *cfg.epsilon;
  else
    j["epsilon"] = nullptr;
  j["seed"] = cfg.seed;
  j["out_dir"] = cfg.out_dir;
  j["atom_count"] = cfg.atom_count;
  j["mix_terms"] = cfg.mix_terms;
  return j;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  nlohmann::json j;
  in >> j;
  ExperimentConfig cfg = config_from_json(j);
  if (const char* override_dir = std::getenv("ACARA_OUT_DIR"))
    if (*override_dir) cfg.out_dir = override_dir;
  return cfg;
}

namespace {

struct Problem {
  ComplexMatrix target;
  AtomOracle oracle;
};

Problem build_problem(const ExperimentConfig& cfg, std::uint64_t sample_seed) {
  Problem prob;
  if (cfg.instance == "separable") {
    const std::vector<int> dims(std::size_t(cfg.n) + 1, cfg.d);
    prob.oracle = product_psd_atoms(dims, cfg.p, cfg.atom_count, cfg.seed, false);
    const int terms = std::min<int>(cfg.mix_terms, int(prob.oracle.size()));
    std::mt19937_64 gen(sample_seed);
    std::vector<double> weights(static_cast<std::size_t>(terms));
    double mass = 0.0;
    do {
      mass = 0.0;
      for (double& w : weights) {
        w = uniform01(gen);
        mass += w;
      }
    } while (mass == 0.0);
    prob.target = ComplexMatrix::Zero(prob.oracle.atoms[0].value.rows(),
                                      prob.oracle.atoms[0].value.cols());
    for (int t = 0; t < terms; ++t)
      prob.target += (weights[std::size_t(t)] / mass) * prob.oracle.atoms[std::size_t(t)].value;
    return prob;
  }

  NnTensor instance;
  if (cfg.instance == "random")
    instance = build_random_instance(cfg.d, sample_seed);
  else if (cfg.instance == "rank1")
    instance = build_rank1_instance(cfg.d, sample_seed);
  else if (cfg.instance == "euclid")
    instance = build_euclid_instance(cfg.d);
  else if (cfg.instance == "slack")
    instance = build_slack_instance(cfg.d);
  else {  // custom-file
    std::ifstream in(cfg.custom_file);
    if (!in) throw std::invalid_argument("config: cannot open tensor file '" + cfg.custom_file + "'");
    instance = parse_nn_tensor(in);
    if (instance.n != 1) throw std::invalid_argument("custom tensor must have n = 1");
  }
  prob.target = instance.as_matrix();
  prob.oracle = basis_atoms(1, instance.d);
  if (cfg.kind == NormKind::schatten) {
    // run on the diagonal correspondence so the Schatten ball is meaningful
    const DiagonalMatrix sigma = diag_correspondence(instance);
    prob.target = sigma.to_dense();
    prob.oracle = diagonal_projector_atoms({instance.d, instance.d});
  }
  return prob;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  ExperimentReport report;
  report.config = cfg;

  StopRule stop{cfg.epsilon, cfg.k_max};
  const int samples = cfg.samples;

  for (Method method : cfg.methods) {
    std::vector<std::future<SampleRun>> futures;
    futures.reserve(std::size_t(samples));
    for (int s = 0; s < samples; ++s) {
      futures.push_back(std::async(std::launch::async, [&, method, s]() {
        SampleRun run;
        run.method = method;
        run.sample = s;
        run.seed = cfg.seed + std::uint64_t(s);
        try {
          const Problem prob = build_problem(cfg, run.seed);
          const SolveResult solved =
              approx_caratheodory(prob.target, prob.oracle, cfg.p, cfg.kind, method, stop, run.seed);
          run.trace = solved.trace;
        } catch (const SolverInfeasible& e) {
          run.infeasible = true;
          run.infeasible_reason = e.what();
        }
        return run;
      }));
    }
    for (auto& f : futures) report.runs.push_back(f.get());
  }

  for (const SampleRun& run : report.runs)
    if (!run.infeasible) {
      report.max_k = std::max(report.max_k, run.trace.rows.back().k);
      report.diameter = run.trace.meta.diameter;
    }

  for (Method method : cfg.methods) {
    MethodSeries series;
    series.method = method;
    series.mean.assign(std::size_t(report.max_k), 0.0);
    series.stddev.assign(std::size_t(report.max_k), 0.0);
    series.count.assign(std::size_t(report.max_k), 0);
    for (const SampleRun& run : report.runs) {
      if (run.method != method || run.infeasible) continue;
      for (const TraceRow& row : run.trace.rows) {
        series.mean[std::size_t(row.k - 1)] += row.error;
        series.count[std::size_t(row.k - 1)] += 1;
      }
    }
    for (std::size_t i = 0; i < series.mean.size(); ++i)
      if (series.count[i] > 0) series.mean[i] /= series.count[i];
    for (const SampleRun& run : report.runs) {
      if (run.method != method || run.infeasible) continue;
      for (const TraceRow& row : run.trace.rows) {
        const double dev = row.error - series.mean[std::size_t(row.k - 1)];
        series.stddev[std::size_t(row.k - 1)] += dev * dev;
      }
    }
    for (std::size_t i = 0; i < series.mean.size(); ++i)
      if (series.count[i] > 0) series.stddev[i] = std::sqrt(series.stddev[i] / series.count[i]);
    report.series.push_back(std::move(series));
  }

  report.envelope.resize(std::size_t(report.max_k));
  for (long long k = 1; k <= report.max_k; ++k)
    report.envelope[std::size_t(k - 1)] = error_bound(k, report.diameter, cfg.p, cfg.kind);
  return report;
}

int write_report_files(const ExperimentReport& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  int infeasible = 0;
  nlohmann::ordered_json runs_json = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < report.runs.size(); ++r) {
    const SampleRun& run = report.runs[r];
    const std::string stem = "trace_" + std::to_string(r);
    nlohmann::ordered_json meta;
    meta["method"] = to_string(run.method);
    meta["sample"] = run.sample;
    meta["sample_seed"] = run.seed;
    meta["infeasible"] = run.infeasible;
    if (run.infeasible) {
      ++infeasible;
      meta["reason"] = run.infeasible_reason;
    } else {
      std::ofstream csv(fs::path(out_dir) / (stem + ".csv"), std::ios::binary);
      csv << trace_csv(run.trace);
      meta["solver"] = nlohmann::ordered_json::parse(trace_metadata_json(run.trace));
    }
    std::ofstream mf(fs::path(out_dir) / (stem + ".json"), std::ios::binary);
    mf << meta.dump(2) << "\n";

    nlohmann::ordered_json entry;
    entry["file"] = stem + ".csv";
    entry["method"] = to_string(run.method);
    entry["sample"] = run.sample;
    entry["sample_seed"] = run.seed;
    entry["infeasible"] = run.infeasible;
    if (!run.infeasible) {
      entry["k"] = run.trace.rows.back().k;
      entry["final_error"] = run.trace.rows.back().error;
    }
    runs_json.push_back(entry);
  }

  nlohmann::ordered_json j;
  j["config"] = config_to_json(report.config);
  j["diameter"] = report.diameter;
  j["max_k"] = report.max_k;
  j["runs"] = runs_json;
  for (const MethodSeries& series : report.series) {
    nlohmann::ordered_json s;
    s["mean"] = series.mean;
    s["stddev"] = series.stddev;
    s["count"] = series.count;
    j["series"][to_string(series.method)] = s;
  }
  j["envelope"] = report.envelope;
  std::ofstream rf(fs::path(out_dir) / "report.json", std::ios::binary);
  rf << j.dump(2) << "\n";

  std::ostringstream agg;
  agg << "k,envelope";
  for (const MethodSeries& series : report.series)
    agg << ",mean_" << to_string(series.method) << ",std_" << to_string(series.method) << ",count_"
        << to_string(series.method);
  agg << "\n";
  for (long long k = 1; k <= report.max_k; ++k) {
    agg << k << "," << fmt17(report.envelope[std::size_t(k - 1)]);
    for (const MethodSeries& series : report.series)
      agg << "," << fmt17(series.mean[std::size_t(k - 1)]) << ","
          << fmt17(series.stddev[std::size_t(k - 1)]) << "," << series.count[std::size_t(k - 1)];
    agg << "\n";
  }
  std::ofstream af(fs::path(out_dir) / "aggregate.csv", std::ios::binary);
  af << agg.str();

  std::ofstream sf(fs::path(out_dir) / "plot.svg", std::ios::binary);
  sf << emit_svg(report);
  return infeasible;
}

ScanResult run_separation_scan(const std::string& family, const std::vector<int>& dims,
                               double epsilon, double p, Method method, std::uint64_t seed) {
  if (family != "euclid" && family != "slack")
    throw std::invalid_argument("scan: family must be euclid or slack");
  if (dims.empty()) throw std::invalid_argument("scan: need at least one dimension");
  ScanResult scan;
  scan.family = family;
  scan.epsilon = epsilon;
  scan.p = p;
  scan.method = method;
  scan.seed = seed;

  const RankBudget budget = budget_nn(epsilon, p, 1.0, 1);
  for (int d : dims) {
    ScanRow row;
    row.d = d;
    row.budget = budget.value;
    const NnTensor instance = family == "euclid" ? build_euclid_instance(d) : build_slack_instance(d);
    const ComplexMatrix target = instance.as_matrix();
    const AtomOracle oracle = basis_atoms(1, d);
    StopRule stop;
    stop.epsilon = epsilon;
    stop.k_max = budget.value;
    try {
      const SolveResult solved =
          approx_caratheodory(target, oracle, p, NormKind::lp, method, stop, seed);
      row.achieved_k = solved.k;
      row.witness_rank = rank_from_combination(solved.combination, build_line(1));
      row.achieved_error = solved.final_error;
      row.witness_error = lp_norm(ComplexMatrix(solved.combination.evaluate() - target), p);
      row.nn_witness_valid = solved.combination.is_convex();
      for (const ComplexMatrix& atom : solved.combination.atoms)
        for (Index c = 0; c < atom.cols() && row.nn_witness_valid; ++c)
          for (Index r = 0; r < atom.rows() && row.nn_witness_valid; ++r)
            if (atom(r, c).real() < 0.0 || std::abs(atom(r, c).imag()) > 0.0)
              row.nn_witness_valid = false;
    } catch (const SolverInfeasible&) {
      row.feasible = false;
    }
    if (family == "euclid") row.lower_bound_log2d = std::log2(double(d));
    scan.rows.push_back(row);
  }
  return scan;
}

std::string scan_csv(const ScanResult& scan) {
  std::ostringstream os;
  os << "d,achieved_k,witness_rank,budget,achieved_error,witness_error,nn_rank_lower_log2d\n";
  for (const ScanRow& row : scan.rows) {
    os << row.d << "," << row.achieved_k << "," << row.witness_rank << "," << row.budget << ","
       << fmt17(row.achieved_error) << "," << fmt17(row.witness_error) << ",";
    if (row.lower_bound_log2d) os << fmt17(*row.lower_bound_log2d);
    os << "\n";
  }
  return os.str();
}

nlohmann::ordered_json scan_json(const ScanResult& scan) {
  nlohmann::ordered_json j;
  j["family"] = scan.family;
  j["epsilon"] = scan.epsilon;
  j["p"] = scan.p;
  j["method"] = to_string(scan.method);
  j["seed"] = scan.seed;
  j["rows"] = nlohmann::ordered_json::array();
  for (const ScanRow& row : scan.rows) {
    nlohmann::ordered_json r;
    r["d"] = row.d;
    r["feasible"] = row.feasible;
    r["achieved_k"] = row.achieved_k;
    r["witness_rank"] = row.witness_rank;
    r["budget"] = row.budget;
    r["nn_witness_valid"] = row.nn_witness_valid;
    if (row.nn_witness_valid)
      r["witness_bounds"] = {"nn-rank", "rank", "psd-rank"};
    r["achieved_error"] = row.achieved_error;
    r["witness_error"] = row.witness_error;
    if (row.lower_bound_log2d)
      r["nn_rank_lower_log2d"] = *row.lower_bound_log2d;
    else
      r["nn_rank_lower_log2d"] = nullptr;
    j["rows"].push_back(r);
  }
  return j;
}

}  // namespace acara
