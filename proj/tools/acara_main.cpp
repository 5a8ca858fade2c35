#include "acara/experiment.hpp"
#include "acara/gauge.hpp"
#include "acara/rng.hpp"
#include "acara/tensor.hpp"
#include "acara/wsc.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace acara;

int cmd_run(const std::string& config_path) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  }
  const ExperimentReport report = run_experiment(cfg);
  const int infeasible = write_report_files(report, cfg.out_dir);
  std::cout << "instance=" << cfg.instance << " d=" << cfg.d << " samples=" << cfg.samples
            << " methods=" << cfg.methods.size() << " max_k=" << report.max_k << "\n";
  std::cout << "wrote " << report.runs.size() << " traces to " << cfg.out_dir << "\n";
  if (infeasible > 0)
    std::cout << infeasible << "/" << report.runs.size() << " runs infeasible\n";
  if (infeasible == int(report.runs.size())) return 2;
  return 0;
}

int cmd_scan(const std::string& family, const std::vector<int>& dims, double epsilon, double p,
             const std::string& method, std::uint64_t seed, std::string out_dir) {
  if (const char* override_dir = std::getenv("ACARA_OUT_DIR"))
    if (*override_dir) out_dir = override_dir;
  ScanResult scan;
  try {
    scan = run_separation_scan(family, dims, epsilon, p, method_from_string(method), seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  }
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  {
    std::ofstream csv(fs::path(out_dir) / "scan.csv", std::ios::binary);
    csv << scan_csv(scan);
    std::ofstream js(fs::path(out_dir) / "scan.json", std::ios::binary);
    js << scan_json(scan).dump(2) << "\n";
  }
  std::cout << scan_csv(scan);
  bool all_infeasible = true;
  for (const ScanRow& row : scan.rows) all_infeasible = all_infeasible && !row.feasible;
  return all_infeasible ? 2 : 0;
}

int cmd_bounds(double epsilon, double p, const std::string& kind_name, double mu, double mu_sqrt,
               double k_l1, long long group_order, const std::string& complex_file,
               const std::string& action_file, int d, int n) {
  try {
    const NormKind kind = norm_kind_from_string(kind_name);
    if (!complex_file.empty() || !action_file.empty()) {
      if (complex_file.empty() || action_file.empty())
        throw std::invalid_argument("need both --complex-file and --action-file");
      std::ifstream cf(complex_file);
      if (!cf) throw std::invalid_argument("cannot open " + complex_file);
      const Wsc w = parse_wsc(cf);
      std::ifstream af(action_file);
      if (!af) throw std::invalid_argument("cannot open " + action_file);
      const GroupAction action = parse_group_action(w, af);
      const ValidationReport rep = validate_group_action(w, action);
      if (!rep.ok) throw std::invalid_argument("invalid group action: " + rep.message);
      group_order = action.size();
    }

    nlohmann::ordered_json j;
    j["epsilon"] = epsilon;
    j["p"] = p;
    j["norm_kind"] = kind_name;
    j["group_order"] = group_order;
    const BoundConstants constants = bound_constants(p, kind);
    if (constants.c_p) j["C_p"] = *constants.c_p;
    if (constants.d_p) j["D_p"] = *constants.d_p;
    j["required_k_diam2"] = required_k(epsilon, 2.0, p, kind);
    j["budget_sep"] = budget_sep(epsilon, p, group_order, kind).value;
    if (mu > 0.0) {
      const RankBudget rank_budget = budget_rank(epsilon, p, mu, group_order, kind);
      j["budget_rank"] = rank_budget.value;
      if (p == 2.0 && d > 0 && n >= 0)
        j["budget_schatten1"] = budget_schatten1(epsilon, rank_budget, d, n).value;
    }
    if (mu_sqrt > 0.0) j["budget_puri"] = budget_puri(epsilon, p, mu_sqrt, group_order, kind).value;
    if (k_l1 > 0.0) j["budget_nn"] = budget_nn(epsilon, p, k_l1, group_order).value;
    std::cout << j.dump(2) << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  }
}

bool report_check(const std::string& name, bool ok, std::string* detail = nullptr) {
  std::cout << (ok ? "ok   " : "FAIL ") << name;
  if (!ok && detail && !detail->empty()) std::cout << ": " << *detail;
  std::cout << "\n";
  return ok;
}

int cmd_check() {
  bool all_ok = true;
  std::mt19937_64 gen(20240901);

  {
    bool ok = true;
    for (double p : {1.2, 2.0, 4.0})
      for (int s = 0; s < 60 && ok; ++s) {
        const ComplexMatrix a = random_complex_matrix(5, 5, gen);
        const ComplexMatrix b = random_complex_matrix(5, 5, gen);
        ok = schatten_norm(a + b, p) <= schatten_norm(a, p) + schatten_norm(b, p) + 1e-9 &&
             std::abs(schatten_norm(2.5 * a, p) - 2.5 * schatten_norm(a, p)) <= 1e-9 &&
             lp_norm(a + b, p) <= lp_norm(a, p) + lp_norm(b, p) + 1e-9;
      }
    all_ok &= report_check("norm axioms (sampled)", ok);
  }
  {
    bool ok = true;
    for (int s = 0; s < 60 && ok; ++s) {
      const ComplexMatrix m = random_complex_matrix(6, 6, gen);
      const double n1 = schatten_norm(m, 1.0), n2 = schatten_norm(m, 2.0);
      ok = n2 <= n1 + 1e-9 && n1 <= std::sqrt(6.0) * n2 + 1e-9;
    }
    all_ok &= report_check("Schatten p-q ordering", ok);
  }
  {
    bool ok = true;
    for (double p : {1.0, 4.0 / 3.0, 2.0, 4.0})
      for (int s = 0; s < 100 && ok; ++s) {
        ComplexMatrix a = random_hermitian(6, gen);
        ComplexMatrix b = random_hermitian(6, gen);
        a /= schatten_norm(a, p);
        b /= schatten_norm(b, p);
        const double r = hanner_residual(a, b, p);
        if (p == 2.0)
          ok = std::abs(r) <= 1e-9;
        else if (p <= 4.0 / 3.0)
          ok = r <= 1e-9;
        else
          ok = r >= -1e-9;
      }
    all_ok &= report_check("Hanner residual directions", ok);
  }
  {
    bool ok = true;
    const double h = 1e-6;
    for (double p : {4.0 / 3.0, 2.0, 4.0})
      for (int s = 0; s < 50 && ok; ++s) {
        const ComplexMatrix x = random_hermitian(6, gen);
        const ComplexMatrix y = random_hermitian(6, gen);
        const double an = schatten_directional_derivative(x, y, p);
        const double fd = (schatten_norm(x + h * y, p) - schatten_norm(x - h * y, p)) / (2 * h);
        ok = std::abs(an - fd) <= 1e-4 * std::max(1.0, std::abs(an));
        const double an2 = lp_directional_derivative(x, y, p);
        const double fd2 = (lp_norm(x + h * y, p) - lp_norm(x - h * y, p)) / (2 * h);
        ok = ok && std::abs(an2 - fd2) <= 1e-4 * std::max(1.0, std::abs(an2));
      }
    all_ok &= report_check("directional derivatives vs finite differences", ok);
  }
  {
    bool ok = true;
    for (int s = 0; s < 50 && ok; ++s) {
      const ComplexMatrix m = random_complex_matrix(9, 6, gen);
      const SvdResult dec = svd(m);
      const ComplexMatrix rec =
          dec.u * dec.singular_values.asDiagonal().toDenseMatrix().cast<Complex>() * dec.v.adjoint();
      ok = (rec - m).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff()) &&
           (dec.u.adjoint() * dec.u - ComplexMatrix::Identity(dec.rank, dec.rank))
                   .cwiseAbs()
                   .maxCoeff() <= 1e-10;
    }
    all_ok &= report_check("svd reconstruction and isometry residuals", ok);
  }
  {
    bool ok = true;
    std::string detail;
    for (int n : {2, 3, 4}) {
      const Wsc line = build_line(n);
      const Wsc simplex = build_simplex(n);
      ok = ok && validate_wsc(line).ok && is_connected(line) && validate_wsc(simplex).ok;
    }
    for (int n : {3, 4, 5}) {
      const Wsc circle = build_circle(n);
      const GroupAction cyclic = build_cyclic_action(circle);
      ok = ok && validate_wsc(circle).ok && validate_group_action(circle, cyclic).ok &&
           is_free_action(circle, cyclic);
    }
    all_ok &= report_check("complex builders and cyclic actions", ok, &detail);
  }
  {
    bool ok = true;
    const NnTensor instance = build_random_instance(4, 7);
    const AtomOracle oracle = basis_atoms(1, 4);
    const double diam = oracle.diameter(2.0, NormKind::lp);
    for (Method method : {Method::ordered, Method::greedy}) {
      const SolveResult solved = approx_caratheodory(instance.as_matrix(), oracle, 2.0,
                                                     NormKind::lp, method, {{}, 500}, 7);
      ok = ok && solved.combination.is_convex();
      for (const TraceRow& row : solved.trace.rows)
        ok = ok && row.error <= error_bound(row.k, diam, 2.0, NormKind::lp) + 1e-9;
    }
    all_ok &= report_check("solver envelope and convexity", ok);
  }
  {
    const bool ok = required_k(1.0, 2.0, 2.0, NormKind::schatten) == 437 &&
                    budget_sep(2.0, 2.0, 1).value == 110 &&
                    budget_nn(0.1, 2.0, 1.0, 1).value == 43679;
    all_ok &= report_check("budget spot values", ok);
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"approximate Caratheodory decompositions: solver, bounds and experiments"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "run an experiment from a JSON config");
  run->add_option("config", config_path, "path to the config file")->required();

  std::string family = "euclid", scan_method = "greedy", scan_out = ".";
  std::vector<int> dims;
  double scan_eps = 0.1, scan_p = 2.0;
  std::uint64_t scan_seed = 0;
  CLI::App* scan = app.add_subcommand("scan", "separation scan over a family of instances");
  scan->add_option("--family", family, "euclid or slack")->required();
  scan->add_option("--dims", dims, "dimensions to scan")->required()->delimiter(',');
  scan->add_option("--epsilon", scan_eps, "target accuracy")->required();
  scan->add_option("--p", scan_p, "entrywise norm exponent");
  scan->add_option("--method", scan_method, "ordered or greedy");
  scan->add_option("--seed", scan_seed, "rng seed");
  scan->add_option("--out", scan_out, "output directory");

  double b_eps = 1.0, b_p = 2.0, b_mu = 0.0, b_mu_sqrt = 0.0, b_k = 0.0;
  long long b_group = 1;
  int b_d = 0, b_n = -1;
  std::string b_kind = "schatten", b_complex, b_action;
  CLI::App* bounds = app.add_subcommand("bounds", "print the closed-form budget table");
  bounds->add_option("--epsilon", b_eps, "approximation error")->required();
  bounds->add_option("--p", b_p, "norm exponent")->required();
  bounds->add_option("--norm-kind", b_kind, "schatten or lp");
  bounds->add_option("--mu", b_mu, "gauge value for the rank budget");
  bounds->add_option("--mu-sqrt", b_mu_sqrt, "square-root gauge value for the purification budget");
  bounds->add_option("--K", b_k, "l1 mass bound for the nonnegative-rank budget");
  bounds->add_option("--group-order", b_group, "group order |G|");
  bounds->add_option("--complex-file", b_complex, "wsc file (derives |G| with --action-file)");
  bounds->add_option("--action-file", b_action, "group action file");
  bounds->add_option("--d", b_d, "local dimension for the Schatten-1 budget");
  bounds->add_option("--n", b_n, "site count minus one for the Schatten-1 budget");

  CLI::App* check = app.add_subcommand("check", "run the property suites");

  CLI11_PARSE(app, argc, argv);

  if (*run) return cmd_run(config_path);
  if (*scan) return cmd_scan(family, dims, scan_eps, scan_p, scan_method, scan_seed, scan_out);
  if (*bounds)
    return cmd_bounds(b_eps, b_p, b_kind, b_mu, b_mu_sqrt, b_k, b_group, b_complex, b_action, b_d,
                      b_n);
  if (*check) return cmd_check();
  return 0;
}
