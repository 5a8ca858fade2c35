#include "acara/gauge.hpp"

#include "acara/tensor.hpp"

#include <cmath>
#include <limits>
#include <set>

namespace acara {

double diag_schatten(const RealVector& diag, double q) {
  if (!(q > 0.0)) throw std::domain_error("diag_schatten: q must be positive");
  double acc = 0.0;
  for (Index i = 0; i < diag.size(); ++i) {
    const double a = std::abs(diag(i));
    if (a > 0.0) acc += std::pow(a, q);
  }
  return std::pow(acc, 1.0 / q);
}

double mu1_diagonal_exact(const DiagonalMatrix& sigma) {
  if (!sigma.is_psd()) throw std::domain_error("mu1_diagonal_exact: diagonal has a negative entry");
  return sigma.diag.sum();
}

GaugeEstimate mu_sqrt_bounds_diagonal(const DiagonalMatrix& rho, double p) {
  if (p < 1.0) throw std::domain_error("mu_sqrt_bounds_diagonal: p >= 1 required");
  if (!rho.is_psd()) throw std::domain_error("mu_sqrt_bounds_diagonal: matrix is not psd");
  GaugeEstimate out;
  out.lower = std::sqrt(diag_schatten(rho.diag, p / 2.0));
  out.lower_method = p / 2.0 >= 1.0 ? "sqrt of Schatten p/2 norm" : "sqrt of Schatten p/2 quasinorm";
  out.upper = std::sqrt(diag_schatten(rho.diag, 0.5));
  out.upper_method = "sqrt of Schatten 1/2 quasinorm (projector certificate)";
  if (p == 1.0) out.exact = out.upper;  // both bounds meet at the trace of the root
  return out;
}

double mu_upper_via_combination(const ComplexMatrix& m, const ConvexCombination& c) {
  if (c.atoms.empty()) throw std::invalid_argument("mu_upper_via_combination: empty combination");
  for (double w : c.weights)
    if (w < 0.0) throw std::invalid_argument("mu_upper_via_combination: negative weight");
  const ComplexMatrix value = c.evaluate();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((value - m).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw std::invalid_argument("mu_upper_via_combination: certificate does not evaluate to the input");
  return c.weight_sum();
}

GaugeEstimate gauge_estimate(const ComplexMatrix& m, double p, const ConvexCombination* certificate) {
  GaugeEstimate out;
  out.lower = schatten_norm(m, p);
  out.lower_method = "Schatten p-norm";
  if (certificate) {
    out.upper = mu_upper_via_combination(m, *certificate);
    out.upper_method = "combination certificate";
  }
  // exactly solvable case: diagonal psd at p = 1
  if (p == 1.0 && m.rows() == m.cols()) {
    bool diagonal_psd = true;
    for (Index i = 0; i < m.rows() && diagonal_psd; ++i)
      for (Index j = 0; j < m.cols() && diagonal_psd; ++j) {
        if (i != j && std::abs(m(i, j)) != 0.0) diagonal_psd = false;
        if (i == j && (m(i, i).real() < 0.0 || std::abs(m(i, i).imag()) != 0.0)) diagonal_psd = false;
      }
    if (diagonal_psd) {
      out.exact = m.real().trace();
      out.upper = std::min(out.upper, *out.exact);
      out.upper_method = "projector decomposition (diagonal psd)";
    }
  }
  return out;
}

namespace {

long long scaled_by_group(long long base, long long group_order, const char* what) {
  if (group_order < 1) throw std::invalid_argument(std::string(what) + ": group order >= 1 required");
  if (base > std::numeric_limits<long long>::max() / group_order)
    throw std::overflow_error(std::string(what) + ": budget overflows");
  return base * group_order;
}

}  // namespace

RankBudget budget_rank(double epsilon, double p, double mu, long long group_order, NormKind kind) {
  if (!(mu > 0.0)) throw std::invalid_argument("budget_rank: mu must be positive");
  RankBudget out;
  out.bound_kind = "rank";
  out.epsilon = epsilon;
  out.p = p;
  out.kind = kind;
  out.gauge_or_k = mu;
  out.group_order = group_order;
  out.value = scaled_by_group(required_k(epsilon, 2.0 * mu, p, kind), group_order, "budget_rank");
  return out;
}

RankBudget budget_puri(double epsilon, double p, double mu_sqrt, long long group_order,
                       NormKind kind) {
  if (!(mu_sqrt > 0.0)) throw std::invalid_argument("budget_puri: mu_sqrt must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("budget_puri: epsilon must be positive");
  const double delta = std::sqrt(1.0 + epsilon / (mu_sqrt * mu_sqrt)) - 1.0;
  RankBudget out;
  out.bound_kind = "puri";
  out.epsilon = epsilon;
  out.p = p;
  out.kind = kind;
  out.gauge_or_k = mu_sqrt;
  out.group_order = group_order;
  out.value = scaled_by_group(required_k(delta, 2.0, p, kind), group_order, "budget_puri");
  return out;
}

RankBudget budget_sep(double epsilon, double p, long long group_order, NormKind kind) {
  RankBudget out;
  out.bound_kind = "sep";
  out.epsilon = epsilon;
  out.p = p;
  out.kind = kind;
  out.gauge_or_k = 1.0;
  out.group_order = group_order;
  out.value = scaled_by_group(required_k(epsilon, 2.0, p, kind), group_order, "budget_sep");
  return out;
}

RankBudget budget_schatten1(double epsilon, const RankBudget& p2_budget, int d, int n) {
  if (p2_budget.p != 2.0)
    throw std::invalid_argument("budget_schatten1: base budget must be computed at p = 2");
  if (d < 1 || n < 0) throw std::invalid_argument("budget_schatten1: need d >= 1, n >= 0");
  long long multiplier = 1;
  for (int i = 0; i <= n; ++i) {
    if (multiplier > std::numeric_limits<long long>::max() / d)
      throw std::overflow_error("budget_schatten1: d^(n+1) overflows");
    multiplier *= d;
  }
  RankBudget out = p2_budget;
  out.bound_kind = p2_budget.bound_kind + "-schatten1";
  out.epsilon = epsilon;
  out.p = 1.0;
  out.value = scaled_by_group(p2_budget.value, multiplier, "budget_schatten1");
  return out;
}

RankBudget budget_nn(double epsilon, double p, double k_l1, long long group_order) {
  if (!(k_l1 > 0.0)) throw std::invalid_argument("budget_nn: K must be positive");
  RankBudget out;
  out.bound_kind = "nn";
  out.epsilon = epsilon;
  out.p = p;
  out.kind = NormKind::lp;
  out.gauge_or_k = k_l1;
  out.group_order = group_order;
  out.value = scaled_by_group(required_k(epsilon, 2.0 * k_l1, p, NormKind::lp), group_order,
                              "budget_nn");
  return out;
}

SqrtPipelineResult approx_sqrt_pipeline(const DiagonalMatrix& rho, double epsilon, double p,
                                        Method method, long long group_order,
                                        const AtomOracle* oracle_override) {
  if (!rho.is_psd()) throw std::domain_error("approx_sqrt_pipeline: matrix is not psd");
  if (rho.dim() == 0 || rho.diag.maxCoeff() == 0.0)
    throw std::invalid_argument("approx_sqrt_pipeline: zero matrix");
  if (!(epsilon > 0.0)) throw std::invalid_argument("approx_sqrt_pipeline: epsilon must be positive");

  SqrtPipelineResult out;
  RealVector root(rho.dim());
  for (Index i = 0; i < rho.dim(); ++i) root(i) = std::sqrt(rho.diag(i));
  out.mu = std::sqrt(diag_schatten(rho.diag, 0.5));  // equals the trace of the root
  out.delta = std::sqrt(1.0 + epsilon / (out.mu * out.mu)) - 1.0;
  out.budget = budget_puri(epsilon, p, out.mu, group_order);

  AtomOracle local_oracle;
  if (!oracle_override) local_oracle = diagonal_projector_atoms({int(rho.dim())});
  const AtomOracle& oracle = oracle_override ? *oracle_override : local_oracle;

  ComplexMatrix scaled_target = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (Index i = 0; i < rho.dim(); ++i) scaled_target(i, i) = root(i) / out.mu;

  StopRule stop;
  stop.epsilon = out.delta;
  stop.k_max = out.budget.value;
  const SolveResult solved =
      approx_caratheodory(scaled_target, oracle, p, NormKind::schatten, method, stop, 0);
  if (!solved.trace.reached_epsilon && !solved.trace.exact_representation)
    throw SolverInfeasible("approx_sqrt_pipeline: solver did not reach the required accuracy");

  RealVector sqrt_prime(rho.dim());
  for (Index i = 0; i < rho.dim(); ++i) sqrt_prime(i) = out.mu * solved.iterate(i, i).real();
  RealVector rho_prime(rho.dim());
  for (Index i = 0; i < rho.dim(); ++i) rho_prime(i) = sqrt_prime(i) * sqrt_prime(i);

  out.sqrt_iterate = DiagonalMatrix(sqrt_prime);
  out.rho_prime = DiagonalMatrix(rho_prime);
  out.achieved_error = diag_schatten(rho.diag - rho_prime, p);
  out.witness = solved.combination;
  out.trace = solved.trace;
  out.k = solved.k;
  out.distinct_atoms = int(std::set<int>(solved.combination.atom_ids.begin(),
                                         solved.combination.atom_ids.end())
                               .size());

  // the proof's inequality chain, asserted numerically
  const double root_err = diag_schatten(root - sqrt_prime, p);
  const double chain = root_err * (2.0 * diag_schatten(root, p) + root_err);
  if (out.achieved_error > chain + 1e-9 || out.achieved_error > epsilon + 1e-9)
    throw std::runtime_error("approx_sqrt_pipeline: error chain violated");
  return out;
}

}  // namespace acara
