#include "acara/solver.hpp"

#include "acara/rng.hpp"
#include "acara/tensor.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <limits>

namespace acara {

namespace {

constexpr double kFeasibilitySlack = 1e-12;

double euler2() { return std::exp(2.0); }

}  // namespace

std::string to_string(NormKind kind) { return kind == NormKind::schatten ? "schatten" : "lp"; }
std::string to_string(Method method) { return method == Method::ordered ? "ordered" : "greedy"; }

NormKind norm_kind_from_string(const std::string& s) {
  if (s == "schatten") return NormKind::schatten;
  if (s == "lp") return NormKind::lp;
  throw std::invalid_argument("unknown norm kind '" + s + "'");
}

Method method_from_string(const std::string& s) {
  if (s == "ordered") return Method::ordered;
  if (s == "greedy") return Method::greedy;
  throw std::invalid_argument("unknown method '" + s + "'");
}

double solver_norm(const ComplexMatrix& m, double p, NormKind kind) {
  return kind == NormKind::schatten ? schatten_norm(m, p) : lp_norm(m, p);
}

double AtomOracle::diameter(double p, NormKind kind) const {
  if (atoms.size() <= 2048) {
    double best = 0.0;
    if (entrywise_singletons) {
      for (std::size_t i = 0; i < atoms.size(); ++i)
        for (std::size_t j = i + 1; j < atoms.size(); ++j) {
          double dist;
          if (singleton_pos[i] == singleton_pos[j]) {
            dist = std::abs(singleton_val[i] - singleton_val[j]);
          } else {
            const double ai = std::abs(singleton_val[i]);
            const double aj = std::abs(singleton_val[j]);
            dist = std::pow(std::pow(ai, p) + std::pow(aj, p), 1.0 / p);
          }
          best = std::max(best, dist);
        }
      return best;
    }
    for (std::size_t i = 0; i < atoms.size(); ++i)
      for (std::size_t j = i + 1; j < atoms.size(); ++j)
        best = std::max(best, solver_norm(atoms[i].value - atoms[j].value, p, kind));
    return best;
  }
  if (diameter_hint) return *diameter_hint;
  return 2.0;  // a-priori bound for the signed product set
}

bool p_in_range(double p, NormKind kind) {
  if (kind == NormKind::schatten)
    return (p > 1.0 && p <= 4.0 / 3.0) || p == 2.0 || p >= 4.0;
  return p > 1.0;
}

namespace {

void require_p(double p, NormKind kind) {
  if (!p_in_range(p, kind))
    throw std::domain_error("p = " + std::to_string(p) + " outside the valid range for " +
                            to_string(kind) + " norms");
}

/// True when the k^{-1/2} branch (constant D_p) applies; otherwise the
/// k^{1/p-1} branch (constant C_p) does.
bool quadratic_branch(double p, NormKind kind) {
  if (kind == NormKind::schatten) return p == 2.0 || p >= 4.0;
  return p >= 2.0;
}

double c_constant(double p) { return std::pow(2.0 * euler2() / std::pow(p, 1.0 / p), p / (p - 1.0)); }
double d_constant(double p) { return 2.0 * (p - 1.0) * std::exp(4.0); }

}  // namespace

BoundConstants bound_constants(double p, NormKind kind) {
  require_p(p, kind);
  BoundConstants out;
  out.p = p;
  const bool c_valid = kind == NormKind::schatten ? (p > 1.0 && p <= 4.0 / 3.0) : (p > 1.0 && p <= 2.0);
  const bool d_valid = quadratic_branch(p, kind);
  if (c_valid) out.c_p = c_constant(p);
  if (d_valid) out.d_p = d_constant(p);
  return out;
}

double error_bound(long long k, double diam, double p, NormKind kind) {
  require_p(p, kind);
  if (k < 1) throw std::invalid_argument("error_bound: k >= 1 required");
  if (quadratic_branch(p, kind))
    return euler2() * std::sqrt(2.0 * (p - 1.0) / double(k)) * diam;
  return (2.0 * euler2() / std::pow(p, 1.0 / p)) * std::pow(double(k), 1.0 / p - 1.0) * diam;
}

long long required_k(double epsilon, double diam, double p, NormKind kind) {
  require_p(p, kind);
  if (!(epsilon > 0.0) || !(diam > 0.0))
    throw std::invalid_argument("required_k: epsilon and diam must be positive");
  const double raw = quadratic_branch(p, kind)
                         ? d_constant(p) * std::pow(diam / epsilon, 2.0)
                         : c_constant(p) * std::pow(diam / epsilon, p / (p - 1.0));
  const double ceiled = std::ceil(raw);
  if (!(ceiled < 9.0e18)) throw std::overflow_error("required_k: budget overflows");
  return std::max(1LL, static_cast<long long>(ceiled));
}

double DerivativeFunctional::apply(const ComplexMatrix& y) const {
  return phi.conjugate().cwiseProduct(y).sum().real();
}

DerivativeFunctional derivative_functional(const ComplexMatrix& base, double p, NormKind kind) {
  DerivativeFunctional f;
  if (kind == NormKind::lp) {
    double norm_pow = 0.0;
    for (Index j = 0; j < base.cols(); ++j)
      for (Index i = 0; i < base.rows(); ++i) {
        const double a = std::abs(base(i, j));
        if (a > 0.0) norm_pow += std::pow(a, p);
      }
    if (norm_pow == 0.0)
      throw std::domain_error("derivative_functional: norm not differentiable at 0");
    const double denom = std::pow(norm_pow, (p - 1.0) / p);
    f.phi = ComplexMatrix::Zero(base.rows(), base.cols());
    for (Index j = 0; j < base.cols(); ++j)
      for (Index i = 0; i < base.rows(); ++i) {
        const double a = std::abs(base(i, j));
        if (a > 0.0) f.phi(i, j) = base(i, j) * std::pow(a, p - 2.0) / denom;
      }
    return f;
  }
  const SvdResult dec = svd(base);  // throws on the zero matrix
  double norm_pow = 0.0;
  for (Index i = 0; i < dec.rank; ++i) norm_pow += std::pow(dec.singular_values(i), p);
  const double denom = std::pow(norm_pow, (p - 1.0) / p);
  RealVector scaled(dec.rank);
  for (Index i = 0; i < dec.rank; ++i)
    scaled(i) = std::pow(dec.singular_values(i), p - 1.0) / denom;
  f.phi = dec.u * scaled.asDiagonal() * dec.v.adjoint();
  return f;
}

namespace {

std::vector<double> selection_values(const AtomOracle& oracle, const DerivativeFunctional& f,
                                     double shift) {
  std::vector<double> values(oracle.size());
  if (oracle.entrywise_singletons) {
    for (std::size_t j = 0; j < oracle.size(); ++j)
      values[j] = (std::conj(f.phi(oracle.singleton_pos[j].first, oracle.singleton_pos[j].second)) *
                   oracle.singleton_val[j])
                      .real() -
                  shift;
  } else {
    for (std::size_t j = 0; j < oracle.size(); ++j)
      values[j] = f.apply(oracle.atoms[j].value) - shift;
  }
  return values;
}

[[noreturn]] void raise_infeasible() {
  throw SolverInfeasible(
      "no atom satisfies the descent condition: target outside conv(S) or oracle too weak");
}

}  // namespace

int select_ordered(const AtomOracle& oracle, const DerivativeFunctional& f, double shift) {
  const std::vector<double> values = selection_values(oracle, f, shift);
  for (std::size_t j = 0; j < values.size(); ++j)
    if (values[j] <= kFeasibilitySlack) return int(j);
  raise_infeasible();
}

int select_greedy(const AtomOracle& oracle, const DerivativeFunctional& f, double shift) {
  const std::vector<double> values = selection_values(oracle, f, shift);
  std::size_t best = 0;
  for (std::size_t j = 1; j < values.size(); ++j)
    if (values[j] < values[best]) best = j;
  if (values[best] > kFeasibilitySlack) raise_infeasible();
  return int(best);
}

SolveResult approx_caratheodory(const ComplexMatrix& target, const AtomOracle& oracle, double p,
                                NormKind kind, Method method, const StopRule& stop,
                                std::uint64_t seed) {
  require_p(p, kind);
  if (oracle.atoms.empty()) throw std::invalid_argument("approx_caratheodory: empty oracle");
  if (!stop.epsilon && !stop.k_max)
    throw std::invalid_argument("approx_caratheodory: need an epsilon or k_max stop");
  for (const AtomOracle::Atom& atom : oracle.atoms)
    if (solver_norm(atom.value, p, kind) > 1.0 + 1e-9)
      throw std::invalid_argument("approx_caratheodory: atom norm exceeds 1 in the solver norm");

  const double diam = oracle.diameter(p, kind);
  const double target_scale = std::max(1.0, solver_norm(target, p, kind));

  SolveResult result;
  result.trace.meta = {p, kind, method, seed, stop.epsilon, stop.k_max, diam, oracle.size()};
  result.combination.atoms_are_product = oracle.product_atoms;

  // X_1: order minimum for Method 1, nearest atom for Method 2
  std::size_t first = 0;
  if (method == Method::greedy) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < oracle.size(); ++j) {
      const double dist = solver_norm(oracle.atoms[j].value - target, p, kind);
      if (dist < best) {
        best = dist;
        first = j;
      }
    }
  }

  long long k = 1;
  ComplexMatrix iterate = oracle.atoms[first].value;
  double err = solver_norm(iterate - target, p, kind);
  result.combination.atom_ids.push_back(oracle.atoms[first].id);
  result.combination.atoms.push_back(oracle.atoms[first].value);
  result.trace.rows.push_back(
      {1, oracle.atoms[first].id, err, error_bound(1, diam, p, kind),
       std::numeric_limits<double>::quiet_NaN()});

  while (true) {
    if (err <= 1e-14 * target_scale) {
      result.trace.exact_representation = true;
      break;
    }
    if (stop.epsilon && err <= *stop.epsilon) {
      result.trace.reached_epsilon = true;
      break;
    }
    if (stop.k_max && k >= *stop.k_max) break;

    const DerivativeFunctional f = derivative_functional(iterate - target, p, kind);
    const double shift = f.apply(target);
    const std::vector<double> values = selection_values(oracle, f, shift);
    std::size_t idx = 0;
    if (method == Method::ordered) {
      idx = values.size();
      for (std::size_t j = 0; j < values.size(); ++j)
        if (values[j] <= kFeasibilitySlack) {
          idx = j;
          break;
        }
      if (idx == values.size()) raise_infeasible();
    } else {
      for (std::size_t j = 1; j < values.size(); ++j)
        if (values[j] < values[idx]) idx = j;
      if (values[idx] > kFeasibilitySlack) raise_infeasible();
    }
    const double selection_value = values[idx];

    iterate = (double(k) * iterate + oracle.atoms[idx].value) / double(k + 1);
    ++k;
    err = solver_norm(iterate - target, p, kind);
    result.combination.atom_ids.push_back(oracle.atoms[idx].id);
    result.combination.atoms.push_back(oracle.atoms[idx].value);
    result.trace.rows.push_back(
        {k, oracle.atoms[idx].id, err, error_bound(k, diam, p, kind), selection_value});
  }

  result.combination.weights.assign(std::size_t(k), 1.0 / double(k));
  result.iterate = iterate;
  result.final_error = err;
  result.k = k;
  if (stop.epsilon && err <= *stop.epsilon) result.trace.reached_epsilon = true;
  return result;
}

AtomOracle basis_atoms(int n, int d) {
  if (n < 0 || d < 1) throw std::invalid_argument("basis_atoms: need n >= 0, d >= 1");
  std::size_t total = 1;
  for (int i = 0; i <= n; ++i) {
    total *= std::size_t(d);
    if (total > (std::size_t(1) << 22)) throw SizeCapError("basis_atoms: d^(n+1) exceeds cap");
  }
  const std::size_t cols = total / std::size_t(d);

  AtomOracle oracle;
  oracle.product_atoms = true;
  oracle.entrywise_singletons = true;
  oracle.atoms.reserve(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    ComplexMatrix m = ComplexMatrix::Zero(d, Index(cols));
    const Index row = Index(flat / cols);
    const Index col = Index(flat % cols);
    m(row, col) = 1.0;
    oracle.atoms.push_back({int(flat), std::move(m)});
    oracle.singleton_pos.emplace_back(row, col);
    oracle.singleton_val.push_back(Complex(1.0, 0.0));
  }
  return oracle;
}

namespace {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

AtomOracle product_psd_atoms(const std::vector<int>& dims, double p, int count, std::uint64_t seed,
                             bool with_negatives) {
  if (count < 1) throw std::invalid_argument("product_psd_atoms: count >= 1 required");
  if (dims.empty()) throw std::invalid_argument("product_psd_atoms: need at least one site");
  std::mt19937_64 gen(seed);
  AtomOracle oracle;
  oracle.product_atoms = true;
  oracle.diameter_hint = 2.0;
  int next_id = 0;
  for (int s = 0; s < count; ++s) {
    ComplexMatrix atom;
    for (std::size_t site = 0; site < dims.size(); ++site) {
      Eigen::VectorXcd v(dims[site]);
      for (Index i = 0; i < v.size(); ++i) v(i) = complex_normal(gen);
      v /= v.norm();
      const ComplexMatrix projector = v * v.adjoint();
      atom = site == 0 ? projector : kron(atom, projector);
    }
    atom /= schatten_norm(atom, p);
    oracle.atoms.push_back({next_id++, atom});
    if (with_negatives) oracle.atoms.push_back({next_id++, -atom});
  }
  return oracle;
}

AtomOracle diagonal_projector_atoms(const std::vector<int>& dims) {
  if (dims.empty()) throw std::invalid_argument("diagonal_projector_atoms: need at least one site");
  std::size_t total = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("diagonal_projector_atoms: dims must be positive");
    total *= std::size_t(d);
    if (total > (std::size_t(1) << 22)) throw SizeCapError("diagonal_projector_atoms: size cap");
  }
  AtomOracle oracle;
  oracle.product_atoms = true;
  oracle.entrywise_singletons = true;
  for (std::size_t j = 0; j < total; ++j) {
    ComplexMatrix m = ComplexMatrix::Zero(Index(total), Index(total));
    m(Index(j), Index(j)) = 1.0;
    oracle.atoms.push_back({int(j), std::move(m)});
    oracle.singleton_pos.emplace_back(Index(j), Index(j));
    oracle.singleton_val.push_back(Complex(1.0, 0.0));
  }
  return oracle;
}

std::string trace_csv(const RunTrace& trace) {
  std::string out = "k,atom_id,error,bound,derivative\n";
  char line[160];
  for (const TraceRow& row : trace.rows) {
    std::snprintf(line, sizeof(line), "%lld,%d,%.17g,%.17g,%.17g\n", row.k, row.atom_id, row.error,
                  row.bound, row.derivative);
    out += line;
  }
  return out;
}

std::string trace_metadata_json(const RunTrace& trace) {
  nlohmann::ordered_json j;
  j["p"] = trace.meta.p;
  j["norm_kind"] = to_string(trace.meta.kind);
  j["method"] = to_string(trace.meta.method);
  j["seed"] = trace.meta.seed;
  if (trace.meta.epsilon)
    j["epsilon"] = *trace.meta.epsilon;
  else
    j["epsilon"] = nullptr;
  if (trace.meta.k_max)
    j["k_max"] = *trace.meta.k_max;
  else
    j["k_max"] = nullptr;
  j["diameter"] = trace.meta.diameter;
  j["atom_count"] = trace.meta.atom_count;
  j["iterations"] = trace.rows.size();
  j["exact_representation"] = trace.exact_representation;
  j["reached_epsilon"] = trace.reached_epsilon;
  j["final_error"] = trace.rows.empty() ? 0.0 : trace.rows.back().error;
  return j.dump(2) + "\n";
}

}  // namespace acara
