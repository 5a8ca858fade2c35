#pragma once

#include "acara/decomp.hpp"
#include "acara/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace acara {

enum class NormKind { schatten, lp };
enum class Method { ordered, greedy };

std::string to_string(NormKind kind);
std::string to_string(Method method);
NormKind norm_kind_from_string(const std::string& s);
Method method_from_string(const std::string& s);

/// Solver norm dispatch.
double solver_norm(const ComplexMatrix& m, double p, NormKind kind);

/// Finite atom list with the total order used by Method 1 given by position.
/// Atoms represent elements of the bounded generating set; unit norm in the
/// solver norm is validated when a solve starts.
struct AtomOracle {
  struct Atom {
    int id;
    ComplexMatrix value;
  };

  std::vector<Atom> atoms;
  bool product_atoms = false;
  std::optional<double> diameter_hint;

  // Set when every atom has exactly one nonzero entry; selection scans then
  // read the derivative functional directly instead of forming dense dots.
  bool entrywise_singletons = false;
  std::vector<std::pair<Index, Index>> singleton_pos;
  std::vector<Complex> singleton_val;

  std::size_t size() const { return atoms.size(); }

  /// Exact pairwise max distance for up to 2048 atoms, otherwise the hint,
  /// otherwise the a-priori product-set value 2.
  double diameter(double p, NormKind kind) const;
};

/// Valid (p, norm kind) combinations: Schatten needs p in (1, 4/3] u {2} u
/// [4, inf) (Hanner's inequalities are only proven there); entrywise norms
/// work for every p > 1.
bool p_in_range(double p, NormKind kind);

struct BoundConstants {
  double p;
  std::optional<double> c_p;  // (2 e^2 / p^{1/p})^{p/(p-1)}
  std::optional<double> d_p;  // 2 (p-1) e^4
};
BoundConstants bound_constants(double p, NormKind kind);

/// Error envelope after k summands with atom-set diameter diam.
double error_bound(long long k, double diam, double p, NormKind kind);

/// Summand budget guaranteeing an epsilon-approximation.
long long required_k(double epsilon, double diam, double p, NormKind kind);

struct StopRule {
  std::optional<double> epsilon;
  std::optional<long long> k_max;
};

struct TraceRow {
  long long k;
  int atom_id;
  double error;       // ||A - A_k|| in the solver norm
  double bound;       // error_bound(k, diam, p)
  double derivative;  // selection value D_{X_k - A} at A_{k-1} - A; NaN for k = 1
};

struct RunMetadata {
  double p = 2.0;
  NormKind kind = NormKind::lp;
  Method method = Method::greedy;
  std::uint64_t seed = 0;
  std::optional<double> epsilon;
  std::optional<long long> k_max;
  double diameter = 0.0;
  std::size_t atom_count = 0;
};

struct RunTrace {
  RunMetadata meta;
  std::vector<TraceRow> rows;
  bool exact_representation = false;
  bool reached_epsilon = false;
};

struct SolveResult {
  ConvexCombination combination;
  RunTrace trace;
  ComplexMatrix iterate;
  double final_error = 0.0;
  long long k = 0;
};

/// The per-iteration linear functional: derivative(Y) = Re <phi, Y>_F.
struct DerivativeFunctional {
  ComplexMatrix phi;
  double apply(const ComplexMatrix& y) const;
};

/// Functional of the solver norm at the base point (must be nonzero).
DerivativeFunctional derivative_functional(const ComplexMatrix& base, double p, NormKind kind);

/// Method 1: first atom in oracle order whose selection value is <= the
/// feasibility slack. `shift` is derivative(A), subtracted from the per-atom
/// values so the tested quantity is D at direction atom - A.
int select_ordered(const AtomOracle& oracle, const DerivativeFunctional& f, double shift);

/// Method 2: atom with the smallest selection value, ties broken by order.
int select_greedy(const AtomOracle& oracle, const DerivativeFunctional& f, double shift);

SolveResult approx_caratheodory(const ComplexMatrix& target, const AtomOracle& oracle, double p,
                                NormKind kind, Method method, const StopRule& stop,
                                std::uint64_t seed);

/// All standard-basis product tensors on n+1 sites of local dimension d, in
/// lexicographic order, realized as d x d^n matrices (row = first index).
AtomOracle basis_atoms(int n, int d);

/// `count` sampled product states (rank-one projectors per site, tensored,
/// Schatten-p normalized), optionally paired with their negatives.
AtomOracle product_psd_atoms(const std::vector<int>& dims, double p, int count,
                             std::uint64_t seed, bool with_negatives);

/// Diagonal rank-one basis projectors of the composite space (the certificate
/// family for diagonal psd matrices).
AtomOracle diagonal_projector_atoms(const std::vector<int>& dims);

/// CSV columns fixed as `k,atom_id,error,bound,derivative`.
std::string trace_csv(const RunTrace& trace);
std::string trace_metadata_json(const RunTrace& trace);

}  // namespace acara
