#pragma once

#include "acara/decomp.hpp"
#include "acara/solver.hpp"
#include "acara/types.hpp"

#include <limits>
#include <optional>
#include <string>

namespace acara {

/// Two-sided bracket on a gauge value. Exact values exist only where the
/// artifact can prove them (diagonal psd matrices); elsewhere the bracket is
/// (norm lower bound, best certificate found). For states, the documented
/// relation R <= mu_1 <= 2R ties mu_1 to the robustness of entanglement; no
/// solver for R is provided here. There is no dimension-free upper bound on
/// mu_p for arbitrary psd matrices: the maximally entangled state on two
/// d-level sites has unit norm but mu_1 >= R = d.
struct GaugeEstimate {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  std::optional<double> exact;
  std::string lower_method;
  std::string upper_method;
};

struct RankBudget {
  std::string bound_kind;
  long long value = 1;
  double epsilon = 0.0;
  double p = 2.0;
  NormKind kind = NormKind::schatten;
  double gauge_or_k = 1.0;  // mu, mu_sqrt, or the l1 bound K; 1 when unused
  long long group_order = 1;
};

/// Schatten (quasi)norm of a diagonal matrix straight from its entries.
double diag_schatten(const RealVector& diag, double q);

/// mu_1 of a diagonal psd matrix is exactly its trace: the projector
/// decomposition gives the upper bound, the norm gives the lower one.
double mu1_diagonal_exact(const DiagonalMatrix& sigma);

/// sqrt(||rho||_{p/2}) <= mu_sqrt,p(rho) <= sqrt(||rho||_{1/2}) for diagonal
/// psd rho; the lower bound uses the genuine norm once p/2 >= 1.
GaugeEstimate mu_sqrt_bounds_diagonal(const DiagonalMatrix& rho, double p);

/// Any representation M = sum lambda_i x_i with atoms in P_p certifies
/// mu_p(M) <= sum lambda_i. The weights need not be convex.
double mu_upper_via_combination(const ComplexMatrix& m, const ConvexCombination& c);

GaugeEstimate gauge_estimate(const ComplexMatrix& m, double p,
                             const ConvexCombination* certificate = nullptr);

/// ceil(C_p (2 mu / eps)^{p/(p-1)}) * |G|, or the D_p variant, bounding the
/// approximate decomposition rank of a G-invariant matrix with gauge value mu.
RankBudget budget_rank(double epsilon, double p, double mu, long long group_order,
                       NormKind kind = NormKind::schatten);

/// Purification / square-root budget with delta = sqrt(1 + eps/mu^2) - 1.
RankBudget budget_puri(double epsilon, double p, double mu_sqrt, long long group_order,
                       NormKind kind = NormKind::schatten);

/// Gauge-free budget for separable states (also bounds rank and puri-rank).
RankBudget budget_sep(double epsilon, double p, long long group_order,
                      NormKind kind = NormKind::schatten);

/// Trace-norm budget d^{n+1} times a p=2 budget.
RankBudget budget_schatten1(double epsilon, const RankBudget& p2_budget, int d, int n);

/// Entrywise-norm budget for nonnegative tensors with l1 mass at most K.
RankBudget budget_nn(double epsilon, double p, double k_l1, long long group_order);

struct SqrtPipelineResult {
  DiagonalMatrix rho_prime;
  DiagonalMatrix sqrt_iterate;  // M' with rho' = M'^2
  ConvexCombination witness;    // combination over projector atoms for sqrt(rho)/mu
  RunTrace trace;
  double achieved_error = 0.0;  // ||rho - rho'||_p
  long long k = 0;
  int distinct_atoms = 0;
  double mu = 0.0;              // sqrt(||rho||_{1/2})
  double delta = 0.0;
  RankBudget budget;            // budget_puri at the same inputs
};

/// Approximates sqrt(rho)/mu over diagonal projector atoms to delta, squares
/// the rescaled iterate, and certifies ||rho - rho'||_p <= eps with the
/// witness's distinct atom count as a purification-rank bound.
SqrtPipelineResult approx_sqrt_pipeline(const DiagonalMatrix& rho, double epsilon, double p,
                                        Method method, long long group_order,
                                        const AtomOracle* oracle_override = nullptr);

}  // namespace acara
