#pragma once

#include "acara/types.hpp"

#include <cstdint>

namespace acara {

/// Entrywise Hermitian check within tolerance (predicate, not enforced anywhere).
bool is_hermitian(const ComplexMatrix& m, double tol = 1e-12);

/// Thin SVD keeping singular values > 1e-12 * lambda_max. Exactly diagonal
/// input takes a closed-form path; everything else goes through Eigen.
/// The zero matrix has no thin SVD here and raises std::domain_error.
SvdResult svd(const ComplexMatrix& m);

/// Schatten p-norm (sum of p-th powers of singular values)^(1/p), p >= 1.
double schatten_norm(const ComplexMatrix& m, double p);

/// Schatten q-quasinorm for 0 < q < 1; used only inside the mu_sqrt bounds.
double schatten_quasinorm(const ComplexMatrix& m, double q);

/// Entrywise p-(quasi)norm, p > 0.
double lp_norm(const ComplexMatrix& m, double p);
double lp_norm(const NnTensor& t, double p);

/// Directional derivative of the Schatten p-norm at X in direction Y,
/// (1/||X||_p^{p-1}) sum_i lambda_i^{p-1} Re(u_i^* Y v_i), for 1 < p < infinity.
/// The real part is the one-sided derivative for Hermitian X and Y, the only
/// data the solver feeds through here. X == 0 raises std::domain_error.
double schatten_directional_derivative(const ComplexMatrix& x, const ComplexMatrix& y, double p);

/// Directional derivative of the entrywise p-norm at X in direction Y for
/// p > 1: (1/||X||_{lp}^{p-1}) sum Re(conj(x_ij) y_ij) |x_ij|^{p-2}, with the
/// convention that entries x_ij == 0 contribute nothing.
double lp_directional_derivative(const ComplexMatrix& x, const ComplexMatrix& y, double p);
double lp_directional_derivative(const NnTensor& x, const NnTensor& y, double p);

/// Monte-Carlo lower estimate of the modulus of smoothness rho_p(t) of the
/// Schatten p-norm: max over sampled unit-norm pairs (X, Y) of
/// (||X + tY||_p + ||X - tY||_p)/2 - 1. A sampled supremum, so it can only
/// undershoot the true value (up to numerical noise).
double estimate_modulus_of_smoothness(double p, double t, int samples, std::uint64_t seed,
                                      Index dim = 4);

/// Signed Hanner residual
///   (||A||_p + ||B||_p)^p + | ||A||_p - ||B||_p |^p - ||A+B||_p^p - ||A-B||_p^p.
/// Nonnegative for 4 <= p < infinity, nonpositive for 1 <= p <= 4/3, zero at p = 2.
double hanner_residual(const ComplexMatrix& a, const ComplexMatrix& b, double p);

}  // namespace acara
