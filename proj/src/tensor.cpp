#include "acara/tensor.hpp"

#include "acara/rng.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace acara {

namespace {

bool is_zero_matrix(const ComplexMatrix& m) {
  return m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0;
}

bool is_exactly_diagonal(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return false;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != Complex(0.0, 0.0)) return false;
  return true;
}

SvdResult svd_of_diagonal(const ComplexMatrix& m) {
  const Index n = m.rows();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return std::abs(m(a, a)) > std::abs(m(b, b)); });

  const double lambda_max = std::abs(m(order[0], order[0]));
  Index rank = 0;
  while (rank < n && std::abs(m(order[std::size_t(rank)], order[std::size_t(rank)])) >
                         1e-12 * lambda_max)
    ++rank;

  SvdResult out;
  out.rank = rank;
  out.u = ComplexMatrix::Zero(n, rank);
  out.v = ComplexMatrix::Zero(n, rank);
  out.singular_values = RealVector(rank);
  for (Index c = 0; c < rank; ++c) {
    const Index i = order[std::size_t(c)];
    const Complex z = m(i, i);
    const double s = std::abs(z);
    out.singular_values(c) = s;
    out.u(i, c) = z / s;
    out.v(i, c) = Complex(1.0, 0.0);
  }
  return out;
}

}  // namespace

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

SvdResult svd(const ComplexMatrix& m) {
  if (is_zero_matrix(m)) throw std::domain_error("svd: zero matrix has no thin SVD");
  if (is_exactly_diagonal(m)) return svd_of_diagonal(m);

  Eigen::BDCSVD<ComplexMatrix> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector& all = dec.singularValues();
  const double lambda_max = all(0);
  Index rank = 0;
  while (rank < all.size() && all(rank) > 1e-12 * lambda_max) ++rank;

  SvdResult out;
  out.rank = rank;
  out.u = dec.matrixU().leftCols(rank);
  out.v = dec.matrixV().leftCols(rank);
  out.singular_values = all.head(rank);
  return out;
}

double schatten_norm(const ComplexMatrix& m, double p) {
  if (p < 1.0) throw std::domain_error("schatten_norm: p must be >= 1 (quasinorm is separate)");
  if (is_zero_matrix(m)) return 0.0;
  const SvdResult dec = svd(m);
  double acc = 0.0;
  for (Index i = 0; i < dec.rank; ++i) acc += std::pow(dec.singular_values(i), p);
  return std::pow(acc, 1.0 / p);
}

double schatten_quasinorm(const ComplexMatrix& m, double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("schatten_quasinorm: q must be in (0,1)");
  if (is_zero_matrix(m)) return 0.0;
  const SvdResult dec = svd(m);
  double acc = 0.0;
  for (Index i = 0; i < dec.rank; ++i) acc += std::pow(dec.singular_values(i), q);
  return std::pow(acc, 1.0 / q);
}

double lp_norm(const ComplexMatrix& m, double p) {
  if (!(p > 0.0)) throw std::domain_error("lp_norm: p must be > 0");
  double acc = 0.0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) {
      const double a = std::abs(m(i, j));
      if (a > 0.0) acc += std::pow(a, p);
    }
  return std::pow(acc, 1.0 / p);
}

double lp_norm(const NnTensor& t, double p) {
  if (!(p > 0.0)) throw std::domain_error("lp_norm: p must be > 0");
  double acc = 0.0;
  for (double e : t.entries) {
    const double a = std::abs(e);
    if (a > 0.0) acc += std::pow(a, p);
  }
  return std::pow(acc, 1.0 / p);
}

double schatten_directional_derivative(const ComplexMatrix& x, const ComplexMatrix& y, double p) {
  if (!(p > 1.0)) throw std::domain_error("schatten_directional_derivative: p must be > 1");
  if (is_zero_matrix(x))
    throw std::domain_error("schatten_directional_derivative: norm not differentiable at 0");
  const SvdResult dec = svd(x);
  double norm_pow = 0.0;
  for (Index i = 0; i < dec.rank; ++i) norm_pow += std::pow(dec.singular_values(i), p);
  const double denom = std::pow(norm_pow, (p - 1.0) / p);
  double acc = 0.0;
  for (Index i = 0; i < dec.rank; ++i) {
    const Complex uyv = dec.u.col(i).dot(y * dec.v.col(i));  // u_i^* Y v_i
    acc += std::pow(dec.singular_values(i), p - 1.0) * uyv.real();
  }
  return acc / denom;
}

double lp_directional_derivative(const ComplexMatrix& x, const ComplexMatrix& y, double p) {
  if (!(p > 1.0)) throw std::domain_error("lp_directional_derivative: p must be > 1");
  double norm_pow = 0.0;
  for (Index j = 0; j < x.cols(); ++j)
    for (Index i = 0; i < x.rows(); ++i) {
      const double a = std::abs(x(i, j));
      if (a > 0.0) norm_pow += std::pow(a, p);
    }
  if (norm_pow == 0.0)
    throw std::domain_error("lp_directional_derivative: norm not differentiable at 0");
  const double denom = std::pow(norm_pow, (p - 1.0) / p);
  double acc = 0.0;
  for (Index j = 0; j < x.cols(); ++j)
    for (Index i = 0; i < x.rows(); ++i) {
      const Complex xv = x(i, j);
      const double a = std::abs(xv);
      if (a == 0.0) continue;  // x |x|^{p-2} -> 0 as x -> 0 for p > 1
      acc += (std::conj(xv) * y(i, j)).real() * std::pow(a, p - 2.0);
    }
  return acc / denom;
}

double lp_directional_derivative(const NnTensor& x, const NnTensor& y, double p) {
  if (!(p > 1.0)) throw std::domain_error("lp_directional_derivative: p must be > 1");
  if (x.entries.size() != y.entries.size())
    throw std::invalid_argument("lp_directional_derivative: shape mismatch");
  double norm_pow = 0.0;
  for (double e : x.entries) {
    const double a = std::abs(e);
    if (a > 0.0) norm_pow += std::pow(a, p);
  }
  if (norm_pow == 0.0)
    throw std::domain_error("lp_directional_derivative: norm not differentiable at 0");
  const double denom = std::pow(norm_pow, (p - 1.0) / p);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.entries.size(); ++i) {
    const double xv = x.entries[i];
    const double a = std::abs(xv);
    if (a == 0.0) continue;
    acc += y.entries[i] * xv * std::pow(a, p - 2.0);
  }
  return acc / denom;
}

double estimate_modulus_of_smoothness(double p, double t, int samples, std::uint64_t seed,
                                      Index dim) {
  if (samples < 1) throw std::invalid_argument("estimate_modulus_of_smoothness: samples >= 1");
  if (t == 0.0) return 0.0;
  std::mt19937_64 gen(seed);
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    ComplexMatrix x = random_complex_matrix(dim, dim, gen);
    ComplexMatrix y = random_complex_matrix(dim, dim, gen);
    x /= schatten_norm(x, p);
    y /= schatten_norm(y, p);
    const double value =
        0.5 * (schatten_norm(x + t * y, p) + schatten_norm(x - t * y, p)) - 1.0;
    best = std::max(best, value);
  }
  return best;
}

double hanner_residual(const ComplexMatrix& a, const ComplexMatrix& b, double p) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("hanner_residual: shape mismatch");
  const double na = schatten_norm(a, p);
  const double nb = schatten_norm(b, p);
  const double nsum = schatten_norm(a + b, p);
  const double ndiff = schatten_norm(a - b, p);
  return std::pow(na + nb, p) + std::pow(std::abs(na - nb), p) - std::pow(nsum, p) -
         std::pow(ndiff, p);
}

}  // namespace acara
