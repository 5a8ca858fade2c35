#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace acara {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Raised when a target, after exhausting the atom set, admits no atom with a
/// nonpositive directional derivative. Either the target lies outside
/// conv(S) or the (sampled) oracle is too weak to certify membership.
class SolverInfeasible : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when an enumeration or dense-output size would exceed a configured cap.
class SizeCapError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Dense real tensor of order n+1 with equal local dimension d per site.
/// Entries are stored lexicographically by (i_0, ..., i_n).
struct NnTensor {
  int n = 0;
  int d = 1;
  std::vector<double> entries;

  NnTensor() : entries(1, 0.0) {}
  NnTensor(int n_, int d_) : n(n_), d(d_) {
    if (n < 0 || d < 1) throw std::invalid_argument("NnTensor: need n >= 0, d >= 1");
    std::size_t size = 1;
    for (int i = 0; i <= n; ++i) {
      if (size > (std::size_t(1) << 52) / std::size_t(d))
        throw SizeCapError("NnTensor: d^(n+1) overflows");
      size *= std::size_t(d);
    }
    entries.assign(size, 0.0);
  }

  std::size_t size() const { return entries.size(); }

  std::size_t flat_index(const std::vector<int>& idx) const {
    std::size_t f = 0;
    for (int i = 0; i <= n; ++i) f = f * std::size_t(d) + std::size_t(idx[std::size_t(i)]);
    return f;
  }

  double& operator()(const std::vector<int>& idx) { return entries[flat_index(idx)]; }
  double operator()(const std::vector<int>& idx) const { return entries[flat_index(idx)]; }

  bool is_nonnegative() const {
    for (double e : entries)
      if (e < 0.0) return false;
    return true;
  }

  /// Order-1 tensors (n == 1) are d x d matrices; rows indexed by i_0.
  ComplexMatrix as_matrix() const {
    if (n != 1) throw std::invalid_argument("NnTensor::as_matrix: only defined for n == 1");
    ComplexMatrix m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = entries[std::size_t(i) * std::size_t(d) + std::size_t(j)];
    return m;
  }

  static NnTensor from_matrix(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("NnTensor::from_matrix: square input required");
    NnTensor t(1, int(m.rows()));
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j)
        t.entries[std::size_t(i) * std::size_t(m.cols()) + std::size_t(j)] = m(i, j);
    return t;
  }
};

/// Dense complex tensor with per-site dimensions; the value space of
/// decomposition evaluation. Lexicographic entry order.
struct DenseTensor {
  std::vector<int> dims;
  std::vector<Complex> entries;

  DenseTensor() = default;
  explicit DenseTensor(std::vector<int> dims_) : dims(std::move(dims_)) {
    std::size_t size = 1;
    for (int d : dims) {
      if (d < 1) throw std::invalid_argument("DenseTensor: dims must be positive");
      if (size > (std::size_t(1) << 52) / std::size_t(d)) throw SizeCapError("DenseTensor: size overflows");
      size *= std::size_t(d);
    }
    entries.assign(size, Complex(0.0, 0.0));
  }

  std::size_t size() const { return entries.size(); }

  std::size_t flat_index(const std::vector<int>& idx) const {
    std::size_t f = 0;
    for (std::size_t i = 0; i < dims.size(); ++i)
      f = f * std::size_t(dims[i]) + std::size_t(idx[i]);
    return f;
  }

  static NnTensor to_nn(const DenseTensor& t);
  static DenseTensor from_nn(const NnTensor& t) {
    DenseTensor out(std::vector<int>(std::size_t(t.n) + 1, t.d));
    for (std::size_t i = 0; i < t.entries.size(); ++i) out.entries[i] = t.entries[i];
    return out;
  }
};

inline NnTensor DenseTensor::to_nn(const DenseTensor& t) {
  if (t.dims.empty()) throw std::invalid_argument("to_nn: empty tensor");
  for (int d : t.dims)
    if (d != t.dims[0]) throw std::invalid_argument("to_nn: sites must share one dimension");
  NnTensor out(int(t.dims.size()) - 1, t.dims[0]);
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    if (std::abs(t.entries[i].imag()) > 1e-12)
      throw std::invalid_argument("to_nn: tensor has a non-real entry");
    out.entries[i] = t.entries[i].real();
  }
  return out;
}

/// Thin SVD: input = U diag(singular_values) V^*, singular values strictly
/// positive and nonincreasing, U and V isometries of width `rank`.
struct SvdResult {
  ComplexMatrix u;
  RealVector singular_values;
  ComplexMatrix v;
  Index rank = 0;
};

/// Diagonal psd-candidate matrix, kept structured so diagonal-only pipelines
/// stay exact and cheap. Diagonal entries in lexicographic index order.
struct DiagonalMatrix {
  RealVector diag;

  DiagonalMatrix() = default;
  explicit DiagonalMatrix(RealVector d) : diag(std::move(d)) {}

  Index dim() const { return diag.size(); }
  bool is_psd(double tol = 0.0) const { return diag.size() == 0 || diag.minCoeff() >= -tol; }

  ComplexMatrix to_dense() const {
    ComplexMatrix m = ComplexMatrix::Zero(diag.size(), diag.size());
    for (Index i = 0; i < diag.size(); ++i) m(i, i) = diag(i);
    return m;
  }
};

}  // namespace acara
