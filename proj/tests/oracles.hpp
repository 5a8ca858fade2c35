#pragma once

// Independent oracles for the test suites. These deliberately avoid the code
// paths of the library: norms go through a self-adjoint eigensolve of M*M,
// derivatives through central finite differences, decomposition evaluation
// through a direct per-entry contraction, and the closed-form budgets through
// long double arithmetic.

#include "acara/decomp.hpp"
#include "acara/tensor.hpp"
#include "acara/types.hpp"
#include "acara/wsc.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

namespace acara::oracles {

inline double eig_schatten_norm(const ComplexMatrix& m, double p) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(m.adjoint() * m);
  double acc = 0.0;
  for (Index i = 0; i < eig.eigenvalues().size(); ++i) {
    const double lambda = std::max(0.0, eig.eigenvalues()(i));
    acc += std::pow(std::sqrt(lambda), p);
  }
  return std::pow(acc, 1.0 / p);
}

inline double fd_schatten_derivative(const ComplexMatrix& x, const ComplexMatrix& y, double p,
                                     double h = 1e-6) {
  return (schatten_norm(x + h * y, p) - schatten_norm(x - h * y, p)) / (2.0 * h);
}

inline double fd_lp_derivative(const ComplexMatrix& x, const ComplexMatrix& y, double p,
                               double h = 1e-6) {
  return (lp_norm(x + h * y, p) - lp_norm(x - h * y, p)) / (2.0 * h);
}

/// Entry-by-entry contraction of the defining sum: for every output index,
/// loop over all assignments and multiply the restricted local coordinates.
inline DenseTensor brute_contract(const OmegaGDecomposition& dec) {
  const FacetMultiset fm = facets(dec.wsc);
  const int verts = dec.wsc.n + 1;
  std::vector<std::vector<int>> incident(static_cast<std::size_t>(verts));
  for (int v = 0; v < verts; ++v) incident[std::size_t(v)] = fm.incident_copies(v);

  DenseTensor out(dec.local_dims);
  std::vector<int> idx(static_cast<std::size_t>(verts), 0);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    std::size_t rem = flat;
    for (int v = verts - 1; v >= 0; --v) {
      idx[std::size_t(v)] = int(rem % std::size_t(dec.local_dims[std::size_t(v)]));
      rem /= std::size_t(dec.local_dims[std::size_t(v)]);
    }
    Complex total(0.0, 0.0);
    std::vector<int> alpha(fm.total(), 0);
    bool more = true;
    while (more) {
      Complex term(1.0, 0.0);
      for (int v = 0; v < verts && term != Complex(0.0, 0.0); ++v) {
        std::vector<int> key;
        for (int c : incident[std::size_t(v)]) key.push_back(alpha[std::size_t(c)]);
        const auto& family = dec.local_families[std::size_t(v)];
        const auto it = family.find(key);
        if (it == family.end()) {
          term = Complex(0.0, 0.0);
        } else {
          term *= it->second(idx[std::size_t(v)]);
        }
      }
      total += term;
      more = false;
      for (std::size_t pos = alpha.size(); pos-- > 0;) {
        if (++alpha[pos] < dec.index_set_size) {
          more = true;
          break;
        }
        alpha[pos] = 0;
      }
      if (alpha.empty()) break;  // single empty assignment
    }
    out.entries[flat] = total;
  }
  return out;
}

// Long double evaluation of the closed-form constants and budgets.
inline long double ld_c_constant(long double p) {
  return std::pow(2.0L * std::exp(2.0L) / std::pow(p, 1.0L / p), p / (p - 1.0L));
}
inline long double ld_d_constant(long double p) { return 2.0L * (p - 1.0L) * std::exp(4.0L); }

inline long double ld_error_bound(long long k, long double diam, long double p, bool quadratic) {
  if (quadratic) return std::exp(2.0L) * std::sqrt(2.0L * (p - 1.0L) / (long double)k) * diam;
  return (2.0L * std::exp(2.0L) / std::pow(p, 1.0L / p)) *
         std::pow((long double)k, 1.0L / p - 1.0L) * diam;
}

inline long double ld_budget_raw(long double epsilon, long double diam, long double p,
                                 bool quadratic) {
  if (quadratic) return ld_d_constant(p) * std::pow(diam / epsilon, 2.0L);
  return ld_c_constant(p) * std::pow(diam / epsilon, p / (p - 1.0L));
}

}  // namespace acara::oracles
