#pragma once

#include "acara/types.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace acara {

// std::mt19937_64 output is bit-exact across platforms; the std::*_distribution
// wrappers are not. Reports must be reproducible byte for byte, so the mappings
// from raw bits to doubles are spelled out here.

inline double uniform01(std::mt19937_64& gen) {
  return double(gen() >> 11) * 0x1.0p-53;
}

inline double normal01(std::mt19937_64& gen) {
  // Box-Muller, single draw per call
  double u1 = uniform01(gen);
  while (u1 <= 0.0) u1 = uniform01(gen);
  const double u2 = uniform01(gen);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline Complex complex_normal(std::mt19937_64& gen) {
  const double re = normal01(gen);
  const double im = normal01(gen);
  return Complex(re, im) / std::sqrt(2.0);
}

inline ComplexMatrix random_complex_matrix(Index rows, Index cols, std::mt19937_64& gen) {
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = complex_normal(gen);
  return m;
}

inline ComplexMatrix random_hermitian(Index dim, std::mt19937_64& gen) {
  ComplexMatrix m = random_complex_matrix(dim, dim, gen);
  return (m + m.adjoint()) / 2.0;
}

}  // namespace acara
