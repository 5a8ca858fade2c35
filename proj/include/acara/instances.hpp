#pragma once

#include "acara/types.hpp"

#include <cstdint>
#include <iosfwd>

namespace acara {

/// d x d matrix with entries uniform on [0,1), normalized to unit l1 mass.
NnTensor build_random_instance(int d, std::uint64_t seed);

/// Outer product a b^T with a, b uniform on [0,1)^d, normalized to unit l1 mass.
NnTensor build_rank1_instance(int d, std::uint64_t seed);

/// Normalized Euclidean distance matrix ((i-j)^2)_{i,j=1..d} / l1 mass.
NnTensor build_euclid_instance(int d);

/// Normalized slack matrix of the regular d-gon: rows are facets through
/// consecutive vertices (outward normals), columns are vertices; incidences
/// are clamped to exact zero below 1e-14 before normalization.
NnTensor build_slack_instance(int d);

/// Text format: first line `n d`, then the d^(n+1) entries in lexicographic
/// order, whitespace separated.
NnTensor parse_nn_tensor(std::istream& in);
std::string format_nn_tensor(const NnTensor& t);

}  // namespace acara
