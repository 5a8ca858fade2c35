#pragma once

#include "acara/types.hpp"
#include "acara/wsc.hpp"

#include <json.hpp>

#include <map>
#include <vector>

namespace acara {

struct EvalCaps {
  std::size_t max_output_size = 10'000'000;
  std::size_t max_terms = 10'000'000;
};

/// Decomposition of a tensor over a wsc with explicit group equivariance:
/// per vertex i a family of local vectors indexed by assignments
/// beta: incident facet copies -> {0..index_set_size-1}. Assignments are keyed
/// by the ascending canonical copy order of the vertex's incident copies;
/// absent keys mean the zero vector.
struct OmegaGDecomposition {
  Wsc wsc;
  GroupAction action;
  int index_set_size = 1;
  std::vector<int> local_dims;  // d_i per vertex
  std::vector<std::map<std::vector<int>, Eigen::VectorXcd>> local_families;
};

/// Positive semidefinite decomposition of a nonnegative tensor: per vertex i
/// and local index j a psd matrix of size k_i = |I|^(incident copies), rows
/// and columns ranked lexicographically over the incident-copy assignments.
struct PsdOmegaGDecomposition {
  Wsc wsc;
  GroupAction action;
  int index_set_size = 1;
  int d = 1;
  std::vector<std::vector<ComplexMatrix>> local_matrices;  // [vertex][j]
};

/// Weighted list of atoms. Algorithm outputs carry uniform weights 1/k and
/// satisfy is_convex(); gauge certificates may carry any nonnegative weights.
struct ConvexCombination {
  std::vector<int> atom_ids;
  std::vector<ComplexMatrix> atoms;
  std::vector<double> weights;
  bool atoms_are_product = false;

  ComplexMatrix evaluate() const;
  double weight_sum() const;
  bool is_convex(double tol = 1e-12) const;
};

/// Sum over all index assignments of the elementary tensors of restricted
/// local factors (the defining equation of the decomposition).
DenseTensor evaluate(const OmegaGDecomposition& dec, const EvalCaps& caps = {});

/// Exhaustive check of the equivariance constraint v_beta^[i] = v_{g.beta}^[gi].
ValidationReport check_g_compatibility(const OmegaGDecomposition& dec,
                                       const EvalCaps& caps = {});

NnTensor evaluate_psd(const PsdOmegaGDecomposition& dec, const EvalCaps& caps = {},
                      bool* clamped_warning = nullptr);

ValidationReport check_psd_decomposition(const PsdOmegaGDecomposition& dec);

/// Group element acting on a dense tensor by permuting the sites:
/// (g m)[i_0..i_n] = m[i_{g(0)}, ..., i_{g(n)}].
DenseTensor group_apply(const DenseTensor& m, const std::vector<int>& vertex_perm);

struct SymmetrizeResult {
  DenseTensor averaged;         // (1/|G|) sum_g g m_prime
  OmegaGDecomposition dec;      // G-compatible, index set size <= |I'| * |G|
};

/// Group-averages a trivially-decomposed tensor and produces an equivariant
/// decomposition over the enlarged index set I x G. Requires a free action on
/// a connected complex.
SymmetrizeResult symmetrize(const DenseTensor& m_prime, const GroupAction& action,
                            const OmegaGDecomposition& dec_prime, const EvalCaps& caps = {});

/// The diagonal matrix carrying the tensor entries on its diagonal in
/// lexicographic index order; psd exactly when the tensor is nonnegative.
DiagonalMatrix diag_correspondence(const NnTensor& m, const EvalCaps& caps = {});

/// Number of distinct atoms used by a combination of elementary product
/// tensors; an upper bound on the Omega-rank of its value for any connected
/// complex.
int rank_from_combination(const ConvexCombination& c, const Wsc& w);

/// Serialization: per vertex the list of (assignment, flattened local tensor)
/// pairs in sorted assignment order, with the complex and action in their text
/// formats. Stable output, suitable for golden files.
nlohmann::ordered_json decomposition_to_json(const OmegaGDecomposition& dec);
OmegaGDecomposition decomposition_from_json(const nlohmann::json& j);

}  // namespace acara
