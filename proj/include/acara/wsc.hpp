#pragma once

#include "acara/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace acara {

/// Subset of the vertex set {0, ..., n} as a bitmask.
using Simplex = std::uint32_t;

std::vector<int> simplex_vertices(Simplex s);
Simplex vertices_to_simplex(const std::vector<int>& vs);
Simplex apply_perm(const std::vector<int>& perm, Simplex s);

/// Lexicographic order on the sorted vertex lists; the canonical order for
/// facets and serialization ({0,3} before {1,2}, unlike the bitmask order).
bool simplex_lex_less(Simplex a, Simplex b);

/// Weight function on the nonempty subsets of {0..n}, stored sparsely:
/// absent subsets have weight zero. The nonzero-weight subsets are the
/// simplices; weights must divide along inclusions.
struct Wsc {
  int n = 0;
  std::map<Simplex, std::uint64_t> omega;

  std::uint64_t weight(Simplex s) const {
    auto it = omega.find(s);
    return it == omega.end() ? 0 : it->second;
  }
  void set_weight(Simplex s, std::uint64_t w) {
    if (w == 0)
      omega.erase(s);
    else
      omega[s] = w;
  }
};

struct ValidationReport {
  bool ok = true;
  std::string message;
};

/// Facets (inclusion-maximal simplices) in canonical order, plus the flattened
/// multiset of (facet, copy) pairs with copies numbered 0..weight-1.
struct FacetMultiset {
  std::vector<Simplex> facets;
  std::vector<std::uint64_t> multiplicity;
  std::vector<std::pair<int, int>> copies;  // (position in facets, copy index)

  std::size_t total() const { return copies.size(); }
  int copy_index(int facet_pos, int copy) const;
  /// Facet copies incident to vertex i, as canonical copy indices.
  std::vector<int> incident_copies(int vertex) const;
};

/// Finite group acting on a wsc: per element a vertex permutation and an
/// explicit permutation of the facet-copy multiset, plus the composition
/// table. The multiset refinement is part of the data, never derived.
struct GroupAction {
  std::vector<std::vector<int>> vertex_perm;  // [element][vertex]
  std::vector<std::vector<int>> copy_perm;    // [element][copy index]
  std::vector<std::vector<int>> table;        // table[a][b] = index of a*b
  int identity = 0;

  int size() const { return int(vertex_perm.size()); }
  int compose(int a, int b) const { return table[std::size_t(a)][std::size_t(b)]; }
  int inverse(int a) const;
};

ValidationReport validate_wsc(const Wsc& w);
FacetMultiset facets(const Wsc& w);
bool is_connected(const Wsc& w);

Wsc build_simplex(int n);
Wsc build_line(int n);
Wsc build_circle(int n);

GroupAction trivial_action(const Wsc& w);
/// Cyclic rotations on the circle of length n; requires the exact facet set
/// of build_circle(n).
GroupAction build_cyclic_action(const Wsc& w);

ValidationReport validate_group_action(const Wsc& w, const GroupAction& g);
bool is_free_action(const Wsc& w, const GroupAction& g);

/// Orbits of the facet-copy multiset, each sorted, ordered by smallest member.
std::vector<std::vector<int>> copy_orbits(const Wsc& w, const GroupAction& g);

// Text format: one line `facet <sorted vertex list> weight <w>` per facet.
// The loader completes lower simplices with the gcd of the facet weights
// above them, which always satisfies the divisibility axiom.
std::string format_wsc(const Wsc& w);
Wsc parse_wsc(std::istream& in);
Wsc parse_wsc_string(const std::string& text);

// Group actions: per element a cycle-notation vertex permutation line and a
// `copies` line listing the image of every canonical facet-copy index.
std::string format_group_action(const Wsc& w, const GroupAction& g);
GroupAction parse_group_action(const Wsc& w, std::istream& in);
GroupAction parse_group_action_string(const Wsc& w, const std::string& text);

std::string format_cycles(const std::vector<int>& perm);
std::vector<int> parse_cycles(const std::string& text, int n_points);

}  // namespace acara
