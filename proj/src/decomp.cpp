#include "acara/decomp.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace acara {

ComplexMatrix ConvexCombination::evaluate() const {
  if (atoms.empty()) throw std::invalid_argument("ConvexCombination::evaluate: empty combination");
  ComplexMatrix acc = ComplexMatrix::Zero(atoms[0].rows(), atoms[0].cols());
  for (std::size_t i = 0; i < atoms.size(); ++i) acc += weights[i] * atoms[i];
  return acc;
}

double ConvexCombination::weight_sum() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

bool ConvexCombination::is_convex(double tol) const {
  for (double w : weights)
    if (w < 0.0) return false;
  return weight_sum() <= 1.0 + tol;
}

namespace {

std::size_t checked_pow(std::size_t base, std::size_t exp, std::size_t cap, const char* what) {
  std::size_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && v > cap / base) throw SizeCapError(std::string(what) + ": enumeration exceeds cap");
    v *= base;
  }
  if (v > cap) throw SizeCapError(std::string(what) + ": enumeration exceeds cap");
  return v;
}

struct DecompGeometry {
  FacetMultiset fm;
  std::vector<std::vector<int>> incident;       // per vertex, ascending copy indices
  std::vector<std::map<int, int>> copy_pos;     // per vertex, copy index -> position
};

DecompGeometry geometry(const Wsc& w) {
  DecompGeometry g;
  g.fm = facets(w);
  g.incident.resize(std::size_t(w.n) + 1);
  g.copy_pos.resize(std::size_t(w.n) + 1);
  for (int v = 0; v <= w.n; ++v) {
    g.incident[std::size_t(v)] = g.fm.incident_copies(v);
    for (int t = 0; t < int(g.incident[std::size_t(v)].size()); ++t)
      g.copy_pos[std::size_t(v)][g.incident[std::size_t(v)][std::size_t(t)]] = t;
  }
  return g;
}

bool next_assignment(std::vector<int>& alpha, int radix) {
  for (std::size_t pos = alpha.size(); pos-- > 0;) {
    if (++alpha[pos] < radix) return true;
    alpha[pos] = 0;
  }
  return false;
}

// out[flat] += prod_v locals[v][i_v]
void accumulate_elementary(std::vector<Complex>& out, const std::vector<const Eigen::VectorXcd*>& locals,
                           std::size_t vertex, std::size_t flat, Complex coeff) {
  if (vertex == locals.size()) {
    out[flat] += coeff;
    return;
  }
  const Eigen::VectorXcd& local = *locals[vertex];
  for (Index i = 0; i < local.size(); ++i)
    accumulate_elementary(out, locals, vertex + 1, flat * std::size_t(local.size()) + std::size_t(i),
                          coeff * local(i));
}

void validate_decomposition_shape(const OmegaGDecomposition& dec) {
  const int verts = dec.wsc.n + 1;
  if (int(dec.local_dims.size()) != verts || int(dec.local_families.size()) != verts)
    throw std::invalid_argument("decomposition: per-vertex arrays must cover every vertex");
  if (dec.index_set_size < 1) throw std::invalid_argument("decomposition: index set must be nonempty");
}

}  // namespace

DenseTensor evaluate(const OmegaGDecomposition& dec, const EvalCaps& caps) {
  validate_decomposition_shape(dec);
  const DecompGeometry geo = geometry(dec.wsc);
  const std::size_t copies = geo.fm.total();
  checked_pow(std::size_t(dec.index_set_size), copies, caps.max_terms, "evaluate");

  DenseTensor out(dec.local_dims);
  if (out.size() > caps.max_output_size) throw SizeCapError("evaluate: output exceeds cap");

  std::vector<int> alpha(copies, 0);
  std::vector<std::vector<int>> keys(std::size_t(dec.wsc.n) + 1);
  std::vector<const Eigen::VectorXcd*> locals(std::size_t(dec.wsc.n) + 1);
  do {
    bool term_present = true;
    for (int v = 0; v <= dec.wsc.n && term_present; ++v) {
      const auto& inc = geo.incident[std::size_t(v)];
      auto& key = keys[std::size_t(v)];
      key.resize(inc.size());
      for (std::size_t t = 0; t < inc.size(); ++t) key[t] = alpha[std::size_t(inc[t])];
      const auto& family = dec.local_families[std::size_t(v)];
      const auto it = family.find(key);
      if (it == family.end()) {
        term_present = false;
      } else {
        if (it->second.size() != dec.local_dims[std::size_t(v)])
          throw std::invalid_argument("evaluate: local vector has wrong dimension");
        locals[std::size_t(v)] = &it->second;
      }
    }
    if (term_present) accumulate_elementary(out.entries, locals, 0, 0, Complex(1.0, 0.0));
  } while (next_assignment(alpha, dec.index_set_size));
  return out;
}

ValidationReport check_g_compatibility(const OmegaGDecomposition& dec, const EvalCaps& caps) {
  validate_decomposition_shape(dec);
  const DecompGeometry geo = geometry(dec.wsc);
  const GroupAction& g = dec.action;

  std::size_t checked = 0;
  for (int a = 0; a < g.size(); ++a) {
    const int a_inv = g.inverse(a);
    for (int v = 0; v <= dec.wsc.n; ++v) {
      const int gv = g.vertex_perm[std::size_t(a)][std::size_t(v)];
      if (dec.local_dims[std::size_t(v)] != dec.local_dims[std::size_t(gv)])
        return {false, "local dimensions differ along an orbit"};
      const auto& inc_gv = geo.incident[std::size_t(gv)];
      for (const auto& [beta, value] : dec.local_families[std::size_t(v)]) {
        if (++checked > caps.max_terms)
          throw SizeCapError("check_g_compatibility: enumeration exceeds cap");
        // (g.beta)(F) = beta(g^{-1} F) for F incident to gv
        std::vector<int> gbeta(inc_gv.size());
        for (std::size_t t = 0; t < inc_gv.size(); ++t) {
          const int pre = g.copy_perm[std::size_t(a_inv)][std::size_t(inc_gv[t])];
          gbeta[t] = beta[std::size_t(geo.copy_pos[std::size_t(v)].at(pre))];
        }
        const auto& family_gv = dec.local_families[std::size_t(gv)];
        const auto it = family_gv.find(gbeta);
        const double mismatch =
            (it == family_gv.end())
                ? value.cwiseAbs().maxCoeff()
                : (value - it->second).cwiseAbs().maxCoeff();
        if (mismatch > 1e-12)
          return {false, "equivariance violated at vertex " + std::to_string(v) + ", element " +
                             std::to_string(a)};
      }
    }
  }
  return {true, ""};
}

NnTensor evaluate_psd(const PsdOmegaGDecomposition& dec, const EvalCaps& caps,
                      bool* clamped_warning) {
  const int verts = dec.wsc.n + 1;
  if (int(dec.local_matrices.size()) != verts)
    throw std::invalid_argument("evaluate_psd: per-vertex arrays must cover every vertex");
  if (dec.index_set_size < 1 || dec.d < 1)
    throw std::invalid_argument("evaluate_psd: bad index set or local dimension");
  const DecompGeometry geo = geometry(dec.wsc);
  const std::size_t copies = geo.fm.total();
  const std::size_t radix = std::size_t(dec.index_set_size);
  checked_pow(radix, 2 * copies, caps.max_terms, "evaluate_psd");

  std::vector<std::size_t> k_i(static_cast<std::size_t>(verts));
  for (int v = 0; v < verts; ++v) {
    k_i[std::size_t(v)] =
        checked_pow(radix, geo.incident[std::size_t(v)].size(), caps.max_terms, "evaluate_psd");
    if (int(dec.local_matrices[std::size_t(v)].size()) != dec.d)
      throw std::invalid_argument("evaluate_psd: need one matrix per local index");
    for (const ComplexMatrix& e : dec.local_matrices[std::size_t(v)])
      if (e.rows() != Index(k_i[std::size_t(v)]) || e.cols() != Index(k_i[std::size_t(v)]))
        throw std::invalid_argument("evaluate_psd: local matrix has wrong size");
  }

  DenseTensor acc(std::vector<int>(std::size_t(verts), dec.d));
  if (acc.size() > caps.max_output_size) throw SizeCapError("evaluate_psd: output exceeds cap");

  const auto restriction_rank = [&](const std::vector<int>& alpha, int v) {
    std::size_t r = 0;
    for (int c : geo.incident[std::size_t(v)]) r = r * radix + std::size_t(alpha[std::size_t(c)]);
    return r;
  };

  std::vector<int> alpha(copies, 0);
  std::vector<Eigen::VectorXcd> locals(static_cast<std::size_t>(verts));
  std::vector<const Eigen::VectorXcd*> local_ptrs(static_cast<std::size_t>(verts));
  for (int v = 0; v < verts; ++v) {
    locals[std::size_t(v)].resize(dec.d);
    local_ptrs[std::size_t(v)] = &locals[std::size_t(v)];
  }
  do {
    std::vector<std::size_t> rows(static_cast<std::size_t>(verts));
    for (int v = 0; v < verts; ++v) rows[std::size_t(v)] = restriction_rank(alpha, v);
    std::vector<int> alpha_prime(copies, 0);
    do {
      for (int v = 0; v < verts; ++v) {
        const std::size_t col = restriction_rank(alpha_prime, v);
        for (int j = 0; j < dec.d; ++j)
          locals[std::size_t(v)](j) =
              dec.local_matrices[std::size_t(v)][std::size_t(j)](Index(rows[std::size_t(v)]), Index(col));
      }
      accumulate_elementary(acc.entries, local_ptrs, 0, 0, Complex(1.0, 0.0));
    } while (next_assignment(alpha_prime, dec.index_set_size));
  } while (next_assignment(alpha, dec.index_set_size));

  NnTensor out(verts - 1, dec.d);
  bool clamped = false;
  for (std::size_t i = 0; i < acc.entries.size(); ++i) {
    const Complex z = acc.entries[i];
    if (std::abs(z.imag()) > 1e-8)
      throw std::invalid_argument("evaluate_psd: output entry has a material imaginary part");
    double e = z.real();
    if (e < -1e-6)
      throw std::invalid_argument("evaluate_psd: materially negative output entry (invalid decomposition)");
    if (e < 0.0) {
      e = 0.0;
      clamped = true;
    }
    out.entries[i] = e;
  }
  if (clamped_warning) *clamped_warning = clamped;
  return out;
}

ValidationReport check_psd_decomposition(const PsdOmegaGDecomposition& dec) {
  const int verts = dec.wsc.n + 1;
  const DecompGeometry geo = geometry(dec.wsc);
  const GroupAction& g = dec.action;
  const std::size_t radix = std::size_t(dec.index_set_size);

  for (int v = 0; v < verts; ++v)
    for (int j = 0; j < dec.d; ++j) {
      const ComplexMatrix& e = dec.local_matrices[std::size_t(v)][std::size_t(j)];
      const double scale = std::max(1.0, e.cwiseAbs().maxCoeff());
      if ((e - e.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        return {false, "local matrix is not Hermitian at vertex " + std::to_string(v)};
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(e);
      if (eig.eigenvalues().minCoeff() < -1e-10 * scale)
        return {false, "local matrix is not psd at vertex " + std::to_string(v)};
    }

  // symmetry constraint (E_j^[i])_{beta,beta'} = (E_j^[gi])_{g.beta,g.beta'}
  const auto remap_rank = [&](int from_vertex, int to_vertex, int a_inv, std::size_t rank) {
    // decode rank over incident(from_vertex), re-encode as the pullback over incident(to_vertex)
    const auto& inc_from = geo.incident[std::size_t(from_vertex)];
    std::vector<int> beta(inc_from.size());
    for (std::size_t t = inc_from.size(); t-- > 0;) {
      beta[t] = int(rank % radix);
      rank /= radix;
    }
    const auto& inc_to = geo.incident[std::size_t(to_vertex)];
    std::size_t out = 0;
    for (std::size_t t = 0; t < inc_to.size(); ++t) {
      const int pre = g.copy_perm[std::size_t(a_inv)][std::size_t(inc_to[t])];
      out = out * radix + std::size_t(beta[std::size_t(geo.copy_pos[std::size_t(from_vertex)].at(pre))]);
    }
    return out;
  };

  for (int a = 0; a < g.size(); ++a) {
    const int a_inv = g.inverse(a);
    for (int v = 0; v < verts; ++v) {
      const int gv = g.vertex_perm[std::size_t(a)][std::size_t(v)];
      const std::size_t k = std::size_t(dec.local_matrices[std::size_t(v)][0].rows());
      for (int j = 0; j < dec.d; ++j)
        for (std::size_t r = 0; r < k; ++r)
          for (std::size_t c = 0; c < k; ++c) {
            const std::size_t gr = remap_rank(v, gv, a_inv, r);
            const std::size_t gc = remap_rank(v, gv, a_inv, c);
            const Complex lhs = dec.local_matrices[std::size_t(v)][std::size_t(j)](Index(r), Index(c));
            const Complex rhs =
                dec.local_matrices[std::size_t(gv)][std::size_t(j)](Index(gr), Index(gc));
            if (std::abs(lhs - rhs) > 1e-12)
              return {false, "psd symmetry constraint violated at vertex " + std::to_string(v)};
          }
    }
  }
  return {true, ""};
}

DenseTensor group_apply(const DenseTensor& m, const std::vector<int>& vertex_perm) {
  const std::size_t sites = m.dims.size();
  if (vertex_perm.size() != sites) throw std::invalid_argument("group_apply: permutation size mismatch");
  for (std::size_t t = 0; t < sites; ++t)
    if (m.dims[t] != m.dims[std::size_t(vertex_perm[t])])
      throw std::invalid_argument("group_apply: site dimensions must match along the permutation");

  DenseTensor out(m.dims);
  std::vector<int> idx(sites, 0);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    std::size_t rem = flat;
    for (std::size_t t = sites; t-- > 0;) {
      idx[t] = int(rem % std::size_t(m.dims[t]));
      rem /= std::size_t(m.dims[t]);
    }
    std::size_t src = 0;
    for (std::size_t t = 0; t < sites; ++t)
      src = src * std::size_t(m.dims[t]) + std::size_t(idx[std::size_t(vertex_perm[t])]);
    out.entries[flat] = m.entries[src];
  }
  return out;
}

SymmetrizeResult symmetrize(const DenseTensor& m_prime, const GroupAction& action,
                            const OmegaGDecomposition& dec_prime, const EvalCaps& caps) {
  validate_decomposition_shape(dec_prime);
  const Wsc& w = dec_prime.wsc;
  if (dec_prime.action.size() != 1)
    throw std::invalid_argument("symmetrize: input decomposition must have the trivial group");
  {
    const ValidationReport rep = validate_group_action(w, action);
    if (!rep.ok) throw std::invalid_argument("symmetrize: invalid group action: " + rep.message);
  }
  if (!is_free_action(w, action))
    throw std::invalid_argument("symmetrize: non-free actions are unsupported");
  if (!is_connected(w)) throw std::invalid_argument("symmetrize: complex must be connected");
  for (int a = 0; a < action.size(); ++a)
    for (int v = 0; v <= w.n; ++v)
      if (dec_prime.local_dims[std::size_t(v)] !=
          dec_prime.local_dims[std::size_t(action.vertex_perm[std::size_t(a)][std::size_t(v)])])
        throw std::invalid_argument("symmetrize: local dimensions must agree along orbits");

  const DenseTensor evaluated = evaluate(dec_prime, caps);
  {
    double scale = 1.0, diff = 0.0;
    for (std::size_t i = 0; i < m_prime.entries.size(); ++i) {
      scale = std::max(scale, std::abs(m_prime.entries[i]));
      diff = std::max(diff, std::abs(m_prime.entries[i] - evaluated.entries[i]));
    }
    if (diff > 1e-10 * scale)
      throw std::invalid_argument("symmetrize: decomposition does not evaluate to the input tensor");
  }

  const int order = action.size();
  if (order == 1) return {m_prime, dec_prime};

  DenseTensor averaged(m_prime.dims);
  for (int a = 0; a < order; ++a) {
    const DenseTensor term = group_apply(m_prime, action.vertex_perm[std::size_t(a)]);
    for (std::size_t i = 0; i < averaged.entries.size(); ++i)
      averaged.entries[i] += term.entries[i] / double(order);
  }

  const DecompGeometry geo = geometry(w);
  const std::size_t copies = geo.fm.total();

  // free orbits: representative and offset element per copy
  std::vector<int> rep(copies), offset(copies, -1);
  for (std::size_t c = 0; c < copies; ++c) {
    int r = int(c);
    for (int a = 0; a < order; ++a)
      r = std::min(r, action.copy_perm[std::size_t(a)][c]);
    rep[c] = r;
    for (int a = 0; a < order; ++a)
      if (action.copy_perm[std::size_t(a)][std::size_t(r)] == int(c)) {
        if (offset[c] != -1)
          throw std::invalid_argument("symmetrize: action is not free on the facet multiset");
        offset[c] = a;
      }
    if (offset[c] == -1) throw std::invalid_argument("symmetrize: orbit structure is inconsistent");
  }

  // group elements numbered by their serialized permutation for index bookkeeping
  std::vector<int> order_by_serial(static_cast<std::size_t>(order));
  std::iota(order_by_serial.begin(), order_by_serial.end(), 0);
  std::sort(order_by_serial.begin(), order_by_serial.end(), [&](int a, int b) {
    return std::tie(action.vertex_perm[std::size_t(a)], action.copy_perm[std::size_t(a)]) <
           std::tie(action.vertex_perm[std::size_t(b)], action.copy_perm[std::size_t(b)]);
  });
  std::vector<int> ordpos(static_cast<std::size_t>(order));
  for (int pos = 0; pos < order; ++pos) ordpos[std::size_t(order_by_serial[std::size_t(pos)])] = pos;

  OmegaGDecomposition dec;
  dec.wsc = w;
  dec.action = action;
  dec.index_set_size = dec_prime.index_set_size * order;
  dec.local_dims = dec_prime.local_dims;
  dec.local_families.resize(std::size_t(w.n) + 1);

  const double scale = std::pow(double(order), -1.0 / double(w.n + 1));
  for (int i = 0; i <= w.n; ++i) {
    const auto& inc_i = geo.incident[std::size_t(i)];
    for (int ghat = 0; ghat < order; ++ghat) {
      const int ghat_inv = action.inverse(ghat);
      const int j = action.vertex_perm[std::size_t(ghat_inv)][std::size_t(i)];
      for (const auto& [beta, value] : dec_prime.local_families[std::size_t(j)]) {
        std::vector<int> gamma(inc_i.size());
        for (std::size_t t = 0; t < inc_i.size(); ++t) {
          const int c = inc_i[t];
          const int pre = action.copy_perm[std::size_t(ghat_inv)][std::size_t(c)];
          const int a_part = beta[std::size_t(geo.copy_pos[std::size_t(j)].at(pre))];
          const int h_part = action.compose(action.inverse(offset[std::size_t(c)]), ghat);
          gamma[t] = a_part * order + ordpos[std::size_t(h_part)];
        }
        dec.local_families[std::size_t(i)].emplace(std::move(gamma), scale * value);
      }
    }
  }
  return {averaged, dec};
}

DiagonalMatrix diag_correspondence(const NnTensor& m, const EvalCaps& caps) {
  if (m.size() > caps.max_output_size) throw SizeCapError("diag_correspondence: size exceeds cap");
  RealVector diag(Index(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) diag(Index(i)) = m.entries[i];
  return DiagonalMatrix(std::move(diag));
}

nlohmann::ordered_json decomposition_to_json(const OmegaGDecomposition& dec) {
  nlohmann::ordered_json j;
  j["wsc"] = format_wsc(dec.wsc);
  j["action"] = format_group_action(dec.wsc, dec.action);
  j["index_set_size"] = dec.index_set_size;
  j["local_dims"] = dec.local_dims;
  nlohmann::ordered_json vertices = nlohmann::ordered_json::array();
  for (std::size_t v = 0; v < dec.local_families.size(); ++v) {
    nlohmann::ordered_json family = nlohmann::ordered_json::array();
    for (const auto& [beta, value] : dec.local_families[v]) {
      nlohmann::ordered_json entry;
      entry["beta"] = beta;
      nlohmann::ordered_json flat = nlohmann::ordered_json::array();
      for (Index i = 0; i < value.size(); ++i) {
        flat.push_back(value(i).real());
        flat.push_back(value(i).imag());
      }
      entry["tensor"] = flat;
      family.push_back(entry);
    }
    vertices.push_back(family);
  }
  j["families"] = vertices;
  return j;
}

OmegaGDecomposition decomposition_from_json(const nlohmann::json& j) {
  OmegaGDecomposition dec;
  dec.wsc = parse_wsc_string(j.at("wsc").get<std::string>());
  dec.action = parse_group_action_string(dec.wsc, j.at("action").get<std::string>());
  dec.index_set_size = j.at("index_set_size").get<int>();
  dec.local_dims = j.at("local_dims").get<std::vector<int>>();
  const auto& vertices = j.at("families");
  dec.local_families.resize(vertices.size());
  for (std::size_t v = 0; v < vertices.size(); ++v)
    for (const auto& entry : vertices[v]) {
      const std::vector<int> beta = entry.at("beta").get<std::vector<int>>();
      const std::vector<double> flat = entry.at("tensor").get<std::vector<double>>();
      if (flat.size() % 2 != 0) throw std::invalid_argument("decomposition json: odd tensor length");
      Eigen::VectorXcd value(Index(flat.size() / 2));
      for (Index i = 0; i < value.size(); ++i)
        value(i) = Complex(flat[std::size_t(2 * i)], flat[std::size_t(2 * i + 1)]);
      dec.local_families[v][beta] = value;
    }
  return dec;
}

int rank_from_combination(const ConvexCombination& c, const Wsc& w) {
  if (!c.atoms_are_product)
    throw std::invalid_argument("rank_from_combination: atoms must be elementary product tensors");
  if (!is_connected(w))
    throw std::invalid_argument("rank_from_combination: bound only valid for connected complexes");
  std::set<int> distinct;
  for (std::size_t i = 0; i < c.atom_ids.size(); ++i)
    if (c.weights[i] > 0.0) distinct.insert(c.atom_ids[i]);
  return int(distinct.size());
}

}  // namespace acara
