#include "acara/wsc.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace acara {

std::vector<int> simplex_vertices(Simplex s) {
  std::vector<int> out;
  for (int v = 0; v < 32; ++v)
    if (s & (Simplex(1) << v)) out.push_back(v);
  return out;
}

Simplex vertices_to_simplex(const std::vector<int>& vs) {
  Simplex s = 0;
  for (int v : vs) {
    if (v < 0 || v >= 32) throw std::invalid_argument("vertex out of range [0,32)");
    s |= Simplex(1) << v;
  }
  return s;
}

Simplex apply_perm(const std::vector<int>& perm, Simplex s) {
  Simplex out = 0;
  for (int v = 0; v < int(perm.size()); ++v)
    if (s & (Simplex(1) << v)) out |= Simplex(1) << perm[std::size_t(v)];
  return out;
}

bool simplex_lex_less(Simplex a, Simplex b) {
  return simplex_vertices(a) < simplex_vertices(b);
}

int FacetMultiset::copy_index(int facet_pos, int copy) const {
  for (int k = 0; k < int(copies.size()); ++k)
    if (copies[std::size_t(k)] == std::make_pair(facet_pos, copy)) return k;
  throw std::invalid_argument("copy_index: no such facet copy");
}

std::vector<int> FacetMultiset::incident_copies(int vertex) const {
  std::vector<int> out;
  for (int k = 0; k < int(copies.size()); ++k) {
    const Simplex f = facets[std::size_t(copies[std::size_t(k)].first)];
    if (f & (Simplex(1) << vertex)) out.push_back(k);
  }
  return out;
}

int GroupAction::inverse(int a) const {
  for (int b = 0; b < size(); ++b)
    if (table[std::size_t(a)][std::size_t(b)] == identity &&
        table[std::size_t(b)][std::size_t(a)] == identity)
      return b;
  throw std::invalid_argument("GroupAction::inverse: no inverse in table");
}

namespace {

std::string simplex_to_string(Simplex s) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int v : simplex_vertices(s)) {
    if (!first) os << ",";
    os << v;
    first = false;
  }
  os << "}";
  return os.str();
}

std::vector<Simplex> sorted_support(const Wsc& w) {
  std::vector<Simplex> out;
  for (const auto& [s, wt] : w.omega)
    if (wt != 0) out.push_back(s);
  std::sort(out.begin(), out.end(), simplex_lex_less);
  return out;
}

}  // namespace

ValidationReport validate_wsc(const Wsc& w) {
  if (w.n < 0) return {false, "vertex count must be nonnegative"};
  for (int v = 0; v <= w.n; ++v) {
    const Simplex single = Simplex(1) << v;
    if (w.weight(single) == 0)
      return {false, "singleton " + simplex_to_string(single) + " is not a simplex"};
  }
  // Divisibility along inclusions. Zero-weight subsets of a simplex violate it
  // already (0 divides only 0), so every subset of a simplex must be a simplex.
  for (Simplex s2 : sorted_support(w)) {
    const std::uint64_t w2 = w.weight(s2);
    for (Simplex s1 = (s2 - 1) & s2; s1 != 0; s1 = (s1 - 1) & s2) {
      const std::uint64_t w1 = w.weight(s1);
      if (w1 == 0 || w2 % w1 != 0)
        return {false, "weight of " + simplex_to_string(s1) + " does not divide weight of " +
                           simplex_to_string(s2)};
    }
  }
  return {true, ""};
}

FacetMultiset facets(const Wsc& w) {
  const std::vector<Simplex> support = sorted_support(w);
  FacetMultiset out;
  for (Simplex s : support) {
    bool maximal = true;
    for (Simplex t : support)
      if (t != s && (s & t) == s) {
        maximal = false;
        break;
      }
    if (maximal) {
      out.facets.push_back(s);
      out.multiplicity.push_back(w.weight(s));
    }
  }
  for (int f = 0; f < int(out.facets.size()); ++f)
    for (std::uint64_t c = 0; c < out.multiplicity[std::size_t(f)]; ++c)
      out.copies.emplace_back(f, int(c));
  return out;
}

bool is_connected(const Wsc& w) {
  const FacetMultiset fm = facets(w);
  std::vector<int> comp(std::size_t(w.n) + 1);
  std::iota(comp.begin(), comp.end(), 0);
  const auto find = [&](int v) {
    while (comp[std::size_t(v)] != v) v = comp[std::size_t(v)] = comp[std::size_t(comp[std::size_t(v)])];
    return v;
  };
  for (Simplex f : fm.facets) {
    const std::vector<int> vs = simplex_vertices(f);
    for (std::size_t i = 1; i < vs.size(); ++i) comp[std::size_t(find(vs[i]))] = find(vs[0]);
  }
  for (int v = 1; v <= w.n; ++v)
    if (find(v) != find(0)) return false;
  return true;
}

Wsc build_simplex(int n) {
  if (n < 0) throw std::invalid_argument("build_simplex: n >= 0 required");
  Wsc w;
  w.n = n;
  const Simplex full = (n + 1 >= 32) ? ~Simplex(0) : ((Simplex(1) << (n + 1)) - 1);
  if (n + 1 >= 32) throw std::invalid_argument("build_simplex: n too large");
  for (Simplex s = full; s != 0; s = (s - 1) & full) w.set_weight(s, 1);
  return w;
}

Wsc build_line(int n) {
  if (n < 1) throw std::invalid_argument("build_line: n >= 1 required");
  if (n + 1 >= 32) throw std::invalid_argument("build_line: n too large");
  Wsc w;
  w.n = n;
  for (int v = 0; v <= n; ++v) w.set_weight(Simplex(1) << v, 1);
  for (int v = 0; v < n; ++v) w.set_weight((Simplex(1) << v) | (Simplex(1) << (v + 1)), 1);
  return w;
}

Wsc build_circle(int n) {
  if (n < 3) throw std::invalid_argument("build_circle: n >= 3 required");
  if (n >= 32) throw std::invalid_argument("build_circle: n too large");
  Wsc w;
  w.n = n - 1;  // vertex set {0, ..., n-1}
  for (int v = 0; v < n; ++v) w.set_weight(Simplex(1) << v, 1);
  for (int v = 0; v < n; ++v)
    w.set_weight((Simplex(1) << v) | (Simplex(1) << ((v + 1) % n)), 1);
  return w;
}

GroupAction trivial_action(const Wsc& w) {
  const FacetMultiset fm = facets(w);
  GroupAction g;
  std::vector<int> vid(std::size_t(w.n) + 1);
  std::iota(vid.begin(), vid.end(), 0);
  std::vector<int> cid(fm.total());
  std::iota(cid.begin(), cid.end(), 0);
  g.vertex_perm = {vid};
  g.copy_perm = {cid};
  g.table = {{0}};
  g.identity = 0;
  return g;
}

GroupAction build_cyclic_action(const Wsc& w) {
  const int n = w.n + 1;
  const Wsc reference = build_circle(n);
  if (w.omega != reference.omega)
    throw std::invalid_argument("build_cyclic_action: complex is not the circle of length " +
                                std::to_string(n));
  const FacetMultiset fm = facets(w);
  std::map<Simplex, int> facet_pos;
  for (int f = 0; f < int(fm.facets.size()); ++f) facet_pos[fm.facets[std::size_t(f)]] = f;

  GroupAction g;
  g.identity = 0;
  for (int k = 0; k < n; ++k) {
    std::vector<int> vp(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) vp[std::size_t(v)] = (v + k) % n;
    std::vector<int> cp(fm.total());
    for (int c = 0; c < int(fm.total()); ++c) {
      const Simplex image = apply_perm(vp, fm.facets[std::size_t(fm.copies[std::size_t(c)].first)]);
      cp[std::size_t(c)] = fm.copy_index(facet_pos.at(image), 0);
    }
    g.vertex_perm.push_back(std::move(vp));
    g.copy_perm.push_back(std::move(cp));
  }
  g.table.assign(std::size_t(n), std::vector<int>(std::size_t(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.table[std::size_t(a)][std::size_t(b)] = (a + b) % n;
  return g;
}

namespace {

bool is_permutation(const std::vector<int>& p, int n_points) {
  if (int(p.size()) != n_points) return false;
  std::vector<bool> seen(std::size_t(n_points), false);
  for (int v : p) {
    if (v < 0 || v >= n_points || seen[std::size_t(v)]) return false;
    seen[std::size_t(v)] = true;
  }
  return true;
}

std::vector<int> compose_perm(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[std::size_t(b[i])];
  return out;
}

}  // namespace

ValidationReport validate_group_action(const Wsc& w, const GroupAction& g) {
  const int m = g.size();
  if (m == 0) return {false, "group has no elements"};
  if (int(g.copy_perm.size()) != m || int(g.table.size()) != m)
    return {false, "element arrays have mismatched sizes"};
  if (g.identity < 0 || g.identity >= m) return {false, "identity index out of range"};
  const FacetMultiset fm = facets(w);

  for (int a = 0; a < m; ++a) {
    if (!is_permutation(g.vertex_perm[std::size_t(a)], w.n + 1))
      return {false, "element " + std::to_string(a) + ": vertex map is not a permutation"};
    if (!is_permutation(g.copy_perm[std::size_t(a)], int(fm.total())))
      return {false, "element " + std::to_string(a) + ": facet-copy map is not a permutation"};
    if (int(g.table[std::size_t(a)].size()) != m)
      return {false, "composition table is not square"};
    for (int b = 0; b < m; ++b) {
      const int c = g.table[std::size_t(a)][std::size_t(b)];
      if (c < 0 || c >= m) return {false, "composition table entry out of range"};
    }
  }

  // group axioms on the table
  for (int a = 0; a < m; ++a)
    if (g.compose(g.identity, a) != a || g.compose(a, g.identity) != a)
      return {false, "identity element does not act as identity in the table"};
  for (int a = 0; a < m; ++a) {
    bool has_inverse = false;
    for (int b = 0; b < m; ++b)
      if (g.compose(a, b) == g.identity && g.compose(b, a) == g.identity) has_inverse = true;
    if (!has_inverse) return {false, "element " + std::to_string(a) + " has no inverse"};
  }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        if (g.compose(g.compose(a, b), c) != g.compose(a, g.compose(b, c)))
          return {false, "composition table is not associative"};

  // the stored permutations must realize the table
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const int c = g.compose(a, b);
      if (compose_perm(g.vertex_perm[std::size_t(a)], g.vertex_perm[std::size_t(b)]) !=
          g.vertex_perm[std::size_t(c)])
        return {false, "vertex permutations do not match the composition table"};
      if (compose_perm(g.copy_perm[std::size_t(a)], g.copy_perm[std::size_t(b)]) !=
          g.copy_perm[std::size_t(c)])
        return {false, "facet-copy permutations do not match the composition table"};
    }

  // Omega must be G-invariant
  for (int a = 0; a < m; ++a)
    for (const auto& [s, wt] : w.omega) {
      if (wt == 0) continue;
      const Simplex image = apply_perm(g.vertex_perm[std::size_t(a)], s);
      if (w.weight(image) != wt)
        return {false, "weight function is not invariant under element " + std::to_string(a)};
    }

  // collapse map is G-linear: copies of F map to copies of gF
  for (int a = 0; a < m; ++a)
    for (int c = 0; c < int(fm.total()); ++c) {
      const Simplex f = fm.facets[std::size_t(fm.copies[std::size_t(c)].first)];
      const int image_copy = g.copy_perm[std::size_t(a)][std::size_t(c)];
      const Simplex image_facet =
          fm.facets[std::size_t(fm.copies[std::size_t(image_copy)].first)];
      if (apply_perm(g.vertex_perm[std::size_t(a)], f) != image_facet)
        return {false, "facet-copy map of element " + std::to_string(a) +
                           " does not refine the vertex action (collapse not G-linear)"};
    }

  return {true, ""};
}

bool is_free_action(const Wsc& w, const GroupAction& g) {
  const FacetMultiset fm = facets(w);
  for (int a = 0; a < g.size(); ++a) {
    if (a == g.identity) continue;
    for (int c = 0; c < int(fm.total()); ++c)
      if (g.copy_perm[std::size_t(a)][std::size_t(c)] == c) return false;
  }
  return true;
}

std::vector<std::vector<int>> copy_orbits(const Wsc& w, const GroupAction& g) {
  const FacetMultiset fm = facets(w);
  std::vector<bool> seen(fm.total(), false);
  std::vector<std::vector<int>> orbits;
  for (int c = 0; c < int(fm.total()); ++c) {
    if (seen[std::size_t(c)]) continue;
    std::vector<int> orbit;
    for (int a = 0; a < g.size(); ++a) {
      const int image = g.copy_perm[std::size_t(a)][std::size_t(c)];
      if (!seen[std::size_t(image)]) {
        seen[std::size_t(image)] = true;
        orbit.push_back(image);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

std::string format_wsc(const Wsc& w) {
  const FacetMultiset fm = facets(w);
  std::ostringstream os;
  for (int f = 0; f < int(fm.facets.size()); ++f) {
    os << "facet";
    for (int v : simplex_vertices(fm.facets[std::size_t(f)])) os << " " << v;
    os << " weight " << fm.multiplicity[std::size_t(f)] << "\n";
  }
  return os.str();
}

Wsc parse_wsc(std::istream& in) {
  std::vector<std::pair<Simplex, std::uint64_t>> facet_list;
  int max_vertex = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head != "facet")
      throw std::invalid_argument("wsc line " + std::to_string(line_no) +
                                  ": expected 'facet', got '" + head + "'");
    std::vector<int> vs;
    std::string tok;
    std::uint64_t wt = 0;
    bool have_weight = false;
    while (ls >> tok) {
      if (tok == "weight") {
        if (!(ls >> wt)) throw std::invalid_argument("wsc line " + std::to_string(line_no) +
                                                     ": missing weight value");
        have_weight = true;
        break;
      }
      vs.push_back(std::stoi(tok));
    }
    if (!have_weight || vs.empty() || wt == 0)
      throw std::invalid_argument("wsc line " + std::to_string(line_no) +
                                  ": need vertices and a positive weight");
    for (int v : vs) max_vertex = std::max(max_vertex, v);
    facet_list.emplace_back(vertices_to_simplex(vs), wt);
  }
  if (facet_list.empty()) throw std::invalid_argument("wsc: no facet lines");

  Wsc w;
  w.n = max_vertex;
  // complete lower simplices with the gcd of the facets above them
  for (const auto& [f, wt] : facet_list) {
    for (Simplex s = f; s != 0; s = (s - 1) & f) {
      std::uint64_t acc = 0;
      for (const auto& [f2, wt2] : facet_list)
        if ((s & f2) == s) acc = std::gcd(acc, wt2);
      w.set_weight(s, acc);
    }
  }
  const ValidationReport rep = validate_wsc(w);
  if (!rep.ok) throw std::invalid_argument("wsc: invalid complex: " + rep.message);
  return w;
}

Wsc parse_wsc_string(const std::string& text) {
  std::istringstream is(text);
  return parse_wsc(is);
}

std::string format_cycles(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::ostringstream os;
  bool any = false;
  for (int start = 0; start < int(perm.size()); ++start) {
    if (seen[std::size_t(start)] || perm[std::size_t(start)] == start) continue;
    os << "(";
    int v = start;
    bool first = true;
    while (!seen[std::size_t(v)]) {
      seen[std::size_t(v)] = true;
      if (!first) os << " ";
      os << v;
      first = false;
      v = perm[std::size_t(v)];
    }
    os << ")";
    any = true;
  }
  if (!any) return "()";
  return os.str();
}

std::vector<int> parse_cycles(const std::string& text, int n_points) {
  std::vector<int> perm(static_cast<std::size_t>(n_points));
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    if (text[pos] != '(') throw std::invalid_argument("cycle notation: expected '('");
    const std::size_t close = text.find(')', pos);
    if (close == std::string::npos) throw std::invalid_argument("cycle notation: missing ')'");
    std::istringstream cs(text.substr(pos + 1, close - pos - 1));
    std::vector<int> cycle;
    int v;
    while (cs >> v) {
      if (v < 0 || v >= n_points) throw std::invalid_argument("cycle notation: point out of range");
      cycle.push_back(v);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const int from = cycle[i];
      const int to = cycle[(i + 1) % cycle.size()];
      if (perm[std::size_t(from)] != from)
        throw std::invalid_argument("cycle notation: point repeated across cycles");
      perm[std::size_t(from)] = to;
    }
    pos = close + 1;
  }
  return perm;
}

std::string format_group_action(const Wsc& w, const GroupAction& g) {
  (void)w;
  std::ostringstream os;
  for (int a = 0; a < g.size(); ++a) {
    os << "element " << format_cycles(g.vertex_perm[std::size_t(a)]) << "\n";
    os << "copies";
    for (int image : g.copy_perm[std::size_t(a)]) os << " " << image;
    os << "\n";
  }
  return os.str();
}

GroupAction parse_group_action(const Wsc& w, std::istream& in) {
  const FacetMultiset fm = facets(w);
  GroupAction g;
  std::string line;
  int line_no = 0;
  std::vector<int> pending_vp;
  bool have_pending = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head[0] == '#') continue;
    if (head == "element") {
      if (have_pending)
        throw std::invalid_argument("group action line " + std::to_string(line_no) +
                                    ": previous element is missing its copies line");
      std::string rest;
      std::getline(ls, rest);
      pending_vp = parse_cycles(rest, w.n + 1);
      have_pending = true;
    } else if (head == "copies") {
      if (!have_pending)
        throw std::invalid_argument("group action line " + std::to_string(line_no) +
                                    ": copies line without an element line");
      std::vector<int> cp;
      int v;
      while (ls >> v) cp.push_back(v);
      if (cp.size() != fm.total())
        throw std::invalid_argument("group action line " + std::to_string(line_no) +
                                    ": copies line has wrong length");
      g.vertex_perm.push_back(pending_vp);
      g.copy_perm.push_back(std::move(cp));
      have_pending = false;
    } else {
      throw std::invalid_argument("group action line " + std::to_string(line_no) +
                                  ": unknown directive '" + head + "'");
    }
  }
  if (have_pending) throw std::invalid_argument("group action: trailing element without copies");
  const int m = g.size();
  if (m == 0) throw std::invalid_argument("group action: no elements");

  // derive the composition table by matching composed permutations
  const auto find_element = [&](const std::vector<int>& vp, const std::vector<int>& cp) {
    for (int e = 0; e < m; ++e)
      if (g.vertex_perm[std::size_t(e)] == vp && g.copy_perm[std::size_t(e)] == cp) return e;
    return -1;
  };
  g.table.assign(std::size_t(m), std::vector<int>(std::size_t(m), -1));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const int c = find_element(
          compose_perm(g.vertex_perm[std::size_t(a)], g.vertex_perm[std::size_t(b)]),
          compose_perm(g.copy_perm[std::size_t(a)], g.copy_perm[std::size_t(b)]));
      if (c < 0) throw std::invalid_argument("group action: element set is not closed");
      g.table[std::size_t(a)][std::size_t(b)] = c;
    }
  std::vector<int> vid(std::size_t(w.n) + 1);
  std::iota(vid.begin(), vid.end(), 0);
  std::vector<int> cid(fm.total());
  std::iota(cid.begin(), cid.end(), 0);
  const int e = find_element(vid, cid);
  if (e < 0) throw std::invalid_argument("group action: identity element missing");
  g.identity = e;
  return g;
}

GroupAction parse_group_action_string(const Wsc& w, const std::string& text) {
  std::istringstream is(text);
  return parse_group_action(w, is);
}

}  // namespace acara
