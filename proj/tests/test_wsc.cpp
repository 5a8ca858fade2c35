#include "acara/wsc.hpp"

#include <doctest.h>

#include <set>

using namespace acara;

TEST_CASE("builders produce valid connected complexes") {
  for (int n : {0, 1, 2, 3}) {
    const Wsc s = build_simplex(n);
    CHECK(validate_wsc(s).ok);
    CHECK(is_connected(s));
    CHECK(facets(s).facets.size() == 1);
  }
  for (int n : {1, 2, 3, 5}) {
    const Wsc line = build_line(n);
    CHECK(validate_wsc(line).ok);
    CHECK(is_connected(line));
    CHECK(facets(line).total() == std::size_t(n));
  }
  for (int n : {3, 4, 6}) {
    const Wsc circle = build_circle(n);
    CHECK(validate_wsc(circle).ok);
    CHECK(is_connected(circle));
    CHECK(facets(circle).total() == std::size_t(n));
  }
  CHECK_THROWS_AS(build_circle(2), std::invalid_argument);
  CHECK_THROWS_AS(build_line(0), std::invalid_argument);
}

TEST_CASE("facet sets of the standard complexes") {
  const FacetMultiset line3 = facets(build_line(3));
  REQUIRE(line3.facets.size() == 3);
  CHECK(simplex_vertices(line3.facets[0]) == std::vector<int>{0, 1});
  CHECK(simplex_vertices(line3.facets[1]) == std::vector<int>{1, 2});
  CHECK(simplex_vertices(line3.facets[2]) == std::vector<int>{2, 3});

  const FacetMultiset sigma2 = facets(build_simplex(2));
  REQUIRE(sigma2.facets.size() == 1);
  CHECK(simplex_vertices(sigma2.facets[0]) == std::vector<int>{0, 1, 2});

  const FacetMultiset theta3 = facets(build_circle(3));
  CHECK(theta3.facets.size() == 3);
}

TEST_CASE("validate_wsc flags the named violations") {
  Wsc w;
  w.n = 1;
  w.set_weight(vertices_to_simplex({0}), 2);
  w.set_weight(vertices_to_simplex({1}), 1);
  w.set_weight(vertices_to_simplex({0, 1}), 3);
  const ValidationReport rep = validate_wsc(w);
  CHECK_FALSE(rep.ok);  // 2 does not divide 3

  Wsc missing;
  missing.n = 1;
  missing.set_weight(vertices_to_simplex({0}), 1);
  CHECK_FALSE(validate_wsc(missing).ok);  // singleton {1} is not a simplex
}

TEST_CASE("connectivity") {
  Wsc two_parts;
  two_parts.n = 3;
  for (int v = 0; v <= 3; ++v) two_parts.set_weight(vertices_to_simplex({v}), 1);
  two_parts.set_weight(vertices_to_simplex({0, 1}), 1);
  two_parts.set_weight(vertices_to_simplex({2, 3}), 1);
  CHECK(validate_wsc(two_parts).ok);
  CHECK_FALSE(is_connected(two_parts));

  Wsc point;
  point.n = 0;
  point.set_weight(vertices_to_simplex({0}), 1);
  CHECK(is_connected(point));
}

TEST_CASE("cyclic action on the circle") {
  for (int n : {3, 4, 5, 6, 7, 8}) {
    const Wsc circle = build_circle(n);
    const GroupAction g = build_cyclic_action(circle);
    CHECK(g.size() == n);
    CHECK(validate_group_action(circle, g).ok);
    CHECK(is_free_action(circle, g));
  }
  const Wsc circle3 = build_circle(3);
  const GroupAction g3 = build_cyclic_action(circle3);
  const FacetMultiset fm = facets(circle3);
  // the generator (rotation by one) maps facet {0,1} to {1,2}
  int rot = -1;
  for (int a = 0; a < g3.size(); ++a)
    if (g3.vertex_perm[std::size_t(a)][0] == 1) rot = a;
  REQUIRE(rot >= 0);
  const int from = fm.copy_index(0, 0);  // {0,1} is the first facet in canonical order
  const int image = g3.copy_perm[std::size_t(rot)][std::size_t(from)];
  CHECK(simplex_vertices(fm.facets[std::size_t(fm.copies[std::size_t(image)].first)]) ==
        std::vector<int>{1, 2});
  CHECK_THROWS_AS(build_cyclic_action(build_line(3)), std::invalid_argument);
}

TEST_CASE("group action validation catches a non-invariant vertex map") {
  const Wsc line2 = build_line(2);
  const FacetMultiset fm = facets(line2);
  GroupAction g;
  g.identity = 0;
  g.vertex_perm = {{0, 1, 2}, {1, 0, 2}};  // swap (0 1) does not preserve the facet set
  std::vector<int> ident(fm.total());
  for (std::size_t i = 0; i < ident.size(); ++i) ident[i] = int(i);
  // the swap sends {1,2} to {0,2} which is not a facet; collapse cannot be G-linear
  g.copy_perm = {ident, ident};
  g.table = {{0, 1}, {1, 0}};
  CHECK_FALSE(validate_group_action(line2, g).ok);

  const GroupAction trivial = trivial_action(line2);
  CHECK(validate_group_action(line2, trivial).ok);
  CHECK(is_free_action(line2, trivial));
}

TEST_CASE("freeness on a doubled facet") {
  Wsc w;
  w.n = 1;
  w.set_weight(vertices_to_simplex({0}), 1);
  w.set_weight(vertices_to_simplex({1}), 1);
  w.set_weight(vertices_to_simplex({0, 1}), 2);
  REQUIRE(validate_wsc(w).ok);
  const FacetMultiset fm = facets(w);
  REQUIRE(fm.total() == 2);

  GroupAction swap_copies;
  swap_copies.identity = 0;
  swap_copies.vertex_perm = {{0, 1}, {0, 1}};
  swap_copies.copy_perm = {{0, 1}, {1, 0}};
  swap_copies.table = {{0, 1}, {1, 0}};
  CHECK(validate_group_action(w, swap_copies).ok);
  CHECK(is_free_action(w, swap_copies));

  GroupAction fix_copies = swap_copies;
  fix_copies.copy_perm = {{0, 1}, {0, 1}};  // nontrivial element fixes both copies
  CHECK(validate_group_action(w, fix_copies).ok);
  CHECK_FALSE(is_free_action(w, fix_copies));
}

TEST_CASE("orbit sizes multiply with stabilizers to the group order") {
  for (int n : {3, 4, 6}) {
    const Wsc circle = build_circle(n);
    const GroupAction g = build_cyclic_action(circle);
    const FacetMultiset fm = facets(circle);
    const auto orbits = copy_orbits(circle, g);
    std::size_t covered = 0;
    for (const auto& orbit : orbits) {
      covered += orbit.size();
      for (int c : orbit) {
        int stabilizer = 0;
        for (int a = 0; a < g.size(); ++a)
          if (g.copy_perm[std::size_t(a)][std::size_t(c)] == c) ++stabilizer;
        CHECK(orbit.size() * std::size_t(stabilizer) == std::size_t(g.size()));
      }
      CHECK(orbit.size() == std::size_t(g.size()));  // free action: full orbits
    }
    CHECK(covered == fm.total());
  }
}

TEST_CASE("wsc text format round trip") {
  for (const Wsc& w : {build_line(3), build_circle(4), build_simplex(2)}) {
    const Wsc parsed = parse_wsc_string(format_wsc(w));
    CHECK(parsed.n == w.n);
    const FacetMultiset a = facets(w), b = facets(parsed);
    CHECK(a.facets == b.facets);
    CHECK(a.multiplicity == b.multiplicity);
  }
  CHECK_THROWS_AS(parse_wsc_string("facet 0 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_wsc_string(""), std::invalid_argument);
  // gcd completion keeps divisibility when facet weights differ
  const Wsc mixed = parse_wsc_string("facet 0 1 weight 2\nfacet 1 2 weight 3\n");
  CHECK(validate_wsc(mixed).ok);
  CHECK(mixed.weight(vertices_to_simplex({1})) == 1);
}

TEST_CASE("cycle notation") {
  CHECK(format_cycles({0, 1, 2}) == "()");
  CHECK(format_cycles({1, 2, 0}) == "(0 1 2)");
  CHECK(format_cycles({1, 0, 3, 2}) == "(0 1)(2 3)");
  CHECK(parse_cycles("(0 1 2)", 3) == std::vector<int>{1, 2, 0});
  CHECK(parse_cycles("()", 3) == std::vector<int>{0, 1, 2});
  CHECK(parse_cycles("(0 1)(2 3)", 4) == std::vector<int>{1, 0, 3, 2});
  CHECK_THROWS_AS(parse_cycles("(0 1", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_cycles("(0 5)", 2), std::invalid_argument);
}

TEST_CASE("group action text format round trip") {
  const Wsc circle = build_circle(4);
  const GroupAction g = build_cyclic_action(circle);
  const GroupAction parsed = parse_group_action_string(circle, format_group_action(circle, g));
  CHECK(parsed.size() == g.size());
  CHECK(validate_group_action(circle, parsed).ok);
  CHECK(is_free_action(circle, parsed));
  CHECK(parsed.vertex_perm == g.vertex_perm);
  CHECK(parsed.copy_perm == g.copy_perm);

  // an element set that is not closed under composition is rejected
  const std::string broken = "element (0 1 2 3)\ncopies 2 3 1 0\n";
  CHECK_THROWS_AS(parse_group_action_string(circle, broken), std::invalid_argument);
}
