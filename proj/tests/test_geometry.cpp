#include <catch_amalgamated.hpp>

#include <random>

#include "amlab/geometry.hpp"
#include "amlab/quasi_phan.hpp"

using namespace amlab;

namespace {

// Points 0..2 (type 1) and lines 3..5 (type 2) of a triangle.
IncidenceGeometry triangle() {
  return IncidenceGeometry({1, 2}, {1, 1, 1, 2, 2, 2},
                           {{0, 3}, {1, 3}, {1, 4}, {2, 4}, {2, 5}, {0, 5}});
}

}  // namespace

TEST_CASE("single-type geometries are transversal", "[geometry]") {
  IncidenceGeometry g({1}, {1, 1, 1}, std::vector<std::pair<int, int>>{});
  CHECK(g.is_transversal());
  CHECK(g.count_chambers() == 3);
  CHECK(g.has_string_diagram());
}

TEST_CASE("an object incident to nothing of another type breaks transversality", "[geometry]") {
  IncidenceGeometry g({1, 2}, {1, 1, 2}, {{0, 2}});
  CHECK_FALSE(g.is_transversal());
}

TEST_CASE("incident objects must have distinct types", "[geometry]") {
  CHECK_THROWS_AS(IncidenceGeometry({1, 2}, {1, 1}, {{0, 1}}), usage_error);
  CHECK_THROWS_AS(IncidenceGeometry({1, 2}, {1, 2}, {{0, 5}}), usage_error);
}

TEST_CASE("residues", "[geometry]") {
  auto g = triangle();
  auto r0 = g.residue({});
  CHECK(r0.size() == g.size());
  CHECK(r0.edges() == g.edges());
  auto rc = g.residue({0, 3});
  CHECK(rc.size() == 0);
  CHECK(rc.rank() == 0);
  auto rp = g.residue({0});
  CHECK(rp.size() == 2);
  CHECK(rp.types() == std::vector<int>{2});
  CHECK(rp.origin(0) == 3);
  CHECK(rp.origin(1) == 5);
  CHECK_THROWS_AS(g.residue({0, 1}), usage_error);
}

TEST_CASE("disjoint union of two chambers is not residually connected", "[geometry]") {
  IncidenceGeometry g({1, 2}, {1, 2, 1, 2}, {{0, 1}, {2, 3}});
  CHECK(g.is_transversal());
  CHECK_FALSE(g.is_connected());
  CHECK_FALSE(g.is_residually_connected());
  CHECK(triangle().is_residually_connected());
}

TEST_CASE("string diagram violation", "[geometry]") {
  // X(1) * Y(2), Y(2) * Z(3) but X not incident to Z.
  IncidenceGeometry bad({1, 2, 3}, {1, 2, 3}, {{0, 1}, {1, 2}});
  CHECK_FALSE(bad.has_string_diagram());
  IncidenceGeometry good({1, 2, 3}, {1, 2, 3}, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(good.has_string_diagram());
  CHECK(triangle().has_string_diagram());
}

TEST_CASE("shadow graph diameters", "[geometry]") {
  auto g = triangle();
  auto sg = shadow_graph(g, 1, 2);
  CHECK(diameter(sg.adj) == 1);
  CHECK(is_complete(sg.adj));
  // The four points of a square, lines 01, 12, 23, 30.
  IncidenceGeometry sq({1, 2}, {1, 1, 1, 1, 2, 2, 2, 2},
                       {{0, 4}, {1, 4}, {1, 5}, {2, 5}, {2, 6}, {3, 6}, {3, 7}, {0, 7}});
  CHECK(diameter(shadow_graph(sq, 1, 2).adj) == 2);
  IncidenceGeometry split({1, 2}, {1, 1, 1, 1, 2, 2}, {{0, 4}, {1, 4}, {2, 5}, {3, 5}});
  CHECK_FALSE(diameter(shadow_graph(split, 1, 2).adj).has_value());
}

TEST_CASE("hyperbolic plane analogue has collinearity diameter one", "[geometry]") {
  // Points of GF(2)^2 together with the whole plane as the only line.
  PrimeField f(2);
  auto pts = enumerate_subspaces(f, 2, 1);
  std::vector<int> type_of(pts.size(), 1);
  type_of.push_back(2);
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) e.emplace_back(i, static_cast<int>(pts.size()));
  IncidenceGeometry g({1, 2}, type_of, e);
  CHECK(diameter(shadow_graph(g, 1, 2).adj) == 1);
}

TEST_CASE("residue of a residue is the residue of the union", "[geometry]") {
  auto gam = build_gamma({2, 4, 0});
  auto const& g = gam.geom;
  int checked = 0;
  g.for_each_flag([&](Flag const& f, Bitset const&) {
    if (f.size() != 2) return true;
    auto r1 = g.residue({f[0]});
    int local = -1;
    for (int i = 0; i < r1.size(); ++i)
      if (r1.origin(i) == f[1]) local = i;
    REQUIRE(local >= 0);
    auto r12 = r1.residue({local});
    auto direct = g.residue(f);
    REQUIRE(r12.size() == direct.size());
    for (int i = 0; i < r12.size(); ++i) CHECK(r12.origin(i) == direct.origin(i));
    CHECK(r12.edges() == direct.edges());
    ++checked;
    return false;
  });
  CHECK(checked > 0);
}

TEST_CASE("residues of non-contiguous cotype are direct products", "[geometry]") {
  auto gam = build_gamma({2, 6, 0});
  auto const& g = gam.geom;
  std::vector<Subspace> ch = standard_chamber(gam.space);
  // Residue of the flag {C_1, C_3, C_5}: cotype {2, 4}.
  Flag f{gam.find(ch[0]), gam.find(ch[2]), gam.find(ch[4])};
  auto r = g.residue(f);
  CHECK(r.types() == std::vector<int>{2, 4});
  for (int a : r.of_type(2))
    for (int b : r.of_type(4)) CHECK(r.incident(a, b));
  // Cotype {1, 3, 5}.
  Flag f2{gam.find(ch[1]), gam.find(ch[3])};
  auto r2 = g.residue(f2);
  for (int a = 0; a < r2.size(); ++a)
    for (int b = 0; b < r2.size(); ++b)
      if (r2.type(a) != r2.type(b)) CHECK(r2.incident(a, b));
}

TEST_CASE("isomorphism search", "[geometry]") {
  auto g = triangle();
  auto res = find_isomorphism(g, g);
  REQUIRE(res.status == SearchStatus::found);
  CHECK(is_isomorphism(g, g, res.map));

  // Relabel objects by a random permutation inside each type.
  std::mt19937 rng(5);
  auto gam = build_gamma({2, 4, 0});
  auto const& a = gam.geom;
  std::vector<int> perm(a.size());
  for (int i = 0; i < a.size(); ++i) perm[i] = i;
  for (int t : a.types()) {
    auto ids = a.of_type(t);
    auto shuffled = ids;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (std::size_t k = 0; k < ids.size(); ++k) perm[ids[k]] = shuffled[k];
  }
  std::vector<int> type_of(a.size());
  for (int i = 0; i < a.size(); ++i) type_of[perm[i]] = a.type(i);
  std::vector<std::pair<int, int>> e;
  for (auto [x, y] : a.edges()) e.emplace_back(perm[x], perm[y]);
  IncidenceGeometry b(a.types(), type_of, e);
  auto r = find_isomorphism(a, b);
  REQUIRE(r.status == SearchStatus::found);
  CHECK(is_isomorphism(a, b, r.map));

  // Remove one incidence: no isomorphism.
  e.pop_back();
  IncidenceGeometry c(a.types(), type_of, e);
  CHECK(find_isomorphism(a, c).status == SearchStatus::none);
}
