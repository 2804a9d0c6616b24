#include <catch_amalgamated.hpp>

#include <random>

#include "amlab/homotopy.hpp"
#include "amlab/quasi_phan.hpp"

using namespace amlab;

namespace {

// Objects 0..k-1 alternate between types 1 and 2 around a cycle of length k.
IncidenceGeometry cycle(int k) {
  std::vector<int> type_of;
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i) {
    type_of.push_back(1 + i % 2);
    edges.emplace_back(i, (i + 1) % k);
  }
  return IncidenceGeometry({1, 2}, type_of, edges);
}

}  // namespace

TEST_CASE("a tree has the empty presentation", "[pi1]") {
  IncidenceGeometry g({1, 2}, {1, 2, 2, 2}, {{0, 1}, {0, 2}, {0, 3}});
  auto p = pi1_presentation(g);
  CHECK(p.pres.ngens == 0);
  CHECK(p.pres.relators.empty());
  CHECK(certify_trivial(p).verdict == Pi1Verdict::trivial);
}

TEST_CASE("a cycle without triangles is free of rank one", "[pi1]") {
  auto p = pi1_presentation(cycle(4));
  CHECK(p.pres.ngens == 1);
  CHECK(p.pres.relators.empty());
  auto r = certify_trivial(p);
  CHECK(r.verdict == Pi1Verdict::nontrivial);
  CHECK(r.abelian.free_rank == 1);
  CHECK_FALSE(r.order.has_value());
  CHECK(p.loop_through(2, 3).size() + p.loop_through(3, 0).size() + p.loop_through(0, 1).size() +
            p.loop_through(1, 2).size() ==
        1);
}

TEST_CASE("a filled triangle is simply connected", "[pi1]") {
  IncidenceGeometry g({1, 2, 3}, {1, 2, 3}, {{0, 1}, {1, 2}, {0, 2}});
  auto p = pi1_presentation(g);
  CHECK(p.triangles == 1);
  CHECK(p.pres.ngens == 1);
  CHECK(certify_trivial(p).verdict == Pi1Verdict::trivial);
}

TEST_CASE("disconnected geometries are rejected", "[pi1]") {
  IncidenceGeometry g({1, 2}, {1, 2, 1, 2}, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(pi1_presentation(g), usage_error);
  CHECK_THROWS_AS(pi1_presentation(cycle(4), 7), usage_error);
}

TEST_CASE("small symplectic geometries are simply connected", "[pi1]") {
  for (GammaSpec s : {GammaSpec{2, 4, 0}, GammaSpec{3, 4, 0}, GammaSpec{3, 5, 1}}) {
    auto g = build_gamma(s);
    auto r = certify_trivial(pi1_presentation(g.geom));
    INFO("q=" << s.q << " n=" << s.n);
    CHECK(r.verdict == Pi1Verdict::trivial);
    CHECK(r.order == std::optional<std::uint64_t>(1));
  }
}

TEST_CASE("odd dimension over GF(2) is not simply connected", "[pi1]") {
  // Point-line triangles can only be filled when q >= 3 or n is even.
  auto g = build_gamma({2, 5, 1});
  auto r = certify_trivial(pi1_presentation(g.geom));
  CHECK(r.verdict == Pi1Verdict::nontrivial);
  CHECK(r.abelian.torsion == std::vector<std::int64_t>{2});
}

TEST_CASE("rank two geometries carry free fundamental groups", "[pi1]") {
  auto g = build_gamma({2, 3, 1});
  auto p = pi1_presentation(g.geom);
  auto r = certify_trivial(p);
  // A connected graph has free fundamental group of rank edges - vertices + 1.
  CHECK(r.abelian.free_rank == static_cast<int>(g.geom.edges().size()) - g.geom.size() + 1);
  CHECK(p.triangles == 0);
}

TEST_CASE("the abelianization does not depend on the base", "[pi1]") {
  auto pi = build_pi(PiSpec::standard({2, 6, 0}));
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> pick(0, pi.geom.size() - 1);
  auto ref = certify_trivial(pi1_presentation(pi.geom, 0)).abelian;
  CHECK(ref.torsion == std::vector<std::int64_t>{2});
  for (int i = 0; i < 5; ++i) CHECK(certify_trivial(pi1_presentation(pi.geom, pick(rng))).abelian == ref);
}

TEST_CASE("the exceptional residue has fundamental group of order two", "[pi1]") {
  auto pi = build_pi(PiSpec::standard({2, 6, 0}));
  auto p = pi1_presentation(pi.geom);
  auto r = certify_trivial(p);
  CHECK(r.verdict == Pi1Verdict::nontrivial);
  CHECK(r.order == std::optional<std::uint64_t>(2));
  CHECK(r.abelian.torsion == std::vector<std::int64_t>{2});
  CHECK(r.abelian.free_rank == 0);
}

TEST_CASE("the residue over GF(3) is simply connected", "[pi1]") {
  auto pi = build_pi(PiSpec::standard({3, 6, 0}));
  auto r = certify_trivial(pi1_presentation(pi.geom));
  CHECK(r.verdict == Pi1Verdict::trivial);
}
