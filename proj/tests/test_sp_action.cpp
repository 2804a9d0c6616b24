#include <catch_amalgamated.hpp>

#include <random>

#include "amlab/sp_action.hpp"
#include "amlab/structure.hpp"

using namespace amlab;

namespace {

std::uint64_t census(IncidenceGeometry const& g, std::vector<int> const& types) {
  std::uint64_t c = 0;
  g.for_each_flag([&](Flag const& f, Bitset const&) {
    std::vector<int> t;
    for (int x : f) t.push_back(g.type(x));
    if (t == types) ++c;
    return true;
  });
  return c;
}

}  // namespace

TEST_CASE("matrices induce permutations that lift back", "[action]") {
  auto gam = build_gamma({3, 4, 0});
  SpAction act(gam);
  PrimeField f(3);
  Mat id = Mat::identity(f, 4);
  CHECK(perm_is_identity(act.perm_of(id)));
  Perm minus = act.perm_of(id.scaled(2));
  CHECK_FALSE(perm_is_identity(minus));
  CHECK(perm_is_identity(act.restrict_to_objects(minus)));
  CHECK(act.group().contains(minus));

  std::mt19937 rng(3);
  auto lens = act.group().orbit_lengths();
  for (int t = 0; t < 30; ++t) {
    std::vector<std::size_t> choice;
    for (auto l : lens) choice.push_back(rng() % l);
    Perm p = act.group().element(choice);
    Mat m = act.matrix_of(p);
    CHECK(is_isometry(gam.space, m));
    CHECK(act.perm_of(m) == p);
  }
  Mat bad = Mat::identity(f, 4);
  bad(0, 0) = 2;
  CHECK_THROWS_AS(SpAction(gam, {bad}), usage_error);
}

TEST_CASE("group orders match the classical formula", "[action]") {
  for (auto [q, n] : {std::pair{2, 4}, std::pair{3, 4}}) {
    auto gam = build_gamma({q, n, 0});
    SpAction act(gam);
    CHECK(act.group().order() == sp_order(q, n));
    CHECK(act.kernel_order() == (q == 2 ? 1u : 2u));
  }
  CHECK(sp_order(2, 4) == 720);
  CHECK(sp_order(3, 4) == 51840);
}

TEST_CASE("orbit-stabilizer holds for objects", "[action]") {
  auto gam = build_gamma({3, 4, 0});
  SpAction act(gam);
  std::mt19937 rng(5);
  for (int t = 0; t < 20; ++t) {
    int obj = static_cast<int>(rng() % act.objects());
    auto orb = act.group().orbit(act.object_point(obj)).size();
    CHECK(orb * act.stabilizer({obj}).order() == act.group().order());
    CHECK(orb == gam.geom.count_of_type(gam.geom.type(obj)));
  }
}

TEST_CASE("the action is flag-transitive with the expected Borel", "[action]") {
  for (auto [q, n, borel, chambers] :
       {std::tuple{2, 4, 4u, 180u}, std::tuple{3, 4, 36u, 1440u}}) {
    auto gam = build_gamma({q, n, 0});
    SpAction act(gam);
    auto rows = check_flag_transitivity(act);
    CHECK(rows.size() == 7);
    for (auto const& row : rows) {
      CHECK(row.transitive());
      CHECK(row.orbit * row.stabilizer == act.group().order());
      CHECK(row.flags == census(gam.geom, row.types));
      if (row.types.size() == 3) {
        CHECK(row.flags == chambers);
        CHECK(row.stabilizer == borel);
      }
    }
  }
}

TEST_CASE("point stabilizers and maximal parabolics of Sp4(2)", "[action]") {
  auto gam = build_gamma({2, 4, 0});
  SpAction act(gam);
  CHECK(parabolic(act, {2, 3}).order() == 48);
  CHECK(parabolic(act, {1, 3}).order() == 36);
  CHECK(parabolic(act, {1, 2}).order() == 48);
  CHECK(parabolic(act, {1, 2, 3}).order() == 720);
}

TEST_CASE("rank two parabolic structure for Sp4(3)", "[action]") {
  auto gam = build_gamma({3, 4, 0});
  SpAction act(gam);
  auto rep = verify_parabolic_structure(act);
  for (auto const& c : rep.checks) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.ok);
  }
  CHECK(rep.ok());
  CHECK(parabolic(act, {1}).order() == 144);
  CHECK(parabolic(act, {2}).order() == 108);
  CHECK(parabolic(act, {1, 2}).order() == 1296);
  CHECK(parabolic(act, {1, 3}).order() == 576);
}

TEST_CASE("q = 2 parabolic structure is reported without assertion", "[action]") {
  auto gam = build_gamma({2, 4, 0});
  SpAction act(gam);
  auto rep = verify_parabolic_structure(act);
  CHECK(rep.ok());
  REQUIRE(rep.find("S1 order") != nullptr);
  CHECK_FALSE(rep.find("S1 order")->asserted);
  CHECK(rep.find("Borel order")->asserted);
}
