#include <catch_amalgamated.hpp>

#include <random>

#include "amlab/coset_enum.hpp"
#include "amlab/fp_group.hpp"
#include "oracles.hpp"

using namespace amlab;

TEST_CASE("word helpers", "[fp]") {
  CHECK(inverse(Word{1, -2, 3}) == Word{-3, 2, -1});
  CHECK(free_reduce(Word{1, 2, -2, -1, 3}) == Word{3});
  CHECK(cyclic_reduce(Word{-1, 2, 3, 1}) == Word{2, 3});
  CHECK(cyclic_reduce(Word{1, -1}).empty());
  CHECK(power(Word{1, 2}, 3) == Word{1, 2, 1, 2, 1, 2});
  CHECK(power(Word{1, 2}, -1) == Word{-2, -1});
  CHECK(canonical_cyclic(Word{2, 1}) == canonical_cyclic(Word{-1, -2}));
  CHECK(canonical_cyclic(Word{3, 1, 2}) == Word{-3, -2, -1});
}

TEST_CASE("presentation text round trip", "[fp]") {
  Presentation p{3, {{1, 1}, {2, -3, 2}, {}}};
  std::string t = to_text(p);
  CHECK(t == "gens 3\n1 1\n2 -3 2\n\n");
  CHECK(from_text(t) == p);
  CHECK_THROWS_AS(from_text(""), usage_error);
  CHECK_THROWS_AS(from_text("gen 2\n"), usage_error);
  CHECK_THROWS_AS(from_text("gens 2\n1 x\n"), usage_error);
  CHECK_THROWS_AS(from_text("gens 2\n1 3\n"), usage_error);
  CHECK_THROWS_AS(from_text("gens 2\n1 0\n"), usage_error);
  CHECK_THROWS_AS(from_text("gens 2 extra\n"), usage_error);
}

TEST_CASE("tietze removes a killed generator", "[fp]") {
  auto r = tietze_simplify(Presentation{2, {{2}, {1, 1, 1}}});
  CHECK(r.pres.ngens == 1);
  CHECK(r.pres.relators == std::vector<Word>{{1, 1, 1}});
  CHECK(r.survivors == std::vector<int>{1});
  CHECK(r.map_word({1, 2, 1}) == Word{1, 1});
}

TEST_CASE("tietze eliminates through a two-letter relator", "[fp]") {
  // a = b, b^5 = 1
  auto r = tietze_simplify(Presentation{2, {{1, -2}, {2, 2, 2, 2, 2}}});
  CHECK(r.pres.ngens == 1);
  REQUIRE(r.pres.relators.size() == 1);
  CHECK(r.pres.relators[0].size() == 5);
  CHECK(r.map_word({2}).size() == 1);
  CHECK(r.map_word({1, -2}).empty());
}

TEST_CASE("tietze collapses a trivial group", "[fp]") {
  // a b a^-1 = b^2, b a b^-1 = a^2 presents the trivial group.
  Presentation p{2, {{1, 2, -1, -2, -2}, {2, 1, -2, -1, -1}}};
  auto t = todd_coxeter(p);
  REQUIRE(t.complete());
  CHECK(t.cosets == 1);
  auto r = tietze_simplify(p);
  CHECK(r.pres.ngens <= 1);
}

TEST_CASE("tietze preserves the group", "[fp]") {
  std::vector<Presentation> ps = {
      {2, {{1, 1, 1, 1}, {2, 2}, {1, 2, 1, 2}}},               // D4
      {2, {{1, 1}, {2, 2, 2}, power({1, 2}, 5)}},              // A5
      {3, {{1, 1}, {2, 2}, {3, 3}, power({1, 2}, 3), power({2, 3}, 3), power({1, 3}, 2)}},  // S4
      {3, {{1, -2, -3}, {3, 3, 3, 3}, {2, 2}, power({3, 2}, 2)}},  // redundant generator
  };
  for (auto const& p : ps) {
    auto r = tietze_simplify(p);
    auto a = todd_coxeter(p);
    auto b = todd_coxeter(r.pres);
    REQUIRE(a.complete());
    REQUIRE(b.complete());
    CHECK(a.cosets == b.cosets);
    // Original relators map to trivial words in the simplified group.
    for (auto const& w : p.relators) CHECK(b.trace(0, r.map_word(w)) == 0);
    // Simplifying again changes nothing.
    auto r2 = tietze_simplify(r.pres);
    CHECK(r2.pres.ngens == r.pres.ngens);
    CHECK(r2.pres.total_length() <= r.pres.total_length());
  }
}

TEST_CASE("tietze respects the elimination switch", "[fp]") {
  TietzeOptions opt;
  opt.eliminate_generators = false;
  auto r = tietze_simplify(Presentation{2, {{2}, {1, 1, 1}, {1, 1, 1}}}, opt);
  CHECK(r.pres.ngens == 2);
  CHECK(r.pres.relators.size() == 2);
}

TEST_CASE("evaluate in a permutation group", "[fp]") {
  auto a = oracle::from_cycles(3, {{0, 1, 2}});
  auto b = oracle::from_cycles(3, {{0, 1}});
  std::vector<oracle::Perm> gens{a, b}, invs{oracle::inv(a), oracle::inv(b)};
  auto r = evaluate(Word{1, 2}, gens, invs, oracle::id(3), oracle::then);
  CHECK(r == oracle::then(a, b));
  CHECK(evaluate(Word{1, -1}, gens, invs, oracle::id(3), oracle::then) == oracle::id(3));
}
