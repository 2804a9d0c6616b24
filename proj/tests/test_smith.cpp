#include <catch_amalgamated.hpp>

#include <random>

#include "amlab/smith.hpp"
#include "oracles.hpp"

using namespace amlab;

TEST_CASE("smith diagonal of small matrices", "[smith]") {
  CHECK(smith_diagonal({{2, 0}, {0, 3}}) == std::vector<std::int64_t>{1, 6});
  CHECK(smith_diagonal({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}) == std::vector<std::int64_t>{2, 6, 12});
  CHECK(smith_diagonal({{0, 0}, {0, 0}}).empty());
  CHECK(smith_diagonal({}).empty());
  CHECK(smith_diagonal({{4, 6}}) == std::vector<std::int64_t>{2});
}

TEST_CASE("smith diagonal matches determinantal divisors on random 6x6", "[smith]") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-6, 6);
  std::uniform_int_distribution<int> shape(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix m(6, std::vector<std::int64_t>(6));
    for (auto& row : m)
      for (auto& x : row) x = entry(rng);
    // Force low rank or shared factors in some trials.
    int s = shape(rng);
    if (s == 1)
      for (int j = 0; j < 6; ++j) m[5][j] = m[0][j] + 2 * m[1][j];
    if (s == 2)
      for (auto& row : m) row[2] *= 4;
    auto got = smith_diagonal(m);
    auto want = oracle::invariant_factors(m);
    INFO("trial " << trial);
    CHECK(got == want);
    for (std::size_t i = 1; i < got.size(); ++i) CHECK(got[i] % got[i - 1] == 0);
  }
}

TEST_CASE("abelianization", "[smith]") {
  auto a = abelianization(Presentation{2, {{1, 1}, {2, 2, 2}}});
  CHECK(a.torsion == std::vector<std::int64_t>{6});
  CHECK(a.free_rank == 0);
  auto z = abelianization(Presentation{1, {}});
  CHECK(z.free_rank == 1);
  CHECK(z.torsion.empty());
  auto s3 = abelianization(Presentation{2, {{1, 1, 1}, {2, 2}, {1, 2, 1, 2}}});
  CHECK(s3.torsion == std::vector<std::int64_t>{2});
  CHECK(abelianization(Presentation{2, {{1, 2, -1, -2, -2}, {2, 1, -2, -1, -1}}}).trivial());
  auto zz = abelianization(Presentation{3, {{1, 2, -1, -2}}});
  CHECK(zz.free_rank == 3);
}
