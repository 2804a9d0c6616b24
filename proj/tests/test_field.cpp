#include <catch_amalgamated.hpp>

#include <random>

#include "amlab/field.hpp"

using namespace amlab;

TEST_CASE("field axioms hold exhaustively", "[field]") {
  for (int p : {2, 3, 5, 7}) {
    PrimeField f(p);
    for (int a = 0; a < p; ++a) {
      auto ea = static_cast<elem_t>(a);
      CHECK(f.add(ea, 0) == ea);
      CHECK(f.mul(ea, 1) == ea);
      CHECK(f.add(ea, f.neg(ea)) == 0);
      if (a) CHECK(f.mul(ea, f.inv(ea)) == 1);
      for (int b = 0; b < p; ++b) {
        auto eb = static_cast<elem_t>(b);
        CHECK(f.add(ea, eb) == (a + b) % p);
        CHECK(f.mul(ea, eb) == (a * b) % p);
        CHECK(f.sub(ea, eb) == ((a - b) % p + p) % p);
        for (int c = 0; c < p; ++c) {
          auto ec = static_cast<elem_t>(c);
          CHECK(f.mul(ea, f.add(eb, ec)) == f.add(f.mul(ea, eb), f.mul(ea, ec)));
          CHECK(f.mul(f.mul(ea, eb), ec) == f.mul(ea, f.mul(eb, ec)));
        }
      }
    }
  }
}

TEST_CASE("unsupported field orders are rejected", "[field]") {
  CHECK_THROWS_AS(PrimeField(4), usage_error);
  CHECK_THROWS_AS(PrimeField(11), usage_error);
  CHECK_THROWS_AS(PrimeField(3).inv(0), usage_error);
}

TEST_CASE("matrix products and inverses", "[field]") {
  PrimeField f(5);
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(0, 4);
  int tested = 0;
  while (tested < 50) {
    Mat m(f, 4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = static_cast<elem_t>(d(rng));
    Mat inv;
    try {
      inv = inverse(m);
    } catch (usage_error const&) {
      continue;
    }
    CHECK(m * inv == Mat::identity(f, 4));
    CHECK(inv * m == Mat::identity(f, 4));
    ++tested;
  }
  Mat a(f, 2, 3, {1, 2, 3, 4, 0, 1});
  Mat b(f, 3, 2, {1, 0, 0, 1, 1, 1});
  CHECK(a * b == Mat(f, 2, 2, {4, 0, 0, 1}));
  CHECK(a.transpose().transpose() == a);
  CHECK_THROWS_AS(a * a, usage_error);
}

TEST_CASE("vector indexing is little-endian and invertible", "[field]") {
  PrimeField f(3);
  CHECK(vector_index(f, Vec{1, 0, 0}) == 1);
  CHECK(vector_index(f, Vec{0, 1, 0}) == 3);
  for (std::size_t i = 0; i < vector_count(f, 4); ++i)
    CHECK(vector_index(f, vector_from_index(f, 4, i)) == i);
}
