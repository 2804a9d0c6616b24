#ifndef AMLAB_SMITH_HPP
#define AMLAB_SMITH_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "amlab/errors.hpp"
#include "amlab/fp_group.hpp"

namespace amlab {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw invariant_violation("integer overflow in Smith form");
  return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw invariant_violation("integer overflow in Smith form");
  return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw invariant_violation("integer overflow in Smith form");
  return r;
}

// Quotient rounded to nearest, so the remainder has absolute value at most |b|/2.
inline std::int64_t nearest_quotient(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b, r = a % b;
  if (2 * std::llabs(r) > std::llabs(b)) q += ((r < 0) == (b < 0)) ? 1 : -1;
  return q;
}

}  // namespace detail

/// Diagonal of the Smith normal form: nonzero invariant factors d_1 | d_2 | ... (positive).
/// Each step pivots on the smallest entry of the remaining block and reduces with rounded
/// quotients, which keeps intermediate entries small in practice; overflow is detected.
inline std::vector<std::int64_t> smith_diagonal(IntMatrix m) {
  using namespace detail;
  std::size_t const rows = m.size();
  std::size_t const cols = rows ? m[0].size() : 0;
  std::vector<std::int64_t> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    std::size_t pr = rows, pc = cols;
    std::int64_t best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (best == 0 || std::llabs(m[i][j]) < best)) {
          best = std::llabs(m[i][j]);
          pr = i;
          pc = j;
        }
    if (best == 0) break;
    std::swap(m[t], m[pr]);
    for (auto& row : m) std::swap(row[t], row[pc]);
    std::int64_t const p = m[t][t];
    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (m[i][t] == 0) continue;
      std::int64_t q = nearest_quotient(m[i][t], p);
      for (std::size_t j = t; j < cols; ++j) m[i][j] = checked_sub(m[i][j], checked_mul(q, m[t][j]));
      if (m[i][t] != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (m[t][j] == 0) continue;
      std::int64_t q = nearest_quotient(m[t][j], p);
      for (std::size_t i = t; i < rows; ++i) m[i][j] = checked_sub(m[i][j], checked_mul(q, m[i][t]));
      if (m[t][j] != 0) clean = false;
    }
    if (!clean) continue;
    bool divides = true;
    for (std::size_t i = t + 1; i < rows && divides; ++i)
      for (std::size_t j = t + 1; j < cols && divides; ++j)
        if (m[i][j] % p != 0) {
          for (std::size_t k = t; k < cols; ++k) m[t][k] = checked_add(m[t][k], m[i][k]);
          divides = false;
        }
    if (!divides) continue;
    diag.push_back(std::llabs(p));
    ++t;
  }
  return diag;
}

struct Abelianization {
  std::vector<std::int64_t> torsion;  // invariant factors greater than one
  int free_rank = 0;

  bool trivial() const { return torsion.empty() && free_rank == 0; }
  friend bool operator==(Abelianization const& a, Abelianization const& b) {
    return a.torsion == b.torsion && a.free_rank == b.free_rank;
  }
};

inline IntMatrix exponent_matrix(Presentation const& p) {
  IntMatrix m(p.relators.size(), std::vector<std::int64_t>(p.ngens, 0));
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    for (int x : p.relators[i]) m[i][std::abs(x) - 1] += x > 0 ? 1 : -1;
  return m;
}

inline Abelianization abelianization(Presentation const& p) {
  p.validate();
  Abelianization a;
  auto d = smith_diagonal(exponent_matrix(p));
  for (auto v : d)
    if (v > 1) a.torsion.push_back(v);
  a.free_rank = p.ngens - static_cast<int>(d.size());
  return a;
}

}  // namespace amlab

#endif  // AMLAB_SMITH_HPP
