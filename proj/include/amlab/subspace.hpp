#ifndef AMLAB_SUBSPACE_HPP
#define AMLAB_SUBSPACE_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "amlab/bitset.hpp"
#include "amlab/errors.hpp"
#include "amlab/field.hpp"

namespace amlab {

/// Reduced row echelon form with zero rows dropped.
inline Mat rref(Mat const& m) {
  PrimeField const f = m.field();
  Mat a = m;
  int const rows = a.rows(), cols = a.cols();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a(i, c)) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
    elem_t s = f.inv(a(r, c));
    for (int j = c; j < cols; ++j) a(r, j) = f.mul(a(r, j), s);
    for (int i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      elem_t t = a(i, c);
      for (int j = c; j < cols; ++j) a(i, j) = f.sub(a(i, j), f.mul(t, a(r, j)));
    }
    ++r;
  }
  Mat out(f, r, cols);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = a(i, j);
  return out;
}

inline int rank(Mat const& m) { return rref(m).rows(); }

/// Basis (as rows) of the right null space {v : m v = 0}.
inline Mat nullspace(Mat const& m) {
  PrimeField const f = m.field();
  Mat r = rref(m);
  int const n = m.cols();
  std::vector<int> pivot_of_col(n, -1);
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < n; ++j)
      if (r(i, j)) { pivot_of_col[j] = i; break; }
  std::vector<Vec> basis;
  for (int free = 0; free < n; ++free) {
    if (pivot_of_col[free] >= 0) continue;
    Vec v(n, 0);
    v[free] = 1;
    for (int j = 0; j < n; ++j)
      if (pivot_of_col[j] >= 0) v[j] = f.neg(r(pivot_of_col[j], free));
    basis.push_back(std::move(v));
  }
  return rref(Mat::from_rows(f, n, basis));
}

/// A subspace of GF(p)^n stored by its canonical RREF basis.
class Subspace {
 public:
  Subspace() = default;
  Subspace(PrimeField f, int n) : basis_(f, 0, n) {}
  explicit Subspace(Mat const& spanning) : basis_(rref(spanning)) {}
  Subspace(PrimeField f, int n, std::vector<Vec> const& spanning)
      : basis_(rref(Mat::from_rows(f, n, spanning))) {}

  static Subspace zero(PrimeField f, int n) { return Subspace(f, n); }
  static Subspace whole(PrimeField f, int n) { return Subspace(Mat::identity(f, n)); }
  static Subspace span(PrimeField f, int n, std::vector<Vec> const& vs) {
    return Subspace(f, n, vs);
  }

  PrimeField const& field() const noexcept { return basis_.field(); }
  int ambient_dim() const noexcept { return basis_.cols(); }
  int dim() const noexcept { return basis_.rows(); }
  Mat const& basis() const noexcept { return basis_; }

  std::vector<int> pivots() const {
    std::vector<int> pv;
    for (int i = 0; i < basis_.rows(); ++i)
      for (int j = 0; j < basis_.cols(); ++j)
        if (basis_(i, j)) { pv.push_back(j); break; }
    return pv;
  }

  bool contains_vector(Vec const& v) const {
    if (static_cast<int>(v.size()) != ambient_dim())
      throw usage_error("vector length does not match ambient dimension");
    PrimeField const f = field();
    Vec w = v;
    for (int i = 0; i < basis_.rows(); ++i) {
      int piv = 0;
      while (basis_(i, piv) == 0) ++piv;
      elem_t t = w[piv];
      if (!t) continue;
      for (int j = piv; j < ambient_dim(); ++j) w[j] = f.sub(w[j], f.mul(t, basis_(i, j)));
    }
    for (auto x : w)
      if (x) return false;
    return true;
  }

  /// All vectors of the subspace, in base-p order of their coefficient tuples.
  std::vector<Vec> vectors() const {
    PrimeField const f = field();
    std::size_t const cnt = vector_count(f, dim());
    std::vector<Vec> out;
    out.reserve(cnt);
    for (std::size_t c = 0; c < cnt; ++c) {
      Vec coef = vector_from_index(f, dim(), c);
      Vec v(ambient_dim(), 0);
      for (int i = 0; i < dim(); ++i)
        if (coef[i])
          for (int j = 0; j < ambient_dim(); ++j)
            v[j] = f.add(v[j], f.mul(coef[i], basis_(i, j)));
      out.push_back(std::move(v));
    }
    return out;
  }

  /// Indicator of the member vectors over the indexing of GF(p)^n.
  Bitset member_set() const {
    PrimeField const f = field();
    Bitset b(vector_count(f, ambient_dim()));
    for (auto const& v : vectors()) b.set(vector_index(f, v));
    return b;
  }

  std::string key() const { return basis_.bytes(); }

  friend bool operator==(Subspace const& a, Subspace const& b) {
    return a.basis_ == b.basis_;
  }
  friend bool operator<(Subspace const& a, Subspace const& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.basis_ < b.basis_;
  }

 private:
  Mat basis_;
};

struct SubspaceHash {
  std::size_t operator()(Subspace const& s) const noexcept { return MatHash{}(s.basis()); }
};

namespace detail {
inline void check_same_ambient(Subspace const& u, Subspace const& w) {
  if (u.ambient_dim() != w.ambient_dim() || !(u.field() == w.field()))
    throw usage_error("subspaces live in different ambient spaces");
}
}  // namespace detail

inline Subspace sum(Subspace const& u, Subspace const& w) {
  detail::check_same_ambient(u, w);
  int const n = u.ambient_dim();
  Mat m(u.field(), u.dim() + w.dim(), n);
  for (int i = 0; i < u.dim(); ++i)
    for (int j = 0; j < n; ++j) m(i, j) = u.basis()(i, j);
  for (int i = 0; i < w.dim(); ++i)
    for (int j = 0; j < n; ++j) m(u.dim() + i, j) = w.basis()(i, j);
  return Subspace(m);
}

inline Subspace add_vector(Subspace const& u, Vec const& v) {
  return sum(u, Subspace(u.field(), u.ambient_dim(), {v}));
}

/// Zassenhaus intersection.
inline Subspace intersect(Subspace const& u, Subspace const& w) {
  detail::check_same_ambient(u, w);
  PrimeField const f = u.field();
  int const n = u.ambient_dim();
  Mat m(f, u.dim() + w.dim(), 2 * n);
  for (int i = 0; i < u.dim(); ++i)
    for (int j = 0; j < n; ++j) {
      m(i, j) = u.basis()(i, j);
      m(i, n + j) = u.basis()(i, j);
    }
  for (int i = 0; i < w.dim(); ++i)
    for (int j = 0; j < n; ++j) m(u.dim() + i, j) = w.basis()(i, j);
  Mat r = rref(m);
  std::vector<Vec> rows;
  for (int i = 0; i < r.rows(); ++i) {
    bool left_zero = true;
    for (int j = 0; j < n && left_zero; ++j) left_zero = r(i, j) == 0;
    if (!left_zero) continue;
    Vec v(n);
    for (int j = 0; j < n; ++j) v[j] = r(i, n + j);
    rows.push_back(std::move(v));
  }
  return Subspace(f, n, rows);
}

/// True when w is a subset of u.
inline bool contains(Subspace const& u, Subspace const& w) {
  detail::check_same_ambient(u, w);
  for (int i = 0; i < w.dim(); ++i)
    if (!u.contains_vector(w.basis().row(i))) return false;
  return true;
}

inline bool meets_trivially(Subspace const& u, Subspace const& w) {
  detail::check_same_ambient(u, w);
  return sum(u, w).dim() == u.dim() + w.dim();
}

/// Calls `visit` on every k-dimensional subspace of GF(p)^n, grouped by pivot pattern
/// (lexicographic on pivot columns), free entries in base-p order.
inline void for_each_subspace(PrimeField f, int n, int k,
                              std::function<void(Subspace const&)> const& visit) {
  if (k < 0 || k > n) throw usage_error("subspace dimension out of range");
  std::vector<int> piv(k);
  for (int i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    std::vector<std::pair<int, int>> free;
    std::vector<bool> is_piv(n, false);
    for (int c : piv) is_piv[c] = true;
    for (int i = 0; i < k; ++i)
      for (int j = piv[i] + 1; j < n; ++j)
        if (!is_piv[j]) free.emplace_back(i, j);
    std::size_t const cnt = vector_count(f, static_cast<int>(free.size()));
    for (std::size_t c = 0; c < cnt; ++c) {
      Mat m(f, k, n);
      for (int i = 0; i < k; ++i) m(i, piv[i]) = 1;
      std::size_t x = c;
      for (auto [i, j] : free) {
        m(i, j) = static_cast<elem_t>(x % f.p());
        x /= f.p();
      }
      visit(Subspace(m));
    }
    int i = k - 1;
    while (i >= 0 && piv[i] == n - k + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
}

inline std::vector<Subspace> enumerate_subspaces(PrimeField f, int n, int k) {
  std::vector<Subspace> out;
  for_each_subspace(f, n, k, [&](Subspace const& s) { out.push_back(s); });
  return out;
}

/// Gaussian binomial [n choose k]_q.
inline unsigned long long gaussian_binomial(int n, int k, int q) {
  if (k < 0 || k > n) return 0;
  unsigned long long num = 1, den = 1;
  for (int i = 0; i < k; ++i) {
    unsigned long long a = 1, b = 1;
    for (int t = 0; t < n - i; ++t) a *= static_cast<unsigned long long>(q);
    for (int t = 0; t < i + 1; ++t) b *= static_cast<unsigned long long>(q);
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

inline Vec unit_vector(int n, int i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

}  // namespace amlab

template <>
struct std::hash<amlab::Subspace> {
  std::size_t operator()(amlab::Subspace const& s) const noexcept {
    return amlab::SubspaceHash{}(s);
  }
};

#endif  // AMLAB_SUBSPACE_HPP
