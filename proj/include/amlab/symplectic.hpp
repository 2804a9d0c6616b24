#ifndef AMLAB_SYMPLECTIC_HPP
#define AMLAB_SYMPLECTIC_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "amlab/errors.hpp"
#include "amlab/field.hpp"
#include "amlab/subspace.hpp"

namespace amlab {

/// GF(p)^n with an alternating form of corank at most one.
class SympSpace {
 public:
  SympSpace() = default;

  /// Block-diagonal form with blocks [[0,1],[-1,0]] on (e_i, f_i); when n is odd
  /// the last coordinate spans the radical.
  static SympSpace standard(PrimeField f, int n) {
    if (n < 1) throw usage_error("dimension must be positive");
    Mat g(f, n, n);
    for (int i = 0; i + 1 < n; i += 2) {
      g(i, i + 1) = 1;
      g(i + 1, i) = f.neg(1);
    }
    return SympSpace(g);
  }

  static SympSpace from_gram(Mat const& gram) { return SympSpace(gram); }

  /// The form restricted to u, written in the coordinates of u's canonical basis.
  SympSpace induced(Subspace const& u) const {
    Mat const& b = u.basis();
    return SympSpace(b * gram_ * b.transpose());
  }

  PrimeField const& field() const noexcept { return gram_.field(); }
  int dim() const noexcept { return gram_.rows(); }
  int rad_dim() const noexcept { return rad_dim_; }
  int rank() const noexcept { return dim() - rad_dim_; }
  Mat const& gram() const noexcept { return gram_; }

  elem_t form(Vec const& u, Vec const& v) const {
    int const n = dim();
    int s = 0;
    for (int i = 0; i < n; ++i) {
      if (!u[i]) continue;
      int t = 0;
      for (int j = 0; j < n; ++j) t += gram_(i, j) * v[j];
      s += u[i] * t;
    }
    return static_cast<elem_t>(s % field().p());
  }

  /// Orthogonal complement in the ambient space.
  Subspace perp(Subspace const& u) const {
    check(u);
    if (u.dim() == 0) return Subspace::whole(field(), dim());
    return Subspace(nullspace(u.basis() * gram_));
  }

  Subspace radical(Subspace const& u) const { return intersect(u, perp(u)); }

  Subspace ambient_radical() const { return Subspace(nullspace(gram_)); }

  Subspace whole() const { return Subspace::whole(field(), dim()); }

  bool is_nondegenerate(Subspace const& u) const { return radical(u).dim() == 0; }

  void check(Subspace const& u) const {
    if (u.ambient_dim() != dim() || !(u.field() == field()))
      throw usage_error("subspace does not live in this symplectic space");
  }

 private:
  explicit SympSpace(Mat const& gram) : gram_(gram) {
    if (gram.rows() != gram.cols()) throw usage_error("Gram matrix must be square");
    PrimeField const f = gram.field();
    for (int i = 0; i < gram.rows(); ++i) {
      if (gram(i, i) != 0) throw usage_error("Gram matrix is not alternating");
      for (int j = 0; j < i; ++j)
        if (gram(i, j) != f.neg(gram(j, i)))
          throw usage_error("Gram matrix is not alternating");
    }
    rad_dim_ = gram.rows() - amlab::rank(gram);
    if (rad_dim_ > 1) throw usage_error("form has a radical of dimension above one");
  }

  Mat gram_;
  int rad_dim_ = 0;
};

struct HyperbolicBasis {
  std::vector<Vec> e;  // e_1..e_{r+d}; the trailing d vectors span the radical
  std::vector<Vec> f;  // f_1..f_r

  int pairs() const noexcept { return static_cast<int>(f.size()); }

  /// h_1..h_m with h_{2i-1} = e_i, h_{2i} = f_i, radical vectors last.
  std::vector<Vec> sequence() const {
    std::vector<Vec> h;
    for (int i = 0; i < pairs(); ++i) {
      h.push_back(e[i]);
      h.push_back(f[i]);
    }
    for (std::size_t i = f.size(); i < e.size(); ++i) h.push_back(e[i]);
    return h;
  }
};

/// Checks the pairing conditions and that the extra e's span rad of their span.
inline bool is_hyperbolic_basis(SympSpace const& s, HyperbolicBasis const& hb) {
  if (hb.e.size() < hb.f.size()) return false;
  for (std::size_t i = 0; i < hb.e.size(); ++i)
    for (std::size_t j = 0; j < hb.e.size(); ++j)
      if (s.form(hb.e[i], hb.e[j]) != 0) return false;
  for (std::size_t i = 0; i < hb.f.size(); ++i)
    for (std::size_t j = 0; j < hb.f.size(); ++j)
      if (s.form(hb.f[i], hb.f[j]) != 0) return false;
  for (std::size_t i = 0; i < hb.e.size(); ++i)
    for (std::size_t j = 0; j < hb.f.size(); ++j)
      if (s.form(hb.e[i], hb.f[j]) != (i == j ? 1 : 0)) return false;
  auto h = hb.sequence();
  if (h.empty()) return true;
  return Subspace(s.field(), s.dim(), h).dim() == static_cast<int>(h.size());
}

namespace detail {
inline std::vector<Vec> vectors_in_index_order(Subspace const& u) {
  auto vs = u.vectors();
  PrimeField const f = u.field();
  std::sort(vs.begin(), vs.end(), [&](Vec const& a, Vec const& b) {
    return vector_index(f, a) < vector_index(f, b);
  });
  return vs;
}
}  // namespace detail

/// Extends a hyperbolic basis of W <= U (with W meeting Rad(U) trivially) to one of U.
/// Partners are chosen as the first admissible vector in base-p index order.
inline HyperbolicBasis hyperbolic_extend(SympSpace const& s, Subspace const& u,
                                         HyperbolicBasis const& partial) {
  s.check(u);
  PrimeField const f = s.field();
  int const n = s.dim();
  if (!is_hyperbolic_basis(s, partial))
    throw usage_error("partial basis is not hyperbolic");
  auto hseq = partial.sequence();
  Subspace w(f, n, hseq);
  Subspace const rad_u = s.radical(u);
  if (!contains(u, w)) throw usage_error("partial basis does not lie in U");
  if (!meets_trivially(w, rad_u)) throw usage_error("partial basis meets Rad(U)");

  HyperbolicBasis out;
  std::vector<Vec> extras;
  for (int i = 0; i < partial.pairs(); ++i) {
    out.e.push_back(partial.e[i]);
    out.f.push_back(partial.f[i]);
  }
  for (std::size_t i = partial.f.size(); i < partial.e.size(); ++i)
    extras.push_back(partial.e[i]);

  auto perp_pair = [&](Vec const& a, Vec const& b) {
    return s.perp(Subspace(f, n, {a, b}));
  };

  Subspace rem = u;
  for (int i = 0; i < partial.pairs(); ++i)
    rem = intersect(rem, perp_pair(partial.e[i], partial.f[i]));

  for (std::size_t j = 0; j < extras.size(); ++j) {
    bool found = false;
    for (auto const& v : detail::vectors_in_index_order(rem)) {
      if (s.form(extras[j], v) != 1) continue;
      bool ok = true;
      for (std::size_t k = 0; k < extras.size() && ok; ++k)
        if (k != j && s.form(extras[k], v) != 0) ok = false;
      if (!ok) continue;
      out.e.push_back(extras[j]);
      out.f.push_back(v);
      rem = intersect(rem, perp_pair(extras[j], v));
      found = true;
      break;
    }
    if (!found) throw invariant_violation("no hyperbolic partner for a radical vector of W");
  }

  while (rem.dim() > rad_u.dim()) {
    Subspace const rr = s.radical(rem);
    auto vs = detail::vectors_in_index_order(rem);
    Vec const* e = nullptr;
    for (auto const& v : vs)
      if (!rr.contains_vector(v)) { e = &v; break; }
    Vec const* fv = nullptr;
    for (auto const& v : vs)
      if (s.form(*e, v) == 1) { fv = &v; break; }
    if (!fv) throw invariant_violation("hyperbolic extension stalled");
    out.e.push_back(*e);
    out.f.push_back(*fv);
    rem = intersect(rem, perp_pair(*e, *fv));
  }
  for (int i = 0; i < rem.dim(); ++i) out.e.push_back(rem.basis().row(i));
  return out;
}

/// The chamber C_l = <h_1..h_l>, l = 1..n-1, of a hyperbolic basis of V.
inline std::vector<Subspace> chamber_of(SympSpace const& s, HyperbolicBasis const& hb) {
  auto h = hb.sequence();
  std::vector<Subspace> c;
  for (int l = 1; l < s.dim(); ++l)
    c.emplace_back(s.field(), s.dim(), std::vector<Vec>(h.begin(), h.begin() + l));
  return c;
}

inline std::vector<Subspace> standard_chamber(SympSpace const& s) {
  return chamber_of(s, hyperbolic_extend(s, s.whole(), {}));
}

inline bool is_isometry(SympSpace const& s, Mat const& g) {
  if (g.rows() != s.dim() || g.cols() != s.dim()) return false;
  if (rank(g) != s.dim()) return false;
  return g.transpose() * s.gram() * g == s.gram();
}

/// x -> x + s(x,v) v as a matrix acting on column vectors.
inline Mat transvection(SympSpace const& s, Vec const& v) {
  int const n = s.dim();
  PrimeField const f = s.field();
  Mat t = Mat::identity(f, n);
  Vec sv(n, 0);  // row vector v^T S^T
  for (int j = 0; j < n; ++j) {
    int acc = 0;
    for (int k = 0; k < n; ++k) acc += v[k] * s.gram()(j, k);
    sv[j] = static_cast<elem_t>(acc % f.p());
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = f.add(t(i, j), f.mul(v[i], sv[j]));
  return t;
}

/// Transvections along e_i, f_i and e_i + e_{i+1} for the standard form.
inline std::vector<Mat> sp_generators(SympSpace const& s) {
  if (s.rad_dim() != 0) throw usage_error("generators require a nondegenerate form");
  int const n = s.dim();
  int const r = n / 2;
  HyperbolicBasis hb = hyperbolic_extend(s, s.whole(), {});
  std::vector<Mat> gens;
  for (int i = 0; i < r; ++i) {
    gens.push_back(transvection(s, hb.e[i]));
    gens.push_back(transvection(s, hb.f[i]));
  }
  PrimeField const f = s.field();
  for (int i = 0; i + 1 < r; ++i) {
    Vec v(n);
    for (int k = 0; k < n; ++k) v[k] = f.add(hb.e[i][k], hb.e[i + 1][k]);
    gens.push_back(transvection(s, v));
  }
  return gens;
}

/// |Sp_{2r}(q)| = q^{r^2} prod_{i=1..r} (q^{2i} - 1); throws if it does not fit in 64 bits.
inline std::uint64_t sp_order(int q, int n) {
  if (n % 2) throw usage_error("symplectic group needs even dimension");
  int const r = n / 2;
  unsigned __int128 acc = 1;
  auto const cap = static_cast<unsigned __int128>(UINT64_MAX);
  for (int i = 0; i < r * r; ++i) {
    acc *= static_cast<unsigned>(q);
    if (acc > cap) throw usage_error("group order overflows 64 bits");
  }
  for (int i = 1; i <= r; ++i) {
    unsigned __int128 t = 1;
    for (int k = 0; k < 2 * i; ++k) t *= static_cast<unsigned>(q);
    acc *= t - 1;
    if (acc > cap) throw usage_error("group order overflows 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace amlab

#endif  // AMLAB_SYMPLECTIC_HPP
