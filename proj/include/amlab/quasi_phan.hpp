#ifndef AMLAB_QUASI_PHAN_HPP
#define AMLAB_QUASI_PHAN_HPP

#include <algorithm>
#include <string>
#include <unordered_map>
#include <vector>

#include "amlab/bitset.hpp"
#include "amlab/errors.hpp"
#include "amlab/geometry.hpp"
#include "amlab/subspace.hpp"
#include "amlab/symplectic.hpp"

namespace amlab {

struct GammaSpec {
  int q = 2;
  int n = 4;
  int d = 0;

  void validate() const {
    if (q != 2 && q != 3 && q != 5)
      throw usage_error("q must be 2, 3 or 5, got " + std::to_string(q));
    if (n < 3 || n > 8) throw usage_error("n must lie in 3..8, got " + std::to_string(n));
    if (d != n % 2)
      throw usage_error("a form of corank at most one on an n-space has radical dimension n mod 2");
  }
};

/// A geometry whose objects are subspaces, with the ambient form and a subspace lookup.
struct SubspaceGeometry {
  SympSpace space;
  IncidenceGeometry geom;
  std::unordered_map<Subspace, int> index;

  int find(Subspace const& u) const {
    auto it = index.find(u);
    return it == index.end() ? -1 : it->second;
  }
};

namespace detail {

inline Bitset nonzero_members(Subspace const& u) {
  Bitset b = u.member_set();
  b.reset(0);
  return b;
}

/// Objects are sorted by (type, canonical basis bytes). X of smaller dimension is incident
/// to Y when X <= Y and X avoids avoid(Y).
inline SubspaceGeometry assemble(SympSpace const& s, std::vector<int> types,
                                 std::vector<Subspace> objs,
                                 std::function<Subspace(Subspace const&)> const& avoid_of) {
  std::sort(objs.begin(), objs.end(), [](Subspace const& a, Subspace const& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.key() < b.key();
  });
  std::vector<int> type_of;
  std::vector<Bitset> mem, avoid;
  for (auto const& u : objs) {
    type_of.push_back(u.dim());
    mem.push_back(nonzero_members(u));
    avoid.push_back(nonzero_members(avoid_of(u)));
  }
  SubspaceGeometry out;
  out.space = s;
  for (std::size_t i = 0; i < objs.size(); ++i) out.index.emplace(objs[i], static_cast<int>(i));
  out.geom = IncidenceGeometry(std::move(types), type_of, objs, [&](int i, int j) {
    int lo = i, hi = j;
    if (type_of[lo] > type_of[hi]) std::swap(lo, hi);
    return mem[lo].is_subset_of(mem[hi]) && !mem[lo].intersects(avoid[hi]);
  });
  return out;
}

}  // namespace detail

inline bool is_gamma_object(SympSpace const& s, Subspace const& u) {
  int const n = s.dim();
  if (u.dim() < 1 || u.dim() > n - 1) return false;
  if (!meets_trivially(u, s.ambient_radical())) return false;
  return s.radical(u).dim() <= 1;
}

/// Objects: subspaces U with 1 <= dim U <= n-1, dim Rad(U) <= 1 and U meeting Rad(V)
/// trivially. X is incident to a larger Y when X <= Y and X meets Rad(Y) trivially.
inline SubspaceGeometry build_gamma(GammaSpec const& spec) {
  spec.validate();
  PrimeField const f(spec.q);
  SympSpace const s = SympSpace::standard(f, spec.n);
  std::vector<int> types;
  std::vector<Subspace> objs;
  for (int k = 1; k <= spec.n - 1; ++k) {
    types.push_back(k);
    for_each_subspace(f, spec.n, k, [&](Subspace const& u) {
      if (is_gamma_object(s, u)) objs.push_back(u);
    });
  }
  return detail::assemble(s, types, std::move(objs),
                          [&](Subspace const& y) { return s.radical(y); });
}

struct PiSpec {
  GammaSpec ambient;
  Subspace p;
  Subspace h;

  /// p = <v> for a given vector and H spanned by the unit vectors other than p's pivot.
  static PiSpec standard(GammaSpec const& g, Vec const& v) {
    g.validate();
    PrimeField const f(g.q);
    PiSpec ps;
    ps.ambient = g;
    ps.p = Subspace(f, g.n, {v});
    if (ps.p.dim() != 1) throw usage_error("p must be a 1-space");
    int const piv = ps.p.pivots()[0];
    std::vector<Vec> hs;
    for (int i = 0; i < g.n; ++i)
      if (i != piv) hs.push_back(unit_vector(g.n, i));
    ps.h = Subspace(f, g.n, hs);
    ps.validate(SympSpace::standard(f, g.n));
    return ps;
  }
  static PiSpec standard(GammaSpec const& g) { return standard(g, unit_vector(g.n, 0)); }

  void validate(SympSpace const& s) const {
    ambient.validate();
    s.check(p);
    s.check(h);
    if (p.dim() != 1) throw usage_error("p must be a 1-space");
    if (!meets_trivially(p, s.ambient_radical())) throw usage_error("p must avoid Rad(V)");
    if (!meets_trivially(p, h) || h.dim() != s.dim() - 1)
      throw usage_error("H must be a complement of p");
    if (!contains(h, s.ambient_radical())) throw usage_error("H must contain Rad(V)");
  }
};

/// Membership rule for subspaces of H. With `literal` set only the itemized odd/even
/// conditions are applied; otherwise U must in addition not lie inside p-perp, which is what
/// makes the intersection-with-H map onto the residue of p a bijection.
inline bool is_pi_object(SympSpace const& s, PiSpec const& ps, Subspace const& u,
                         bool literal = false) {
  int const n = s.dim();
  if (u.dim() < 1 || u.dim() > n - 2) return false;
  if (!contains(ps.h, u)) return false;
  Subspace const radv = s.ambient_radical();
  if (radv.dim() > 0 && contains(u, radv)) return false;
  Subspace const pp = s.perp(ps.p);
  Subspace const r = s.radical(u);
  if (u.dim() % 2 == 1) {
    if (r.dim() != 1 || contains(pp, r)) return false;
  } else {
    bool const nondeg = r.dim() == 0;
    bool const rad2 = r.dim() == 2 && !contains(pp, r);
    if (!nondeg && !rad2) return false;
  }
  if (!literal && contains(pp, u)) return false;
  return true;
}

/// Incidence for dim U < dim W: W odd-dimensional needs U <= W; W even-dimensional needs
/// U <= W with U meeting Rad(W cap p-perp) trivially.
inline SubspaceGeometry build_pi(PiSpec const& ps, bool literal = false) {
  PrimeField const f(ps.ambient.q);
  SympSpace const s = SympSpace::standard(f, ps.ambient.n);
  ps.validate(s);
  int const n = s.dim();
  Subspace const pp = s.perp(ps.p);
  std::vector<int> types;
  std::vector<Subspace> objs;
  Mat const& hb = ps.h.basis();
  for (int k = 1; k <= n - 2; ++k) {
    types.push_back(k);
    for_each_subspace(f, n - 1, k, [&](Subspace const& c) {
      Subspace u(c.basis() * hb);
      if (is_pi_object(s, ps, u, literal)) objs.push_back(u);
    });
  }
  return detail::assemble(s, types, std::move(objs), [&](Subspace const& w) {
    if (w.dim() % 2 == 1) return Subspace::zero(f, n);
    return s.radical(intersect(w, pp));
  });
}

struct PhiWitness {
  IncidenceGeometry residue;  // Res(p) cut from Gamma
  SubspaceGeometry pi;
  std::vector<int> map;       // residue object -> pi object, -1 if X cap H is not in pi
  bool bijective = false;
  bool preserves_types = false;
  bool preserves_incidence = false;

  bool certified() const { return bijective && preserves_types && preserves_incidence; }
};

/// Builds X -> X cap H from Res(p) to Pi(p,H) and checks it without throwing.
inline PhiWitness check_residue_iso(SubspaceGeometry const& gamma, int p_obj, PiSpec const& ps,
                                    bool literal = false) {
  PhiWitness w;
  if (gamma.geom.type(p_obj) != 1) throw usage_error("p must be a point of the geometry");
  if (!(gamma.geom.payload(p_obj) == ps.p)) throw usage_error("p does not match the PiSpec");
  w.residue = gamma.geom.residue({p_obj});
  w.pi = build_pi(ps, literal);
  int const m = w.residue.size();
  w.map.assign(m, -1);
  std::vector<int> hits(w.pi.geom.size(), 0);
  bool all_found = true;
  w.preserves_types = true;
  for (int x = 0; x < m; ++x) {
    int y = w.pi.find(intersect(w.residue.payload(x), ps.h));
    w.map[x] = y;
    if (y < 0) {
      all_found = false;
      continue;
    }
    ++hits[y];
    if (w.pi.geom.type(y) != w.residue.type(x) - 1) w.preserves_types = false;
  }
  w.bijective = all_found && m == w.pi.geom.size() &&
                std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
  w.preserves_incidence = w.bijective && is_isomorphism(w.residue, w.pi.geom, w.map);
  return w;
}

inline PhiWitness residue_iso_phi(SubspaceGeometry const& gamma, int p_obj, PiSpec const& ps) {
  PhiWitness w = check_residue_iso(gamma, p_obj, ps);
  if (!w.certified())
    throw invariant_violation("X -> X cap H is not an isomorphism Res(p) -> Pi(p,H)");
  return w;
}

}  // namespace amlab

#endif  // AMLAB_QUASI_PHAN_HPP
