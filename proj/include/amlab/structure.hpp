#ifndef AMLAB_STRUCTURE_HPP
#define AMLAB_STRUCTURE_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "amlab/concrete_group.hpp"
#include "amlab/errors.hpp"
#include "amlab/field.hpp"
#include "amlab/perm_group.hpp"
#include "amlab/sp_action.hpp"
#include "amlab/symplectic.hpp"

namespace amlab {

struct StructureCheck {
  std::string name;
  bool ok = false;
  bool asserted = true;  // false: computed and reported only
  std::string detail;
};

struct StructureReport {
  std::vector<StructureCheck> checks;

  bool ok() const {
    for (auto const& c : checks)
      if (c.asserted && !c.ok) return false;
    return true;
  }
  StructureCheck const* find(std::string const& name) const {
    for (auto const& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  void add(std::string name, bool ok, std::string detail = {}, bool asserted = true) {
    checks.push_back({std::move(name), ok, asserted, std::move(detail)});
  }
  void add_order(std::string name, std::uint64_t got, std::uint64_t want, bool asserted = true) {
    add(std::move(name), got == want, std::to_string(got) + " vs " + std::to_string(want), asserted);
  }
};

inline std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}
inline std::uint64_t sl2_order(int q) { return static_cast<std::uint64_t>(q) * (q * q - 1); }

// ---------------------------------------------------------------------------------------
// Slim groups as explicit matrices on the basis e_1, f_1, ..., e_r, f_r.

namespace slim {

/// m(b1, w, b2) acting on H_i + H_{i+1}.
inline Mat m_elem(PrimeField f, int n, int i, int b1, int w, int b2) {
  Mat blk = Mat::identity(f, 4);
  blk(0, 1) = f.from_int(b1);
  blk(0, 3) = f.from_int(w);
  blk(2, 1) = f.from_int(w);
  blk(2, 3) = f.from_int(b2);
  return embed_block(blk, n, 2 * (i - 1));
}

/// s(a, b, c, d) acting on H_j.
inline Mat s_elem(PrimeField f, int n, int j, int a, int b, int c, int d) {
  Mat blk(f, 2, 2);
  blk(0, 0) = f.from_int(a);
  blk(0, 1) = f.from_int(b);
  blk(1, 0) = f.from_int(c);
  blk(1, 1) = f.from_int(d);
  return embed_block(blk, n, 2 * (j - 1));
}

inline std::vector<Mat> m_gens(PrimeField f, int n, int i) {
  return {m_elem(f, n, i, 1, 0, 0), m_elem(f, n, i, 0, 1, 0), m_elem(f, n, i, 0, 0, 1)};
}
inline std::vector<Mat> s_gens(PrimeField f, int n, int j) {
  return {s_elem(f, n, j, 1, 1, 0, 1), s_elem(f, n, j, 1, 0, 1, 1)};
}

inline std::vector<Mat> join(std::vector<Mat> a, std::vector<Mat> const& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// Permutation matrix exchanging (e_i, f_i) with (e_{i+1}, f_{i+1}).
inline Mat swap_blocks(PrimeField f, int n, int i) {
  Mat p(f, n, n);
  for (int k = 0; k < n; ++k) {
    int t = k;
    if (k / 2 == i - 1) t = k + 2;
    else if (k / 2 == i) t = k - 2;
    p(t, k) = 1;
  }
  return p;
}

}  // namespace slim

namespace detail {

inline std::set<Mat> as_set(std::vector<Mat> const& v) { return {v.begin(), v.end()}; }

// Identity outside the listed 2x2 blocks (1-based block numbers).
inline bool supported_on(Mat const& m, std::vector<int> const& blocks) {
  int const n = m.rows();
  std::vector<bool> in(n, false);
  for (int b : blocks) in[2 * (b - 1)] = in[2 * (b - 1) + 1] = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((!in[i] || !in[j]) && m(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

inline bool elementary_abelian(ConcreteGroup const& g, int p) {
  if (!g.is_abelian()) return false;
  Mat const& e = g.element(0);
  for (auto const& x : g.generators()) {
    Mat y = e;
    for (int k = 0; k < p; ++k) y = y * x;
    if (!(y == e)) return false;
  }
  return true;
}

inline bool commute(ConcreteGroup const& a, ConcreteGroup const& b) {
  for (auto const& x : a.generators())
    for (auto const& y : b.generators())
      if (!(x * y == y * x)) return false;
  return true;
}

}  // namespace detail

/// Order, centre, commutator and intersection checks on the slim groups of Sp_n(q).
inline StructureReport verify_slim_structure(int q, int n) {
  if (q != 2 && q != 3 && q != 5) throw usage_error("slim structure needs q in {2,3,5}");
  if (n != 4 && n != 6) throw usage_error("slim structure needs n in {4,6}");
  PrimeField const f(q);
  int const r = n / 2;
  SympSpace const s = SympSpace::standard(f, n);
  StructureReport rep;
  auto const qq = static_cast<std::uint64_t>(q);

  std::vector<ConcreteGroup> M(r), S(r + 1);
  for (int i = 1; i < r; ++i) M[i] = ConcreteGroup(slim::m_gens(f, n, i));
  for (int j = 1; j <= r; ++j) S[j] = ConcreteGroup(slim::s_gens(f, n, j));

  for (int i = 1; i < r; ++i) {
    std::string tag = "M" + std::to_string(i);
    rep.add_order(tag + " order", M[i].order(), ipow(qq, 3));
    rep.add(tag + " elementary abelian", detail::elementary_abelian(M[i], q));
    bool iso = true;
    for (auto const& g : M[i].generators()) iso = iso && is_isometry(s, g);
    rep.add(tag + " symplectic", iso);
  }
  for (int j = 1; j <= r; ++j) {
    std::string tag = "S" + std::to_string(j);
    rep.add_order(tag + " order", S[j].order(), sl2_order(q));
    bool ok = true;
    for (auto const& x : S[j].elements()) ok = ok && is_isometry(s, x) && detail::supported_on(x, {j});
    rep.add(tag + " is Sp(H_j) on its block", ok);
  }

  // Q_ii and its companion Q_{i,i+1}.
  for (int i = 1; i < r; ++i) {
    std::string tag = "Q" + std::to_string(i) + std::to_string(i);
    ConcreteGroup Q(slim::join(slim::m_gens(f, n, i), slim::s_gens(f, n, i)));
    rep.add_order(tag + " order", Q.order(), ipow(qq, 3) * sl2_order(q));

    // Stabilizer of e_{i+1} in Sp(H_i + H_{i+1}), computed in Sp_4 on the 4-space.
    SympSpace const s4 = SympSpace::standard(f, 4);
    std::vector<Perm> sp4;
    for (auto const& g : sp_generators(s4)) sp4.push_back(perm_on_vectors(g));
    PermGroup G4(sp4[0].size(), sp4);
    auto e3 = static_cast<std::uint32_t>(vector_index(f, unit_vector(4, 2)) - 1);
    std::uint64_t stab = G4.pointwise_stabilizer({e3}).order();
    Vec ei1 = unit_vector(n, 2 * i);
    bool fixes = true;
    for (auto const& x : Q.elements()) fixes = fixes && x.apply(ei1) == ei1 && detail::supported_on(x, {i, i + 1});
    rep.add(tag + " equals the stabilizer of e_{i+1}", fixes && Q.order() == stab,
            "|Q| = " + std::to_string(Q.order()) + ", |stab| = " + std::to_string(stab));

    // Centre is U = {e_{i+1} -> e_{i+1}, f_{i+1} -> f_{i+1} + b e_{i+1}}.
    std::vector<Mat> U;
    for (int b = 0; b < q; ++b) U.push_back(slim::m_elem(f, n, i, 0, 0, b));
    rep.add(tag + " centre is U", detail::as_set(Q.center()) == detail::as_set(U),
            "|Z| = " + std::to_string(Q.center().size()));

    // V: w1, w2, b2 free with v2 = -w2, v1 = w1.
    std::vector<Mat> Vset;
    for (int w1 = 0; w1 < q; ++w1)
      for (int w2 = 0; w2 < q; ++w2)
        for (int b2 = 0; b2 < q; ++b2) {
          Mat blk = Mat::identity(f, 4);
          blk(0, 3) = f.from_int(w1);
          blk(1, 3) = f.from_int(w2);
          blk(2, 0) = f.from_int(-w2);
          blk(2, 1) = f.from_int(w1);
          blk(2, 3) = f.from_int(b2);
          Vset.push_back(embed_block(blk, n, 2 * (i - 1)));
        }
    ConcreteGroup V(Vset);
    rep.add(tag + " V is a subgroup of order q^3", V.order() == ipow(qq, 3) && detail::as_set(V.elements()) == detail::as_set(Vset));
    bool inside = true;
    for (auto const& x : Vset) inside = inside && Q.contains(x);
    rep.add(tag + " V lies in Q", inside);
    if (q == 2) {
      rep.add(tag + " V elementary abelian (char 2)", detail::elementary_abelian(V, 2));
    } else {
      std::vector<Mat> comms;
      for (auto const& a : V.generators())
        for (auto const& b : V.generators()) comms.push_back(inverse(a) * inverse(b) * a * b);
      ConcreteGroup D(comms);
      rep.add(tag + " [V,V] = U", detail::as_set(D.elements()) == detail::as_set(U));
      rep.add(tag + " Z(V) = U", detail::as_set(V.center()) == detail::as_set(U));
    }
    // S_i acts on V/U as on column vectors (w1, w2).
    bool natural = true;
    for (auto const& x : S[i].elements()) {
      Mat xi = inverse(x);
      for (auto const& v : Vset) {
        Mat c = x * v * xi;
        int o = 2 * (i - 1);
        elem_t w1 = f.add(f.mul(x(o, o), v(o, o + 3)), f.mul(x(o, o + 1), v(o + 1, o + 3)));
        elem_t w2 = f.add(f.mul(x(o + 1, o), v(o, o + 3)), f.mul(x(o + 1, o + 1), v(o + 1, o + 3)));
        natural = natural && V.contains(c) && c(o, o + 3) == w1 && c(o + 1, o + 3) == w2;
      }
    }
    rep.add(tag + " S_i acts naturally on V/U", natural);
    rep.add(tag + " = <V, S_i>", ConcreteGroup(slim::join(Vset, S[i].generators())).order() == Q.order());

    std::string tag2 = "Q" + std::to_string(i) + std::to_string(i + 1);
    ConcreteGroup Q2(slim::join(slim::m_gens(f, n, i), slim::s_gens(f, n, i + 1)));
    Mat P = slim::swap_blocks(f, n, i);
    Mat Pi = inverse(P);
    std::vector<Mat> conj;
    for (auto const& x : Q.elements()) conj.push_back(P * x * Pi);
    rep.add(tag2 + " is the block-swap conjugate of " + tag,
            detail::as_set(conj) == detail::as_set(Q2.elements()));
  }

  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j) {
      std::string tag = "S" + std::to_string(i) + std::to_string(j);
      ConcreteGroup Sij(slim::join(S[i].generators(), S[j].generators()));
      rep.add_order(tag + " order", Sij.order(), sl2_order(q) * sl2_order(q));
      rep.add(tag + " direct product", detail::commute(S[i], S[j]) && intersection(S[i], S[j]).size() == 1);
    }
  for (int i = 1; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      std::string tag = "M" + std::to_string(i) + std::to_string(j);
      ConcreteGroup Mij(slim::join(M[i].generators(), M[j].generators()));
      rep.add_order(tag + " order", Mij.order(), ipow(qq, j - i == 1 ? 5 : 6));
      rep.add(tag + " elementary abelian", detail::elementary_abelian(Mij, q));
    }
  for (int i = 1; i < r; ++i)
    for (int j = 1; j <= r; ++j) {
      if (j == i || j == i + 1) continue;
      std::string tag = "Q" + std::to_string(i) + std::to_string(j);
      ConcreteGroup Qij(slim::join(M[i].generators(), S[j].generators()));
      rep.add_order(tag + " order", Qij.order(), ipow(qq, 3) * sl2_order(q));
      rep.add(tag + " direct product", detail::commute(M[i], S[j]) && intersection(M[i], S[j]).size() == 1);
    }

  // U_i = S_i cap M_i (i < r), M_{r-1} cap S_r (i = r); inner indices see both neighbours.
  for (int i = 1; i <= r; ++i) {
    std::string tag = "U" + std::to_string(i);
    auto u = i < r ? intersection(S[i], M[i]) : intersection(S[i], M[i - 1]);
    rep.add_order(tag + " order", u.size(), qq);
    if (i > 1 && i < r) {
      auto a = detail::as_set(intersection(S[i], M[i]));
      auto b = detail::as_set(intersection(S[i], M[i - 1]));
      auto c = detail::as_set(intersection(M[i], M[i - 1]));
      rep.add(tag + " S_i^M_i = S_i^M_{i-1} = M_i^M_{i-1}", a == b && b == c);
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------------------
// Parabolic subgroups of the action on the geometry.

/// Flag of cotype J on the standard chamber.
inline Flag cotype_flag(SubspaceGeometry const& gamma, std::vector<int> const& J) {
  std::vector<int> keep;
  for (int t : gamma.geom.types())
    if (std::find(J.begin(), J.end(), t) == J.end()) keep.push_back(t);
  return standard_flag(gamma, keep);
}

/// P_J: stabilizer of the cotype-J flag on the standard chamber.
inline PermGroup parabolic(SpAction const& act, std::vector<int> const& J) {
  return act.stabilizer(cotype_flag(act.gamma(), J));
}

inline std::vector<Mat> matrix_generators(SpAction const& act, PermGroup const& g) {
  std::vector<Mat> out;
  for (auto const& p : g.generators()) out.push_back(act.matrix_of(p));
  if (out.empty()) out.push_back(Mat::identity(act.gamma().space.field(), act.gamma().space.dim()));
  return out;
}

/// Borel, kernel and rank <= 2 parabolic orders and generation identities. Orders follow the
/// block decompositions into S, M, M_*, Q_-, Q_+ and Borel factors; they are asserted only
/// for q >= 3.
inline StructureReport verify_parabolic_structure(SpAction const& act) {
  SympSpace const& s = act.gamma().space;
  int const n = s.dim();
  if (n % 2 || s.rad_dim() != 0) throw usage_error("parabolic structure needs a nondegenerate space");
  int const q = s.field().p();
  int const r = n / 2;
  bool const hard = q >= 3;
  auto const qq = static_cast<std::uint64_t>(q);
  std::uint64_t const b1 = qq * (qq - 1);  // |B_j|
  std::uint64_t const sl2 = sl2_order(q);
  std::uint64_t const mo = ipow(qq, 3) * (qq - 1) * (qq - 1);
  std::uint64_t const mstar = ipow(qq, 5) * ipow(qq - 1, 3);
  std::uint64_t const qminus = ipow(qq, 3) * (qq - 1) * sl2;
  auto borel_pow = [&](int k) { return k >= 0 ? ipow(b1, k) : 0; };
  StructureReport rep;

  PermGroup B = parabolic(act, {});
  rep.add_order("Borel order", B.order(), ipow(b1, r));
  ConcreteGroup Bm(matrix_generators(act, B));
  bool shape = true;
  for (auto const& x : Bm.elements())
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        bool allowed = (i / 2 == j / 2) && !(i % 2 == 1 && j % 2 == 0);
        if (!allowed && x(i, j) != 0) shape = false;
      }
  rep.add("Borel is block upper triangular", shape);
  rep.add_order("kernel order", act.kernel_order(), q == 2 ? 1 : 2);

  auto P = [&](std::vector<int> J) { return parabolic(act, J); };
  auto joined = [&](PermGroup const& a, PermGroup const& b) {
    auto gens = a.generators();
    gens.insert(gens.end(), b.generators().begin(), b.generators().end());
    return PermGroup(act.degree(), gens).order();
  };
  std::vector<PermGroup> S(r + 1), M(r);
  for (int j = 1; j <= r; ++j) {
    S[j] = P({2 * j - 1});
    rep.add_order("S" + std::to_string(j) + " order", S[j].order(), sl2 * borel_pow(r - 1), hard);
  }
  for (int i = 1; i < r; ++i) {
    M[i] = P({2 * i});
    rep.add_order("M" + std::to_string(i) + " order", M[i].order(), mo * borel_pow(r - 2), hard);
  }
  for (int i = 1; i <= r; ++i)
    for (int j = i + 1; j <= r; ++j) {
      std::string tag = "S" + std::to_string(i) + std::to_string(j);
      PermGroup g = P({2 * i - 1, 2 * j - 1});
      rep.add_order(tag + " order", g.order(), sl2 * sl2 * borel_pow(r - 2), hard);
      rep.add(tag + " = <S_i, S_j>", joined(S[i], S[j]) == g.order(), {}, hard);
    }
  for (int i = 1; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      std::string tag = "M" + std::to_string(i) + std::to_string(j);
      PermGroup g = P({2 * i, 2 * j});
      std::uint64_t want = j - i == 1 ? mstar * borel_pow(r - 3) : mo * mo * borel_pow(r - 4);
      rep.add_order(tag + " order", g.order(), want, hard);
      rep.add(tag + " = <M_i, M_j>", joined(M[i], M[j]) == g.order(), {}, hard);
    }
  for (int i = 1; i < r; ++i)
    for (int j = 1; j <= r; ++j) {
      std::string tag = "Q" + std::to_string(i) + std::to_string(j);
      PermGroup g = P({std::min(2 * i, 2 * j - 1), std::max(2 * i, 2 * j - 1)});
      std::uint64_t want = (j == i || j == i + 1) ? qminus * borel_pow(r - 2) : mo * sl2 * borel_pow(r - 3);
      rep.add_order(tag + " order", g.order(), want, hard);
      rep.add(tag + " = <M_i, S_j>", joined(M[i], S[j]) == g.order(), {}, hard);
    }
  return rep;
}

}  // namespace amlab

#endif  // AMLAB_STRUCTURE_HPP
