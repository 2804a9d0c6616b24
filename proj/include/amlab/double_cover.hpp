#ifndef AMLAB_DOUBLE_COVER_HPP
#define AMLAB_DOUBLE_COVER_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "amlab/bitset.hpp"
#include "amlab/errors.hpp"
#include "amlab/geometry.hpp"
#include "amlab/homotopy.hpp"
#include "amlab/quasi_phan.hpp"
#include "amlab/subspace.hpp"
#include "amlab/symplectic.hpp"

namespace amlab {

/// Point-shadow of a residue object split into two parts; the two lifts of the object are
/// X0+ u X1- and X0- u X1+.
struct ShadowPartition {
  std::vector<int> part0;  // point ids of the base geometry
  std::vector<int> part1;
};

/// The two-sheeted cover of the point residue Pi(p,H) over GF(2)^6. Cover object 2i is the
/// lift of base object i with sign -, 2i+1 the lift with sign +.
struct DoubleCover {
  PiSpec spec;
  SubspaceGeometry base;
  IncidenceGeometry geom;
  std::vector<ShadowPartition> partition;  // per base object
  std::vector<Bitset> shadow;              // per cover object, over cover object ids

  int base_of(int c) const { return c / 2; }
  int sign_of(int c) const { return c % 2 == 1 ? +1 : -1; }
  static int lift(int base_obj, int sign) { return 2 * base_obj + (sign > 0 ? 1 : 0); }
  int point_count() const { return static_cast<int>(geom.count_of_type(1)); }
};

namespace detail {

inline std::vector<int> base_shadow(SubspaceGeometry const& g, int obj) {
  if (g.geom.type(obj) == 1) return {obj};
  std::vector<int> pts;
  (g.geom.neighbours(obj) & g.geom.of_type_set(1)).for_each([&](std::size_t x) {
    pts.push_back(static_cast<int>(x));
  });
  return pts;
}

inline int point_id(SubspaceGeometry const& g, Subspace const& pt) {
  int id = g.find(pt);
  if (id < 0 || g.geom.type(id) != 1) throw invariant_violation("expected a point of the residue");
  return id;
}

inline ShadowPartition partition_four_space(SubspaceGeometry const& g, Subspace const& pp,
                                            int obj, std::vector<int> const& pts) {
  SympSpace const& s = g.space;
  Subspace const& x = g.geom.payload(obj);
  Subspace const r = s.radical(intersect(x, pp));
  if (r.dim() != 1) throw invariant_violation("Rad(X cap p-perp) is not a point");
  // Pair up the eight points by the lines through r.
  std::vector<std::pair<int, int>> lines;
  std::vector<bool> used(pts.size(), false);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    Subspace const l = sum(r, g.geom.payload(pts[i]));
    int mate = -1;
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (!used[j] && contains(l, g.geom.payload(pts[j]))) mate = static_cast<int>(j);
    if (mate < 0) throw invariant_violation("line through r carries a single point");
    used[i] = used[mate] = true;
    lines.emplace_back(pts[i], pts[mate]);
  }
  if (lines.size() != 4) throw invariant_violation("expected four lines through r");
  std::sort(lines.begin(), lines.end());
  ShadowPartition part;
  Subspace const rad = s.radical(x);
  if (rad.dim() == 0) {
    // p1 is the smallest point, L1 its line; on every other line q_i is the point in p1-perp.
    int const p1 = lines[0].first;
    Subspace const p1perp = s.perp(g.geom.payload(p1));
    part.part0.push_back(p1);
    part.part1.push_back(lines[0].second);
    for (std::size_t i = 1; i < lines.size(); ++i) {
      bool a = contains(p1perp, g.geom.payload(lines[i].first));
      bool b = contains(p1perp, g.geom.payload(lines[i].second));
      if (a == b) throw invariant_violation("p1-perp does not split a line through r");
      part.part0.push_back(a ? lines[i].second : lines[i].first);
      part.part1.push_back(a ? lines[i].first : lines[i].second);
    }
  } else if (rad.dim() == 2) {
    if (!contains(rad, r)) throw invariant_violation("Rad(X) does not pass through r");
    for (auto const& [a, b] : lines) {
      bool on_r = contains(rad, g.geom.payload(a));
      auto& dst = on_r ? part.part0 : part.part1;
      dst.push_back(a);
      dst.push_back(b);
    }
    if (part.part0.size() != 2) throw invariant_violation("Rad(X) is not one of the lines through r");
  } else {
    throw invariant_violation("4-space with unexpected radical");
  }
  std::sort(part.part0.begin(), part.part0.end());
  std::sort(part.part1.begin(), part.part1.end());
  return part;
}

}  // namespace detail

/// Splits the point-shadow of an object of Pi(p,H), (6,2), into the parts X0 and X1.
inline ShadowPartition partition_object(SubspaceGeometry const& g, PiSpec const& ps, int obj) {
  SympSpace const& s = g.space;
  std::vector<int> const pts = detail::base_shadow(g, obj);
  Subspace const& x = g.geom.payload(obj);
  ShadowPartition part;
  switch (x.dim()) {
    case 1:
      part.part0 = pts;
      break;
    case 2:
      if (pts.size() != 2) throw invariant_violation("a line must carry two points");
      if (s.radical(x).dim() == 0) {
        part.part0 = pts;
      } else {
        part.part0 = {pts[0]};
        part.part1 = {pts[1]};
      }
      break;
    case 3: {
      int const rad = detail::point_id(g, s.radical(x));
      part.part0 = {rad};
      for (int q : pts)
        if (q != rad) part.part1.push_back(q);
      break;
    }
    case 4:
      if (pts.size() != 8) throw invariant_violation("a 4-space must carry eight points");
      part = detail::partition_four_space(g, s.perp(ps.p), obj, pts);
      break;
    default:
      throw invariant_violation("unexpected object dimension");
  }
  return part;
}

inline DoubleCover build_cover(PiSpec const& ps) {
  if (ps.ambient.q != 2 || ps.ambient.n != 6)
    throw usage_error("the double cover is built for GF(2)^6 only");
  DoubleCover dc;
  dc.spec = ps;
  dc.base = build_pi(ps);
  IncidenceGeometry const& b = dc.base.geom;
  int const m = b.size();
  std::vector<int> type_of;
  std::vector<Subspace> payload;
  for (int i = 0; i < m; ++i) {
    dc.partition.push_back(partition_object(dc.base, ps, i));
    for (int k = 0; k < 2; ++k) {
      type_of.push_back(b.type(i));
      payload.push_back(b.payload(i));
    }
  }
  for (int c = 0; c < 2 * m; ++c) {
    Bitset sh(2 * m);
    auto const& part = dc.partition[c / 2];
    int const sign = c % 2 == 1 ? +1 : -1;
    for (int q : part.part0) sh.set(DoubleCover::lift(q, sign));
    for (int q : part.part1) sh.set(DoubleCover::lift(q, -sign));
    dc.shadow.push_back(std::move(sh));
  }
  dc.geom = IncidenceGeometry(b.types(), type_of, payload, [&](int i, int j) {
    if (!b.incident(i / 2, j / 2)) return false;
    return dc.shadow[i].is_subset_of(dc.shadow[j]) || dc.shadow[j].is_subset_of(dc.shadow[i]);
  });
  return dc;
}

struct CoverReport {
  bool types_preserved = false;
  bool incidence_preserved = false;
  bool shadow_rule = false;       // incident iff images incident and shadows meet
  bool partitions_agree = false;  // shadows of lifts of incident objects nest or are disjoint
  bool co1 = false;
  bool co2 = false;
  std::size_t base_flags = 0;
  std::size_t cover_flags = 0;
  std::string failure;            // first failing check, with the offending flag

  bool ok() const {
    return types_preserved && incidence_preserved && shadow_rule && partitions_agree && co1 && co2;
  }
};

namespace detail {

inline std::string flag_text(Flag const& f) {
  std::string s = "{";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
  return s + "}";
}

}  // namespace detail

/// Checks that the projection is a 2-cover: every nonempty base flag has exactly two disjoint
/// preimage flags, and the projection restricted to the residue of every nonempty cover
/// flag is an isomorphism onto the residue of its image.
inline CoverReport verify_2cover(DoubleCover const& dc) {
  CoverReport rep;
  IncidenceGeometry const& b = dc.base.geom;
  IncidenceGeometry const& c = dc.geom;
  auto fail = [&](std::string const& why) {
    if (rep.failure.empty()) rep.failure = why;
  };

  rep.types_preserved = true;
  for (int x = 0; x < c.size(); ++x)
    if (c.type(x) != b.type(x / 2)) rep.types_preserved = false;

  rep.incidence_preserved = rep.shadow_rule = rep.partitions_agree = true;
  for (int x = 0; x < c.size(); ++x)
    for (int y = x + 1; y < c.size(); ++y) {
      if (c.type(x) == c.type(y)) continue;
      bool const inc = c.incident(x, y);
      bool const binc = b.incident(x / 2, y / 2);
      if (inc && !binc) {
        rep.incidence_preserved = false;
        fail("cover incidence not preserved at " + detail::flag_text({x, y}));
      }
      bool const meet = dc.shadow[x].intersects(dc.shadow[y]);
      if (inc != (binc && meet)) {
        rep.shadow_rule = false;
        fail("shadow rule fails at " + detail::flag_text({x, y}));
      }
      if (binc && meet && !dc.shadow[x].is_subset_of(dc.shadow[y]) &&
          !dc.shadow[y].is_subset_of(dc.shadow[x])) {
        rep.partitions_agree = false;
        fail("partitions disagree at " + detail::flag_text({x, y}));
      }
    }

  // CO1
  rep.co1 = true;
  b.for_each_flag([&](Flag const& f, Bitset const&) {
    if (f.empty()) return true;
    ++rep.base_flags;
    std::vector<Bitset> lifts;
    std::size_t const k = f.size();
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      Flag g;
      for (std::size_t i = 0; i < k; ++i) g.push_back(DoubleCover::lift(f[i], (mask >> i & 1u) ? 1 : -1));
      if (!c.is_flag(g)) continue;
      Bitset set(c.size());
      for (int x : g) set.set(x);
      lifts.push_back(std::move(set));
    }
    if (lifts.size() != 2 || lifts[0].intersects(lifts[1])) {
      rep.co1 = false;
      fail("base flag " + detail::flag_text(f) + " has " + std::to_string(lifts.size()) +
           " preimage flags");
    }
    return true;
  });

  // CO2
  rep.co2 = true;
  c.for_each_flag([&](Flag const& f, Bitset const& res) {
    if (f.empty()) return true;
    ++rep.cover_flags;
    Flag bf;
    for (int x : f) bf.push_back(x / 2);
    Bitset const bres = b.residue_set(bf);
    std::size_t const n = res.count();
    bool ok = n == bres.count();
    Bitset image(b.size());
    res.for_each([&](std::size_t x) { image.set(x / 2); });
    ok = ok && image == bres;
    if (ok)
      res.for_each([&](std::size_t x) {
        if (!ok) return;
        Bitset nb = c.neighbours(static_cast<int>(x)) & res;
        Bitset const want = b.neighbours(static_cast<int>(x / 2)) & bres;
        if (nb.count() != want.count()) ok = false;
        nb.for_each([&](std::size_t y) {
          if (!want.test(y / 2)) ok = false;
        });
      });
    if (!ok) {
      rep.co2 = false;
      fail("residue of cover flag " + detail::flag_text(f) + " does not project isomorphically");
    }
    return true;
  });
  return rep;
}

/// Lifts an edge path of the base geometry starting at cover object `start`; returns nullopt
/// if some step does not have exactly one incident preimage.
inline std::optional<std::vector<int>> lift_path(DoubleCover const& dc, std::vector<int> const& path,
                                                 int start) {
  if (path.empty() || start / 2 != path[0]) throw usage_error("start is not over the path origin");
  std::vector<int> out{start};
  for (std::size_t i = 1; i < path.size(); ++i) {
    int cur = out.back();
    int hits = 0, nxt = -1;
    for (int s : {-1, +1}) {
      int cand = DoubleCover::lift(path[i], s);
      if (cand == cur) continue;
      if (dc.geom.incident(cur, cand)) {
        ++hits;
        nxt = cand;
      }
    }
    if (hits != 1) return std::nullopt;
    out.push_back(nxt);
  }
  return out;
}

struct CoverDistances {
  int q_plus_minus = -1;   // distance between the two lifts of Rad(H)
  int max_other = -1;      // largest distance over all remaining pairs of cover points
  int max_distinct = -1;   // largest distance between points over distinct base points
  int min_fiber = -1;      // smallest and largest distance between the two lifts of a point
  int max_fiber = -1;
  bool connected = false;
};

/// Collinearity distances among the 32 cover points.
inline CoverDistances cover_distances(DoubleCover const& dc) {
  ShadowGraph const sg = shadow_graph(dc.geom, 1, 2);
  int const rad = detail::point_id(dc.base, dc.base.space.radical(dc.spec.h));
  CoverDistances out;
  out.connected = true;
  int const n = static_cast<int>(sg.points.size());
  for (int i = 0; i < n; ++i) {
    std::vector<int> d = bfs_distances(sg.adj, i);
    for (int j = i + 1; j < n; ++j) {
      if (d[j] < 0) {
        out.connected = false;
        continue;
      }
      int const bi = sg.points[i] / 2, bj = sg.points[j] / 2;
      if (bi == bj) {
        out.min_fiber = out.min_fiber < 0 ? d[j] : std::min(out.min_fiber, d[j]);
        out.max_fiber = std::max(out.max_fiber, d[j]);
      } else {
        out.max_distinct = std::max(out.max_distinct, d[j]);
      }
      if (bi == rad && bj == rad)
        out.q_plus_minus = d[j];
      else
        out.max_other = std::max(out.max_other, d[j]);
    }
  }
  return out;
}

struct DeckReport {
  int bases_checked = 0;
  std::size_t loops_checked = 0;
  bool nontrivial_swaps = false;  // every loop in the nontrivial class exchanges the fiber
  bool trivial_fixes = false;     // every null-homotopic loop returns to its start
  bool lifting_unique = false;
};

/// For each chosen base point x, takes the loops tree(x..a) + (a,b) + tree(b..x) over every
/// non-tree edge, classifies each one in pi1(Pi(p,H), x) with the enumerated coset table, and
/// checks that lifting from x- ends at x+ exactly for the nontrivial class.
inline DeckReport deck_regularity(DoubleCover const& dc, std::vector<int> const& base_points,
                                  Pi1Budget const& budget = {}) {
  DeckReport rep;
  rep.nontrivial_swaps = rep.trivial_fixes = rep.lifting_unique = true;
  bool saw_nontrivial = false;
  for (int x : base_points) {
    Pi1Presentation const p = pi1_presentation(dc.base.geom, x);
    TietzeResult const t = tietze_simplify(p.pres, budget.tietze);
    CosetOptions opt;
    opt.max_cosets = budget.max_cosets;
    CosetTable const tab = todd_coxeter(t.pres, {}, opt);
    if (!tab.complete() || tab.cosets != 2) throw invariant_violation("expected a group of order 2");
    ++rep.bases_checked;
    for (auto const& [edge, gen] : p.edge_gen) {
      std::vector<int> path = p.tree_path(edge.first);
      std::vector<int> back = p.tree_path(edge.second);
      path.insert(path.end(), back.rbegin(), back.rend());
      bool const nontrivial = tab.trace(0, t.map_word({gen})) != 0;
      auto lifted = lift_path(dc, path, DoubleCover::lift(x, -1));
      ++rep.loops_checked;
      if (!lifted) {
        rep.lifting_unique = false;
        continue;
      }
      bool const swapped = lifted->back() == DoubleCover::lift(x, +1);
      if (nontrivial) {
        saw_nontrivial = true;
        if (!swapped) rep.nontrivial_swaps = false;
      } else if (swapped) {
        rep.trivial_fixes = false;
      }
    }
  }
  if (!saw_nontrivial) rep.nontrivial_swaps = false;
  return rep;
}

}  // namespace amlab

#endif  // AMLAB_DOUBLE_COVER_HPP
