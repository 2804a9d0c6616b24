#ifndef AMLAB_HOMOTOPY_HPP
#define AMLAB_HOMOTOPY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "amlab/bitset.hpp"
#include "amlab/coset_enum.hpp"
#include "amlab/errors.hpp"
#include "amlab/fp_group.hpp"
#include "amlab/geometry.hpp"
#include "amlab/smith.hpp"

namespace amlab {

/// Edge-path group of an incidence geometry: one generator per incidence edge outside a BFS
/// spanning tree, one relator per 3-element flag.
struct Pi1Presentation {
  int base = 0;
  std::vector<int> parent;                       // tree parent, -1 at the base
  std::map<std::pair<int, int>, int> edge_gen;   // (lo, hi) -> generator, non-tree edges only
  Presentation pres;
  std::size_t triangles = 0;

  /// Generator word for traversing the edge a -> b (empty on tree edges).
  Word edge_word(int a, int b) const {
    auto it = edge_gen.find({std::min(a, b), std::max(a, b)});
    if (it == edge_gen.end()) return {};
    return {a < b ? it->second : -it->second};
  }

  /// Word of a closed edge path v0 v1 ... vk with consecutive objects incident.
  Word path_word(std::vector<int> const& path) const {
    Word w;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      Word e = edge_word(path[i], path[i + 1]);
      w.insert(w.end(), e.begin(), e.end());
    }
    return free_reduce(w);
  }

  /// Tree path from the base to v.
  std::vector<int> tree_path(int v) const {
    std::vector<int> up;
    for (int x = v; x >= 0; x = parent[x]) up.push_back(x);
    std::reverse(up.begin(), up.end());
    return up;
  }

  /// Loop at the base running out along the tree to a, across a -> b, and back from b.
  Word loop_through(int a, int b) const {
    std::vector<int> p = tree_path(a);
    std::vector<int> back = tree_path(b);
    std::reverse(back.begin(), back.end());
    p.insert(p.end(), back.begin(), back.end());
    return path_word(p);
  }
};

inline Pi1Presentation pi1_presentation(IncidenceGeometry const& g, int base = 0) {
  int const n = g.size();
  if (n == 0) throw usage_error("empty geometry has no fundamental group");
  if (base < 0 || base >= n) throw usage_error("base object out of range");
  Pi1Presentation out;
  out.base = base;
  out.parent.assign(n, -2);
  out.parent[base] = -1;
  std::vector<int> order{base};
  for (std::size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    g.neighbours(v).for_each([&](std::size_t u) {
      if (out.parent[u] == -2) {
        out.parent[u] = v;
        order.push_back(static_cast<int>(u));
      }
    });
  }
  if (static_cast<int>(order.size()) != n) throw usage_error("geometry is not connected");

  int k = 0;
  for (int a = 0; a < n; ++a)
    g.neighbours(a).for_each([&](std::size_t ub) {
      int b = static_cast<int>(ub);
      if (b <= a || out.parent[b] == a || out.parent[a] == b) return;
      out.edge_gen.emplace(std::make_pair(a, b), ++k);
    });
  out.pres.ngens = k;

  auto word = [&](int a, int b) -> int {
    auto it = out.edge_gen.find({std::min(a, b), std::max(a, b)});
    if (it == out.edge_gen.end()) return 0;
    return a < b ? it->second : -it->second;
  };
  for (int a = 0; a < n; ++a) {
    Bitset const& na = g.neighbours(a);
    na.for_each([&](std::size_t ub) {
      int b = static_cast<int>(ub);
      if (b <= a) return;
      Bitset common = na & g.neighbours(b);
      common.for_each([&](std::size_t uc) {
        int c = static_cast<int>(uc);
        if (c <= b) return;
        ++out.triangles;
        Word r;
        for (int x : {word(a, b), word(b, c), word(c, a)})
          if (x != 0) r.push_back(x);
        if (!r.empty()) out.pres.relators.push_back(std::move(r));
      });
    });
  }
  return out;
}

enum class Pi1Verdict { trivial, nontrivial, inconclusive };

struct Pi1Report {
  Pi1Verdict verdict = Pi1Verdict::inconclusive;
  std::optional<std::uint64_t> order;  // set when an enumeration over the trivial subgroup completed
  Abelianization abelian;
  int raw_generators = 0;
  std::size_t raw_relators = 0;
  int simplified_generators = 0;
  std::size_t simplified_relators = 0;
  std::size_t cosets_used = 0;
  Presentation simplified;
};

struct Pi1Budget {
  std::size_t max_cosets = 1'000'000;
  TietzeOptions tietze{};
};

/// Simplifies the presentation and decides triviality. Trivial when the simplification
/// leaves no generators or coset enumeration over the trivial subgroup finds one coset;
/// nontrivial when the abelianization is nonzero or the enumeration finds more cosets.
inline Pi1Report certify_trivial(Pi1Presentation const& p, Pi1Budget const& budget = {}) {
  Pi1Report rep;
  rep.raw_generators = p.pres.ngens;
  rep.raw_relators = p.pres.relators.size();
  TietzeResult t = tietze_simplify(p.pres, budget.tietze);
  rep.simplified = t.pres;
  rep.simplified_generators = t.pres.ngens;
  rep.simplified_relators = t.pres.relators.size();
  rep.abelian = abelianization(t.pres);
  if (t.pres.ngens == 0) {
    rep.verdict = Pi1Verdict::trivial;
    rep.order = 1;
    return rep;
  }
  if (!rep.abelian.trivial()) rep.verdict = Pi1Verdict::nontrivial;
  if (rep.abelian.free_rank > 0) return rep;
  CosetOptions opt;
  opt.max_cosets = budget.max_cosets;
  CosetTable tab = todd_coxeter(t.pres, {}, opt);
  rep.cosets_used = tab.max_live;
  if (tab.complete()) {
    rep.order = static_cast<std::uint64_t>(tab.cosets);
    rep.verdict = tab.cosets == 1 ? Pi1Verdict::trivial : Pi1Verdict::nontrivial;
  }
  return rep;
}

/// Exact order of the fundamental group, or nullopt when the enumeration exceeds the budget
/// or the group is infinite.
inline std::optional<std::uint64_t> pi1_order(Pi1Presentation const& p, Pi1Budget const& budget = {}) {
  return certify_trivial(p, budget).order;
}

}  // namespace amlab

#endif  // AMLAB_HOMOTOPY_HPP
