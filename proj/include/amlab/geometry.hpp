#ifndef AMLAB_GEOMETRY_HPP
#define AMLAB_GEOMETRY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "amlab/bitset.hpp"
#include "amlab/errors.hpp"
#include "amlab/subspace.hpp"

namespace amlab {

using Flag = std::vector<int>;

/// Typed objects with a symmetric incidence relation. Distinct incident objects have
/// distinct types; the relation is stored as one adjacency bitset per object.
class IncidenceGeometry {
 public:
  IncidenceGeometry() = default;

  /// `incident(i, j)` is only asked for i < j of different types.
  IncidenceGeometry(std::vector<int> types, std::vector<int> type_of,
                    std::vector<Subspace> payload,
                    std::function<bool(int, int)> const& incident)
      : types_(std::move(types)), type_of_(std::move(type_of)),
        payload_(std::move(payload)) {
    init_tables();
    int const m = size();
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (type_of_[i] != type_of_[j] && incident(i, j)) link(i, j);
  }

  IncidenceGeometry(std::vector<int> types, std::vector<int> type_of,
                    std::vector<std::pair<int, int>> const& edges)
      : types_(std::move(types)), type_of_(std::move(type_of)) {
    init_tables();
    for (auto [i, j] : edges) {
      if (i == j) continue;
      if (i < 0 || j < 0 || i >= size() || j >= size())
        throw usage_error("edge refers to a missing object");
      if (type_of_[i] == type_of_[j])
        throw usage_error("incident objects must have distinct types");
      link(i, j);
    }
  }

  int size() const noexcept { return static_cast<int>(type_of_.size()); }
  int rank() const noexcept { return static_cast<int>(types_.size()); }
  std::vector<int> const& types() const noexcept { return types_; }
  int type(int obj) const { return type_of_[obj]; }
  int type_pos(int t) const {
    auto it = std::lower_bound(types_.begin(), types_.end(), t);
    if (it == types_.end() || *it != t) throw usage_error("unknown type " + std::to_string(t));
    return static_cast<int>(it - types_.begin());
  }
  bool has_payload() const noexcept { return !payload_.empty(); }
  Subspace const& payload(int obj) const { return payload_.at(obj); }
  std::vector<Subspace> const& payloads() const noexcept { return payload_; }

  /// Index of each object in the geometry this one was cut from.
  int origin(int obj) const { return origin_.empty() ? obj : origin_[obj]; }
  std::vector<int> const& origins() const noexcept { return origin_; }

  bool incident(int a, int b) const { return a == b || adj_[a].test(b); }
  Bitset const& neighbours(int a) const { return adj_[a]; }
  Bitset const& of_type_set(int t) const { return by_type_[type_pos(t)]; }
  std::vector<int> of_type(int t) const {
    std::vector<int> out;
    of_type_set(t).for_each([&](std::size_t i) { out.push_back(static_cast<int>(i)); });
    return out;
  }
  std::size_t count_of_type(int t) const { return of_type_set(t).count(); }
  Bitset all() const {
    Bitset b(size());
    for (int i = 0; i < size(); ++i) b.set(i);
    return b;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < size(); ++i)
      adj_[i].for_each([&](std::size_t j) {
        if (static_cast<int>(j) > i) out.emplace_back(i, static_cast<int>(j));
      });
    return out;
  }

  bool is_flag(Flag const& f) const {
    for (std::size_t a = 0; a < f.size(); ++a) {
      if (f[a] < 0 || f[a] >= size()) return false;
      for (std::size_t b = a + 1; b < f.size(); ++b)
        if (f[a] == f[b] || !adj_[f[a]].test(f[b])) return false;
    }
    return true;
  }

  /// Objects incident to every member of f and not in f.
  Bitset residue_set(Flag const& f) const {
    Bitset b = all();
    for (int x : f) {
      b &= adj_[x];
    }
    return b;
  }

  /// Induced geometry on residue_set(f) over the cotype set.
  IncidenceGeometry residue(Flag const& f) const {
    if (!is_flag(f)) throw usage_error("residue requested for a non-flag");
    std::vector<bool> used(types_.size(), false);
    for (int x : f) used[type_pos(type_of_[x])] = true;
    std::vector<int> cotypes;
    for (std::size_t k = 0; k < types_.size(); ++k)
      if (!used[k]) cotypes.push_back(types_[k]);
    return induced(residue_set(f), cotypes);
  }

  /// Sub-geometry on the objects in `keep`, over `sub_types`.
  IncidenceGeometry induced(Bitset const& keep, std::vector<int> sub_types) const {
    IncidenceGeometry g;
    g.types_ = std::move(sub_types);
    std::vector<int> local(size(), -1);
    keep.for_each([&](std::size_t i) {
      local[i] = static_cast<int>(g.type_of_.size());
      g.type_of_.push_back(type_of_[i]);
      g.origin_.push_back(origin(static_cast<int>(i)));
      if (has_payload()) g.payload_.push_back(payload_[i]);
    });
    g.init_tables();
    keep.for_each([&](std::size_t i) {
      (adj_[i] & keep).for_each([&](std::size_t j) {
        if (j > i) g.link(local[i], local[j]);
      });
    });
    return g;
  }

  /// Visits every flag (including the empty one) once, in increasing type order.
  /// Return false from `visit` to skip the flag's extensions.
  void for_each_flag(std::function<bool(Flag const&, Bitset const&)> const& visit) const {
    Flag f;
    Bitset cand = all();
    flag_dfs(0, f, cand, visit);
  }

  /// Visits every chamber; returns how many were seen.
  std::uint64_t for_each_chamber(std::function<void(Flag const&)> const& visit) const {
    std::uint64_t count = 0;
    Flag f;
    std::function<void(int, Bitset const&)> rec = [&](int k, Bitset const& cand) {
      if (k == rank()) {
        ++count;
        if (visit) visit(f);
        return;
      }
      Bitset here = cand & by_type_[k];
      here.for_each([&](std::size_t x) {
        f.push_back(static_cast<int>(x));
        rec(k + 1, cand & adj_[x]);
        f.pop_back();
      });
    };
    rec(0, all());
    return count;
  }

  std::uint64_t count_chambers() const { return for_each_chamber(nullptr); }

  /// Every flag lies in a chamber: each flag meets every missing type in its residue.
  bool is_transversal() const {
    if (rank() == 0) return true;
    for (auto const& t : by_type_)
      if (t.none()) return false;
    bool ok = true;
    for_each_flag([&](Flag const& f, Bitset const& cand) {
      if (!ok) return false;
      std::vector<bool> used(types_.size(), false);
      for (int x : f) used[type_pos(type_of_[x])] = true;
      for (std::size_t k = 0; k < types_.size(); ++k)
        if (!used[k] && !cand.intersects(by_type_[k])) {
          ok = false;
          return false;
        }
      return true;
    });
    return ok;
  }

  /// Connectivity of the incidence graph restricted to `within`; empty sets are not connected.
  bool is_connected_on(Bitset const& within) const {
    std::size_t const start = within.first();
    if (start >= within.size()) return false;
    Bitset seen(size());
    seen.set(start);
    Bitset frontier = seen;
    while (frontier.any()) {
      Bitset next(size());
      frontier.for_each([&](std::size_t x) { next |= adj_[x]; });
      next &= within;
      next.subtract(seen);
      seen |= next;
      frontier = std::move(next);
    }
    return seen == within;
  }

  bool is_connected() const { return is_connected_on(all()); }

  /// Every residue of rank at least two (the whole geometry included) is connected.
  bool is_residually_connected() const {
    bool ok = true;
    for_each_flag([&](Flag const& f, Bitset const& cand) {
      if (!ok) return false;
      if (rank() - static_cast<int>(f.size()) < 2) return false;
      if (!is_connected_on(cand)) ok = false;
      return ok;
    });
    return ok;
  }

  /// For type positions i<j<k: X*Y and Y*Z imply X*Z.
  bool has_string_diagram() const {
    int const r = rank();
    for (int j = 1; j + 1 < r; ++j)
      for (int y : positions_of(j))
        for (int i = 0; i < j; ++i) {
          Bitset xs = adj_[y] & by_type_[i];
          for (int k = j + 1; k < r; ++k) {
            Bitset zs = adj_[y] & by_type_[k];
            bool ok = true;
            xs.for_each([&](std::size_t x) {
              if (ok && !zs.is_subset_of(adj_[x])) ok = false;
            });
            if (!ok) return false;
          }
        }
    return true;
  }

  /// Counts of incident objects per type position.
  std::vector<int> degree_signature(int obj) const {
    std::vector<int> sig(types_.size());
    for (std::size_t k = 0; k < types_.size(); ++k)
      sig[k] = static_cast<int>(adj_[obj].intersection_count(by_type_[k]));
    return sig;
  }

 private:
  void init_tables() {
    if (!std::is_sorted(types_.begin(), types_.end()) ||
        std::adjacent_find(types_.begin(), types_.end()) != types_.end())
      throw usage_error("type set must be strictly increasing");
    int const m = size();
    if (!payload_.empty() && static_cast<int>(payload_.size()) != m)
      throw usage_error("payload count does not match object count");
    adj_.assign(m, Bitset(m));
    by_type_.assign(types_.size(), Bitset(m));
    for (int i = 0; i < m; ++i) by_type_[type_pos(type_of_[i])].set(i);
  }

  void link(int i, int j) {
    adj_[i].set(j);
    adj_[j].set(i);
  }

  std::vector<int> positions_of(int k) const {
    std::vector<int> out;
    by_type_[k].for_each([&](std::size_t i) { out.push_back(static_cast<int>(i)); });
    return out;
  }

  void flag_dfs(int from_pos, Flag& f, Bitset const& cand,
                std::function<bool(Flag const&, Bitset const&)> const& visit) const {
    if (!visit(f, cand)) return;
    for (int k = from_pos; k < rank(); ++k) {
      Bitset here = cand & by_type_[k];
      here.for_each([&](std::size_t x) {
        f.push_back(static_cast<int>(x));
        flag_dfs(k + 1, f, cand & adj_[x], visit);
        f.pop_back();
      });
    }
  }

  std::vector<int> types_;
  std::vector<int> type_of_;
  std::vector<Subspace> payload_;
  std::vector<Bitset> adj_;
  std::vector<Bitset> by_type_;
  std::vector<int> origin_;
};

/// Points adjacent when some line-type object is incident with both.
struct ShadowGraph {
  std::vector<int> points;    // geometry indices
  std::vector<Bitset> adj;    // over positions in `points`
};

inline ShadowGraph shadow_graph(IncidenceGeometry const& g, int point_type, int line_type) {
  ShadowGraph sg;
  sg.points = g.of_type(point_type);
  int const m = static_cast<int>(sg.points.size());
  std::vector<int> local(g.size(), -1);
  for (int i = 0; i < m; ++i) local[sg.points[i]] = i;
  sg.adj.assign(m, Bitset(m));
  for (int l : g.of_type(line_type)) {
    std::vector<int> on;
    (g.neighbours(l) & g.of_type_set(point_type)).for_each([&](std::size_t x) {
      on.push_back(local[x]);
    });
    for (std::size_t a = 0; a < on.size(); ++a)
      for (std::size_t b = a + 1; b < on.size(); ++b) {
        sg.adj[on[a]].set(on[b]);
        sg.adj[on[b]].set(on[a]);
      }
  }
  return sg;
}

/// BFS distances from `src`; -1 marks unreachable vertices.
inline std::vector<int> bfs_distances(std::vector<Bitset> const& adj, int src) {
  std::vector<int> d(adj.size(), -1);
  std::queue<int> q;
  d[src] = 0;
  q.push(src);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    adj[x].for_each([&](std::size_t y) {
      if (d[y] < 0) {
        d[y] = d[x] + 1;
        q.push(static_cast<int>(y));
      }
    });
  }
  return d;
}

/// Graph diameter, or nullopt when the graph is disconnected (infinite diameter).
inline std::optional<int> diameter(std::vector<Bitset> const& adj) {
  int best = 0;
  for (std::size_t s = 0; s < adj.size(); ++s) {
    auto d = bfs_distances(adj, static_cast<int>(s));
    for (int x : d) {
      if (x < 0) return std::nullopt;
      best = std::max(best, x);
    }
  }
  return best;
}

inline bool is_complete(std::vector<Bitset> const& adj) {
  for (std::size_t i = 0; i < adj.size(); ++i)
    if (adj[i].count() + 1 != adj.size()) return false;
  return true;
}

enum class SearchStatus { found, none, budget_exhausted };

struct IsomorphismResult {
  SearchStatus status = SearchStatus::none;
  std::vector<int> map;  // object of a -> object of b
};

/// Exact backtracking search for an incidence isomorphism a -> b sending the k-th type of a
/// to the k-th type of b.
inline IsomorphismResult find_isomorphism(IncidenceGeometry const& a, IncidenceGeometry const& b,
                                          std::uint64_t node_budget = 50'000'000) {
  IsomorphismResult res;
  if (a.size() != b.size() || a.rank() != b.rank()) return res;
  int const m = a.size();
  for (int k = 0; k < a.rank(); ++k)
    if (a.count_of_type(a.types()[k]) != b.count_of_type(b.types()[k])) return res;

  std::map<std::pair<int, std::vector<int>>, Bitset> classes;
  for (int y = 0; y < m; ++y) {
    auto key = std::make_pair(b.type_pos(b.type(y)), b.degree_signature(y));
    auto it = classes.try_emplace(key, Bitset(m)).first;
    it->second.set(y);
  }
  std::vector<Bitset> initial(m);
  for (int x = 0; x < m; ++x) {
    auto it = classes.find({a.type_pos(a.type(x)), a.degree_signature(x)});
    if (it == classes.end()) return res;
    initial[x] = it->second;
  }

  // Visit order: BFS through the incidence graph so every object after the first in its
  // component already has a mapped neighbour.
  std::vector<int> order;
  std::vector<bool> placed(m, false);
  for (int s = 0; s < m; ++s) {
    if (placed[s]) continue;
    std::queue<int> q;
    q.push(s);
    placed[s] = true;
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      order.push_back(x);
      a.neighbours(x).for_each([&](std::size_t y) {
        if (!placed[y]) {
          placed[y] = true;
          q.push(static_cast<int>(y));
        }
      });
    }
  }

  std::vector<int> phi(m, -1);
  Bitset mapped_a(m), image(m);
  std::uint64_t nodes = 0;
  bool exhausted = false;
  std::function<bool(int)> rec = [&](int pos) -> bool {
    if (pos == m) return true;
    if (++nodes > node_budget) {
      exhausted = true;
      return false;
    }
    int const x = order[pos];
    Bitset cand = initial[x];
    cand.subtract(image);
    Bitset nb = a.neighbours(x) & mapped_a;
    std::size_t const need = nb.count();
    nb.for_each([&](std::size_t xp) { cand &= b.neighbours(phi[xp]); });
    bool done = false;
    cand.for_each([&](std::size_t y) {
      if (done || exhausted) return;
      if (b.neighbours(y).intersection_count(image) != need) return;
      phi[x] = static_cast<int>(y);
      mapped_a.set(x);
      image.set(y);
      if (rec(pos + 1)) {
        done = true;
        return;
      }
      phi[x] = -1;
      mapped_a.reset(x);
      image.reset(y);
    });
    return done;
  };
  if (rec(0)) {
    res.status = SearchStatus::found;
    res.map = phi;
  } else {
    res.status = exhausted ? SearchStatus::budget_exhausted : SearchStatus::none;
  }
  return res;
}

/// Checks that `map` is a bijection a -> b respecting type order and incidence both ways.
inline bool is_isomorphism(IncidenceGeometry const& a, IncidenceGeometry const& b,
                           std::vector<int> const& map) {
  if (a.size() != b.size() || a.rank() != b.rank() ||
      static_cast<int>(map.size()) != a.size())
    return false;
  std::vector<bool> hit(b.size(), false);
  for (int x = 0; x < a.size(); ++x) {
    int y = map[x];
    if (y < 0 || y >= b.size() || hit[y]) return false;
    hit[y] = true;
    if (a.type_pos(a.type(x)) != b.type_pos(b.type(y))) return false;
  }
  for (int x = 0; x < a.size(); ++x) {
    if (a.neighbours(x).count() != b.neighbours(map[x]).count()) return false;
    bool ok = true;
    a.neighbours(x).for_each([&](std::size_t z) {
      if (ok && !b.incident(map[x], map[z])) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace amlab

#endif  // AMLAB_GEOMETRY_HPP
