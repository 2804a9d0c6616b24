#ifndef AMLAB_PERM_GROUP_HPP
#define AMLAB_PERM_GROUP_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <unordered_set>
#include <vector>

#include "amlab/errors.hpp"

namespace amlab {

using Perm = std::vector<std::uint32_t>;

inline Perm perm_identity(std::size_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

/// Product acting on the right: x^(ab) = (x^a)^b.
inline Perm perm_mul(Perm const& a, Perm const& b) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

inline Perm perm_inverse(Perm const& a) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<std::uint32_t>(i);
  return r;
}

inline bool perm_is_identity(Perm const& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != i) return false;
  return true;
}

inline void perm_validate(Perm const& a) {
  std::vector<bool> seen(a.size(), false);
  for (auto x : a) {
    if (x >= a.size() || seen[x]) throw usage_error("not a permutation");
    seen[x] = true;
  }
}

/// Permutation group with a stabilizer chain built by the deterministic Schreier-Sims
/// algorithm. Transversals are stored explicitly.
class PermGroup {
 public:
  PermGroup() = default;

  /// `base_prefix` fixes the first base points; further points are chosen as the smallest
  /// point moved by the remaining strong generators.
  PermGroup(std::size_t degree, std::vector<Perm> gens, std::vector<std::uint32_t> base_prefix = {})
      : degree_(degree) {
    for (auto& g : gens) {
      if (g.size() != degree) throw usage_error("generator degree mismatch");
      perm_validate(g);
      if (!perm_is_identity(g)) gens_.push_back(std::move(g));
    }
    std::unordered_set<std::uint32_t> seen;
    for (auto b : base_prefix) {
      if (b >= degree) throw usage_error("base point out of range");
      if (!seen.insert(b).second) throw usage_error("repeated base point");
    }
    build(base_prefix);
  }

  std::size_t degree() const noexcept { return degree_; }
  std::vector<Perm> const& generators() const noexcept { return gens_; }
  std::size_t base_length() const noexcept { return levels_.size(); }
  std::vector<std::uint32_t> base() const {
    std::vector<std::uint32_t> b;
    for (auto const& l : levels_) b.push_back(l.point);
    return b;
  }
  std::vector<std::size_t> orbit_lengths() const {
    std::vector<std::size_t> o;
    for (auto const& l : levels_) o.push_back(l.orbit.size());
    return o;
  }

  unsigned __int128 order128() const {
    unsigned __int128 o = 1;
    for (auto const& l : levels_) o *= l.orbit.size();
    return o;
  }
  std::uint64_t order() const {
    unsigned __int128 o = order128();
    if (o > static_cast<unsigned __int128>(UINT64_MAX)) throw invariant_violation("group order overflow");
    return static_cast<std::uint64_t>(o);
  }

  bool contains(Perm const& g) const {
    if (g.size() != degree_) return false;
    auto [r, lvl] = strip(g, 0);
    return lvl == levels_.size() && perm_is_identity(r);
  }

  /// Strong generators of the pointwise stabilizer of the first k base points.
  std::vector<Perm> stabilizer_generators(std::size_t k) const {
    if (k >= levels_.size()) return {};
    return levels_[k].gens;
  }
  /// Order of the pointwise stabilizer of the first k base points.
  std::uint64_t stabilizer_order(std::size_t k) const {
    unsigned __int128 o = 1;
    for (std::size_t i = k; i < levels_.size(); ++i) o *= levels_[i].orbit.size();
    return static_cast<std::uint64_t>(o);
  }

  /// Orbit of a point under the generators, in discovery order.
  std::vector<std::uint32_t> orbit(std::uint32_t x) const { return orbit_of(x, gens_); }

  /// An element of the group built from the chain: the product of the transversal elements
  /// selected by `choice` (one index per level, taken modulo the orbit length).
  Perm element(std::vector<std::size_t> const& choice) const {
    Perm g = perm_identity(degree_);
    for (std::size_t i = levels_.size(); i-- > 0;) {
      auto const& l = levels_[i];
      std::size_t c = i < choice.size() ? choice[i] % l.orbit.size() : 0;
      g = perm_mul(g, l.trans[l.orbit[c]]);
    }
    return g;
  }

  /// Pointwise stabilizer of a sequence of points as a new group (built with that base).
  PermGroup pointwise_stabilizer(std::vector<std::uint32_t> const& pts) const {
    PermGroup rebased(degree_, gens_, pts);
    return PermGroup(degree_, rebased.stabilizer_generators(pts.size()));
  }

 private:
  struct Level {
    std::uint32_t point = 0;
    std::vector<Perm> gens;
    std::vector<std::uint32_t> orbit;
    std::vector<Perm> trans;  // indexed by point; empty when not in the orbit
  };

  std::vector<std::uint32_t> orbit_of(std::uint32_t x, std::vector<Perm> const& gens) const {
    std::vector<bool> seen(degree_, false);
    std::vector<std::uint32_t> orb{x};
    seen[x] = true;
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (auto const& g : gens) {
        auto y = g[orb[i]];
        if (!seen[y]) {
          seen[y] = true;
          orb.push_back(y);
        }
      }
    return orb;
  }

  void rebuild_orbit(Level& l) {
    l.trans.assign(degree_, Perm{});
    l.orbit.assign(1, l.point);
    l.trans[l.point] = perm_identity(degree_);
    for (std::size_t i = 0; i < l.orbit.size(); ++i) {
      auto x = l.orbit[i];
      for (auto const& g : l.gens) {
        auto y = g[x];
        if (l.trans[y].empty()) {
          l.trans[y] = perm_mul(l.trans[x], g);
          l.orbit.push_back(y);
        }
      }
    }
  }

  std::pair<Perm, std::size_t> strip(Perm g, std::size_t from) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      auto const& l = levels_[i];
      auto y = g[l.point];
      if (l.trans[y].empty()) return {g, i};
      g = perm_mul(g, perm_inverse(l.trans[y]));
    }
    return {g, levels_.size()};
  }

  std::optional<std::uint32_t> first_moved(Perm const& g) const {
    for (std::uint32_t x = 0; x < degree_; ++x)
      if (g[x] != x) return x;
    return std::nullopt;
  }

  void add_level(std::uint32_t pt) {
    Level l;
    l.point = pt;
    levels_.push_back(std::move(l));
  }

  void build(std::vector<std::uint32_t> const& prefix) {
    levels_.clear();
    for (auto b : prefix) add_level(b);
    if (gens_.empty()) {
      for (auto& l : levels_) rebuild_orbit(l);
      return;
    }
    // Every generator must move some base point.
    for (auto const& g : gens_) {
      bool moves = false;
      for (auto const& l : levels_) moves = moves || g[l.point] != l.point;
      if (!moves) add_level(*first_moved(g));
    }
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      for (auto const& g : gens_) {
        bool fixes = true;
        for (std::size_t j = 0; j < i; ++j) fixes = fixes && g[levels_[j].point] == levels_[j].point;
        if (fixes) levels_[i].gens.push_back(g);
      }
      rebuild_orbit(levels_[i]);
    }
    // Deterministic Schreier-Sims: test Schreier generators level by level from the bottom.
    std::size_t i = levels_.size();
    while (i-- > 0) {
      bool restart = false;
      for (std::size_t oi = 0; oi < levels_[i].orbit.size() && !restart; ++oi) {
        std::uint32_t const x = levels_[i].orbit[oi];
        for (std::size_t gi = 0; gi < levels_[i].gens.size() && !restart; ++gi) {
          Perm const& s = levels_[i].gens[gi];
          Perm const& ux = levels_[i].trans[x];
          Perm const& uxs = levels_[i].trans[s[x]];
          Perm h = perm_mul(perm_mul(ux, s), perm_inverse(uxs));
          auto [r, j] = strip(std::move(h), i + 1);
          if (j == levels_.size() && perm_is_identity(r)) continue;
          if (j == levels_.size()) add_level(*first_moved(r));
          for (std::size_t l = i + 1; l <= j; ++l) {
            levels_[l].gens.push_back(r);
            rebuild_orbit(levels_[l]);
          }
          i = j + 1;  // resume checking at level j after the decrement
          restart = true;
        }
      }
    }
  }

  std::size_t degree_ = 0;
  std::vector<Perm> gens_;
  std::vector<Level> levels_;
};

}  // namespace amlab

#endif  // AMLAB_PERM_GROUP_HPP
