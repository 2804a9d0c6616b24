#ifndef AMLAB_CONCRETE_GROUP_HPP
#define AMLAB_CONCRETE_GROUP_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "amlab/coset_enum.hpp"
#include "amlab/errors.hpp"
#include "amlab/field.hpp"
#include "amlab/fp_group.hpp"
#include "amlab/perm_group.hpp"

namespace amlab {

/// A finite matrix group with all of its elements listed. Element 0 is the identity and
/// elements appear in breadth-first order from it, so word(x) is a shortest word in the
/// generators and their inverses.
class ConcreteGroup {
 public:
  ConcreteGroup() = default;

  ConcreteGroup(std::vector<Mat> gens, std::size_t limit = 2'000'000) : gens_(std::move(gens)) {
    if (gens_.empty()) throw usage_error("a concrete group needs at least one generator");
    Mat const& g0 = gens_[0];
    if (g0.rows() != g0.cols()) throw usage_error("generators must be square");
    for (auto const& g : gens_)
      if (g.rows() != g0.rows() || g.cols() != g0.cols() || !(g.field() == g0.field()))
        throw usage_error("generators have mismatched shapes");
    for (auto const& g : gens_) inv_.push_back(inverse(g));
    add(Mat::identity(g0.field(), g0.rows()), -1, 0);
    for (std::size_t i = 0; i < elems_.size(); ++i)
      for (int k = 1; k <= ngens(); ++k)
        for (int letter : {k, -k}) {
          Mat y = elems_[i] * (letter > 0 ? gens_[k - 1] : inv_[k - 1]);
          if (index_.count(y)) continue;
          if (elems_.size() >= limit) throw budget_exceeded("group is larger than the element limit");
          add(std::move(y), static_cast<int>(i), letter);
        }
  }

  int ngens() const noexcept { return static_cast<int>(gens_.size()); }
  std::vector<Mat> const& generators() const noexcept { return gens_; }
  std::size_t order() const noexcept { return elems_.size(); }
  std::vector<Mat> const& elements() const noexcept { return elems_; }
  Mat const& element(int id) const { return elems_.at(id); }
  int dim() const { return elems_.at(0).rows(); }
  PrimeField const& field() const { return elems_.at(0).field(); }

  int find(Mat const& m) const {
    auto it = index_.find(m);
    return it == index_.end() ? -1 : it->second;
  }
  bool contains(Mat const& m) const { return index_.count(m) > 0; }
  int mul(int a, int b) const {
    int r = find(elems_.at(a) * elems_.at(b));
    if (r < 0) throw invariant_violation("product left the group");
    return r;
  }

  /// Shortest word for an element, letters +-k for generator k.
  Word word(int id) const {
    Word w;
    for (int x = id; parent_[x] >= 0; x = parent_[x]) w.push_back(letter_[x]);
    std::reverse(w.begin(), w.end());
    return w;
  }
  Word factorize(Mat const& m) const {
    int id = find(m);
    if (id < 0) throw usage_error("matrix is not in the group");
    return word(id);
  }
  Mat evaluate_word(Word const& w) const {
    Mat acc = elems_.at(0);
    for (int x : w) acc = acc * (x > 0 ? gens_[x - 1] : inv_[-x - 1]);
    return acc;
  }

  bool is_abelian() const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      for (std::size_t j = i + 1; j < gens_.size(); ++j)
        if (!(gens_[i] * gens_[j] == gens_[j] * gens_[i])) return false;
    return true;
  }

  /// Elements commuting with every generator.
  std::vector<Mat> center() const {
    std::vector<Mat> z;
    for (auto const& x : elems_) {
      bool central = true;
      for (auto const& g : gens_) central = central && x * g == g * x;
      if (central) z.push_back(x);
    }
    return z;
  }

  /// Largest order of an element.
  std::size_t exponent_bound() const {
    std::size_t best = 1;
    Mat const& e = elems_.at(0);
    for (auto const& x : elems_) {
      std::size_t k = 1;
      for (Mat y = x; !(y == e); y = y * x) ++k;
      best = std::max(best, k);
    }
    return best;
  }

 private:
  void add(Mat m, int parent, int letter) {
    index_.emplace(m, static_cast<int>(elems_.size()));
    elems_.push_back(std::move(m));
    parent_.push_back(parent);
    letter_.push_back(letter);
  }

  std::vector<Mat> gens_, inv_;
  std::vector<Mat> elems_;
  std::unordered_map<Mat, int> index_;
  std::vector<int> parent_;
  std::vector<int> letter_;
};

/// Matrices in both groups.
inline std::vector<Mat> intersection(ConcreteGroup const& a, ConcreteGroup const& b) {
  std::vector<Mat> out;
  for (auto const& x : a.elements())
    if (b.contains(x)) out.push_back(x);
  return out;
}

inline bool is_subgroup(ConcreteGroup const& a, ConcreteGroup const& b) {
  for (auto const& g : a.generators())
    if (!b.contains(g)) return false;
  return true;
}

/// The subgroup of `g` generated by a set of its elements, as a list of element ids.
inline std::vector<int> subgroup_closure(ConcreteGroup const& g, std::vector<int> const& gens) {
  std::vector<bool> seen(g.order(), false);
  std::vector<int> out{0};
  seen[0] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int s : gens) {
      int y = g.mul(out[i], s);
      if (!seen[y]) {
        seen[y] = true;
        out.push_back(y);
      }
    }
  return out;
}

/// Greedy small generating set: repeatedly adds the element that enlarges the generated
/// subgroup the most, preferring earlier elements on ties. Certified by closure.
inline std::vector<Mat> reduced_generators(ConcreteGroup const& g) {
  std::size_t const n = g.order();
  if (n == 1) return {g.element(0)};
  // Right-multiplication table restricted to the candidates used so far keeps this to
  // O(n^2) products overall.
  std::vector<std::vector<int>> right(n);
  auto column = [&](int x) -> std::vector<int> const& {
    if (right[x].empty()) {
      right[x].resize(n);
      for (std::size_t h = 0; h < n; ++h) right[x][h] = g.mul(static_cast<int>(h), x);
    }
    return right[x];
  };
  std::vector<int> chosen;
  std::vector<bool> in_h(n, false);
  in_h[0] = true;
  std::size_t h_size = 1;
  auto closure_size = [&](std::vector<int> const& gens, std::vector<bool>* mark) {
    std::vector<bool> seen(n, false);
    std::vector<int> q{0};
    seen[0] = true;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (int s : gens) {
        int y = column(s)[q[i]];
        if (!seen[y]) {
          seen[y] = true;
          q.push_back(y);
        }
      }
    if (mark) *mark = std::move(seen);
    return q.size();
  };
  while (h_size < n) {
    int best = -1;
    std::size_t best_size = h_size;
    for (std::size_t x = 1; x < n && best_size < n; ++x) {
      if (in_h[x]) continue;
      auto trial = chosen;
      trial.push_back(static_cast<int>(x));
      std::size_t s = closure_size(trial, nullptr);
      if (s > best_size) {
        best_size = s;
        best = static_cast<int>(x);
      }
    }
    if (best < 0) throw invariant_violation("generator reduction made no progress");
    chosen.push_back(best);
    h_size = closure_size(chosen, &in_h);
  }
  std::vector<Mat> out;
  for (int x : chosen) out.push_back(g.element(x));
  return out;
}

struct CertifiedPresentation {
  Presentation pres;
  std::size_t order = 0;       // |G|, equal to the enumerated index over the trivial subgroup
  std::size_t candidates = 0;  // Schreier relators available
};

/// A presentation of `g` on its own generators, certified: every relator evaluates to the
/// identity and coset enumeration over the trivial subgroup returns |g| cosets. Relators are
/// drawn from the Schreier relators of the breadth-first tree, shortest first, and then
/// pruned while the enumeration still certifies.
inline CertifiedPresentation presentation_from_group(ConcreteGroup const& g) {
  std::size_t const n = g.order();
  int const k = g.ngens();
  std::vector<Word> cands;
  std::unordered_set<Word, WordHash> seen;
  auto push = [&](Word w) {
    w = cyclic_reduce(w);
    if (w.empty()) return;
    Word c = canonical_cyclic(w);
    Word ci = canonical_cyclic(inverse(w));
    if (seen.count(c) || seen.count(ci)) return;
    seen.insert(c);
    cands.push_back(std::move(w));
  };
  for (std::size_t x = 0; x < n; ++x)
    for (int s = 1; s <= k; ++s) {
      int y = g.find(g.element(static_cast<int>(x)) * g.generators()[s - 1]);
      push(concat(concat(g.word(static_cast<int>(x)), {s}), inverse(g.word(y))));
    }
  std::stable_sort(cands.begin(), cands.end(),
                   [](Word const& a, Word const& b) { return a.size() < b.size(); });

  CosetOptions opt;
  opt.max_cosets = std::max<std::size_t>(20000, 64 * n);
  auto certifies = [&](std::vector<Word> const& rels) {
    Presentation p{k, rels};
    CosetTable t = todd_coxeter(p, {}, opt);
    return t.complete() && static_cast<std::size_t>(t.cosets) == n;
  };

  std::vector<Word> rels;
  std::size_t used = 0, batch = 4;
  while (true) {
    std::size_t upto = std::min(cands.size(), used + batch);
    rels.insert(rels.end(), cands.begin() + static_cast<std::ptrdiff_t>(used),
                cands.begin() + static_cast<std::ptrdiff_t>(upto));
    used = upto;
    if (certifies(rels)) break;
    if (used == cands.size()) throw invariant_violation("Schreier relators failed to certify the group");
    batch *= 2;
  }
  for (std::size_t i = rels.size(); i-- > 0;) {
    std::vector<Word> trial = rels;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    if (certifies(trial)) rels = std::move(trial);
  }
  for (auto const& r : rels)
    if (!(g.evaluate_word(r) == g.element(0))) throw invariant_violation("relator does not hold");
  return {Presentation{k, rels}, n, cands.size()};
}

/// Permutation action of invertible matrices on the nonzero vectors (faithful).
inline Perm perm_on_vectors(Mat const& m) {
  PrimeField const& f = m.field();
  int const n = m.rows();
  std::size_t const count = vector_count(f, n) - 1;
  Perm p(count);
  for (std::size_t v = 1; v <= count; ++v)
    p[v - 1] = static_cast<std::uint32_t>(vector_index(f, m.apply(vector_from_index(f, n, v))) - 1);
  return p;
}

/// Order of the group generated by the matrices, via a stabilizer chain on vectors.
inline std::uint64_t matrix_group_order(std::vector<Mat> const& mats) {
  if (mats.empty()) return 1;
  std::vector<Perm> perms;
  for (auto const& m : mats) perms.push_back(perm_on_vectors(m));
  return PermGroup(perms[0].size(), perms).order();
}

/// Embeds a k x k block into the identity of size n at offset `at`.
inline Mat embed_block(Mat const& block, int n, int at) {
  Mat m = Mat::identity(block.field(), n);
  for (int i = 0; i < block.rows(); ++i)
    for (int j = 0; j < block.cols(); ++j) m(at + i, at + j) = block(i, j);
  return m;
}

}  // namespace amlab

#endif  // AMLAB_CONCRETE_GROUP_HPP
