#ifndef AMLAB_COSET_ENUM_HPP
#define AMLAB_COSET_ENUM_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "amlab/errors.hpp"
#include "amlab/fp_group.hpp"

namespace amlab {

enum class CosetStatus { complete, incomplete };
enum class Strategy { felsch, hlt };

struct CosetTable {
  CosetStatus status = CosetStatus::incomplete;
  int ngens = 0;
  int cosets = 0;                // live cosets (final index when complete)
  std::vector<int> table;        // cosets x (2 * ngens); column 2(g-1) is g, 2(g-1)+1 is g^-1
  std::size_t max_live = 0;      // peak number of cosets held at once
  std::size_t total_defined = 0;

  bool complete() const { return status == CosetStatus::complete; }
  int columns() const { return 2 * ngens; }
  int act(int coset, int letter) const {
    int col = letter > 0 ? 2 * (letter - 1) : 2 * (-letter - 1) + 1;
    return table[static_cast<std::size_t>(coset) * columns() + col];
  }
  int trace(int coset, Word const& w) const {
    for (int x : w) coset = act(coset, x);
    return coset;
  }
};

struct CosetOptions {
  std::size_t max_cosets = 1'000'000;
  Strategy strategy = Strategy::felsch;
};

namespace detail {

class ToddCoxeter {
 public:
  ToddCoxeter(Presentation const& p, std::vector<Word> const& subgroup, CosetOptions const& opt)
      : ngens_(p.ngens), cols_(2 * p.ngens), opt_(opt) {
    p.validate();
    for (auto const& r : p.relators) {
      Word w = cyclic_reduce(r);
      if (!w.empty()) rels_.push_back(to_cols(w));
    }
    for (auto const& h : subgroup) {
      for (int x : h)
        if (x == 0 || std::abs(x) > ngens_) throw usage_error("subgroup word out of range");
      Word w = free_reduce(h);
      if (!w.empty()) sub_.push_back(to_cols(w));
    }
    // Cyclic conjugates of relators and their inverses, bucketed by first column.
    conj_.assign(cols_, {});
    std::set<std::vector<int>> seen;
    for (auto const& r : rels_) {
      for (auto const& base : {r, inverse_cols(r)}) {
        std::size_t const n = base.size();
        for (std::size_t s = 0; s < n; ++s) {
          std::vector<int> rot(base.begin() + static_cast<std::ptrdiff_t>(s), base.end());
          rot.insert(rot.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(s));
          if (seen.insert(rot).second) conj_[rot[0]].push_back(rot);
        }
      }
    }
    if (opt_.max_cosets < 1) throw usage_error("coset budget must be positive");
  }

  CosetTable run() {
    CosetTable out;
    out.ngens = ngens_;
    if (cols_ == 0) {
      out.status = CosetStatus::complete;
      out.cosets = 1;
      out.max_live = 1;
      return out;
    }
    capacity_ = opt_.max_cosets;
    table_.assign(std::min<std::size_t>(capacity_, 1024) * cols_, -1);
    parent_.assign(std::min<std::size_t>(capacity_, 1024), 0);
    alloc_ = 1;
    live_ = 1;
    parent_[0] = 0;
    bool ok = opt_.strategy == Strategy::felsch ? felsch() : hlt();
    out.max_live = max_live_;
    out.total_defined = defined_;
    if (!ok) {
      out.status = CosetStatus::incomplete;
      out.cosets = static_cast<int>(live_);
      return out;
    }
    standardize(out);
    out.status = CosetStatus::complete;
    return out;
  }

 private:
  static std::vector<int> inverse_cols(std::vector<int> const& w) {
    std::vector<int> r(w.rbegin(), w.rend());
    for (auto& c : r) c ^= 1;
    return r;
  }
  static std::vector<int> to_cols(Word const& w) {
    std::vector<int> c;
    for (int x : w) c.push_back(x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1);
    return c;
  }

  int& at(std::size_t c, int col) { return table_[c * cols_ + col]; }
  bool live(std::size_t c) const { return parent_[c] == static_cast<int>(c); }

  int rep(int c) {
    int r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      int nx = parent_[c];
      parent_[c] = r;
      c = nx;
    }
    return r;
  }

  // Ensures at least `need` free slots, compacting dead cosets if necessary; `track` is a
  // coset index held by the caller and is renumbered along with the table.
  bool reserve(std::size_t need, std::size_t& track) {
    if (alloc_ + need > capacity_ && live_ < alloc_)
      track = static_cast<std::size_t>(compact_and_map(static_cast<int>(track)));
    if (alloc_ + need > capacity_) return false;
    grow_storage(alloc_ + need);
    return true;
  }

  void grow_storage(std::size_t n) {
    std::size_t cur = parent_.size();
    if (n <= cur) return;
    std::size_t nc = std::min(capacity_, std::max(n, cur * 2));
    table_.resize(nc * cols_, -1);
    parent_.resize(nc, 0);
  }

  int define(int c, int col) {
    int d = static_cast<int>(alloc_++);
    parent_[d] = d;
    for (int k = 0; k < cols_; ++k) at(d, k) = -1;
    at(c, col) = d;
    at(d, col ^ 1) = c;
    ++live_;
    ++defined_;
    max_live_ = std::max(max_live_, live_);
    if (opt_.strategy == Strategy::felsch) deductions_.emplace_back(c, col);
    return d;
  }

  void merge(int k, int l, std::vector<int>& q) {
    int a = rep(k), b = rep(l);
    if (a == b) return;
    int mu = std::min(a, b), nu = std::max(a, b);
    parent_[nu] = mu;
    --live_;
    q.push_back(nu);
  }

  void coincidence(int a, int b) {
    std::vector<int> q;
    merge(a, b, q);
    for (std::size_t i = 0; i < q.size(); ++i) {
      int g = q[i];
      for (int x = 0; x < cols_; ++x) {
        int d = at(g, x);
        if (d < 0) continue;
        if (at(d, x ^ 1) == g) at(d, x ^ 1) = -1;
        int mu = rep(g), nu = rep(d);
        if (at(mu, x) >= 0) {
          merge(nu, at(mu, x), q);
        } else if (at(nu, x ^ 1) >= 0) {
          merge(mu, at(nu, x ^ 1), q);
        } else {
          at(mu, x) = nu;
          at(nu, x ^ 1) = mu;
          if (opt_.strategy == Strategy::felsch) deductions_.emplace_back(mu, x);
        }
      }
    }
  }

  // Felsch-style scan without definitions: may deduce one entry or find a coincidence.
  void scan(int a, std::vector<int> const& w) {
    int f = a, b = a;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    while (i <= j && at(f, w[i]) >= 0) f = at(f, w[i++]);
    if (i > j) {
      if (f != a) coincidence(f, a);
      return;
    }
    while (j >= i && at(b, w[j] ^ 1) >= 0) b = at(b, w[j--] ^ 1);
    if (j < i) {
      coincidence(f, b);
    } else if (i == j) {
      at(f, w[i]) = b;
      at(b, w[i] ^ 1) = f;
      deductions_.emplace_back(f, w[i]);
    }
  }

  // HLT scan that defines new cosets to close gaps; returns false when out of space.
  // The caller must have reserved w.size() free slots.
  void scan_and_fill(int a, std::vector<int> const& w) {
    int f = a, b = a;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    while (true) {
      while (i <= j && at(f, w[i]) >= 0) f = at(f, w[i++]);
      if (i > j) {
        if (f != a) coincidence(f, a);
        return;
      }
      while (j >= i && at(b, w[j] ^ 1) >= 0) b = at(b, w[j--] ^ 1);
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        at(f, w[i]) = b;
        at(b, w[i] ^ 1) = f;
        if (opt_.strategy == Strategy::felsch) deductions_.emplace_back(f, w[i]);
        return;
      }
      define(f, w[i]);
    }
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      auto [c, x] = deductions_.back();
      deductions_.pop_back();
      if (!live(c)) continue;
      for (auto const& w : conj_[x]) {
        scan(c, w);
        if (!live(c)) break;
      }
      if (!live(c)) continue;
      int d = at(c, x);
      if (d < 0 || !live(d)) continue;
      for (auto const& w : conj_[x ^ 1]) {
        scan(d, w);
        if (!live(d)) break;
      }
    }
  }

  // Scan every relator at every live coset until nothing changes (used after compaction and
  // as the final completeness certificate).
  bool full_pass_changes() {
    bool changed = false;
    for (std::size_t c = 0; c < alloc_; ++c) {
      if (!live(c)) continue;
      for (auto const& r : rels_) {
        std::size_t before_live = live_;
        std::size_t before_ded = deductions_.size();
        scan(static_cast<int>(c), r);
        if (live_ != before_live || deductions_.size() != before_ded) changed = true;
        process_deductions();
        if (!live(c)) break;
      }
    }
    return changed;
  }

  bool felsch() {
    for (auto const& h : sub_) {
      std::size_t base = 0;
      if (!reserve(h.size(), base)) return false;
      scan_and_fill(0, h);
      process_deductions();
    }
    std::size_t pos = 0;
    int col = 0;
    while (true) {
      // First live coset with an undefined entry, in coset then column order.
      bool found = false;
      while (pos < alloc_) {
        if (live(pos)) {
          for (; col < cols_; ++col)
            if (at(pos, col) < 0) {
              found = true;
              break;
            }
          if (found) break;
        }
        ++pos;
        col = 0;
      }
      if (!found) {
        // Re-verify from the beginning: coincidences can undefine entries behind the cursor.
        bool any = false;
        for (std::size_t c = 0; c < alloc_ && !any; ++c)
          if (live(c))
            for (int k = 0; k < cols_; ++k)
              if (at(c, k) < 0) {
                pos = c;
                col = k;
                any = true;
                break;
              }
        if (any) continue;
        if (full_pass_changes()) {
          pos = 0;
          col = 0;
          continue;
        }
        for (auto const& h : sub_) {
          int e = 0;
          for (int x : h) e = at(e, x);
          if (e != 0) {
            coincidence(e, 0);
            process_deductions();
            pos = 0;
            col = 0;
            any = true;
          }
        }
        if (any) continue;
        return true;
      }
      if (alloc_ >= capacity_) {
        if (live_ == alloc_) return false;
        std::size_t const keep_pos = pos;
        int const new_pos = compact_and_map(static_cast<int>(keep_pos));
        pos = static_cast<std::size_t>(new_pos);
        if (full_pass_changes()) {
          pos = 0;
          col = 0;
        }
        continue;
      }
      grow_storage(alloc_ + 1);
      define(static_cast<int>(pos), col);
      process_deductions();
    }
  }

  bool hlt() {
    for (auto const& h : sub_) {
      std::size_t base = 0;
      if (!reserve(h.size(), base)) return false;
      scan_and_fill(0, h);
    }
    std::size_t c = 0;
    while (c < alloc_) {
      if (live(c)) {
        for (auto const& r : rels_) {
          if (!reserve(r.size(), c)) return false;
          scan_and_fill(static_cast<int>(c), r);
          if (!live(c)) break;
        }
        if (live(c))
          for (int x = 0; x < cols_; ++x)
            if (at(c, x) < 0) {
              if (!reserve(1, c)) return false;
              define(static_cast<int>(c), x);
            }
      }
      ++c;
      if (c >= alloc_) {
        // Final sweep: subgroup words and relators must close everywhere.
        bool changed = false;
        for (std::size_t k = 0; k < alloc_ && !changed; ++k)
          if (live(k))
            for (int x = 0; x < cols_; ++x)
              if (at(k, x) < 0) changed = true;
        for (auto const& h : sub_) {
          if (changed) break;
          int e = 0;
          for (int x : h) e = at(e, x);
          if (e != 0) {
            coincidence(e, 0);
            changed = true;
          }
        }
        for (std::size_t k = 0; k < alloc_ && !changed; ++k) {
          if (!live(k)) continue;
          for (auto const& r : rels_) {
            int e = static_cast<int>(k);
            bool defined = true;
            for (int x : r) {
              e = at(e, x);
              if (e < 0) {
                defined = false;
                break;
              }
            }
            if (!defined || e != static_cast<int>(k)) changed = true;
          }
        }
        if (changed) c = 0;
      }
    }
    return true;
  }

  void compact() { compact_and_map(0); }


  // Renumbers live cosets densely, preserving order; returns the new index of `track`
  // (or of the first live coset after it).
  int compact_and_map(int track) {
    std::vector<int> nm(alloc_, -1);
    int k = 0;
    for (std::size_t c = 0; c < alloc_; ++c)
      if (live(c)) nm[c] = k++;
    int tracked = k;
    for (std::size_t c = static_cast<std::size_t>(track); c < alloc_; ++c)
      if (nm[c] >= 0) {
        tracked = nm[c];
        break;
      }
    for (std::size_t c = 0; c < alloc_; ++c) {
      if (nm[c] < 0) continue;
      std::size_t d = static_cast<std::size_t>(nm[c]);
      for (int x = 0; x < cols_; ++x) {
        int v = at(c, x);
        table_[d * cols_ + x] = v < 0 ? -1 : nm[rep(v)];
      }
    }
    for (int c = 0; c < k; ++c) parent_[c] = c;
    alloc_ = static_cast<std::size_t>(k);
    live_ = alloc_;
    std::vector<std::pair<int, int>> keep;
    for (auto [c, x] : deductions_)
      if (c < static_cast<int>(nm.size()) && nm[c] >= 0) keep.emplace_back(nm[c], x);
    deductions_ = std::move(keep);
    return tracked;
  }

  // BFS renumbering from coset 0, columns in order.
  void standardize(CosetTable& out) {
    compact();
    std::size_t const n = alloc_;
    std::vector<int> nm(n, -1), order;
    nm[0] = 0;
    order.push_back(0);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (int x = 0; x < cols_; ++x) {
        int d = at(order[i], x);
        if (nm[d] < 0) {
          nm[d] = static_cast<int>(order.size());
          order.push_back(d);
        }
      }
    out.cosets = static_cast<int>(order.size());
    out.table.assign(order.size() * cols_, -1);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (int x = 0; x < cols_; ++x) out.table[i * cols_ + x] = nm[at(order[i], x)];
  }

  int ngens_, cols_;
  CosetOptions opt_;
  std::vector<std::vector<int>> rels_, sub_;
  std::vector<std::vector<std::vector<int>>> conj_;
  std::vector<int> table_;
  std::vector<int> parent_;
  std::size_t capacity_ = 0, alloc_ = 0, live_ = 0, max_live_ = 1, defined_ = 0;
  std::vector<std::pair<int, int>> deductions_;
};

}  // namespace detail

/// Enumerates the cosets of the subgroup generated by `subgroup` in the group presented by p.
/// Returns status incomplete when the table would need more than opt.max_cosets cosets at
/// once; a complete table is always certified by verify_coset_table before being returned.
inline CosetTable todd_coxeter(Presentation const& p, std::vector<Word> const& subgroup = {},
                               CosetOptions const& opt = {});

/// Post-hoc soundness: complete, each generator column a permutation with its inverse column,
/// transitive, every relator trivial at every coset, and every subgroup word fixing coset 0.
inline std::string verify_coset_table(Presentation const& p, std::vector<Word> const& subgroup,
                                      CosetTable const& t) {
  if (!t.complete()) return "table is not complete";
  int const n = t.cosets, cols = t.columns();
  if (t.ngens != p.ngens) return "generator count mismatch";
  if (static_cast<int>(t.table.size()) != n * cols) return "table size mismatch";
  for (int c = 0; c < n; ++c)
    for (int x = 0; x < cols; ++x) {
      int d = t.table[static_cast<std::size_t>(c) * cols + x];
      if (d < 0 || d >= n) return "undefined or out-of-range entry";
      if (t.table[static_cast<std::size_t>(d) * cols + (x ^ 1)] != c) return "inverse columns disagree";
    }
  std::vector<bool> seen(n, false);
  std::vector<int> q{0};
  seen[0] = true;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (int x = 0; x < cols; ++x) {
      int d = t.table[static_cast<std::size_t>(q[i]) * cols + x];
      if (!seen[d]) {
        seen[d] = true;
        q.push_back(d);
      }
    }
  if (static_cast<int>(q.size()) != n) return "action is not transitive";
  for (auto const& r : p.relators)
    for (int c = 0; c < n; ++c)
      if (t.trace(c, r) != c) return "a relator acts nontrivially";
  for (auto const& h : subgroup)
    if (t.trace(0, h) != 0) return "a subgroup generator moves the base coset";
  return {};
}

inline CosetTable todd_coxeter(Presentation const& p, std::vector<Word> const& subgroup,
                               CosetOptions const& opt) {
  detail::ToddCoxeter tc(p, subgroup, opt);
  CosetTable t = tc.run();
  if (t.complete()) {
    std::string err = verify_coset_table(p, subgroup, t);
    if (!err.empty()) throw invariant_violation("coset enumeration produced a bad table: " + err);
  }
  return t;
}

}  // namespace amlab

#endif  // AMLAB_COSET_ENUM_HPP
