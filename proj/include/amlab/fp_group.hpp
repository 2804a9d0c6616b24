#ifndef AMLAB_FP_GROUP_HPP
#define AMLAB_FP_GROUP_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "amlab/errors.hpp"

namespace amlab {

/// Letters are signed 1-based generator indices: 3 is g3, -3 is g3^-1.
using Word = std::vector<int>;

inline Word inverse(Word const& w) {
  Word r(w.rbegin(), w.rend());
  for (auto& x : r) x = -x;
  return r;
}

inline Word concat(Word a, Word const& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline Word free_reduce(Word const& w) {
  Word out;
  out.reserve(w.size());
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

/// Free reduction followed by cancellation between the two ends.
inline Word cyclic_reduce(Word const& w) {
  Word r = free_reduce(w);
  std::size_t a = 0, b = r.size();
  while (b - a >= 2 && r[a] == -r[b - 1]) {
    ++a;
    --b;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(a), r.begin() + static_cast<std::ptrdiff_t>(b));
}

inline Word power(Word const& w, int k) {
  Word base = k < 0 ? inverse(w) : w;
  Word out;
  for (int i = 0; i < std::abs(k); ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

/// Lexicographically least rotation of w or of its inverse; equal for relators that define
/// the same normal closure element up to conjugation and inversion.
inline Word canonical_cyclic(Word const& w) {
  Word best = w;
  for (Word const& base : {w, inverse(w)}) {
    std::size_t const n = base.size();
    for (std::size_t s = 0; s < n; ++s) {
      Word rot(base.begin() + static_cast<std::ptrdiff_t>(s), base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(s));
      if (rot < best) best = std::move(rot);
    }
  }
  return best;
}

struct WordHash {
  std::size_t operator()(Word const& w) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (int x : w) h = (h ^ static_cast<std::size_t>(static_cast<unsigned>(x))) * 0x100000001b3ull;
    return h;
  }
};

struct Presentation {
  int ngens = 0;
  std::vector<Word> relators;

  std::size_t total_length() const {
    std::size_t t = 0;
    for (auto const& r : relators) t += r.size();
    return t;
  }

  void validate() const {
    if (ngens < 0) throw usage_error("negative generator count");
    for (auto const& r : relators)
      for (int x : r)
        if (x == 0 || std::abs(x) > ngens)
          throw usage_error("relator letter " + std::to_string(x) + " out of range");
  }

  friend bool operator==(Presentation const& a, Presentation const& b) {
    return a.ngens == b.ngens && a.relators == b.relators;
  }
};

/// "gens k" followed by one relator per line as space-separated signed indices.
inline std::string to_text(Presentation const& p) {
  std::ostringstream os;
  os << "gens " << p.ngens << "\n";
  for (auto const& r : p.relators) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? " " : "") << r[i];
    os << "\n";
  }
  return os.str();
}

inline Presentation from_text(std::string const& text) {
  std::istringstream is(text);
  std::string line;
  Presentation p;
  if (!std::getline(is, line)) throw usage_error("empty presentation text");
  {
    std::istringstream hs(line);
    std::string tag;
    if (!(hs >> tag >> p.ngens) || tag != "gens") throw usage_error("expected 'gens k' header");
    std::string extra;
    if (hs >> extra) throw usage_error("trailing characters after header");
  }
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    Word w;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(tok, &used);
      } catch (std::exception const&) {
        throw usage_error("bad relator token '" + tok + "'");
      }
      if (used != tok.size()) throw usage_error("bad relator token '" + tok + "'");
      w.push_back(v);
    }
    p.relators.push_back(std::move(w));
  }
  p.validate();
  return p;
}

struct TietzeOptions {
  bool eliminate_generators = true;
  // Total relator length may not grow beyond max(this, starting length).
  std::size_t length_budget = 200000;
  // Pairwise common-subword reduction runs only below these sizes.
  std::size_t substring_max_relators = 120;
  std::size_t substring_max_length = 6000;
};

struct TietzeResult {
  Presentation pres;
  std::vector<int> survivors;   // new generator k+1 is original generator survivors[k]
  std::vector<Word> eliminated;  // original g -> word in original generators (empty if kept)
  std::vector<bool> is_eliminated;

  /// Rewrites a word in the original generators as one in the surviving generators.
  Word map_word(Word const& w) const {
    Word out;
    for (int x : w) {
      Word const& img = image(std::abs(x));
      if (x > 0)
        out.insert(out.end(), img.begin(), img.end());
      else {
        Word inv = inverse(img);
        out.insert(out.end(), inv.begin(), inv.end());
      }
    }
    return free_reduce(out);
  }

  /// Image of original generator g (1-based) in the new generators.
  Word const& image(int g) const {
    if (cache_.empty()) {
      cache_.assign(is_eliminated.size() + 1, Word{});
      done_.assign(is_eliminated.size() + 1, false);
      renum_.assign(is_eliminated.size() + 1, 0);
      for (std::size_t k = 0; k < survivors.size(); ++k) renum_[survivors[k]] = static_cast<int>(k) + 1;
    }
    if (done_[g]) return cache_[g];
    // Iterative post-order expansion to avoid deep recursion on long elimination chains.
    std::vector<int> stack{g};
    while (!stack.empty()) {
      int h = stack.back();
      if (done_[h]) {
        stack.pop_back();
        continue;
      }
      if (!is_eliminated[h - 1]) {
        cache_[h] = {renum_[h]};
        done_[h] = true;
        stack.pop_back();
        continue;
      }
      bool ready = true;
      for (int x : eliminated[h - 1])
        if (!done_[std::abs(x)]) {
          stack.push_back(std::abs(x));
          ready = false;
        }
      if (!ready) continue;
      Word out;
      for (int x : eliminated[h - 1]) {
        Word const& s = cache_[std::abs(x)];
        if (x > 0)
          out.insert(out.end(), s.begin(), s.end());
        else {
          Word inv = inverse(s);
          out.insert(out.end(), inv.begin(), inv.end());
        }
      }
      cache_[h] = free_reduce(out);
      done_[h] = true;
      stack.pop_back();
    }
    return cache_[g];
  }

 private:
  mutable std::vector<Word> cache_;
  mutable std::vector<bool> done_;
  mutable std::vector<int> renum_;
};

namespace detail {

class TietzeState {
 public:
  TietzeState(Presentation const& p, TietzeOptions const& opt)
      : opt_(opt), n_(p.ngens), occ_(p.ngens + 1), dead_gen_(p.ngens + 1, false),
        subst_(p.ngens + 1) {
    for (auto const& r : p.relators) add_relator(r);
    budget_ = std::max(opt.length_budget, total_);
  }

  void run() {
    bool changed = true;
    while (changed) {
      changed = false;
      drain_short();
      if (opt_.eliminate_generators && eliminate_long()) {
        changed = true;
        continue;
      }
      if (substring_pass()) changed = true;
    }
  }

  TietzeResult result() const {
    TietzeResult res;
    std::vector<int> renum(n_ + 1, 0);
    for (int g = 1; g <= n_; ++g)
      if (!dead_gen_[g]) {
        res.survivors.push_back(g);
        renum[g] = static_cast<int>(res.survivors.size());
      }
    res.pres.ngens = static_cast<int>(res.survivors.size());
    std::vector<Word> rels;
    for (std::size_t i = 0; i < rel_.size(); ++i) {
      if (!alive_[i]) continue;
      Word w;
      for (int x : rel_[i]) w.push_back(x > 0 ? renum[x] : -renum[-x]);
      rels.push_back(std::move(w));
    }
    std::stable_sort(rels.begin(), rels.end(), [](Word const& a, Word const& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    res.pres.relators = std::move(rels);
    res.is_eliminated.assign(n_, false);
    res.eliminated.assign(n_, Word{});
    for (int g = 1; g <= n_; ++g)
      if (dead_gen_[g]) {
        res.is_eliminated[g - 1] = true;
        res.eliminated[g - 1] = subst_[g];
      }
    return res;
  }

 private:
  void add_relator(Word const& w) {
    Word r = cyclic_reduce(w);
    if (r.empty()) return;
    Word key = canonical_cyclic(r);
    if (!seen_.insert(key).second) return;
    int id = static_cast<int>(rel_.size());
    rel_.push_back(r);
    keys_.push_back(std::move(key));
    alive_.push_back(true);
    total_ += r.size();
    for (int x : r)
      if (occ_[std::abs(x)].empty() || occ_[std::abs(x)].back() != id) occ_[std::abs(x)].push_back(id);
    queue_.push_back(id);
  }

  void kill_relator(int id) {
    if (!alive_[id]) return;
    alive_[id] = false;
    total_ -= rel_[id].size();
    seen_.erase(keys_[id]);
  }

  // Replace generator g by word w everywhere; g must not occur in w.
  void substitute(int g, Word const& w) {
    dead_gen_[g] = true;
    subst_[g] = w;
    Word winv = inverse(w);
    std::vector<int> ids;
    ids.swap(occ_[g]);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (int id : ids) {
      if (!alive_[id]) continue;
      Word nw;
      for (int x : rel_[id]) {
        if (x == g)
          nw.insert(nw.end(), w.begin(), w.end());
        else if (x == -g)
          nw.insert(nw.end(), winv.begin(), winv.end());
        else
          nw.push_back(x);
      }
      kill_relator(id);
      add_relator(nw);
    }
  }

  // Is generator g present exactly once (as a letter) in relator r?
  static int single_occurrence(Word const& r, int g) {
    int pos = -1;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (std::abs(r[i]) == g) {
        if (pos >= 0) return -1;
        pos = static_cast<int>(i);
      }
    return pos;
  }

  // Solve r = 1 for the letter at position pos: returns the word equal to that generator.
  static Word solve(Word const& r, int pos) {
    std::size_t const n = r.size();
    Word rest;  // r rotated to start at pos, without that first letter
    for (std::size_t k = 1; k < n; ++k) rest.push_back(r[(pos + k) % n]);
    // r' = x rest = 1  =>  x = rest^-1
    Word xval = inverse(rest);
    return r[pos] > 0 ? xval : inverse(xval);
  }

  void drain_short() {
    while (!queue_.empty()) {
      int id = queue_.front();
      queue_.pop_front();
      if (!alive_[id]) continue;
      Word const r = rel_[id];
      if (r.size() == 1) {
        if (!opt_.eliminate_generators) continue;
        kill_relator(id);
        substitute(std::abs(r[0]), {});
      } else if (r.size() == 2 && std::abs(r[0]) != std::abs(r[1])) {
        if (!opt_.eliminate_generators) continue;
        int g = std::max(std::abs(r[0]), std::abs(r[1]));
        int pos = std::abs(r[0]) == g ? 0 : 1;
        Word val = solve(r, pos);
        kill_relator(id);
        substitute(g, val);
      }
    }
  }

  bool eliminate_long() {
    // Pick the (relator, generator) pair whose substitution grows the presentation least.
    long long best_growth = std::numeric_limits<long long>::max();
    int best_id = -1, best_pos = -1;
    for (std::size_t id = 0; id < rel_.size(); ++id) {
      if (!alive_[id]) continue;
      Word const& r = rel_[id];
      for (std::size_t i = 0; i < r.size(); ++i) {
        int g = std::abs(r[i]);
        if (single_occurrence(r, g) != static_cast<int>(i)) continue;
        long long occurrences = 0;
        for (int oid : occ_[g])
          if (alive_[oid] && oid != static_cast<int>(id))
            for (int x : rel_[oid]) occurrences += std::abs(x) == g;
        long long growth = occurrences * (static_cast<long long>(r.size()) - 2) -
                           static_cast<long long>(r.size());
        if (growth < best_growth ||
            (growth == best_growth && best_id >= 0 && r.size() < rel_[best_id].size())) {
          best_growth = growth;
          best_id = static_cast<int>(id);
          best_pos = static_cast<int>(i);
        }
      }
    }
    if (best_id < 0) return false;
    if (best_growth > 0 && total_ + static_cast<std::size_t>(best_growth) > budget_) return false;
    Word const r = rel_[best_id];
    int g = std::abs(r[best_pos]);
    Word val = solve(r, best_pos);
    kill_relator(best_id);
    substitute(g, val);
    return true;
  }

  // If a rotation of r (or r^-1) is u v with |u| > |v| and u occurs cyclically in s, replace
  // that occurrence by v^-1.
  bool substring_pass() {
    std::vector<int> ids;
    for (std::size_t id = 0; id < rel_.size(); ++id)
      if (alive_[id]) ids.push_back(static_cast<int>(id));
    if (ids.size() > opt_.substring_max_relators || total_ > opt_.substring_max_length)
      return false;
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
      return rel_[a].size() < rel_[b].size();
    });
    for (int a : ids) {
      if (!alive_[a]) continue;
      Word const r = rel_[a];
      std::size_t const L = r.size();
      std::size_t const k = L / 2 + 1;
      for (int b : ids) {
        if (b == a || !alive_[b]) continue;
        Word const& s = rel_[b];
        if (s.size() < k) continue;
        for (Word const& base : {r, inverse(r)})
          for (std::size_t rot = 0; rot < L; ++rot) {
            Word u, v;
            for (std::size_t t = 0; t < L; ++t) (t < k ? u : v).push_back(base[(rot + t) % L]);
            std::size_t const m = s.size();
            for (std::size_t st = 0; st < m; ++st) {
              bool match = true;
              for (std::size_t t = 0; t < k && match; ++t) match = s[(st + t) % m] == u[t];
              if (!match) continue;
              Word ns;
              Word vinv = inverse(v);
              ns.insert(ns.end(), vinv.begin(), vinv.end());
              for (std::size_t t = k; t < m; ++t) ns.push_back(s[(st + t) % m]);
              kill_relator(b);
              add_relator(ns);
              return true;
            }
          }
      }
    }
    return false;
  }

  TietzeOptions opt_;
  int n_;
  std::vector<Word> rel_;
  std::vector<Word> keys_;
  std::vector<bool> alive_;
  std::vector<std::vector<int>> occ_;
  std::vector<bool> dead_gen_;
  std::vector<Word> subst_;
  std::unordered_set<Word, WordHash> seen_;
  std::deque<int> queue_;
  std::size_t total_ = 0;
  std::size_t budget_ = 0;
};

}  // namespace detail

/// Simplifies a presentation by Tietze moves: generator elimination through relators in which
/// a generator occurs once, deletion of duplicate (up to rotation/inversion) and trivial
/// relators, and common-subword shortening. Never grows the total relator length past the
/// budget.
inline TietzeResult tietze_simplify(Presentation const& p, TietzeOptions const& opt = {}) {
  p.validate();
  detail::TietzeState st(p, opt);
  st.run();
  return st.result();
}

/// Evaluates a word given images of the generators and their inverses in some group.
template <class T, class Mul>
T evaluate(Word const& w, std::vector<T> const& gens, std::vector<T> const& gen_inverses,
           T identity, Mul mul) {
  T acc = identity;
  for (int x : w) acc = mul(acc, x > 0 ? gens[x - 1] : gen_inverses[-x - 1]);
  return acc;
}

}  // namespace amlab

#endif  // AMLAB_FP_GROUP_HPP
