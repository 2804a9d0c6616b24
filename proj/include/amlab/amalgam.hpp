#ifndef AMLAB_AMALGAM_HPP
#define AMLAB_AMALGAM_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "amlab/concrete_group.hpp"
#include "amlab/coset_enum.hpp"
#include "amlab/errors.hpp"
#include "amlab/fp_group.hpp"
#include "amlab/sp_action.hpp"
#include "amlab/structure.hpp"

namespace amlab {

struct AmalgamMember {
  std::string name;
  int rank = 0;
  ConcreteGroup group;  // built on a reduced generating set
  CertifiedPresentation pres;
};

/// lower is a subgroup of upper; map sends element ids of lower to element ids of upper.
struct Inclusion {
  int lower = 0;
  int upper = 0;
  std::vector<int> map;
};

struct CoherenceReport {
  bool injective_homomorphisms = true;
  bool composition_law = true;
  std::size_t chains_checked = 0;
  std::string failure;
  bool ok() const { return injective_homomorphisms && composition_law; }
};

/// Finite matrix groups related by inclusion maps. All members live in one GL(V), so every
/// inclusion is the identity on matrices; the maps are still stored and verified as tables.
class Amalgam {
 public:
  int add_member(std::string name, int rank, std::vector<Mat> const& gens) {
    ConcreteGroup full(gens);
    AmalgamMember m;
    m.name = std::move(name);
    m.rank = rank;
    m.group = ConcreteGroup(reduced_generators(full));
    if (m.group.order() != full.order()) throw invariant_violation("reduced generators lost elements");
    m.pres = presentation_from_group(m.group);
    members_.push_back(std::move(m));
    return static_cast<int>(members_.size()) - 1;
  }

  void include(int lower, int upper) {
    Inclusion inc{lower, upper, {}};
    auto const& lo = members_.at(lower).group;
    auto const& up = members_.at(upper).group;
    for (auto const& x : lo.elements()) {
      int id = up.find(x);
      if (id < 0)
        throw usage_error(members_[lower].name + " is not contained in " + members_[upper].name);
      inc.map.push_back(id);
    }
    inclusions_.push_back(std::move(inc));
  }

  std::vector<AmalgamMember> const& members() const noexcept { return members_; }
  std::vector<Inclusion> const& inclusions() const noexcept { return inclusions_; }

  int find(std::string const& name) const {
    for (std::size_t i = 0; i < members_.size(); ++i)
      if (members_[i].name == name) return static_cast<int>(i);
    return -1;
  }
  Inclusion const* inclusion(int lower, int upper) const {
    for (auto const& inc : inclusions_)
      if (inc.lower == lower && inc.upper == upper) return &inc;
    return nullptr;
  }

  /// Every inclusion is an injective homomorphism (checked on all elements against every
  /// generator) and phi_{g,d} o phi_{b,g} = phi_{b,d} wherever all three maps exist.
  CoherenceReport verify_coherence() const {
    CoherenceReport rep;
    for (auto const& inc : inclusions_) {
      auto const& lo = members_[inc.lower].group;
      auto const& up = members_[inc.upper].group;
      std::vector<int> sorted = inc.map;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        rep.injective_homomorphisms = false;
        rep.failure = "inclusion " + members_[inc.lower].name + " -> " + members_[inc.upper].name + " not injective";
      }
      for (int g = 1; g <= lo.ngens(); ++g) {
        int gid = lo.find(lo.generators()[g - 1]);
        for (std::size_t x = 0; x < lo.order(); ++x) {
          int xg = lo.mul(static_cast<int>(x), gid);
          if (inc.map[xg] != up.mul(inc.map[x], inc.map[gid])) {
            rep.injective_homomorphisms = false;
            rep.failure = "inclusion " + members_[inc.lower].name + " -> " + members_[inc.upper].name +
                          " not a homomorphism";
          }
        }
      }
    }
    for (auto const& a : inclusions_)
      for (auto const& b : inclusions_) {
        if (a.upper != b.lower) continue;
        Inclusion const* direct = inclusion(a.lower, b.upper);
        if (!direct) continue;
        ++rep.chains_checked;
        for (std::size_t x = 0; x < a.map.size(); ++x)
          if (b.map[a.map[x]] != direct->map[x]) {
            rep.composition_law = false;
            rep.failure = "composition law fails through " + members_[a.upper].name;
          }
      }
    return rep;
  }

 private:
  std::vector<AmalgamMember> members_;
  std::vector<Inclusion> inclusions_;
};

/// Presentation of the universal completion: one generator block per member carrying the
/// member's certified relators, plus g = word in the upper member for each generator g of
/// each included member. Tietze simplification removes the redundant blocks.
struct CompletionPresentation {
  Presentation raw;
  std::vector<int> offset;          // first generator of each member's block minus one
  std::vector<Mat> generator_images;  // matrix of each raw generator
  TietzeResult simplified;

  Word member_generator(int member, int g) const { return {offset.at(member) + g}; }
  /// The member's generators as words in the simplified presentation.
  std::vector<Word> member_subgroup(Amalgam const& a, int member) const {
    std::vector<Word> out;
    for (int g = 1; g <= a.members().at(member).group.ngens(); ++g)
      out.push_back(simplified.map_word(member_generator(member, g)));
    return out;
  }
};

inline Word shift_word(Word const& w, int by) {
  Word out;
  for (int x : w) out.push_back(x > 0 ? x + by : x - by);
  return out;
}

inline CompletionPresentation completion_presentation(Amalgam const& a, TietzeOptions const& topt = {}) {
  CompletionPresentation cp;
  int total = 0;
  for (auto const& m : a.members()) {
    cp.offset.push_back(total);
    total += m.group.ngens();
    for (auto const& g : m.group.generators()) cp.generator_images.push_back(g);
  }
  cp.raw.ngens = total;
  for (std::size_t i = 0; i < a.members().size(); ++i)
    for (auto const& r : a.members()[i].pres.pres.relators) cp.raw.relators.push_back(shift_word(r, cp.offset[i]));
  for (auto const& inc : a.inclusions()) {
    auto const& lo = a.members()[inc.lower].group;
    auto const& up = a.members()[inc.upper].group;
    for (int g = 1; g <= lo.ngens(); ++g) {
      Word w = shift_word(up.factorize(lo.generators()[g - 1]), cp.offset[inc.upper]);
      Word rel = concat({cp.offset[inc.lower] + g}, inverse(w));
      cp.raw.relators.push_back(rel);
    }
  }
  cp.raw.validate();
  cp.simplified = tietze_simplify(cp.raw, topt);
  return cp;
}

struct CompletionBudget {
  std::size_t max_cosets = 1'000'000;
  Strategy strategy = Strategy::hlt;
};

struct CompletionVerdict {
  std::uint64_t target = 0;                // order of the group the amalgam should complete to
  std::uint64_t generated = 0;             // order of the matrix group the members generate
  bool relators_hold = false;              // every relator is the identity on matrices
  std::string relative_to;                 // member used as the enumeration subgroup
  std::uint64_t member_order = 0;
  std::optional<std::uint64_t> index;      // coset count over that member
  std::optional<std::uint64_t> order;      // index * member order
  std::size_t cosets_used = 0;
  int generators = 0;
  std::size_t relators = 0;

  bool inconclusive() const { return !order.has_value(); }
  bool iso() const { return order && *order == target && relators_hold && generated == target; }
};

/// Evaluates relators on the member matrices, compares the generated group with the target,
/// and enumerates cosets of the chosen member's image. The member injects into the
/// completion because the evaluation map restricts to the identity on it, so the completion
/// has order index * |member|.
inline CompletionVerdict verify_completion(Amalgam const& a, std::uint64_t target, int member = -1,
                                           CompletionBudget const& budget = {},
                                           CompletionPresentation const* given = nullptr) {
  if (a.members().empty()) throw usage_error("empty amalgam");
  if (member < 0) {
    member = 0;
    for (std::size_t i = 0; i < a.members().size(); ++i)
      if (a.members()[i].group.order() > a.members()[member].group.order()) member = static_cast<int>(i);
  }
  if (member >= static_cast<int>(a.members().size())) throw usage_error("member index out of range");
  CompletionPresentation local;
  if (!given) local = completion_presentation(a);
  CompletionPresentation const& cp = given ? *given : local;

  CompletionVerdict v;
  v.target = target;
  v.relative_to = a.members()[member].name;
  v.member_order = a.members()[member].group.order();
  v.generators = cp.simplified.pres.ngens;
  v.relators = cp.simplified.pres.relators.size();

  std::vector<Mat> inv;
  for (auto const& g : cp.generator_images) inv.push_back(inverse(g));
  Mat const e = Mat::identity(cp.generator_images.at(0).field(), cp.generator_images.at(0).rows());
  auto mul = [](Mat const& x, Mat const& y) { return x * y; };
  bool hold = true;
  for (auto const& r : cp.raw.relators) hold = hold && evaluate(r, cp.generator_images, inv, e, mul) == e;
  std::vector<Mat> surv, surv_inv;
  for (int g : cp.simplified.survivors) {
    surv.push_back(cp.generator_images[g - 1]);
    surv_inv.push_back(inv[g - 1]);
  }
  for (auto const& r : cp.simplified.pres.relators) hold = hold && evaluate(r, surv, surv_inv, e, mul) == e;
  v.relators_hold = hold;
  v.generated = matrix_group_order(cp.generator_images);

  CosetOptions opt;
  opt.max_cosets = budget.max_cosets;
  opt.strategy = budget.strategy;
  CosetTable t = todd_coxeter(cp.simplified.pres, cp.member_subgroup(a, member), opt);
  v.cosets_used = t.max_live;
  if (t.complete()) {
    v.index = static_cast<std::uint64_t>(t.cosets);
    v.order = *v.index * v.member_order;
  }
  return v;
}

// ---------------------------------------------------------------------------------------
// Builders.

/// Slim amalgam {M_i, S_j, M_ik, S_jl, Q_ij} of Sp_n(q) with rank-1 members included in the
/// rank-2 members that contain them.
inline Amalgam build_slim_amalgam(int q, int n) {
  if (q != 2 && q != 3) throw usage_error("slim amalgam needs q in {2,3}");
  if (n != 4 && n != 6) throw usage_error("slim amalgam needs n in {4,6}");
  PrimeField const f(q);
  int const r = n / 2;
  Amalgam a;
  std::vector<int> M(r), S(r + 1);
  for (int j = 1; j <= r; ++j) S[j] = a.add_member("S" + std::to_string(j), 1, slim::s_gens(f, n, j));
  for (int i = 1; i < r; ++i) M[i] = a.add_member("M" + std::to_string(i), 1, slim::m_gens(f, n, i));
  for (int j = 1; j <= r; ++j)
    for (int l = j + 1; l <= r; ++l) {
      int x = a.add_member("S" + std::to_string(j) + std::to_string(l), 2,
                           slim::join(slim::s_gens(f, n, j), slim::s_gens(f, n, l)));
      a.include(S[j], x);
      a.include(S[l], x);
    }
  for (int i = 1; i < r; ++i)
    for (int k = i + 1; k < r; ++k) {
      int x = a.add_member("M" + std::to_string(i) + std::to_string(k), 2,
                           slim::join(slim::m_gens(f, n, i), slim::m_gens(f, n, k)));
      a.include(M[i], x);
      a.include(M[k], x);
    }
  for (int i = 1; i < r; ++i)
    for (int j = 1; j <= r; ++j) {
      int x = a.add_member("Q" + std::to_string(i) + std::to_string(j), 2,
                           slim::join(slim::m_gens(f, n, i), slim::s_gens(f, n, j)));
      a.include(M[i], x);
      a.include(S[j], x);
    }
  return a;
}

inline std::string parabolic_name(std::vector<int> const& J) {
  std::string s = "P{";
  for (std::size_t k = 0; k < J.size(); ++k) s += (k ? "," : "") + std::to_string(J[k]);
  return s + "}";
}

namespace detail {

inline std::vector<std::vector<int>> subsets_of(std::vector<int> const& types, std::size_t min_size,
                                                std::size_t max_size) {
  std::vector<std::vector<int>> out;
  std::size_t const r = types.size();
  for (std::size_t size = min_size; size <= std::min(max_size, r); ++size)
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != size) continue;
      std::vector<int> J;
      for (std::size_t k = 0; k < r; ++k)
        if (mask >> k & 1u) J.push_back(types[k]);
      out.push_back(J);
    }
  return out;
}

inline bool proper_subset(std::vector<int> const& a, std::vector<int> const& b) {
  return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline Amalgam parabolics_amalgam(SpAction const& act, std::vector<std::vector<int>> const& Js) {
  Amalgam a;
  for (auto const& J : Js)
    a.add_member(parabolic_name(J), static_cast<int>(J.size()), matrix_generators(act, parabolic(act, J)));
  for (std::size_t x = 0; x < Js.size(); ++x)
    for (std::size_t y = 0; y < Js.size(); ++y)
      if (proper_subset(Js[x], Js[y])) a.include(static_cast<int>(x), static_cast<int>(y));
  return a;
}

}  // namespace detail

/// Parabolics P_J with |J| <= max_rank (B = P_{} included), ordered by inclusion.
inline Amalgam build_parabolic_amalgam(SpAction const& act, int max_rank) {
  return detail::parabolics_amalgam(act, detail::subsets_of(act.gamma().geom.types(), 0, max_rank));
}

/// Maximal parabolics P_{I-i} glued along their pairwise intersections P_{I-{i,j}}.
inline Amalgam build_max_parabolic_amalgam(SpAction const& act) {
  auto const& types = act.gamma().geom.types();
  std::size_t const r = types.size();
  if (r < 2) throw usage_error("maximal parabolic amalgam needs rank at least 2");
  return detail::parabolics_amalgam(act, detail::subsets_of(types, r - 2, r - 1));
}

}  // namespace amlab

#endif  // AMLAB_AMALGAM_HPP
