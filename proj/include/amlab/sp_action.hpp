#ifndef AMLAB_SP_ACTION_HPP
#define AMLAB_SP_ACTION_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "amlab/errors.hpp"
#include "amlab/field.hpp"
#include "amlab/geometry.hpp"
#include "amlab/perm_group.hpp"
#include "amlab/quasi_phan.hpp"
#include "amlab/subspace.hpp"
#include "amlab/symplectic.hpp"

namespace amlab {

/// Sp(V) acting on the nonzero vectors of V followed by the objects of a geometry built from
/// V. Point v-1 is the vector with index v; point vectors() + i is object i.
class SpAction {
 public:
  SpAction(SubspaceGeometry const& gamma, std::vector<Mat> const& gens)
      : gamma_(&gamma), f_(gamma.space.field()), n_(gamma.space.dim()),
        nvec_(vector_count(f_, n_) - 1) {
    std::vector<Perm> perms;
    for (auto const& g : gens) {
      if (!is_isometry(gamma.space, g)) throw usage_error("generator is not an isometry");
      perms.push_back(perm_of(g));
    }
    group_ = PermGroup(degree(), perms);
    std::vector<Perm> on_objects;
    for (auto const& p : perms) on_objects.push_back(restrict_to_objects(p));
    object_group_ = PermGroup(objects(), on_objects);
  }

  explicit SpAction(SubspaceGeometry const& gamma) : SpAction(gamma, sp_generators(gamma.space)) {}

  std::size_t vectors() const noexcept { return nvec_; }
  std::size_t objects() const noexcept { return static_cast<std::size_t>(gamma_->geom.size()); }
  std::size_t degree() const noexcept { return nvec_ + objects(); }
  SubspaceGeometry const& gamma() const noexcept { return *gamma_; }
  PermGroup const& group() const noexcept { return group_; }
  PermGroup const& object_group() const noexcept { return object_group_; }

  std::uint32_t object_point(int obj) const { return static_cast<std::uint32_t>(nvec_ + obj); }

  /// Permutation induced by a matrix acting on column vectors.
  Perm perm_of(Mat const& g) const {
    Perm p(degree());
    for (std::size_t v = 1; v <= nvec_; ++v) {
      Vec img = g.apply(vector_from_index(f_, n_, v));
      p[v - 1] = static_cast<std::uint32_t>(vector_index(f_, img) - 1);
    }
    Mat const gt = g.transpose();
    for (int i = 0; i < gamma_->geom.size(); ++i) {
      Subspace img(gamma_->geom.payload(i).basis() * gt);
      int j = gamma_->find(img);
      if (j < 0) throw invariant_violation("image of an object is not an object");
      p[nvec_ + i] = static_cast<std::uint32_t>(nvec_ + j);
    }
    return p;
  }

  /// The matrix whose column j is the image of the j-th unit vector.
  Mat matrix_of(Perm const& p) const {
    Mat m(f_, n_, n_);
    for (int j = 0; j < n_; ++j) {
      std::size_t idx = vector_index(f_, unit_vector(n_, j));
      Vec img = vector_from_index(f_, n_, p[idx - 1] + 1);
      for (int i = 0; i < n_; ++i) m(i, j) = img[i];
    }
    return m;
  }

  Perm restrict_to_objects(Perm const& p) const {
    Perm r(objects());
    for (std::size_t i = 0; i < objects(); ++i) r[i] = static_cast<std::uint32_t>(p[nvec_ + i] - nvec_);
    return r;
  }

  /// Elements acting trivially on the geometry: |G| / |G restricted to objects|.
  std::uint64_t kernel_order() const { return group_.order() / object_group_.order(); }

  /// Pointwise stabilizer of a set of objects (for a flag this is its stabilizer).
  PermGroup stabilizer(Flag const& objs) const {
    std::vector<std::uint32_t> pts;
    for (int o : objs) pts.push_back(object_point(o));
    return group_.pointwise_stabilizer(pts);
  }

  /// Orbit of the tuple of objects under the group (on objects).
  std::size_t tuple_orbit_size(Flag const& objs) const {
    std::vector<std::uint32_t> start(objs.begin(), objs.end());
    std::set<std::vector<std::uint32_t>> seen{start};
    std::vector<std::vector<std::uint32_t>> todo{start};
    while (!todo.empty()) {
      auto t = std::move(todo.back());
      todo.pop_back();
      for (auto const& g : object_group_.generators()) {
        std::vector<std::uint32_t> u(t.size());
        for (std::size_t k = 0; k < t.size(); ++k) u[k] = g[t[k]];
        if (seen.insert(u).second) todo.push_back(std::move(u));
      }
    }
    return seen.size();
  }

 private:
  SubspaceGeometry const* gamma_;
  PrimeField f_;
  int n_;
  std::size_t nvec_;
  PermGroup group_;
  PermGroup object_group_;
};

/// Object ids of the standard chamber, ordered by type.
inline Flag standard_chamber_objects(SubspaceGeometry const& gamma) {
  Flag c;
  for (auto const& u : standard_chamber(gamma.space)) {
    int id = gamma.find(u);
    if (id < 0) throw invariant_violation("standard chamber element is not an object");
    c.push_back(id);
  }
  return c;
}

/// The sub-flag of the standard chamber with types in J.
inline Flag standard_flag(SubspaceGeometry const& gamma, std::vector<int> const& types) {
  Flag c = standard_chamber_objects(gamma), f;
  for (int x : c)
    if (std::find(types.begin(), types.end(), gamma.geom.type(x)) != types.end()) f.push_back(x);
  return f;
}

struct TransitivityRow {
  std::vector<int> types;
  std::uint64_t flags = 0;        // number of flags of this type in the geometry
  std::uint64_t orbit = 0;        // orbit of the standard flag
  std::uint64_t stabilizer = 0;   // order of its stabilizer in G
  bool transitive() const { return flags == orbit; }
};

/// Counts flags of every nonempty type set and compares with the orbit of the standard flag
/// of that type, computed directly as an orbit of tuples.
inline std::vector<TransitivityRow> check_flag_transitivity(SpAction const& act) {
  IncidenceGeometry const& g = act.gamma().geom;
  std::map<std::vector<int>, std::uint64_t> census;
  g.for_each_flag([&](Flag const& f, Bitset const&) {
    if (f.empty()) return true;
    std::vector<int> t;
    for (int x : f) t.push_back(g.type(x));
    ++census[t];
    return true;
  });
  std::vector<TransitivityRow> rows;
  int const r = g.rank();
  for (unsigned mask = 1; mask < (1u << r); ++mask) {
    TransitivityRow row;
    for (int k = 0; k < r; ++k)
      if (mask >> k & 1u) row.types.push_back(g.types()[k]);
    row.flags = census[row.types];
    Flag f = standard_flag(act.gamma(), row.types);
    row.orbit = act.tuple_orbit_size(f);
    row.stabilizer = act.stabilizer(f).order();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace amlab

#endif  // AMLAB_SP_ACTION_HPP
