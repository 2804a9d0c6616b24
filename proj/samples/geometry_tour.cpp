// Builds Gamma(V) for a small symplectic space and prints its basic invariants.
//
//   geometry_tour [q] [n]

#include <cstdio>
#include <cstdlib>

#include "amlab/amlab.hpp"

using namespace amlab;

int main(int argc, char** argv) {
  int q = argc > 1 ? std::atoi(argv[1]) : 3;
  int n = argc > 2 ? std::atoi(argv[2]) : 4;
  SubspaceGeometry g = build_gamma({q, n, n % 2});
  IncidenceGeometry const& geom = g.geom;

  std::printf("Gamma over GF(%d)^%d: %d objects, rank %d\n", q, n, geom.size(), geom.rank());
  for (int t : geom.types()) std::printf("  type %d: %zu objects\n", t, geom.count_of_type(t));
  std::printf("  chambers: %llu\n", static_cast<unsigned long long>(geom.count_chambers()));

  auto diam = diameter(shadow_graph(geom, 1, 2).adj);
  std::printf("  collinearity diameter: %d\n", diam ? *diam : -1);

  Pi1Report r = certify_trivial(pi1_presentation(geom));
  std::printf("  fundamental group: %d generators, %zu relators, simplified to %d and %zu\n", r.raw_generators,
              r.raw_relators, r.simplified_generators, r.simplified_relators);
  if (r.order) std::printf("  order %llu\n", static_cast<unsigned long long>(*r.order));

  PiSpec ps = PiSpec::standard({q, n, n % 2});
  SubspaceGeometry pi = build_pi(ps);
  Pi1Report rp = certify_trivial(pi1_presentation(pi.geom));
  std::printf("residue of a point: %d objects, fundamental group ", pi.geom.size());
  if (rp.order) std::printf("of order %llu\n", static_cast<unsigned long long>(*rp.order));
  else std::printf("not determined\n");
  return 0;
}
