// Assembles the slim amalgam of Sp4(3) and computes its universal completion.

#include <cstdio>

#include "amlab/amlab.hpp"

using namespace amlab;

int main() {
  Amalgam a = build_slim_amalgam(3, 4);
  for (auto const& m : a.members())
    std::printf("%-4s rank %d order %zu, presented by %d generators and %zu relators\n", m.name.c_str(), m.rank,
                m.group.order(), m.pres.pres.ngens, m.pres.pres.relators.size());

  CompletionPresentation cp = completion_presentation(a);
  std::printf("completion: %d generators, %zu relators; after simplification %d and %zu\n", cp.raw.ngens,
              cp.raw.relators.size(), cp.simplified.pres.ngens, cp.simplified.pres.relators.size());

  CompletionBudget budget;
  budget.max_cosets = 200000;
  CompletionVerdict v = verify_completion(a, sp_order(3, 4), a.find("Q11"), budget, &cp);
  if (!v.order) {
    std::printf("enumeration did not finish within %zu cosets\n", budget.max_cosets);
    return 1;
  }
  std::printf("index %llu over %s, order %llu, %s Sp4(3)\n", static_cast<unsigned long long>(*v.index),
              v.relative_to.c_str(), static_cast<unsigned long long>(*v.order), v.iso() ? "isomorphic to" : "not");
  return 0;
}
