#ifndef MTROOT_ENDO_HPP_
#define MTROOT_ENDO_HPP_

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "mtroot/rootdatum.hpp"
#include "mtroot/rootfinder.hpp"

namespace mtroot {

// one simple factor of End(A) tensor Q: a degree-[Gamma:H] center with a
// degree-m matrix part
struct EndoFactor {
  int orbit_index = 0;
  size_t orbit_size = 0;
  Int center_degree;
  int m = 1;
  std::vector<int> h_mod_w;  // subgroup of Gamma/W as sorted coset indices
};

// Galois orbits of the weight multiset; for each orbit the stabilizer of a
// chosen Weyl orbit yields the center degree, the common multiplicity the
// matrix degree
inline std::vector<EndoFactor> endo_invariants(const CharacterLattice& X,
                                               const OuterAction* outer = nullptr,
                                               unsigned long enum_cap = 200000) {
  std::map<Vec, int> mult;
  for (const auto& [w, m] : X.weights) mult[w] = m;
  auto gamma_orbits = X.galois.orbits_on(X.weight_vectors());
  auto gamma_elements = X.galois.elements(enum_cap);
  auto weyl_elements = X.weyl.elements(enum_cap);

  std::vector<EndoFactor> out;
  int idx = 0;
  for (const auto& orbit : gamma_orbits) {
    EndoFactor f;
    f.orbit_index = idx++;
    f.orbit_size = orbit.size();
    f.m = mult.at(orbit.front());
    for (const auto& w : orbit)
      check(mult.at(w) == f.m, errc::multiplicity_not_orbit_constant,
            "weight multiplicities differ inside a Galois orbit");
    // Weyl orbit of the least weight in the Galois orbit
    std::set<Vec> O;
    for (const auto& v : X.weyl.orbit_of(orbit.front())) O.insert(v);
    // stabilizer of O in Gamma
    std::vector<const IMat*> stab;
    for (const auto& g : gamma_elements) {
      bool fixes = true;
      for (const auto& v : O)
        if (!O.count(mat_vec(g, v))) {
          fixes = false;
          break;
        }
      if (fixes) stab.push_back(&g);
    }
    // W acts inside its own orbit, so W must sit inside the stabilizer
    check(stab.size() % weyl_elements.size() == 0, errc::internal,
          "Weyl group does not stabilize its own orbit");
    f.center_degree = Int(static_cast<unsigned long>(gamma_elements.size())) /
                      Int(static_cast<unsigned long>(stab.size()));
    if (outer != nullptr) {
      std::set<int> cosets;
      for (const IMat* g : stab) {
        IMat least = *g;
        for (const auto& w : weyl_elements) least = std::min(least, mat_mul(*g, w));
        auto it = std::lower_bound(outer->reps.begin(), outer->reps.end(), least);
        check(it != outer->reps.end() && *it == least, errc::internal,
              "stabilizer coset missing from the outer action");
        cosets.insert(static_cast<int>(it - outer->reps.begin()));
      }
      f.h_mod_w.assign(cosets.begin(), cosets.end());
    }
    out.push_back(std::move(f));
  }
  // bookkeeping: sum over orbits of size * multiplicity = dim V = 2g
  return out;
}

}  // namespace mtroot

#endif
