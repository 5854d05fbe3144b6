#ifndef MTROOT_ROOTFINDER_HPP_
#define MTROOT_ROOTFINDER_HPP_

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mtroot/matgroup.hpp"
#include "mtroot/matrix.hpp"
#include "mtroot/perm.hpp"
#include "mtroot/philattice.hpp"

namespace mtroot {

// Character lattice of a Frobenius torus: the free group Z^n/M in its SNF
// basis, carrying the weight multiset, the class of q, and faithful integral
// actions of the Weyl and Galois groups.
struct CharacterLattice {
  int rank = 0;
  std::vector<std::pair<Vec, int>> weights;  // (vector, multiplicity)
  Vec q_class;
  MatGroup weyl;
  MatGroup galois;
  // label-level permutation actions, kept for orbit bookkeeping
  PermGroup weyl_perms;
  PermGroup galois_perms;

  std::vector<Vec> weight_vectors() const {
    std::vector<Vec> out;
    for (const auto& [v, m] : weights) out.push_back(v);
    return out;
  }
};

namespace lattice_detail {

// matrix (acting on column vectors) induced on the free quotient by a label
// permutation
inline IMat induced_matrix(const PhiGroup& phi, const Perm& sigma) {
  int n = phi.n, k = phi.torsion_dim, r = phi.rank;
  IMat P(n, Vec(n, Int(0)));
  for (int i = 0; i < n; ++i) P[i][sigma[i]] = 1;  // row action x -> x P
  IMat Qinv = inverse_unimodular(phi.snf_Q);
  IMat full = mat_mul(mat_mul(Qinv, P), phi.snf_Q);
  // row-vector action on the free coordinates is the bottom-right block; the
  // column action used by MatGroup is its transpose
  IMat T(r, Vec(r, Int(0)));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) T[j][i] = full[k + i][k + j];
  return T;
}

inline Vec free_coords(const PhiGroup& phi, const Vec& cls) {
  return Vec(cls.begin() + phi.torsion_dim, cls.end());
}

}  // namespace lattice_detail

// assemble the character lattice from a torsion-free Phi group
inline CharacterLattice character_lattice(const PhiGroup& phi, const std::vector<int>& mults,
                                          const PermGroup& gamma, const PermGroup& weyl) {
  check(phi.is_free, errc::bad_input, "character lattice needs a torsion-free Phi");
  check(static_cast<int>(mults.size()) == phi.n, errc::bad_input, "multiplicity size mismatch");
  CharacterLattice out;
  out.rank = phi.rank;
  std::set<Vec> seen;
  for (int i = 0; i < phi.n; ++i) {
    Vec w = lattice_detail::free_coords(phi, phi.label_classes[i]);
    check(seen.insert(w).second, errc::internal, "labels map to equal characters");
    out.weights.emplace_back(w, mults[i]);
  }
  out.q_class = lattice_detail::free_coords(phi, phi.q_class);

  std::vector<IMat> wg, gg;
  for (const auto& s : weyl.generators()) wg.push_back(lattice_detail::induced_matrix(phi, s));
  for (const auto& s : gamma.generators()) gg.push_back(lattice_detail::induced_matrix(phi, s));
  std::vector<Vec> hints = out.weight_vectors();
  out.weyl = MatGroup(out.rank, wg, hints);
  out.galois = MatGroup(out.rank, gg, hints);
  out.weyl_perms = weyl;
  out.galois_perms = gamma;
  // faithfulness of the induced actions
  check(out.weyl.order() == weyl.order(), errc::internal,
        "Weyl action on the lattice is not faithful");
  check(out.galois.order() == gamma.order(), errc::internal,
        "Galois action on the lattice is not faithful");
  // weights must be stable with multiplicities under the Galois action
  std::map<Vec, int> wm;
  for (const auto& [v, m] : out.weights) wm[v] = m;
  for (const auto& g : gg)
    for (const auto& [v, m] : out.weights) {
      auto it = wm.find(mat_vec(g, v));
      check(it != wm.end() && it->second == m, errc::internal,
            "weights are not Galois-stable with multiplicities");
    }
  return out;
}

// pairwise differences of distinct elements of one Weyl orbit
inline std::vector<Vec> orbit_differences(const std::vector<Vec>& orbit) {
  std::set<Vec> out;
  for (const auto& a : orbit)
    for (const auto& b : orbit) {
      if (a == b) continue;
      Vec d(a.size());
      for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
      out.insert(d);
    }
  return std::vector<Vec>(out.begin(), out.end());
}

enum class LieType { A, B, C, D, E6, E7 };

inline std::string lie_type_name(LieType t, int rank) {
  switch (t) {
    case LieType::A: return "A" + std::to_string(rank);
    case LieType::B: return "B" + std::to_string(rank);
    case LieType::C: return "C" + std::to_string(rank);
    case LieType::D: return "D" + std::to_string(rank);
    case LieType::E6: return "E6";
    case LieType::E7: return "E7";
  }
  return "?";
}

struct Component {
  std::vector<Vec> S;                  // candidate vectors spanning this factor
  int span_dim = 0;
  Int faithful_weyl_order = 0;
  std::vector<std::vector<Vec>> orbits;  // W-orbits of S, smallest first
};

struct ComponentSet {
  std::vector<Component> components;
};

// the recursive minimal-orbit peeling that isolates one irreducible factor
// of the root system per step
inline ComponentSet algorithm1(const CharacterLattice& X) {
  ComponentSet out;
  auto weight_orbits = X.weyl.orbits_on(X.weight_vectors());
  std::vector<std::vector<Vec>> weight_orbit_diffs;
  for (const auto& orb : weight_orbits) weight_orbit_diffs.push_back(orbit_differences(orb));

  std::set<Vec> U;
  for (const auto& d : weight_orbit_diffs) U.insert(d.begin(), d.end());

  std::vector<Vec> span_so_far;
  while (!U.empty()) {
    std::vector<Vec> Uvec(U.begin(), U.end());
    auto orbs = X.weyl.orbits_on(Uvec);  // sorted by (size, lex representative)
    const auto& minimal = orbs.front();
    // a weight orbit whose difference set contains the minimal orbit
    int chosen = -1;
    for (size_t j = 0; j < weight_orbit_diffs.size() && chosen < 0; ++j) {
      std::set<Vec> dj(weight_orbit_diffs[j].begin(), weight_orbit_diffs[j].end());
      bool all = true;
      for (const auto& v : minimal)
        if (!dj.count(v)) {
          all = false;
          break;
        }
      if (all) chosen = static_cast<int>(j);
    }
    check(chosen >= 0, errc::minuscule_violated,
          "no weight orbit explains the minimal difference orbit");
    Component comp;
    for (const auto& v : weight_orbit_diffs[chosen])
      if (in_span(v, minimal)) comp.S.push_back(v);
    std::sort(comp.S.begin(), comp.S.end());
    comp.span_dim = rank_of(comp.S);
    comp.orbits = X.weyl.orbits_on(comp.S);
    comp.faithful_weyl_order = X.weyl.action_on(comp.S).order();
    for (const auto& v : comp.S) span_so_far.push_back(v);
    out.components.push_back(std::move(comp));

    std::set<Vec> next;
    for (const auto& v : U)
      if (!in_span(v, span_so_far)) next.insert(v);
    U = std::move(next);
  }
  return out;
}

// classification through rank, Weyl order and orbit count
inline std::pair<LieType, int> lie_type(const Component& c) {
  int r = c.span_dim;
  const Int& w = c.faithful_weyl_order;
  size_t orbits = c.orbits.size();
  if (r >= 1 && w == factorial(static_cast<unsigned long>(r + 1))) return {LieType::A, r};
  if (r >= 3 && w == pow_int(Int(2), r) * factorial(r) && orbits >= 3) return {LieType::B, r};
  if (r >= 2 && w == pow_int(Int(2), r) * factorial(r) && orbits == 2) return {LieType::C, r};
  if (r >= 4 && w == pow_int(Int(2), r - 1) * factorial(r)) return {LieType::D, r};
  if (r == 6 && w == 51840) return {LieType::E6, r};
  if (r == 7 && w == 2903040) return {LieType::E7, r};
  fail(errc::unclassifiable_component,
       "no Lie type matches rank " + std::to_string(r) + ", |W| = " + w.get_str() + ", " +
           std::to_string(orbits) + " orbits");
}

namespace rootfinder_detail {

inline const std::vector<Vec>& unique_orbit_of_size(const Component& c, const Int& size) {
  const std::vector<Vec>* found = nullptr;
  for (const auto& orb : c.orbits) {
    if (Int(static_cast<unsigned long>(orb.size())) == size) {
      check(found == nullptr, errc::orbit_size_collision,
            "two orbits share the selecting cardinality");
      found = &orb;
    }
  }
  check(found != nullptr, errc::orbit_size_collision,
        "no orbit of cardinality " + size.get_str());
  return *found;
}

}  // namespace rootfinder_detail

inline std::vector<Vec> extract_roots(const Component& c, LieType type, int r) {
  using rootfinder_detail::unique_orbit_of_size;
  std::vector<Vec> R;
  switch (type) {
    case LieType::A: {
      auto orb = unique_orbit_of_size(c, Int(r) * (r + 1));
      R = orb;
      break;
    }
    case LieType::B: {
      auto short_orb = unique_orbit_of_size(c, Int(2) * r);
      auto long_orb = unique_orbit_of_size(c, Int(2) * r * (r - 1));
      R = short_orb;
      R.insert(R.end(), long_orb.begin(), long_orb.end());
      break;
    }
    case LieType::C:
      for (const auto& orb : c.orbits) R.insert(R.end(), orb.begin(), orb.end());
      break;
    case LieType::D: {
      R = unique_orbit_of_size(c, Int(2) * r * (r - 1));
      break;
    }
    case LieType::E6:
      R = unique_orbit_of_size(c, Int(72));
      break;
    case LieType::E7:
      R = unique_orbit_of_size(c, Int(126));
      break;
  }
  std::sort(R.begin(), R.end());
  return R;
}

struct IdentifiedComponent {
  LieType type;
  int rank;
  std::vector<Vec> roots;
};

inline std::vector<IdentifiedComponent> identify_components(const CharacterLattice& X) {
  std::vector<IdentifiedComponent> out;
  for (const auto& comp : algorithm1(X).components) {
    auto [t, r] = lie_type(comp);
    out.push_back({t, r, extract_roots(comp, t, r)});
  }
  return out;
}

}  // namespace mtroot

#endif
