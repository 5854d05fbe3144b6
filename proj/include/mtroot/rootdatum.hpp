#ifndef MTROOT_ROOTDATUM_HPP_
#define MTROOT_ROOTDATUM_HPP_

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "mtroot/matgroup.hpp"
#include "mtroot/matrix.hpp"
#include "mtroot/rootfinder.hpp"

namespace mtroot {

namespace datum_detail {

inline Int pair_dual(const Vec& x, const Vec& y) {
  Int s = 0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec vec_neg(const Vec& a) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline int fixed_rank_defect(const IMat& s) {
  // rank of (s - 1); the fixed sublattice has corank equal to this
  int n = mat_rows(s);
  std::vector<Vec> rows;
  for (int i = 0; i < n; ++i) {
    Vec r = s[i];
    r[i] -= 1;
    rows.push_back(r);
  }
  return rank_of(rows);
}

}  // namespace datum_detail

// For each root, locate the unique Weyl element sending it to its negative
// with fixed sublattice of corank one, then solve x - s(x) = <x, coroot> root
// for the coroot.
inline std::vector<Vec> coroots_from_weyl(int rank, const std::vector<Vec>& roots,
                                          const std::vector<IMat>& weyl_elements) {
  using namespace datum_detail;
  std::vector<Vec> coroots;
  for (const auto& alpha : roots) {
    const IMat* reflection = nullptr;
    Vec neg = vec_neg(alpha);
    for (const auto& s : weyl_elements) {
      if (mat_vec(s, alpha) != neg) continue;
      if (fixed_rank_defect(s) != 1) continue;
      check(reflection == nullptr, errc::multiple_reflections,
            "two Weyl elements qualify as the reflection of a root");
      reflection = &s;
    }
    check(reflection != nullptr, errc::no_reflection_found,
          "no Weyl element reflects the root");
    // d_j = e_j - s(e_j) must equal coroot_j * alpha
    int t = 0;
    while (alpha[t] == 0) ++t;
    Vec coroot(rank);
    for (int j = 0; j < rank; ++j) {
      Vec ej(rank, Int(0));
      ej[j] = 1;
      Vec d = vec_sub(ej, mat_vec(*reflection, ej));
      Int c = divexact(d[t], alpha[t], errc::no_reflection_found);
      for (int a = 0; a < rank; ++a)
        check(d[a] == c * alpha[a], errc::no_reflection_found,
              "reflection displacement is not a multiple of the root");
      coroot[j] = c;
    }
    check(pair_dual(alpha, coroot) == 2, errc::axiom_violation,
          "pairing of root with its coroot is not 2");
    coroots.push_back(coroot);
  }
  return coroots;
}

struct RootDatum {
  int rank = 0;
  std::vector<Vec> roots;    // sorted
  std::vector<Vec> coroots;  // aligned with roots
  MatGroup weyl;             // regenerated from the reflections
  std::vector<IdentifiedComponent> components;

  Int weyl_order() const { return weyl.order(); }
};

inline IMat reflection_matrix(const Vec& root, const Vec& coroot) {
  int n = static_cast<int>(root.size());
  IMat m = identity_mat(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m[a][b] -= root[a] * coroot[b];
  return m;
}

// verify the root-datum axioms and rebuild the Weyl group from reflections
inline RootDatum assemble_root_datum(int rank, std::vector<Vec> roots, const MatGroup& weyl,
                                     std::vector<IdentifiedComponent> components = {},
                                     unsigned long enum_cap = 200000) {
  using namespace datum_detail;
  std::sort(roots.begin(), roots.end());
  RootDatum d;
  d.rank = rank;
  d.roots = roots;
  d.components = std::move(components);
  if (roots.empty()) {
    d.weyl = MatGroup(rank, {});
    check(weyl.order() == 1, errc::weyl_mismatch, "empty root set with nontrivial Weyl group");
    return d;
  }
  auto elements = weyl.elements(enum_cap);
  d.coroots = coroots_from_weyl(rank, d.roots, elements);

  std::set<Vec> rootset(d.roots.begin(), d.roots.end());
  std::set<Vec> corootset(d.coroots.begin(), d.coroots.end());
  std::vector<IMat> refls;
  for (size_t i = 0; i < d.roots.size(); ++i) {
    const Vec& a = d.roots[i];
    const Vec& av = d.coroots[i];
    check(pair_dual(a, av) == 2, errc::axiom_violation, "<alpha, alpha^vee> != 2");
    IMat s = reflection_matrix(a, av);
    for (const auto& b : d.roots)
      check(rootset.count(mat_vec(s, b)) == 1, errc::axiom_violation,
            "reflection does not permute the roots");
    // dual reflection on the coroots: y -> y - <alpha, y> alpha^vee
    for (const auto& bv : d.coroots) {
      Vec img(rank);
      Int c = pair_dual(a, bv);
      for (int t = 0; t < rank; ++t) img[t] = bv[t] - c * av[t];
      check(corootset.count(img) == 1, errc::axiom_violation,
            "dual reflection does not permute the coroots");
    }
    refls.push_back(s);
    // reduced: only +-alpha on the line through alpha
    for (const auto& b : d.roots) {
      if (b == a || b == vec_neg(a)) continue;
      check(!in_span(b, {a}), errc::axiom_violation, "root system is not reduced");
    }
  }
  d.weyl = MatGroup(rank, refls, d.roots);
  check(d.weyl.order() == weyl.order(), errc::weyl_mismatch,
        "reflections generate a group of different order than the Weyl action");
  for (const auto& g : weyl.generators())
    check(d.weyl.contains(g), errc::weyl_mismatch,
          "supplied Weyl generator is not generated by the reflections");
  return d;
}

// Galois modulo Weyl: canonical coset representatives and the quotient table
struct OuterAction {
  std::vector<IMat> reps;  // lexicographically least matrix per coset
  std::vector<std::vector<int>> mult_table;

  size_t order() const { return reps.size(); }
};

inline OuterAction outer_action(const MatGroup& galois, const MatGroup& weyl,
                                const RootDatum& datum, unsigned long enum_cap = 200000) {
  check(weyl.is_subgroup_of(galois), errc::not_a_subgroup,
        "Weyl group is not contained in the Galois action");
  auto gelems = galois.elements(enum_cap);
  auto welems = weyl.elements(enum_cap);
  std::map<IMat, int> coset_of;
  std::vector<IMat> reps;
  for (const auto& g : gelems) {
    if (coset_of.count(g)) continue;
    // coset g W, canonical representative = least matrix
    IMat least = g;
    std::vector<IMat> members;
    for (const auto& w : welems) {
      IMat gw = mat_mul(g, w);
      members.push_back(gw);
      least = std::min(least, gw);
    }
    int idx = static_cast<int>(reps.size());
    reps.push_back(least);
    for (auto& m : members) coset_of[m] = idx;
  }
  // canonical order: sort reps, remap
  std::vector<IMat> sorted = reps;
  std::sort(sorted.begin(), sorted.end());
  std::map<IMat, int> new_idx;
  for (size_t i = 0; i < sorted.size(); ++i) new_idx[sorted[i]] = static_cast<int>(i);
  std::map<IMat, int> coset_sorted;
  for (const auto& [m, old] : coset_of) coset_sorted[m] = new_idx.at(reps[old]);

  OuterAction out;
  out.reps = sorted;
  check(gelems.size() % welems.size() == 0, errc::internal, "coset count mismatch");
  check(out.reps.size() * welems.size() == gelems.size(), errc::internal,
        "cosets do not partition the group");
  out.mult_table.assign(out.reps.size(), std::vector<int>(out.reps.size(), 0));
  for (size_t i = 0; i < out.reps.size(); ++i)
    for (size_t j = 0; j < out.reps.size(); ++j)
      out.mult_table[i][j] = coset_sorted.at(mat_mul(out.reps[i], out.reps[j]));
  // each representative must normalize the root set
  std::set<Vec> rootset(datum.roots.begin(), datum.roots.end());
  for (const auto& rep : out.reps)
    for (const auto& a : datum.roots)
      check(rootset.count(mat_vec(rep, a)) == 1, errc::internal,
            "outer representative does not normalize the roots");
  return out;
}

// quotient of the character lattice by the class of q, with roots, weights
// and both group actions transported
struct HodgeDatum {
  int rank = 0;                              // r - 1
  std::vector<std::pair<Vec, int>> weights;  // images with multiplicities
  std::vector<Vec> roots;
  MatGroup weyl;
  MatGroup galois;
  IMat projection;  // maps old coordinates to new: drop first entry of U x
};

inline HodgeDatum hodge_datum(const CharacterLattice& X,
                              const std::vector<IdentifiedComponent>& comps) {
  int r = X.rank;
  Int g = 0;
  for (const auto& c : X.q_class) g = gcd(g, c);
  check(g == 1, errc::q_class_not_primitive, "the class of q is not primitive");
  // unimodular U with U q = e_0
  IMat col(r, Vec(1, Int(0)));
  for (int i = 0; i < r; ++i) col[i][0] = X.q_class[i];
  auto s = snf(col);
  IMat U = s.P;
  Vec uq = mat_vec(U, X.q_class);
  if (uq[0] == -1)
    for (int j = 0; j < r; ++j) U[0][j] = -U[0][j];
  uq = mat_vec(U, X.q_class);
  check(uq[0] == 1, errc::internal, "unimodular completion failed");
  for (int i = 1; i < r; ++i) check(uq[i] == 0, errc::internal, "unimodular completion failed");

  HodgeDatum out;
  out.rank = r - 1;
  out.projection.assign(r - 1, Vec(r, Int(0)));
  for (int i = 0; i < r - 1; ++i)
    for (int j = 0; j < r; ++j) out.projection[i][j] = U[i + 1][j];
  auto project = [&](const Vec& v) { return mat_vec(out.projection, v); };

  std::set<Vec> seen;
  for (const auto& [w, m] : X.weights) {
    Vec img = project(w);
    check(seen.insert(img).second, errc::internal,
          "weight map to the quotient is not a bijection");
    out.weights.emplace_back(img, m);
  }
  std::set<Vec> rseen;
  for (const auto& comp : comps)
    for (const auto& a : comp.roots) {
      Vec img = project(a);
      check(rseen.insert(img).second, errc::internal,
            "root map to the quotient is not a bijection");
      out.roots.push_back(img);
    }
  std::sort(out.roots.begin(), out.roots.end());

  IMat Uinv = inverse_unimodular(U);
  auto transport = [&](const IMat& m) {
    // the action fixes q, so U m U^-1 is block triangular with first column
    // e_0; the quotient action is the lower-right block
    IMat conj = mat_mul(mat_mul(U, m), Uinv);
    for (int i = 1; i < r; ++i)
      check(conj[i][0] == 0, errc::internal, "action does not descend to the quotient");
    IMat blk(r - 1, Vec(r - 1));
    for (int i = 1; i < r; ++i)
      for (int j = 1; j < r; ++j) blk[i - 1][j - 1] = conj[i][j];
    return blk;
  };
  std::vector<IMat> wg, gg;
  for (const auto& m : X.weyl.generators()) {
    check(mat_vec(m, X.q_class) == X.q_class, errc::internal, "Weyl action moves q");
    wg.push_back(transport(m));
  }
  for (const auto& m : X.galois.generators()) {
    check(mat_vec(m, X.q_class) == X.q_class, errc::internal, "Galois action moves q");
    gg.push_back(transport(m));
  }
  std::vector<Vec> hints;
  for (const auto& [w, m] : out.weights) hints.push_back(w);
  out.weyl = MatGroup(r - 1, wg, hints);
  out.galois = MatGroup(r - 1, gg, hints);
  check(out.weyl.order() == X.weyl.order(), errc::internal,
        "Weyl action does not stay faithful on the quotient");
  return out;
}

// view of the Hodge quotient as a character lattice, so the root search can
// be rerun downstream of the quotient
inline CharacterLattice hodge_as_lattice(const HodgeDatum& h) {
  CharacterLattice out;
  out.rank = h.rank;
  out.weights = h.weights;
  out.q_class = Vec(h.rank, Int(0));
  out.weyl = h.weyl;
  out.galois = h.galois;
  return out;
}

}  // namespace mtroot

#endif
