#ifndef MTROOT_PHILATTICE_HPP_
#define MTROOT_PHILATTICE_HPP_

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "mtroot/matrix.hpp"
#include "mtroot/padic.hpp"
#include "mtroot/perm.hpp"
#include "mtroot/weil.hpp"

namespace mtroot {

// ordinary reduction: the middle coefficient is a unit mod p, equivalently
// the Newton polygon has slopes 0 and 1 only
inline bool is_ordinary(const WeilPolynomial& w) {
  return mod_pos(w.poly.coeff(w.g), w.p) != 0;
}

// one label from each involution pair
struct OrdinaryPartition {
  std::vector<int> labels;  // sorted
};

// multiplicative group generated by the labeled roots: structure data of
// Z^n / M together with the Galois action
struct PhiGroup {
  int n = 0;
  IMat relations;                    // HNF basis of M
  std::vector<Int> invariant_factors;  // nontrivial part of the SNF diagonal
  int rank = 0;
  bool is_free = false;
  IMat snf_Q;        // x -> x Q maps classes to SNF coordinates
  int torsion_dim = 0;  // number of (possibly trivial) torsion coordinates
  std::vector<Vec> label_classes;  // SNF coordinates of each root's class
  Vec q_class;                     // SNF coordinates of the class of q
  std::vector<Perm> galois_perms;
};

namespace phi_detail {

// condition rows: for every sigma in Gamma the indicator vector of sigma(S)
inline IMat partition_condition_rows(const std::vector<int>& S, int n,
                                     const std::vector<Perm>& gamma_elements) {
  std::set<Vec> rows;
  for (const auto& sigma : gamma_elements) {
    Vec row(n, Int(0));
    for (int i : S) row[sigma[i]] = 1;
    rows.insert(row);
  }
  return IMat(rows.begin(), rows.end());
}

// images of the labels' residues in the residue field
inline std::vector<GFContext::Elem> residue_images(const LabeledRoots& roots) {
  const GFContext& gf = roots.gf();
  std::vector<GFContext::Elem> out(roots.n());
  for (int i = 0; i < roots.n(); ++i) {
    GFContext::Elem r(roots.field.f);
    for (int j = 0; j < roots.field.f; ++j)
      r[j] = mpz_fdiv_ui(roots.residues[i][j].get_mpz_t(), gf.p);
    fp::normalize(r);
    out[i] = r;
  }
  return out;
}

// combine two elements of known orders into one whose order is the lcm
inline std::pair<GFContext::Elem, Int> combine_orders(const GFContext& gf,
                                                      const GFContext::Elem& a, const Int& na,
                                                      const GFContext::Elem& b, const Int& nb) {
  Int target = lcm(na, nb);
  GFContext::Elem g = gf.one();
  for (const auto& [p, e] : factorize(target)) {
    Int pe = pow_int(p, e);
    if (mod_pos(na, pe) == 0)
      g = gf.mul(g, gf.pow(a, divexact(na, pe)));
    else
      g = gf.mul(g, gf.pow(b, divexact(nb, pe)));
  }
  return {g, target};
}

// Sublattice of M0 mapping to exactly 1.  Every class of M0 is certified
// torsion beforehand, and torsion injects into the residue field, so the
// kernel of the residue map is the exact-one kernel.
inline IMat refine_to_exact(const LabeledRoots& roots, const IMat& M0, long B) {
  if (M0.empty()) return M0;
  const GFContext& gf = roots.gf();
  auto imgs = residue_images(roots);
  int k = mat_rows(M0);
  std::vector<GFContext::Elem> zeta(k);
  std::vector<Int> ord(k);
  for (int j = 0; j < k; ++j) {
    GFContext::Elem z = gf.one();
    for (int i = 0; i < roots.n(); ++i)
      if (M0[j][i] != 0) z = gf.mul(z, gf.pow(imgs[i], M0[j][i]));
    zeta[j] = z;
    auto o = root_of_unity_order(roots, M0[j], B);
    check(o.has_value(), errc::internal, "basis vector is not a root of unity");
    ord[j] = *o;
  }
  // generator of the subgroup the images generate
  GFContext::Elem g = gf.one();
  Int U = 1;
  for (int j = 0; j < k; ++j) std::tie(g, U) = combine_orders(gf, g, U, zeta[j], ord[j]);
  if (U == 1) return hnf(M0);
  check(U <= 1000000, errc::internal, "torsion subgroup unexpectedly large");
  // discrete logs inside the small cyclic subgroup
  Vec dlog(k, Int(0));
  for (int j = 0; j < k; ++j) {
    GFContext::Elem pw = gf.one();
    bool found = false;
    for (Int t = 0; t < U; ++t) {
      if (pw == zeta[j]) {
        dlog[j] = t;
        found = true;
        break;
      }
      pw = gf.mul(pw, g);
    }
    check(found, errc::internal, "discrete log not found in torsion subgroup");
  }
  // kernel of c -> sum c_j dlog_j mod U
  IMat cond(1, Vec(k + 1, Int(0)));
  for (int j = 0; j < k; ++j) cond[0][j] = dlog[j];
  cond[0][k] = U;
  IMat ker = kernel(cond);
  IMat refined;
  for (const auto& row : ker) {
    Vec combo(roots.n(), Int(0));
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < roots.n(); ++i) combo[i] += row[j] * M0[j][i];
    bool zero = std::all_of(combo.begin(), combo.end(), [](const Int& v) { return v == 0; });
    if (!zero) refined.push_back(combo);
  }
  return hnf(refined);
}

inline PhiGroup finish_phi(const LabeledRoots& roots, const IMat& M,
                           const std::vector<Perm>& galois_gens) {
  PhiGroup out;
  out.n = roots.n();
  out.relations = hnf(M);
  int k = mat_rows(out.relations);
  auto s = snf(out.relations.empty() ? IMat(1, Vec(out.n, Int(0))) : out.relations);
  // with a k x n relation matrix, P M Q = diag(d_1..d_k); classes get
  // coordinates x Q with the first k mod d_i and the rest free
  out.snf_Q = s.Q;
  out.torsion_dim = out.relations.empty() ? 0 : k;
  out.rank = out.n - out.torsion_dim;
  out.invariant_factors.clear();
  for (int i = 0; i < out.torsion_dim; ++i) {
    check(s.diag[i] != 0, errc::internal, "relation basis is not full rank");
    if (s.diag[i] != 1) out.invariant_factors.push_back(s.diag[i]);
  }
  out.is_free = out.invariant_factors.empty();
  auto coords_of = [&](const Vec& x) {
    Vec c = vec_mat(x, out.snf_Q);
    for (int i = 0; i < out.torsion_dim; ++i) c[i] = mod_pos(c[i], s.diag[i]);
    return c;
  };
  for (int i = 0; i < out.n; ++i) {
    Vec e(out.n, Int(0));
    e[i] = 1;
    out.label_classes.push_back(coords_of(e));
  }
  {
    roots.require_pairing();
    Vec e(out.n, Int(0));
    int i0 = 0;
    e[i0] += 1;
    e[roots.pairing[i0]] += 1;
    out.q_class = coords_of(e);
  }
  out.galois_perms = galois_gens;
  // the relation lattice must be Galois-stable
  for (const auto& sigma : galois_gens) {
    IMat moved;
    for (const auto& row : out.relations) {
      Vec v(out.n, Int(0));
      for (int i = 0; i < out.n; ++i) v[sigma[i]] = row[i];
      moved.push_back(v);
    }
    check(lattice_equal(moved, out.relations), errc::internal,
          "Galois action does not preserve the relation lattice");
  }
  return out;
}

}  // namespace phi_detail

// kernel of the partition conditions, an HNF basis of
// { e : sum_{i in sigma(S)} e_i = 0 for all sigma }
inline IMat valuation_constraints_ordinary(const LabeledRoots& roots, const PermGroup& gamma,
                                           const OrdinaryPartition& S) {
  auto rows = phi_detail::partition_condition_rows(S.labels, roots.n(), gamma.elements());
  return kernel(rows);
}

// all partitions S (one label per pair) whose lattice of conditions consists
// of genuine multiplicative relations up to roots of unity
inline std::vector<OrdinaryPartition> find_ordinary_partition(const LabeledRoots& roots,
                                                              const PermGroup& gamma, long B) {
  roots.require_pairing();
  check(roots.blocks.size() == 1, errc::bad_input, "partition search expects a single block");
  int n = roots.n();
  int half = n / 2;
  check(half <= 20, errc::bad_input, "partition search limited to 2^20 candidates");
  auto gamma_elems = gamma.elements();

  std::vector<int> reps;  // first label of each pair
  for (int i = 0; i < n; ++i)
    if (i < roots.pairing[i]) reps.push_back(i);
  check(static_cast<int>(reps.size()) == half, errc::internal, "pairing is not an involution");

  std::map<std::vector<int>, bool> decided;
  auto validate = [&](const std::vector<int>& S) -> bool {
    IMat rows = phi_detail::partition_condition_rows(S, n, gamma_elems);
    IMat M_S = kernel(rows);
    for (const auto& b : M_S)
      if (!root_of_unity_order(roots, b, B).has_value()) return false;
    return true;
  };

  std::vector<OrdinaryPartition> out;
  for (unsigned long mask = 0; mask < (1UL << half); ++mask) {
    std::vector<int> S;
    for (int j = 0; j < half; ++j)
      S.push_back((mask >> j) & 1 ? roots.pairing[reps[j]] : reps[j]);
    std::sort(S.begin(), S.end());
    auto it = decided.find(S);
    bool ok;
    if (it != decided.end()) {
      ok = it->second;
    } else {
      ok = validate(S);
      // a partition and its Gamma-images stand or fall together
      for (const auto& sigma : gamma_elems) {
        std::vector<int> im;
        for (int i : S) im.push_back(sigma[i]);
        std::sort(im.begin(), im.end());
        decided[im] = ok;
      }
    }
    if (ok) out.push_back(OrdinaryPartition{S});
  }
  return out;
}

// structure of Phi for ordinary reduction
inline PhiGroup phi_structure(const WeilPolynomial& w, const LabeledRoots& roots,
                              const PermGroup& gamma, long B) {
  check(is_ordinary(w), errc::not_ordinary,
        "middle coefficient is not a unit mod p; use the general method");
  auto partitions = find_ordinary_partition(roots, gamma, B);
  check(!partitions.empty(), errc::no_valid_partition,
        "no valid ordinary partition; inconsistent with ordinarity");
  IMat stacked;
  for (const auto& S : partitions) {
    IMat m = valuation_constraints_ordinary(roots, gamma, S);
    for (auto& row : m) stacked.push_back(row);
  }
  IMat M0 = hnf(stacked);
  IMat M = phi_detail::refine_to_exact(roots, M0, B);
  return phi_detail::finish_phi(roots, M, gamma.generators());
}

// ---------------------------------------------------------------------------
// general method via Newton-polygon valuations at p

namespace phi_detail {

// valuations (with multiplicity) of the roots of P at p, from the lower
// convex hull of (i, v_p(c_i)); multiset of rationals
inline std::vector<std::pair<Rat, int>> newton_polygon_valuations(const IntPoly& P,
                                                                  const Int& p) {
  std::vector<std::pair<long, long>> pts;  // (i, v_p(c_i))
  for (int i = 0; i <= P.degree(); ++i) {
    if (P.coeff(i) == 0) continue;
    long v = 0;
    Int c = abs(P.coeff(i));
    while (mod_pos(c, p) == 0) {
      c = divexact(c, p);
      ++v;
    }
    pts.emplace_back(i, v);
  }
  // lower hull left to right
  std::vector<std::pair<long, long>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      auto& a = hull[hull.size() - 2];
      auto& b = hull[hull.size() - 1];
      // drop b if it lies on or above segment a-pt
      if ((b.second - a.second) * (pt.first - a.first) >=
          (pt.second - a.second) * (b.first - a.first))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  // a hull segment of slope -v and horizontal length dx contributes dx roots
  // of valuation v
  std::map<Rat, int> merged;
  for (size_t s = 0; s + 1 < hull.size(); ++s) {
    long dx = hull[s + 1].first - hull[s].first;
    long dy = hull[s + 1].second - hull[s].second;
    Rat val(-dy, dx);
    val.canonicalize();
    merged[val] += static_cast<int>(dx);
  }
  return std::vector<std::pair<Rat, int>>(merged.begin(), merged.end());
}

}  // namespace phi_detail

// multiplicity of each labeled root inside the full polynomial
inline std::vector<int> label_multiplicities(const IntPoly& P_full, const LabeledRoots& roots) {
  auto sf = squarefree_factorization(P_full);
  uint64_t ell = roots.field.ell.get_ui();
  const GFContext& gf = roots.gf();
  auto imgs = phi_detail::residue_images(roots);
  std::vector<int> mult(roots.n(), 0);
  for (int i = 0; i < roots.n(); ++i) {
    for (const auto& [fac, m] : sf) {
      // evaluate fac at the residue
      GFContext::Elem acc = gf.zero();
      for (int d = fac.degree(); d >= 0; --d) {
        acc = gf.mul(acc, imgs[i]);
        acc = gf.add(acc, gf.from_u(mpz_fdiv_ui(fac.coeff(d).get_mpz_t(), ell)));
      }
      if (acc.empty()) {
        check(mult[i] == 0, errc::internal, "label matches two squarefree factors");
        mult[i] = m;
      }
    }
    check(mult[i] > 0, errc::internal, "label matches no squarefree factor");
  }
  return mult;
}

// Phi structure via one place over p: assign polygon valuations to labels,
// consistently with the pairing, and keep assignments whose relation basis
// certifies as roots of unity.  Ambiguity between surviving assignments with
// different lattices is an error, never a guess.
inline PhiGroup phi_structure_general(const WeilPolynomial& w, const LabeledRoots& roots,
                                      const PermGroup& gamma, long B) {
  int n = roots.n();
  roots.require_pairing();
  auto gamma_elems = gamma.elements();
  auto mults = label_multiplicities(w.poly, roots);
  auto polygon = phi_detail::newton_polygon_valuations(w.poly, w.p);
  Rat dsum(static_cast<long>(w.d));  // v(q) with v(p) = 1

  // pair reps
  std::vector<int> reps;
  for (int i = 0; i < n; ++i)
    if (i < roots.pairing[i]) reps.push_back(i);

  // DFS over pairs assigning (v, d - v) with multiplicity bookkeeping
  std::map<Rat, int> avail(polygon.begin(), polygon.end());
  std::vector<Rat> assignment(n);
  std::set<IMat> lattices;
  long nodes = 0;
  const long node_cap = 200000;

  std::function<void(size_t)> dfs = [&](size_t idx) {
    check(++nodes < node_cap, errc::slope_assignment_ambiguous,
          "slope assignment search exceeded its budget");
    if (idx == reps.size()) {
      // all conditions sum_i e_i v(sigma^{-1} applied to labels) = 0
      std::set<Vec> rows;
      for (const auto& sigma : gamma_elems) {
        Perm inv = perm_inverse(sigma);
        // common denominator scaling
        Int den = 1;
        for (int i = 0; i < n; ++i) den = lcm(den, assignment[inv[i]].get_den());
        Vec row(n);
        for (int i = 0; i < n; ++i) {
          Rat scaled = assignment[inv[i]] * Rat(den);
          row[i] = scaled.get_num();
        }
        rows.insert(row);
      }
      IMat M0 = kernel(IMat(rows.begin(), rows.end()));
      lattices.insert(M0);
      return;
    }
    int i = reps[idx], j = roots.pairing[i];
    std::vector<Rat> options;
    for (const auto& [v, c] : avail)
      if (c > 0) options.push_back(v);
    for (const Rat& v : options) {
      Rat vbar = Rat(dsum) - v;
      auto itv = avail.find(v);
      auto itb = avail.find(vbar);
      if (itv == avail.end() || itb == avail.end()) continue;
      int need_v = mults[i], need_b = mults[j];
      if (v == vbar) {
        if (itv->second < need_v + need_b) continue;
        itv->second -= need_v + need_b;
        assignment[i] = v;
        assignment[j] = vbar;
        dfs(idx + 1);
        itv->second += need_v + need_b;
      } else {
        if (itv->second < need_v || itb->second < need_b) continue;
        itv->second -= need_v;
        itb->second -= need_b;
        assignment[i] = v;
        assignment[j] = vbar;
        dfs(idx + 1);
        itv->second += need_v;
        itb->second += need_b;
      }
    }
  };
  dfs(0);
  check(!lattices.empty(), errc::slope_assignment_ambiguous,
        "no valuation assignment is consistent with the polygon and pairing");

  // keep assignments whose relation lattice certifies
  std::set<IMat> certified;
  for (const auto& M0 : lattices) {
    bool ok = true;
    for (const auto& b : M0)
      if (!root_of_unity_order(roots, b, B).has_value()) {
        ok = false;
        break;
      }
    if (ok) certified.insert(M0);
  }
  check(!certified.empty(), errc::slope_assignment_ambiguous,
        "no valuation assignment produced a certified relation lattice");
  check(certified.size() == 1, errc::slope_assignment_ambiguous,
        "several inequivalent valuation assignments survive certification");

  IMat M = phi_detail::refine_to_exact(roots, *certified.begin(), B);
  return phi_detail::finish_phi(roots, M, gamma.generators());
}

// dispatch: ordinary method when possible, polygon method otherwise
inline PhiGroup phi_structure_auto(const WeilPolynomial& w, const LabeledRoots& roots,
                                   const PermGroup& gamma, long B) {
  if (is_ordinary(w)) return phi_structure(w, roots, gamma, B);
  return phi_structure_general(w, roots, gamma, B);
}

}  // namespace mtroot

#endif
