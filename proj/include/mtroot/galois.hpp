#ifndef MTROOT_GALOIS_HPP_
#define MTROOT_GALOIS_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "mtroot/padic.hpp"
#include "mtroot/perm.hpp"
#include "mtroot/weil.hpp"

namespace mtroot {

namespace galois_detail {

inline void require_involution(const LabeledRoots& roots) {
  for (int i = 0; i < roots.n(); ++i)
    check(roots.pairing[i] >= 0 && roots.pairing[roots.pairing[i]] == i, errc::pairing_fails,
          "labels do not carry a total pairing involution");
}

}  // namespace galois_detail

// Centralizer in S_n of the involution i -> ibar.  The Galois group embeds
// here because q is rational.  With t two-cycles and s fixed labels the
// order is 2^t t! s!.
inline PermGroup pairing_overgroup(const LabeledRoots& roots) {
  galois_detail::require_involution(roots);
  int n = roots.n();
  std::vector<std::pair<int, int>> cycles;
  std::vector<int> fixed;
  for (int i = 0; i < n; ++i) {
    int j = roots.pairing[i];
    if (j == i)
      fixed.push_back(i);
    else if (i < j)
      cycles.emplace_back(i, j);
  }
  std::vector<Perm> gens;
  for (size_t t = 0; t + 1 < cycles.size(); ++t) {
    Perm p = perm_identity(n);
    std::swap(p[cycles[t].first], p[cycles[t + 1].first]);
    std::swap(p[cycles[t].second], p[cycles[t + 1].second]);
    gens.push_back(p);
  }
  for (const auto& [a, b] : cycles) {
    Perm p = perm_identity(n);
    std::swap(p[a], p[b]);
    gens.push_back(p);
  }
  for (size_t t = 0; t + 1 < fixed.size(); ++t) {
    Perm p = perm_identity(n);
    std::swap(p[fixed[t]], p[fixed[t + 1]]);
    gens.push_back(p);
  }
  if (gens.empty()) gens.push_back(perm_identity(n));
  return PermGroup(n, gens);
}

inline Perm pairing_involution(const LabeledRoots& roots) {
  galois_detail::require_involution(roots);
  Perm p(roots.n());
  for (int i = 0; i < roots.n(); ++i) p[i] = roots.pairing[i];
  return p;
}

// permutation induced by x -> x^ell on the labeled residues
inline Perm local_frobenius(const LabeledRoots& roots) {
  const GFContext& gf = roots.gf();
  std::map<GFContext::Elem, int> where;
  std::vector<GFContext::Elem> imgs(roots.n());
  for (int i = 0; i < roots.n(); ++i) {
    GFContext::Elem r(roots.field.f);
    for (int j = 0; j < roots.field.f; ++j)
      r[j] = mpz_fdiv_ui(roots.residues[i][j].get_mpz_t(), gf.p);
    fp::normalize(r);
    imgs[i] = r;
    check(where.emplace(r, i).second, errc::roots_collide_mod_l,
          "two labels share a residue");
  }
  Perm out(roots.n());
  for (int i = 0; i < roots.n(); ++i) {
    auto target = gf.pow(imgs[i], Int(static_cast<unsigned long>(gf.p)));
    auto it = where.find(target);
    check(it != where.end(), errc::internal, "Frobenius does not permute the residues");
    out[i] = it->second;
  }
  return out;
}

struct GaloisConfig {
  int max_tschirnhaus = 12;
  unsigned long max_table_order = 4096;
};

namespace galois_detail {

// an H-invariant sum of monomials whose stabilizer inside G is exactly H;
// monomials are exponent vectors over the labels
struct OrbitSumInvariant {
  std::set<std::vector<int>> monos;
};

inline std::vector<int> apply_perm_to_mono(const Perm& g, const std::vector<int>& m) {
  std::vector<int> r(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i) r[g[i]] = m[i];
  return r;
}

inline std::set<std::vector<int>> orbit_of_mono(const std::vector<Perm>& elems,
                                                const std::vector<int>& seed) {
  std::set<std::vector<int>> out;
  for (const auto& g : elems) out.insert(apply_perm_to_mono(g, seed));
  return out;
}

inline OrbitSumInvariant make_invariant(const SmallGroupTable& table,
                                        const std::vector<int>& G, const std::vector<int>& H,
                                        const std::vector<int>& support) {
  std::vector<Perm> h_elems, g_elems;
  for (int x : H) h_elems.push_back(table.elem(x));
  for (int x : G) g_elems.push_back(table.elem(x));
  int n = table.degree();
  auto stab_is_H = [&](const std::set<std::vector<int>>& F) {
    size_t stab = 0;
    for (const auto& g : g_elems) {
      bool fixes = true;
      for (const auto& m : F)
        if (!F.count(apply_perm_to_mono(g, m))) {
          fixes = false;
          break;
        }
      if (fixes) ++stab;
    }
    return stab == H.size();
  };
  // multilinear subset seeds first, smallest degree wins
  int s_max = static_cast<int>(support.size());
  for (int size = 1; size < s_max; ++size) {
    std::vector<int> comb(size);
    std::function<bool(int, int)> rec = [&](int start, int depth) -> bool {
      if (depth == size) {
        std::vector<int> seed(n, 0);
        for (int c : comb) seed[c] = 1;
        auto F = orbit_of_mono(h_elems, seed);
        if (stab_is_H(F)) return true;
        return false;
      }
      for (int i = start; i < s_max; ++i) {
        comb[depth] = support[i];
        if (rec(i + 1, depth + 1)) return true;
      }
      return false;
    };
    if (rec(0, 0)) {
      std::vector<int> seed(n, 0);
      for (int c : comb) seed[c] = 1;
      return OrbitSumInvariant{orbit_of_mono(h_elems, seed)};
    }
  }
  // fallback: distinct exponents on the full support always separate
  std::vector<int> seed(n, 0);
  for (size_t j = 0; j < support.size(); ++j) seed[support[j]] = static_cast<int>(j + 1);
  auto F = orbit_of_mono(h_elems, seed);
  check(stab_is_H(F), errc::internal, "distinct-exponent invariant failed to separate");
  return OrbitSumInvariant{F};
}

// integer bound for |resolvent value| at any archimedean place, with the
// Tschirnhaus parameter c applied to the roots
inline Int resolvent_value_bound(const LabeledRoots& roots, const OrbitSumInvariant& F, long c) {
  Int bound = Int(static_cast<unsigned long>(F.monos.size()));
  Int per_mono = 1;
  // max block degree over monomials
  for (const auto& b : roots.blocks) {
    int dmax = 0;
    for (const auto& m : F.monos) {
      int d = 0;
      for (int i = b.offset; i < b.offset + b.count; ++i) d += m[i];
      dmax = std::max(dmax, d);
    }
    Int root_bound = (isqrt(b.q) + 1) * (1 + c);
    per_mono *= pow_int(root_bound, static_cast<unsigned long>(dmax));
  }
  return bound * per_mono;
}

inline long precision_for_bound(const LabeledRoots& roots, const Int& bound, long B) {
  // ell^(f m) > (2 * bound)^B certifies integrality; overestimate the log
  double logb = static_cast<double>(mpz_sizeinbase(bound.get_mpz_t(), 2)) * 0.6931471805599453;
  double num = B * (0.6931471805599453 + logb);
  double den = roots.field.f * std::log(roots.field.ell.get_d());
  return static_cast<long>(num / den) + 2;
}

struct ResolventContext {
  const LabeledRoots* roots;
  long tschirnhaus = 0;
  long precision = 2;
  std::vector<PadicRing::Elem> tuple;

  void prepare(const LabeledRoots& r, long c, long m) {
    roots = &r;
    tschirnhaus = c;
    precision = m;
    auto rts = r.roots_at(m);
    PadicRing R(r.field, m);
    tuple = rts;
    if (c != 0) {
      for (int i = 0; i < r.n(); ++i) {
        const auto& blk = r.block_of(i);
        auto shift = R.mul(R.from_int(blk.q * c), R.inv(rts[i]));
        tuple[i] = R.add(rts[i], shift);
      }
    }
  }

  PadicRing::Elem evaluate(const OrbitSumInvariant& F, const Perm& coset_rep) const {
    PadicRing R(roots->field, precision);
    PadicRing::Elem acc = R.zero();
    for (const auto& m : F.monos) {
      auto moved = apply_perm_to_mono(coset_rep, m);
      PadicRing::Elem term = R.one();
      for (size_t i = 0; i < moved.size(); ++i)
        if (moved[i] != 0) term = R.mul(term, R.pow(tuple[i], Int(moved[i])));
      acc = R.add(acc, term);
    }
    return acc;
  }
};

// one Stauduhar step: decide whether the Galois group lies in a conjugate of
// H inside G, and if so in which coset's conjugate
inline std::optional<int> descend_step(const LabeledRoots& roots, const SmallGroupTable& table,
                                       const std::vector<int>& G, const std::vector<int>& H,
                                       const std::vector<int>& coset_reps,
                                       const std::vector<bool>& coset_allowed,
                                       const std::vector<int>& support,
                                       const GaloisConfig& cfg) {
  auto F = make_invariant(table, G, H, support);
  long B = static_cast<long>(G.size());
  for (long c = 0; c <= cfg.max_tschirnhaus; ++c) {
    Int bound = resolvent_value_bound(roots, F, c);
    long m = precision_for_bound(roots, bound, B);
    ResolventContext ctx;
    ctx.prepare(roots, c, m);
    PadicRing R(roots.field, m);
    std::vector<PadicRing::Elem> values;
    values.reserve(coset_reps.size());
    for (int rep : coset_reps) values.push_back(ctx.evaluate(F, table.elem(rep)));
    // global distinctness is certified by distinctness mod ell^m
    bool collision = false;
    for (size_t a = 0; a < values.size() && !collision; ++a)
      for (size_t b = a + 1; b < values.size() && !collision; ++b)
        if (values[a] == values[b]) collision = true;
    if (collision) continue;  // perturb and retry
    for (size_t j = 0; j < values.size(); ++j) {
      if (!coset_allowed[j]) continue;
      auto rat = R.rational_value(values[j]);
      if (!rat) continue;
      if (abs(*rat) > bound) continue;
      return static_cast<int>(j);
    }
    return std::nullopt;
  }
  fail(errc::precision_exhausted, "resolvent values kept colliding after perturbation");
}

}  // namespace galois_detail

// Galois group of the (squarefree parts of the) polynomials behind `roots`,
// acting on the labels.  Descends through maximal subgroups of the pairing
// overgroup, certifying each step by exact resolvent integrality.
inline PermGroup galois_group_on(const LabeledRoots& roots, const PermGroup& overgroup,
                                 const std::vector<int>& support, const GaloisConfig& cfg = {}) {
  using galois_detail::descend_step;
  Perm frob = local_frobenius(roots);
  Perm iota = pairing_involution(roots);
  check(overgroup.contains(frob), errc::internal, "Frobenius not inside the overgroup");
  check(overgroup.contains(iota), errc::internal, "pairing not inside the overgroup");

  SmallGroupTable table(overgroup, cfg.max_table_order);
  auto subgroups = table.all_subgroups();
  int frob_idx = table.index_of(frob);
  int iota_idx = table.index_of(iota);

  std::vector<int> G = subgroups.back();  // the whole group
  while (true) {
    auto maximals = table.maximal_subgroups(G, subgroups);
    // conjugacy dedupe inside G: testing all cosets of one representative
    // covers every conjugate
    std::set<std::vector<int>> seen;
    bool descended = false;
    for (const auto& H : maximals) {
      if (descended) break;
      // iota is central in the overgroup, so conjugation never moves it in
      if (!std::binary_search(H.begin(), H.end(), iota_idx)) continue;
      std::vector<int> canon = H;
      for (int g : G) canon = std::min(canon, table.conjugate_subgroup(H, g));
      if (!seen.insert(canon).second) continue;
      auto reps = table.coset_reps(G, H);
      // Gamma lies in gHg^-1 only if the conjugate contains Frobenius
      std::vector<bool> allowed(reps.size());
      bool any = false;
      for (size_t j = 0; j < reps.size(); ++j) {
        int g = reps[j];
        int moved = table.mul(table.inv(g), table.mul(frob_idx, g));
        allowed[j] = std::binary_search(H.begin(), H.end(), moved);
        any = any || allowed[j];
      }
      if (!any) continue;
      auto hit = descend_step(roots, table, G, H, reps, allowed, support, cfg);
      if (hit) {
        G = table.conjugate_subgroup(H, reps[*hit]);
        descended = true;
      }
    }
    if (!descended) break;
  }
  return table.to_perm_group(G);
}

inline PermGroup galois_group(const LabeledRoots& roots, const GaloisConfig& cfg = {}) {
  std::vector<int> support(roots.n());
  for (int i = 0; i < roots.n(); ++i) support[i] = i;
  return galois_group_on(roots, pairing_overgroup(roots), support, cfg);
}

// certified test "Galois group inside H" for a fixed subgroup H of the
// overgroup; exhaustive-testing oracle used by the verification suite
inline bool galois_contained_in(const LabeledRoots& roots, const SmallGroupTable& table,
                                const std::vector<int>& whole, const std::vector<int>& H,
                                const GaloisConfig& cfg = {}) {
  using namespace galois_detail;
  Perm frob = local_frobenius(roots);
  Perm iota = pairing_involution(roots);
  if (!std::binary_search(H.begin(), H.end(), table.index_of(frob))) return false;
  if (!std::binary_search(H.begin(), H.end(), table.index_of(iota))) return false;
  if (H.size() == whole.size()) return true;
  std::vector<int> support(roots.n());
  for (int i = 0; i < roots.n(); ++i) support[i] = i;
  auto F = make_invariant(table, whole, H, support);
  long B = static_cast<long>(whole.size());
  auto reps = table.coset_reps(whole, H);
  for (long c = 0; c <= cfg.max_tschirnhaus; ++c) {
    Int bound = resolvent_value_bound(roots, F, c);
    long m = precision_for_bound(roots, bound, B);
    ResolventContext ctx;
    ctx.prepare(roots, c, m);
    PadicRing R(roots.field, m);
    std::vector<PadicRing::Elem> values;
    for (int rep : reps) values.push_back(ctx.evaluate(F, table.elem(rep)));
    bool collision = false;
    for (size_t a = 0; a < values.size() && !collision; ++a)
      for (size_t b = a + 1; b < values.size() && !collision; ++b)
        if (values[a] == values[b]) collision = true;
    if (collision) continue;
    // identity coset first by construction of coset_reps
    auto rat = R.rational_value(values[0]);
    return rat.has_value() && abs(*rat) <= bound;
  }
  fail(errc::precision_exhausted, "resolvent values kept colliding after perturbation");
}

// exhaustive oracle: intersection of all certified subgroups
inline PermGroup galois_group_oracle(const LabeledRoots& roots, const GaloisConfig& cfg = {}) {
  PermGroup over = pairing_overgroup(roots);
  SmallGroupTable table(over, cfg.max_table_order);
  auto subgroups = table.all_subgroups();
  const auto& whole = subgroups.back();
  std::vector<int> inter = whole;
  for (const auto& H : subgroups) {
    if (galois_contained_in(roots, table, whole, H, cfg)) {
      std::vector<int> next;
      std::set_intersection(inter.begin(), inter.end(), H.begin(), H.end(),
                            std::back_inserter(next));
      inter = next;
    }
  }
  return table.to_perm_group(inter);
}

struct RelativeGroups {
  PermGroup gamma;  // Gal(Q(W_p)/Q) on the labels of P_p
  PermGroup weyl;   // Gal(L(W_p)/L) with L = Q(W_q), on the same labels
  LabeledRoots roots_p;
  LabeledRoots roots_q;
  PermGroup gamma_q;
};

namespace galois_detail {

inline LabeledRoots block_view(const LabeledRoots& roots, size_t b) {
  LabeledRoots out;
  out.field = roots.field;
  RootBlock blk = roots.blocks[b];
  int off = blk.offset;
  blk.offset = 0;
  out.blocks = {blk};
  for (int i = 0; i < blk.count; ++i) {
    out.residues.push_back(roots.residues[off + i]);
    int p = roots.pairing[off + i];
    out.pairing.push_back(p < 0 ? -1 : p - off);
  }
  out.clean_pairing = roots.clean_pairing;
  return out;
}

}  // namespace galois_detail

// Galois data of P_p relative to L = Q(W_q): the Galois group of the product
// polynomial is computed on the disjoint labels, and W is the image on the
// P_p labels of the subgroup acting trivially on the P_q labels.
inline RelativeGroups relative_group(const WeilPolynomial& P_p, const WeilPolynomial& P_q,
                                     const SplittingConfig& scfg = {},
                                     const GaloisConfig& cfg = {}) {
  IntPoly sp = squarefree_part(P_p.poly);
  IntPoly sq = squarefree_part(P_q.poly);
  check(gcd_poly(sp, sq).degree() == 0, errc::polynomials_not_coprime,
        "the two Frobenius polynomials share roots");
  LabeledRoots combined = build_splitting_field_multi({{sp, P_p.q}, {sq, P_q.q}}, scfg);
  int n = combined.blocks[0].count;
  int m2 = combined.blocks[1].count;

  // factor groups on each block of the shared labeling
  LabeledRoots view_p = galois_detail::block_view(combined, 0);
  LabeledRoots view_q = galois_detail::block_view(combined, 1);
  PermGroup gamma_p = galois_group(view_p, cfg);
  PermGroup gamma_q = galois_group(view_q, cfg);

  // candidate containing the product-polynomial group: Gamma_p x Gamma_q
  std::vector<Perm> prod_gens;
  for (const auto& g : gamma_p.generators()) {
    Perm ext = perm_identity(n + m2);
    for (int i = 0; i < n; ++i) ext[i] = g[i];
    prod_gens.push_back(ext);
  }
  for (const auto& g : gamma_q.generators()) {
    Perm ext = perm_identity(n + m2);
    for (int i = 0; i < m2; ++i) ext[n + i] = n + g[i];
    prod_gens.push_back(ext);
  }
  PermGroup candidate(n + m2, prod_gens);
  std::vector<int> support(n + m2);
  for (int i = 0; i < n + m2; ++i) support[i] = i;
  PermGroup gamma0 = galois_group_on(combined, candidate, support, cfg);

  // projections
  auto elems = gamma0.elements();
  std::vector<Perm> proj_p_gens, weyl_gens;
  for (const auto& g : elems) {
    Perm pp(n);
    for (int i = 0; i < n; ++i) pp[i] = g[i];
    proj_p_gens.push_back(pp);
    bool fixes_q = true;
    for (int i = 0; i < m2; ++i)
      if (g[n + i] != n + i) fixes_q = false;
    if (fixes_q) weyl_gens.push_back(pp);
  }
  RelativeGroups out{PermGroup(n, proj_p_gens), PermGroup(n, weyl_gens), std::move(view_p),
                     std::move(view_q), gamma_q};
  // the projection to the p factor must reproduce Gamma_p
  check(out.gamma.order() == gamma_p.order(), errc::internal,
        "product group projection mismatch");
  return out;
}

}  // namespace mtroot

#endif
