#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mtroot/galois.hpp"
#include "mtroot/philattice.hpp"
#include "mtroot/pointcount.hpp"

using namespace mtroot;

namespace {
IntPoly ipoly(std::vector<long> cs) {
  std::vector<Int> v;
  for (long c : cs) v.emplace_back(c);
  return IntPoly(v);
}

PermGroup order_two(int n, int a, int b) {
  Perm p = perm_identity(n);
  std::swap(p[a], p[b]);
  return PermGroup(n, {p});
}
}  // namespace

TEST_CASE("ordinarity test") {
  REQUIRE(is_ordinary(validate_weil(ipoly({5, -1, 1}), Int(5))));
  REQUIRE_FALSE(is_ordinary(validate_weil(ipoly({5, 0, 1}), Int(5))));
  REQUIRE(is_ordinary(validate_weil(ipoly({49, 7, 3, 1, 1}), Int(7))));
}

TEST_CASE("ordinary partitions for a quadratic") {
  auto w = validate_weil(ipoly({5, -1, 1}), Int(5));
  auto roots = build_splitting_field(w.poly, w.q);
  PermGroup gamma = order_two(2, 0, 1);
  auto parts = find_ordinary_partition(roots, gamma, 2);
  REQUIRE(parts.size() == 2);  // both singletons valid by symmetry
  for (const auto& S : parts) REQUIRE(S.labels.size() == 1);
  // the constraint lattice is zero: e_1 = e_2 = 0
  auto M0 = valuation_constraints_ordinary(roots, gamma, parts[0]);
  REQUIRE(mat_rows(M0) == 0);
}

TEST_CASE("Phi of an ordinary elliptic polynomial is free of rank 2") {
  auto w = validate_weil(ipoly({5, -1, 1}), Int(5));
  auto roots = build_splitting_field(w.poly, w.q);
  PermGroup gamma = order_two(2, 0, 1);
  auto phi = phi_structure(w, roots, gamma, 2);
  REQUIRE(phi.rank == 2);
  REQUIRE(phi.is_free);
  REQUIRE(phi.invariant_factors.empty());
  // oracle: the 2-variable relation lattice solved by hand is zero
  REQUIRE(mat_rows(phi.relations) == 0);
}

TEST_CASE("x^2 + q has torsion") {
  auto w = validate_weil(ipoly({7, 0, 1}), Int(7));
  auto roots = build_splitting_field(w.poly, w.q);
  PermGroup gamma = order_two(2, 0, 1);
  REQUIRE_THROWS_AS(phi_structure(w, roots, gamma, 2), error);
  auto phi = phi_structure_general(w, roots, gamma, 2);
  REQUIRE(phi.rank == 1);
  REQUIRE_FALSE(phi.is_free);
  REQUIRE(phi.invariant_factors == std::vector<Int>{Int(2)});
  // (pi / pibar)^2 = 1: the relation 2e_1 - 2e_2 generates M
  REQUIRE(certified_product_is_one(roots, {Int(2), Int(-2)}, 2));
}

TEST_CASE("ordinary and polygon methods agree on random genus-2 input") {
  std::mt19937 rng(41);
  int done = 0;
  while (done < 20) {
    long p = std::vector<long>{5, 7, 11, 13}[rng() % 4];
    long bound = static_cast<long>(2 * std::sqrt((double)p));
    long a = (long)(rng() % (2 * bound + 1)) - bound;
    long b = (long)(rng() % (4 * p + 1)) - 2 * p;
    IntPoly P = ipoly({p * p, a * p, b, a, 1});
    WeilPolynomial w;
    try {
      w = validate_weil(P, Int(p));
    } catch (const error&) {
      continue;
    }
    if (!is_ordinary(w)) continue;
    if (!is_squarefree(P)) continue;
    LabeledRoots roots;
    try {
      roots = build_splitting_field(P, Int(p));
      roots.require_pairing();
    } catch (const error&) {
      continue;
    }
    PermGroup gamma = galois_group(roots);
    long B = gamma.order().get_si();
    auto phi_a = phi_structure(w, roots, gamma, B);
    auto phi_b = phi_structure_general(w, roots, gamma, B);
    REQUIRE(phi_a.relations == phi_b.relations);
    REQUIRE(phi_a.rank == phi_b.rank);
    REQUIRE(phi_a.invariant_factors == phi_b.invariant_factors);
    for (const auto& row : phi_a.relations) REQUIRE(certified_product_is_one(roots, row, B));
    // a free Phi forces a fixed-point-free pairing and rank <= g + 1
    if (phi_a.is_free) {
      REQUIRE(roots.clean_pairing);
      REQUIRE(phi_a.rank <= 3);
    }
    ++done;
  }
}

TEST_CASE("membership in M matches the certified test on a small ball") {
  auto w = validate_weil(ipoly({25, 5, 6, 1, 1}), Int(5));
  REQUIRE(is_squarefree(w.poly));
  auto roots = build_splitting_field(w.poly, w.q);
  PermGroup gamma = galois_group(roots);
  long B = gamma.order().get_si();
  auto phi = phi_structure_auto(w, roots, gamma, B);
  int n = phi.n;
  std::vector<Int> e(n, Int(-2));
  while (true) {
    IMat stacked = phi.relations;
    stacked.push_back(e);
    bool nonzero = false;
    for (const auto& x : e)
      if (x != 0) nonzero = true;
    bool in_M = !nonzero || (hnf(stacked) == phi.relations);
    REQUIRE(certified_product_is_one(roots, e, B) == in_M);
    int i = 0;
    while (i < n && e[i] == 2) e[i++] = -2;
    if (i == n) break;
    e[i] += 1;
  }
}

TEST_CASE("genus-2 partition candidates") {
  auto w = validate_weil(ipoly({49, 7, 3, 1, 1}), Int(7));
  REQUIRE(is_squarefree(w.poly));
  auto roots = build_splitting_field(w.poly, w.q);
  PermGroup gamma = galois_group(roots);
  auto parts = find_ordinary_partition(roots, gamma, gamma.order().get_si());
  REQUIRE(!parts.empty());
  REQUIRE(parts.size() <= 4);
  for (const auto& S : parts) {
    REQUIRE(S.labels.size() == 2);
    for (int i : S.labels) {
      REQUIRE(0 <= i);
      REQUIRE(i < 4);
    }
  }
}
