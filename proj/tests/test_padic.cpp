#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mtroot/padic.hpp"
#include "mtroot/pointcount.hpp"

using namespace mtroot;

namespace {
IntPoly ipoly(std::vector<long> cs) {
  std::vector<Int> v;
  for (long c : cs) v.emplace_back(c);
  return IntPoly(v);
}
}  // namespace

TEST_CASE("splitting field construction") {
  SECTION("x^2+1 splits at ell = 5 with f = 1") {
    SplittingConfig cfg;
    cfg.aux_prime_min = 5;
    auto roots = build_splitting_field(ipoly({1, 0, 1}), Int(2), cfg);
    REQUIRE(roots.field.ell == 5);
    REQUIRE(roots.field.f == 1);
    REQUIRE(roots.n() == 2);
    // residues are 2 and 3 in some label order
    std::vector<Int> seen = {roots.residues[0][0], roots.residues[1][0]};
    std::sort(seen.begin(), seen.end());
    REQUIRE(seen == std::vector<Int>{Int(2), Int(3)});
  }
  SECTION("prime dividing the discriminant is skipped") {
    // x^2 + 7x + 49 is not squarefree mod 3, so ell = 3 must be skipped
    auto roots = build_splitting_field(ipoly({49, 7, 1}), Int(49));
    REQUIRE(roots.field.ell == 5);
    uint64_t ell = roots.field.ell.get_ui();
    FpPoly f = fp::from_intpoly(ipoly({49, 7, 1}), ell);
    REQUIRE(fp::degree(fp::gcd(f, fp::derivative(f, ell), ell)) == 0);
  }
  SECTION("CM example: 8 roots and 4 involution pairs at p = 19") {
    HyperellipticCurve c(ipoly({-1, 0, 0, 0, 0, 0, 0, 0, 0, 1}));
    auto w = frobenius_polynomial_from_curve(c, Int(19));
    auto roots = build_splitting_field(w.poly, w.q);
    REQUIRE(roots.n() == 8);
    for (int i = 0; i < 8; ++i) {
      REQUIRE(roots.pairing[roots.pairing[i]] == i);
      REQUIRE(roots.pairing[i] != i);
      if (i < 4) REQUIRE(roots.pairing[i] == i + 4);
    }
  }
  SECTION("pi^2 = q gives a degenerate labeling") {
    // x^2 - 9 = (x-3)(x+3) over q=9: both roots are fixed by pi -> q/pi
    IntPoly P = ipoly({-9, 0, 1});
    auto roots = build_splitting_field(P, Int(9));
    REQUIRE_FALSE(roots.clean_pairing);
    try {
      roots.require_pairing();
      FAIL("expected PairingFails");
    } catch (const error& e) {
      REQUIRE(e.code() == errc::pairing_fails);
    }
  }
}

TEST_CASE("Hensel lifting") {
  SECTION("x^2 - 2 at ell = 7 reaches 2166 at precision 4") {
    SplittingConfig cfg;
    cfg.aux_prime_min = 7;
    auto roots = build_splitting_field(ipoly({-2, 0, 1}), Int(2), cfg);
    REQUIRE(roots.field.ell == 7);
    REQUIRE(roots.field.f == 1);
    roots.lift_to(4);
    auto rts = roots.roots_at(4);
    std::vector<Int> vals = {rts[0][0], rts[1][0]};
    std::sort(vals.begin(), vals.end());
    REQUIRE(vals[0] == 235);   // 2401 - 2166
    REQUIRE(vals[1] == 2166);  // 3 + 1*7 + 2*49 + 6*343
    REQUIRE(mod_pos(Int(2166) * 2166 - 2, pow_int(Int(7), 4)) == 0);
  }
  SECTION("lifting is idempotent") {
    auto roots = build_splitting_field(ipoly({5, -1, 1}), Int(5));
    roots.lift_to(6);
    auto a = roots.roots_at(6);
    roots.lift_to(6);
    auto b = roots.roots_at(6);
    REQUIRE(a == b);
    roots.lift_to(12);
    auto c = roots.roots_at(6);  // reduction of higher precision agrees
    REQUIRE(a == c);
  }
  SECTION("pairing holds at every precision") {
    auto roots = build_splitting_field(ipoly({5, -1, 1}), Int(5));
    roots.require_pairing();
    for (long m : {2L, 5L, 9L}) {
      auto rts = roots.roots_at(m);
      PadicRing R(roots.field, m);
      for (int i = 0; i < roots.n(); ++i) {
        auto prod = R.mul(rts[i], rts[roots.pairing[i]]);
        REQUIRE(prod == R.from_int(Int(5)));
      }
    }
  }
}

TEST_CASE("certified product tests") {
  SECTION("empty product is one") {
    auto roots = build_splitting_field(ipoly({5, -1, 1}), Int(5));
    std::vector<Int> e(2, Int(0));
    REQUIRE(certified_product_is_one(roots, e, 2));
  }
  SECTION("pairing identity pi * pibar * q^-1 = 1") {
    auto roots = build_splitting_field(ipoly({5, -1, 1}), Int(5));
    std::vector<Int> e = {Int(1), Int(1)};
    REQUIRE(certified_product_is_one(roots, e, 2, {Int(-1)}));
    // and the same with e and -e swapped
    std::vector<Int> eneg = {Int(-1), Int(-1)};
    REQUIRE(certified_product_is_one(roots, eneg, 2, {Int(1)}));
  }
  SECTION("non-relation rejected") {
    auto roots = build_splitting_field(ipoly({5, -1, 1}), Int(5));
    std::vector<Int> e = {Int(2), Int(1)};
    REQUIRE_FALSE(certified_product_is_one(roots, e, 2, {Int(-1)}));
    REQUIRE_FALSE(certified_product_is_one(roots, {Int(1), Int(-1)}, 2));
  }
  SECTION("e and -e always agree") {
    std::mt19937 rng(3);
    auto roots =
        build_splitting_field(mul(ipoly({5, -1, 1}), ipoly({5, 2, 1})), Int(5));
    for (int t = 0; t < 10; ++t) {
      std::vector<Int> e(roots.n());
      for (auto& x : e) x = (long)(rng() % 5) - 2;
      std::vector<Int> en(e.size());
      for (size_t i = 0; i < e.size(); ++i) en[i] = -e[i];
      REQUIRE(certified_product_is_one(roots, e, 24) ==
              certified_product_is_one(roots, en, 24));
    }
  }
}

TEST_CASE("root of unity certification over cyclotomic systems") {
  // roots p * zeta_m have exactly the relations sum(e) = 0 and
  // sum(j_i e_i) = 0 mod m; symbolic truth is computable per label
  std::mt19937 rng(17);
  int checked = 0;
  for (long m : {3L, 4L, 5L, 6L}) {
    long p = 7;
    // P = prod (x - p zeta^j) = p^phi(m) Phi_m(x/p) has integer coefficients;
    // build directly from the cyclotomic polynomial
    std::vector<std::vector<long>> cyclo = {{}, {}, {}, {1, 1, 1}, {1, 0, 1}, {1, 1, 1, 1, 1}, {1, -1, 1}};
    std::vector<long> cm = cyclo[m];
    std::vector<Int> cs(cm.size());
    int deg = static_cast<int>(cm.size()) - 1;
    for (size_t i = 0; i < cm.size(); ++i)
      cs[i] = Int(cm[i]) * pow_int(Int(p), static_cast<unsigned long>(deg - i));
    IntPoly P{cs};
    Int q = Int(p) * p;  // |p zeta| = p = sqrt(p^2)
    auto roots = build_splitting_field(P, q);
    // recover the symbolic exponent of each label: residue of pi/p has exact
    // multiplicative order m, and discrete logs in <zeta> are brute-forced
    const GFContext& gf = roots.gf();
    int n = roots.n();
    std::vector<GFContext::Elem> zres(n);
    for (int i = 0; i < n; ++i) {
      GFContext::Elem r(roots.field.f);
      for (int j = 0; j < roots.field.f; ++j)
        r[j] = mpz_fdiv_ui(roots.residues[i][j].get_mpz_t(), gf.p);
      fp::normalize(r);
      zres[i] = gf.mul(r, gf.inv(gf.from_u(p)));
    }
    // reference primitive root of unity among the labels
    std::vector<long> dlog(n, -1);
    for (int ref = 0; ref < n; ++ref) {
      bool all = true;
      for (int i = 0; i < n && all; ++i) {
        long j = -1;
        auto pow = gf.one();
        for (long t = 0; t < m; ++t) {
          if (pow == zres[i]) {
            j = t;
            break;
          }
          pow = gf.mul(pow, zres[ref]);
        }
        if (j < 0)
          all = false;
        else
          dlog[i] = j;
      }
      if (all) break;
    }
    for (int i = 0; i < n; ++i) REQUIRE(dlog[i] >= 0);

    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Int> e(n);
      for (auto& x : e) x = (long)(rng() % 7) - 3;
      long esum = 0, zsum = 0;
      for (int i = 0; i < n; ++i) {
        esum += e[i].get_si();
        zsum += dlog[i] * e[i].get_si();
      }
      bool sym_one = (esum == 0) && (zsum % m == 0);
      bool sym_torsion = (esum == 0);
      REQUIRE(certified_product_is_one(roots, e, 12) == sym_one);
      auto ord = root_of_unity_order(roots, e, 12);
      REQUIRE(ord.has_value() == sym_torsion);
      ++checked;
    }
  }
  REQUIRE(checked == 200);
}
