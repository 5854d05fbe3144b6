#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>
#include <set>

#include "mtroot/gf.hpp"
#include "mtroot/intpoly.hpp"
#include "mtroot/weil.hpp"

using namespace mtroot;

namespace {

IntPoly ipoly(std::vector<long> cs) {
  std::vector<Int> v;
  for (long c : cs) v.emplace_back(c);
  return IntPoly(v);
}

// float root finder used only as a cross-check oracle
std::vector<std::complex<double>> durand_kerner(const IntPoly& p) {
  int n = p.degree();
  std::vector<std::complex<double>> cs(n + 1);
  for (int i = 0; i <= n; ++i) cs[i] = p.coeff(i).get_d();
  std::vector<std::complex<double>> r(n);
  std::complex<double> seed(0.4, 0.9);
  std::complex<double> acc(1.0, 0.0);
  for (int i = 0; i < n; ++i) {
    acc *= seed;
    r[i] = acc;
  }
  for (int iter = 0; iter < 2000; ++iter) {
    double moved = 0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> num = cs[n];
      for (int k = n - 1; k >= 0; --k) num = num * r[i] + cs[k];
      std::complex<double> den = cs[n];
      for (int j = 0; j < n; ++j)
        if (j != i) den *= (r[i] - r[j]);
      std::complex<double> delta = num / den;
      r[i] -= delta;
      moved += std::abs(delta);
    }
    if (moved < 1e-13) break;
  }
  return r;
}

}  // namespace

TEST_CASE("integer polynomial basics") {
  IntPoly f = ipoly({5, -1, 1});  // x^2 - x + 5
  REQUIRE(f.degree() == 2);
  REQUIRE(f.is_monic());
  REQUIRE(eval(f, Int(2)) == 7);
  REQUIRE(to_string(f) == "x^2 - x + 5");

  IntPoly g = mul(f, f);
  REQUIRE(g.degree() == 4);
  REQUIRE(divexact_poly(g, f) == f);

  REQUIRE(gcd_poly(g, derivative(g)) == f);
}

TEST_CASE("squarefree factorization") {
  SECTION("perfect square") {
    auto fac = squarefree_factorization(ipoly({1, -2, 1}));
    REQUIRE(fac.size() == 1);
    REQUIRE(fac[0].first == ipoly({-1, 1}));
    REQUIRE(fac[0].second == 2);
  }
  SECTION("already squarefree") {
    auto fac = squarefree_factorization(ipoly({-1, 0, 0, 0, 1}));
    REQUIRE(fac.size() == 1);
    REQUIRE(fac[0].first == ipoly({-1, 0, 0, 0, 1}));
    REQUIRE(fac[0].second == 1);
  }
  SECTION("doubled quartic, the repeated-factor shape") {
    IntPoly q = ipoly({289, -34, 18, -2, 1});
    auto fac = squarefree_factorization(mul(q, q));
    REQUIRE(fac.size() == 1);
    REQUIRE(fac[0].first == q);
    REQUIRE(fac[0].second == 2);
  }
  SECTION("reassembly identity on random products") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      IntPoly f = IntPoly::constant(1);
      std::vector<std::pair<IntPoly, int>> built;
      for (int k = 0; k < 3; ++k) {
        IntPoly g = ipoly({(long)(rng() % 7 + 1), (long)(rng() % 5), 1});
        int mult = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < mult; ++i) f = mul(f, g);
      }
      IntPoly re = IntPoly::constant(1);
      for (const auto& [fac, m] : squarefree_factorization(f))
        for (int i = 0; i < m; ++i) re = mul(re, fac);
      REQUIRE(primitive_part(re) == primitive_part(f));
    }
  }
}

TEST_CASE("factorization mod small primes") {
  SECTION("x^2+1 splits mod 5") {
    auto fac = factor_mod_prime(ipoly({1, 0, 1}), Int(5));
    REQUIRE(fac.size() == 2);
    REQUIRE(fac[0].first == ipoly({2, 1}));  // x+2 = x-3
    REQUIRE(fac[1].first == ipoly({3, 1}));  // x+3 = x-2
  }
  SECTION("x^2+1 inert mod 3") {
    auto fac = factor_mod_prime(ipoly({1, 0, 1}), Int(3));
    REQUIRE(fac.size() == 1);
    REQUIRE(fac[0].first == ipoly({1, 0, 1}));
    REQUIRE(fac[0].second == 1);
  }
  SECTION("x^3-1 mod 7 has three linear factors") {
    // oracle: cube roots of unity mod 7 by enumeration
    std::vector<long> cubes;
    for (long a = 0; a < 7; ++a)
      if ((a * a * a) % 7 == 1) cubes.push_back(a);
    REQUIRE(cubes.size() == 3);
    auto fac = factor_mod_prime(ipoly({-1, 0, 0, 1}), Int(7));
    REQUIRE(fac.size() == 3);
    for (const auto& [f, m] : fac) {
      REQUIRE(f.degree() == 1);
      REQUIRE(m == 1);
    }
  }
  SECTION("degrees sum with multiplicity") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<Int> cs;
      int deg = 2 + static_cast<int>(rng() % 7);
      for (int i = 0; i < deg; ++i) cs.emplace_back((long)(rng() % 19) - 9);
      cs.emplace_back(1);
      IntPoly f(cs);
      long ell = std::vector<long>{3, 5, 7, 11, 13}[rng() % 5];
      int total = 0;
      for (const auto& [fac, m] : factor_mod_prime(f, Int(ell))) total += fac.degree() * m;
      FpPoly reduced = fp::from_intpoly(f, ell);
      REQUIRE(total == fp::degree(reduced));
    }
  }
}

TEST_CASE("Weil polynomial validation") {
  SECTION("x^2 - x + 5 at q=5 is a valid genus-1 polynomial") {
    auto w = validate_weil(ipoly({5, -1, 1}), Int(5));
    REQUIRE(w.g == 1);
    REQUIRE(w.p == 5);
    REQUIRE(w.d == 1);
  }
  SECTION("x^2 + 5 is valid (supersingular shape)") {
    auto w = validate_weil(ipoly({5, 0, 1}), Int(5));
    REQUIRE(w.g == 1);
  }
  SECTION("x^2 - 6x + 5 fails the Weil bound") {
    // roots 1 and 5; functional equation holds but |5| != sqrt(5)
    try {
      validate_weil(ipoly({5, -6, 1}), Int(5));
      FAIL("expected WeilBoundFails");
    } catch (const error& e) {
      REQUIRE(e.code() == errc::weil_bound_fails);
    }
  }
  SECTION("non-monic rejected") {
    try {
      validate_weil(ipoly({5, 0, 2}), Int(5));
      FAIL("expected NotMonic");
    } catch (const error& e) {
      REQUIRE(e.code() == errc::not_monic);
    }
  }
  SECTION("functional equation failure") {
    try {
      validate_weil(ipoly({3, 0, 1}), Int(5));
      FAIL("expected FunctionalEquationFails");
    } catch (const error& e) {
      REQUIRE(e.code() == errc::functional_equation_fails);
    }
  }
  SECTION("double root at sqrt(q): (x-p)^2 over q=p^2") {
    auto w = validate_weil(ipoly({9, -6, 1}), Int(9));
    REQUIRE(w.g == 1);
    REQUIRE(w.p == 3);
    REQUIRE(w.d == 2);
  }
  SECTION("products of Weil polynomials stay valid") {
    IntPoly a = ipoly({5, -1, 1});
    IntPoly b = ipoly({5, 2, 1});
    IntPoly c = ipoly({5, 0, 1});
    auto w = validate_weil(mul(mul(a, b), c), Int(5));
    REQUIRE(w.g == 3);
  }
}

TEST_CASE("Sturm certification against float roots") {
  // random degree <= 12 Weil polynomials built as products of valid quadratics
  std::mt19937 rng(2024);
  int built = 0;
  while (built < 100) {
    long p = std::vector<long>{5, 7, 11, 13, 17}[rng() % 5];
    int gg = 1 + static_cast<int>(rng() % 6);
    IntPoly f = IntPoly::constant(1);
    std::set<long> used;  // distinct factors keep the float oracle sharp
    for (int i = 0; i < gg; ++i) {
      long bound = static_cast<long>(2 * std::sqrt((double)p));
      long a = (long)(rng() % (2 * bound + 1)) - bound;
      if (!used.insert(a).second) continue;
      f = mul(f, ipoly({p, a, 1}));
    }
    ++built;
    auto w = validate_weil(f, Int(p));  // must accept
    // float oracle within 1e-6
    for (const auto& r : durand_kerner(f)) {
      REQUIRE(std::abs(std::abs(r) - std::sqrt((double)p)) < 1e-6);
    }
    (void)w;
  }
}
