#include <catch2/catch_amalgamated.hpp>

#include "mtroot/pointcount.hpp"

using namespace mtroot;

namespace {
IntPoly ipoly(std::vector<long> cs) {
  std::vector<Int> v;
  for (long c : cs) v.emplace_back(c);
  return IntPoly(v);
}
}  // namespace

TEST_CASE("point counts on small curves") {
  SECTION("y^2 = x^3 - x over F_3") {
    HyperellipticCurve c(ipoly({0, -1, 0, 1}));
    REQUIRE(c.genus == 1);
    REQUIRE(count_points(c, Int(3), 1) == 4);
  }
  SECTION("exhaustive oracle over a few prime fields") {
    HyperellipticCurve c(ipoly({1, 2, 0, 1}));  // y^2 = x^3 + 2x + 1
    for (long p : {5L, 7L, 13L}) {
      long affine = 0;
      for (long x = 0; x < p; ++x) {
        long fx = ((x * x * x + 2 * x + 1) % p + p) % p;
        for (long y = 0; y < p; ++y)
          if ((y * y - fx) % p == 0) ++affine;
      }
      REQUIRE(count_points(c, Int(p), 1) == affine + 1);
    }
  }
  SECTION("even-degree model counts points at infinity correctly") {
    // y^2 = x^4 + 1, genus 1, two points at infinity when lc is a square
    HyperellipticCurve c(ipoly({1, 0, 0, 0, 1}));
    for (long p : {5L, 7L, 11L}) {
      long affine = 0;
      for (long x = 0; x < p; ++x) {
        long fx = ((x * x % p) * (x * x % p) % p + 1) % p;
        for (long y = 0; y < p; ++y)
          if ((y * y - fx) % p == 0) ++affine;
      }
      REQUIRE(count_points(c, Int(p), 1) == affine + 2);  // lc = 1 is a square
    }
  }
  SECTION("bad reduction is detected") {
    REQUIRE_THROWS_AS(HyperellipticCurve(ipoly({2, -3, 0, 1})), error);  // not squarefree over Q
    HyperellipticCurve d(ipoly({5, -5, 0, 1}));  // separable over Q, not mod 5
    try {
      count_points(d, Int(5), 1);
      FAIL("expected BadReduction");
    } catch (const error& e) {
      REQUIRE(e.code() == errc::bad_reduction);
    }
  }
  SECTION("extension count matches the genus-1 zeta relation") {
    HyperellipticCurve c(ipoly({1, 2, 0, 1}));
    long p = 7;
    Int n1 = count_points(c, Int(p), 1);
    Int n2 = count_points(c, Int(p), 2);
    Int a = p + 1 - n1;
    REQUIRE(n2 == Int(p) * p + 1 - (a * a - 2 * p));
  }
  SECTION("quadratic character by Euler criterion matches square tables") {
    for (auto [p, k] :
         std::vector<std::pair<long, int>>{{3, 2}, {5, 2}, {7, 2}, {97, 1}, {11, 3}}) {
      pc_detail::CountField F(p, k);
      uint64_t q = F.q;
      REQUIRE(q <= 10000);
      std::vector<int8_t> sq(q, 0);
      for (uint64_t i = 1; i < q; ++i) {
        auto e = F.from_index(i);
        pc_detail::CountField::Elem e2;
        F.mul(e, e, e2);
        sq[F.index(e2)] = 1;
      }
      for (uint64_t i = 1; i < q; ++i) {
        auto e = F.from_index(i);
        auto val = F.pow(e, (q - 1) / 2);
        bool euler_square = (val == F.one());
        REQUIRE(euler_square == (sq[i] == 1));
      }
    }
  }
}

TEST_CASE("Frobenius polynomial assembly") {
  SECTION("g=1 with 4 points over F_5") {
    CountVector cv;
    cv.p = 5;
    cv.counts = {Int(4)};
    auto w = frobenius_polynomial(cv, 1, Int(5));
    REQUIRE(w.poly == ipoly({5, -2, 1}));
  }
  SECTION("zero power sums give the supersingular shape") {
    CountVector cv;
    cv.p = 7;
    cv.counts = {Int(8)};  // s_1 = 0
    auto w = frobenius_polynomial(cv, 1, Int(7));
    REQUIRE(w.poly == ipoly({7, 0, 1}));
  }
  SECTION("curve-to-polynomial round trip satisfies the Weil bound") {
    HyperellipticCurve c(ipoly({-1, 0, 0, 0, 0, 1}));  // y^2 = x^5 - 1, genus 2
    for (long p : {7L, 11L, 13L}) {
      auto w = frobenius_polynomial_from_curve(c, Int(p));
      REQUIRE(w.g == 2);
      REQUIRE(w.poly.coeff(0) == Int(p) * p);
    }
  }
  SECTION("CM curve y^2 = x^9 - 1 at p = 19") {
    HyperellipticCurve c(ipoly({-1, 0, 0, 0, 0, 0, 0, 0, 0, 1}));
    REQUIRE(c.genus == 4);
    auto w = frobenius_polynomial_from_curve(c, Int(19));
    REQUIRE(w.g == 4);
    REQUIRE(w.poly.degree() == 8);
    REQUIRE(is_squarefree(w.poly));
  }
}
