#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mtroot/matgroup.hpp"
#include "mtroot/matrix.hpp"
#include "mtroot/perm.hpp"

using namespace mtroot;

namespace {
IMat imat(std::vector<std::vector<long>> rows) {
  IMat m;
  for (auto& r : rows) {
    Vec v;
    for (long x : r) v.emplace_back(x);
    m.push_back(v);
  }
  return m;
}
}  // namespace

TEST_CASE("HNF and kernels") {
  SECTION("HNF is a canonical lattice label") {
    IMat a = imat({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}});
    IMat b = imat({{-6, 6, 12}, {10, 4, 16}, {2, 4, 4}});
    REQUIRE(hnf(a) == hnf(b));
    // a known small example
    IMat h = hnf(imat({{2, 0}, {1, 1}}));
    REQUIRE(mat_rows(h) == 2);
    REQUIRE(abs(det(h)) == 2);
  }
  SECTION("kernel vectors annihilate the matrix") {
    IMat a = imat({{1, 1, 1, 1}, {1, -1, 2, 0}});
    IMat k = kernel(a);
    REQUIRE(mat_rows(k) == 2);
    for (const auto& v : k) {
      Vec img = mat_vec(a, v);
      for (const auto& x : img) REQUIRE(x == 0);
    }
  }
  SECTION("SNF diagonal with transforms") {
    IMat a = imat({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
    auto s = snf(a);
    // P*A*Q = D
    IMat d = mat_mul(mat_mul(s.P, a), s.Q);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) REQUIRE(d[i][j] == (i == j ? s.diag[i] : Int(0)));
    for (size_t i = 0; i + 1 < s.diag.size(); ++i)
      if (s.diag[i] != 0 && s.diag[i + 1] != 0) REQUIRE(s.diag[i + 1] % s.diag[i] == 0);
    REQUIRE(abs(det(s.P)) == 1);
    REQUIRE(abs(det(s.Q)) == 1);
  }
  SECTION("random SNF transforms verify") {
    std::mt19937 rng(5);
    for (int t = 0; t < 15; ++t) {
      int m = 2 + rng() % 3, n = 2 + rng() % 3;
      IMat a(m, Vec(n));
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = (long)(rng() % 21) - 10;
      auto s = snf(a);
      IMat d = mat_mul(mat_mul(s.P, a), s.Q);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) REQUIRE(d[i][j] == (i == j ? s.diag[i] : Int(0)));
    }
  }
}

TEST_CASE("permutation groups") {
  SECTION("symmetric group order via Schreier-Sims") {
    Perm cyc = {1, 2, 3, 4, 0};
    Perm tr = {1, 0, 2, 3, 4};
    PermGroup s5(5, {cyc, tr});
    REQUIRE(s5.order() == 120);
    REQUIRE(s5.contains(perm_mul(cyc, tr)));
  }
  SECTION("elements and orbits") {
    Perm r = {1, 2, 3, 0};
    PermGroup c4(4, {r});
    REQUIRE(c4.order() == 4);
    REQUIRE(c4.elements().size() == 4);
    REQUIRE(c4.orbit(0).size() == 4);
  }
  SECTION("D4 has ten subgroups") {
    Perm r = {1, 2, 3, 0};
    Perm s = {0, 3, 2, 1};  // reflection
    PermGroup d4(4, {r, s});
    REQUIRE(d4.order() == 8);
    SmallGroupTable table(d4);
    auto subs = table.all_subgroups();
    REQUIRE(subs.size() == 10);
    auto max = table.maximal_subgroups(subs.back(), subs);
    REQUIRE(max.size() == 3);  // three index-2 subgroups
    for (const auto& h : max) REQUIRE(h.size() == 4);
  }
  SECTION("cosets partition the group") {
    Perm r = {1, 2, 3, 0};
    Perm s = {0, 3, 2, 1};
    PermGroup d4(4, {r, s});
    SmallGroupTable table(d4);
    auto subs = table.all_subgroups();
    const auto& whole = subs.back();
    for (const auto& h : subs) {
      auto reps = table.coset_reps(whole, h);
      REQUIRE(reps.size() * h.size() == whole.size());
    }
  }
}

TEST_CASE("matrix groups") {
  SECTION("signed permutations of rank 2") {
    IMat swap = imat({{0, 1}, {1, 0}});
    IMat flip = imat({{-1, 0}, {0, 1}});
    MatGroup w(2, {swap, flip});
    REQUIRE(w.order() == 8);  // hyperoctahedral B2
    REQUIRE(w.elements().size() == 8);
    REQUIRE(w.contains(imat({{-1, 0}, {0, -1}})));
    REQUIRE_FALSE(w.contains(imat({{1, 1}, {0, 1}})));
  }
  SECTION("orbit of a vector") {
    IMat swap = imat({{0, 1}, {1, 0}});
    IMat flip = imat({{-1, 0}, {0, 1}});
    MatGroup w(2, {swap, flip});
    Vec e1 = {Int(1), Int(0)};
    auto orb = w.orbit_of(e1);
    REQUIRE(orb.size() == 4);  // +-e1, +-e2
  }
  SECTION("hyperoctahedral orders in higher rank") {
    for (int r : {3, 4, 5}) {
      std::vector<IMat> gens;
      IMat cyc = identity_mat(r);
      // r-cycle on coordinates
      IMat c(r, Vec(r, Int(0)));
      for (int i = 0; i < r; ++i) c[i][(i + 1) % r] = 1;
      IMat t = identity_mat(r);
      std::swap(t[0], t[1]);
      IMat f = identity_mat(r);
      f[0][0] = -1;
      MatGroup w(r, {c, t, f});
      REQUIRE(w.order() == pow_int(Int(2), r) * factorial(r));
      (void)cyc;
    }
  }
  SECTION("permutation action on an invariant vector set") {
    IMat swap = imat({{0, 1}, {1, 0}});
    IMat flip = imat({{-1, 0}, {0, 1}});
    MatGroup w(2, {swap, flip});
    std::vector<Vec> pts = {{Int(1), Int(0)}, {Int(-1), Int(0)}, {Int(0), Int(1)}, {Int(0), Int(-1)}};
    PermGroup act = w.action_on(pts);
    REQUIRE(act.order() == 8);
  }
}
