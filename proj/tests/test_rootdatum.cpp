#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "mtroot/classical.hpp"
#include "mtroot/rootdatum.hpp"

using namespace mtroot;

namespace {
Vec vec_of(std::vector<long> xs) {
  Vec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}
}  // namespace

TEST_CASE("coroot of A1") {
  // X = Z, R = {+-2}, W = {+-1}: coroot of 2 is 1
  IMat neg = identity_mat(1);
  neg[0][0] = -1;
  std::vector<Vec> roots = {vec_of({2}), vec_of({-2})};
  auto coroots = coroots_from_weyl(1, roots, {identity_mat(1), neg});
  REQUIRE(coroots[0] == vec_of({1}));
  REQUIRE(coroots[1] == vec_of({-1}));
}

TEST_CASE("coroots reproduce the textbook data") {
  std::vector<StandardDatum> table;
  for (int r = 1; r <= 6; ++r) table.push_back(standard_A(r, 1));
  for (int r = 3; r <= 6; ++r) table.push_back(standard_B_spin(r));
  for (int r = 2; r <= 6; ++r) table.push_back(standard_C(r));
  for (int r = 4; r <= 6; ++r) {
    table.push_back(standard_D_vector(r));
    table.push_back(standard_D_spin(r, 1));
  }
  for (const auto& d : table) {
    INFO(d.name);
    MatGroup w(d.dim, d.weyl_gens, d.weights);
    auto datum = assemble_root_datum(d.dim, d.roots, w);
    REQUIRE(datum.weyl_order() == d.weyl_order);
    std::map<Vec, Vec> expected;
    for (size_t i = 0; i < d.roots.size(); ++i) expected[d.roots[i]] = d.coroots[i];
    for (size_t i = 0; i < datum.roots.size(); ++i) {
      REQUIRE(expected.at(datum.roots[i]) == datum.coroots[i]);
    }
  }
}

TEST_CASE("assembly is idempotent and torus-safe") {
  auto d = standard_B_spin(3);
  MatGroup w(d.dim, d.weyl_gens, d.weights);
  auto datum = assemble_root_datum(d.dim, d.roots, w);
  auto again = assemble_root_datum(d.dim, datum.roots, datum.weyl);
  REQUIRE(again.roots == datum.roots);
  REQUIRE(again.coroots == datum.coroots);
  REQUIRE(again.weyl_order() == datum.weyl_order());

  auto torus = assemble_root_datum(4, {}, MatGroup(4, {}));
  REQUIRE(torus.roots.empty());
  REQUIRE(torus.weyl_order() == 1);
}

TEST_CASE("outer action quotients") {
  SECTION("Gamma equal to W gives a trivial quotient") {
    auto d = standard_C(3);
    MatGroup w(d.dim, d.weyl_gens, d.weights);
    auto datum = assemble_root_datum(d.dim, d.roots, w);
    auto outer = outer_action(w, datum.weyl, datum);
    REQUIRE(outer.order() == 1);
  }
  SECTION("full signed permutations over the even subgroup in D4") {
    auto d = standard_D_vector(4);
    MatGroup w(d.dim, d.weyl_gens, d.weights);
    auto datum = assemble_root_datum(d.dim, d.roots, w);
    // Gamma = all signed permutations (includes a single sign flip)
    std::vector<IMat> gg = d.weyl_gens;
    IMat flip = identity_mat(4);
    flip[0][0] = -1;
    gg.push_back(flip);
    MatGroup gamma(4, gg, d.weights);
    REQUIRE(gamma.order() == 2 * w.order());
    auto outer = outer_action(gamma, datum.weyl, datum);
    REQUIRE(outer.order() == 2);
    // quotient is C2: table is the regular representation of Z/2
    REQUIRE(outer.mult_table[0][0] == outer.mult_table[1][1]);
    REQUIRE(outer.mult_table[0][1] == outer.mult_table[1][0]);
  }
  SECTION("a non-subgroup is rejected") {
    auto d = standard_C(2);
    MatGroup w(d.dim, d.weyl_gens, d.weights);
    auto datum = assemble_root_datum(d.dim, d.roots, w);
    MatGroup toosmall(2, {});
    REQUIRE_THROWS_AS(outer_action(toosmall, datum.weyl, datum), error);
  }
}

TEST_CASE("Hodge quotient") {
  SECTION("genus-1 shape: rank 2 to rank 1 with doubled root image") {
    CharacterLattice X;
    X.rank = 2;
    X.weights = {{vec_of({1, 0}), 1}, {vec_of({-1, 1}), 1}};
    X.q_class = vec_of({0, 1});
    IMat sw(2, Vec(2, Int(0)));
    // pi <-> q/pi: (1,0) -> (-1,1), (0,1) -> (0,1)
    sw[0][0] = -1;
    sw[1][0] = 1;
    sw[1][1] = 1;
    X.weyl = MatGroup(2, {sw});
    X.galois = X.weyl;
    auto comps = identify_components(X);
    REQUIRE(comps.size() == 1);
    REQUIRE(comps[0].type == LieType::A);
    auto h = hodge_datum(X, comps);
    REQUIRE(h.rank == 1);
    REQUIRE(h.roots.size() == 2);
    REQUIRE(abs(h.roots[0][0]) == 2);
    // weights map to +-1
    std::set<Vec> ws;
    for (const auto& [v, m] : h.weights) ws.insert(v);
    REQUIRE(ws == std::set<Vec>{vec_of({1}), vec_of({-1})});
    // rerunning the root search on the quotient returns the projected roots
    auto again = identify_components(hodge_as_lattice(h));
    REQUIRE(again.size() == 1);
    REQUIRE(again[0].roots == h.roots);
  }
  SECTION("imprimitive q class is rejected") {
    CharacterLattice X;
    X.rank = 2;
    X.weights = {{vec_of({1, 0}), 1}, {vec_of({-1, 2}), 1}};
    X.q_class = vec_of({0, 2});
    X.weyl = MatGroup(2, {});
    X.galois = X.weyl;
    try {
      hodge_datum(X, {});
      FAIL("expected QClassNotPrimitive");
    } catch (const error& e) {
      REQUIRE(e.code() == errc::q_class_not_primitive);
    }
  }
}
