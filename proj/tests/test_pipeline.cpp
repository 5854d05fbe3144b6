#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "mtroot/pipeline.hpp"

using namespace mtroot;

namespace {
IntPoly ipoly(std::vector<long> cs) {
  std::vector<Int> v;
  for (long c : cs) v.emplace_back(c);
  return IntPoly(v);
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path("/tmp/mtroot_test_" + name) {
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};
}  // namespace

TEST_CASE("curve and cache file round trips") {
  TempFile curve("curve.json", R"({"model":"hyperelliptic","f":[1,2,0,1]})");
  auto c = load_curve(curve.path);
  REQUIRE(c.genus == 1);
  REQUIRE(c.f == ipoly({1, 2, 0, 1}));

  auto w = frobenius_polynomial_from_curve(c, Int(7));
  Json line = frobpoly_cache_line(w);
  auto w2 = weil_from_cache_line(line);
  REQUIRE(w2.poly == w.poly);
  REQUIRE(w2.q == w.q);

  TempFile cache("cache.jsonl", line.dump() + "\n");
  auto loaded = load_frobpoly_cache(cache.path);
  REQUIRE(loaded.size() == 1);
  REQUIRE(loaded.begin()->second.poly == w.poly);
}

TEST_CASE("fixture files load into a character lattice") {
  TempFile fx("fixture.json", R"({
    "rank": 2,
    "weights": [{"v":[1,0],"m":1},{"v":[-1,1],"m":1}],
    "q_class": [0,1],
    "weyl": [[[-1,0],[1,1]]],
    "galois": [[[-1,0],[1,1]]]
  })");
  auto X = load_fixture(fx.path);
  REQUIRE(X.rank == 2);
  REQUIRE(X.weyl.order() == 2);
  AnalysisConfig cfg;
  auto rep = analyze_lattice(X, 2, cfg);
  REQUIRE(rep.component_types == std::vector<std::string>{"A1"});
  REQUIRE(rep.hodge.rank == 1);
  REQUIRE(rep.m_table[0][2] == 1);  // M_{2,1}
  REQUIRE(rep.m_table[1][1] == 1);  // M_{1,2}
  REQUIRE(rep.endo_rank_value == 1);
  REQUIRE(rep.ns_rank_value == 1);
}

TEST_CASE("prediction loop on a small elliptic scan") {
  TempFile curve("curve2.json", R"({"model":"hyperelliptic","f":[1,2,0,1]})");
  auto c = load_curve(curve.path);
  AnalysisConfig cfg;
  cfg.prime_min = 5;
  cfg.prime_max = 23;
  auto polys = scan_curve(c, cfg);
  REQUIRE(polys.size() >= 4);
  auto pred = predict_invariants(polys, cfg);
  REQUIRE(pred.r_prime == 2);
  REQUIRE(pred.w_prime == 2);  // GL2 expectation
  REQUIRE(pred.q_choice != pred.p_choice);
  // the chosen pair runs end to end
  auto rep = analyze(polys.at(pred.q_choice), polys.at(pred.p_choice), cfg);
  REQUIRE(rep.rank == 2);
  REQUIRE(rep.component_types == std::vector<std::string>{"A1"});
  REQUIRE(rep.weyl_order == 2);
  REQUIRE(rep.outer.order() == 1);
  REQUIRE(rep.endo_rank_value == 1);
}

TEST_CASE("reports are deterministic") {
  TempFile curve("curve3.json", R"({"model":"hyperelliptic","f":[1,2,0,1]})");
  auto c = load_curve(curve.path);
  AnalysisConfig cfg;
  cfg.prime_min = 5;
  cfg.prime_max = 17;
  auto rep1 = analyze_curve(c, cfg);
  auto rep2 = analyze_curve(c, cfg);
  REQUIRE(report_to_json(rep1).dump() == report_to_json(rep2).dump());
}

TEST_CASE("report consistency fields") {
  TempFile curve("curve4.json", R"({"model":"hyperelliptic","f":[1,2,0,1]})");
  auto c = load_curve(curve.path);
  AnalysisConfig cfg;
  cfg.prime_min = 5;
  cfg.prime_max = 17;
  auto rep = analyze_curve(c, cfg);
  // |weyl| in the datum equals the W order from the Galois step, the rank
  // matches the datum, and the Hodge rank is one less
  REQUIRE(rep.datum.weyl_order() == rep.weyl_order);
  REQUIRE(rep.hodge.rank == rep.rank - 1);
  Json j = report_to_json(rep);
  REQUIRE(j.at("rank").get<int>() == rep.rank);
  REQUIRE(j.at("prediction").at("r_prime").get<int>() == 2);
}
