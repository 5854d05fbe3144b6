#ifndef MTROOT_PIPELINE_HPP_
#define MTROOT_PIPELINE_HPP_

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtroot/endo.hpp"
#include "mtroot/galois.hpp"
#include "mtroot/hodge.hpp"
#include "mtroot/philattice.hpp"
#include "mtroot/pointcount.hpp"
#include "mtroot/rootdatum.hpp"
#include "mtroot/rootfinder.hpp"

namespace mtroot {

using Json = nlohmann::ordered_json;

struct AnalysisConfig {
  long prime_min = 3;
  long prime_max = 100;
  SplittingConfig splitting;
  GaloisConfig galois;
  CountConfig counting;
  int max_n = 2;
  std::string report_path;

  void validate() const {
    check(prime_min >= 2 && prime_max >= prime_min, errc::bad_input,
          "prime scan range is empty");
    check(splitting.aux_prime_min >= 2 &&
              splitting.aux_prime_max >= splitting.aux_prime_min,
          errc::bad_input, "auxiliary prime range is empty");
    check(counting.max_enumeration > 0 && max_n >= 0, errc::bad_input,
          "bounds must be positive");
  }
};

// ---------------------------------------------------------------------------
// file formats

inline Json json_vec(const Vec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

inline Json json_mat(const IMat& m) {
  Json a = Json::array();
  for (const auto& row : m) a.push_back(json_vec(row));
  return a;
}

inline Vec vec_from_json(const Json& a) {
  Vec v;
  for (const auto& x : a) {
    if (x.is_string())
      v.emplace_back(x.get<std::string>());
    else
      v.emplace_back(static_cast<long>(x.get<long long>()));
  }
  return v;
}

inline IMat mat_from_json(const Json& a) {
  IMat m;
  for (const auto& row : a) m.push_back(vec_from_json(row));
  return m;
}

// curve file: {"model":"hyperelliptic","f":[c0,...,cd]}
inline HyperellipticCurve load_curve(const std::string& path) {
  std::ifstream in(path);
  check(in.good(), errc::bad_input, "cannot open curve file " + path);
  Json j = Json::parse(in);
  check(j.value("model", "") == std::string("hyperelliptic"), errc::bad_input,
        "curve model must be hyperelliptic");
  return HyperellipticCurve(IntPoly(vec_from_json(j.at("f"))));
}

// one cache line: {"p":..,"q":..,"g":..,"coeffs":[...]} with decimal-string
// coefficients, lowest degree first
inline Json frobpoly_cache_line(const WeilPolynomial& w) {
  Json j;
  j["p"] = w.p.get_str();
  j["q"] = w.q.get_str();
  j["g"] = w.g;
  Json cs = Json::array();
  for (int i = 0; i <= w.poly.degree(); ++i) cs.push_back(w.poly.coeff(i).get_str());
  j["coeffs"] = cs;
  return j;
}

inline WeilPolynomial weil_from_cache_line(const Json& j) {
  Int q(j.at("q").is_string() ? Int(j.at("q").get<std::string>())
                              : Int(static_cast<long>(j.at("q").get<long long>())));
  IntPoly poly(vec_from_json(j.at("coeffs")));
  WeilPolynomial w = validate_weil(poly, q);
  check(w.g == j.at("g").get<int>(), errc::bad_input, "cache line genus mismatch");
  return w;
}

inline std::map<Int, WeilPolynomial> load_frobpoly_cache(const std::string& path) {
  std::ifstream in(path);
  check(in.good(), errc::bad_input, "cannot open cache file " + path);
  std::map<Int, WeilPolynomial> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto w = weil_from_cache_line(Json::parse(line));
    out.emplace(w.p, w);
  }
  return out;
}

// synthetic lattice fixture:
// {"rank":r,"weights":[{"v":[...],"m":k}],"q_class":[...],
//  "weyl":[mat...],"galois":[mat...]}
inline CharacterLattice load_fixture(const std::string& path) {
  std::ifstream in(path);
  check(in.good(), errc::bad_input, "cannot open fixture file " + path);
  Json j = Json::parse(in);
  CharacterLattice X;
  X.rank = j.at("rank").get<int>();
  for (const auto& w : j.at("weights"))
    X.weights.emplace_back(vec_from_json(w.at("v")), w.at("m").get<int>());
  X.q_class = vec_from_json(j.at("q_class"));
  std::vector<IMat> wg, gg;
  for (const auto& m : j.at("weyl")) wg.push_back(mat_from_json(m));
  for (const auto& m : j.at("galois")) gg.push_back(mat_from_json(m));
  std::vector<Vec> hints = X.weight_vectors();
  X.weyl = MatGroup(X.rank, wg, hints);
  X.galois = MatGroup(X.rank, gg, hints);
  return X;
}

inline std::string content_hash(const std::string& data) {
  // FNV-1a 64, enough to pin inputs in the report
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

// ---------------------------------------------------------------------------
// per-prime scanning

struct PhiSummary {
  Int p;
  bool computed = false;
  int rank = -1;
  bool is_free = false;
  bool ordinary = false;
  std::vector<Int> invariant_factors;
  Int gamma_order = 0;
  std::string note;
};

inline PhiSummary phi_summary_for(const WeilPolynomial& w, const AnalysisConfig& cfg) {
  PhiSummary s;
  s.p = w.p;
  s.ordinary = is_ordinary(w);
  IntPoly sq = squarefree_part(w.poly);
  LabeledRoots roots;
  try {
    roots = build_splitting_field(sq, w.q, cfg.splitting);
  } catch (const error& e) {
    s.note = e.what();
    return s;
  }
  if (!roots.clean_pairing) {
    // a fixed point pi^2 = q at prime q forces -1 into Phi
    s.note = "degenerate pairing; Phi has torsion";
    s.computed = true;
    s.is_free = false;
    return s;
  }
  try {
    PermGroup gamma = galois_group(roots, cfg.galois);
    s.gamma_order = gamma.order();
    long B = gamma.order().get_si();
    PhiGroup phi = phi_structure_auto(w, roots, gamma, B);
    s.computed = true;
    s.rank = phi.rank;
    s.is_free = phi.is_free;
    s.invariant_factors = phi.invariant_factors;
  } catch (const error& e) {
    s.note = e.what();
  }
  return s;
}

inline std::map<Int, WeilPolynomial> scan_curve(const HyperellipticCurve& curve,
                                                const AnalysisConfig& cfg) {
  std::map<Int, WeilPolynomial> out;
  for (Int p = next_prime(Int(cfg.prime_min - 1)); p <= cfg.prime_max; p = next_prime(p)) {
    if (p == 2) continue;
    try {
      out.emplace(p, frobenius_polynomial_from_curve(curve, p, cfg.counting));
    } catch (const error& e) {
      if (e.code() != errc::bad_reduction && e.code() != errc::enumeration_too_large) throw;
    }
  }
  return out;
}

// the invariant-prediction loop: r' = max rank of a torsion-free Phi,
// w' = max relative degree [L(W_p):L] among free-rank-r' primes
struct Prediction {
  int r_prime = 0;
  Int w_prime = 0;
  Int q_choice = 0;
  Int p_choice = 0;
  std::vector<PhiSummary> summaries;
};

inline Prediction predict_invariants(const std::map<Int, WeilPolynomial>& polys,
                                     const AnalysisConfig& cfg) {
  check(polys.size() >= 2, errc::bad_input, "need at least two good primes");
  Prediction out;
  for (const auto& [p, w] : polys) out.summaries.push_back(phi_summary_for(w, cfg));
  for (const auto& s : out.summaries)
    if (s.computed && s.is_free && s.rank > out.r_prime) out.r_prime = s.rank;
  check(out.r_prime > 0, errc::no_torsion_free_prime,
        "no scanned prime has torsion-free Phi");
  for (const auto& s : out.summaries)
    if (s.computed && s.is_free && s.rank == out.r_prime) {
      out.q_choice = s.p;
      break;
    }
  for (const auto& s : out.summaries) {
    if (!(s.computed && s.is_free && s.rank == out.r_prime)) continue;
    if (s.p == out.q_choice) continue;
    auto rel = relative_group(polys.at(s.p), polys.at(out.q_choice), cfg.splitting, cfg.galois);
    Int wsize = rel.weyl.order();
    if (wsize > out.w_prime) {
      out.w_prime = wsize;
      out.p_choice = s.p;
    }
  }
  check(out.p_choice != 0, errc::no_torsion_free_prime,
        "no second prime with torsion-free Phi of maximal rank");
  return out;
}

// ---------------------------------------------------------------------------
// full analysis of a chosen pair

struct AnalysisReport {
  Int q_prime, p_prime;
  bool q_ordinary = false, p_ordinary = false;
  int rank = 0;
  Int gamma_order, weyl_order;
  std::vector<std::string> component_types;
  RootDatum datum;
  OuterAction outer;
  HodgeDatum hodge;
  std::vector<std::vector<Int>> m_table;  // m_table[n-1][k] = M_{k,n}
  std::vector<Int> hodge_dims;            // M_{2p,1} for p = 0..g
  Int endo_rank_value, ns_rank_value;
  std::vector<EndoFactor> endo_factors;
  CharacterLattice lattice;
  Prediction prediction;  // optional context from the scan
  Json provenance;
};

// root search through endomorphism invariants on an assembled lattice; the
// shared tail of both the arithmetic and the fixture entry points
inline AnalysisReport analyze_lattice(const CharacterLattice& X, int two_g,
                                      const AnalysisConfig& cfg) {
  AnalysisReport rep;
  rep.rank = X.rank;
  rep.lattice = X;
  rep.gamma_order = X.galois.order();
  rep.weyl_order = X.weyl.order();
  auto comps = identify_components(X);
  std::vector<Vec> all_roots;
  for (const auto& c : comps) {
    rep.component_types.push_back(lie_type_name(c.type, c.rank));
    all_roots.insert(all_roots.end(), c.roots.begin(), c.roots.end());
  }
  rep.datum = assemble_root_datum(X.rank, all_roots, X.weyl, comps);
  rep.outer = outer_action(X.galois, rep.datum.weyl, rep.datum);
  rep.hodge = hodge_datum(X, comps);
  Int w_order = rep.hodge.weyl.order();
  for (int n = 1; n <= cfg.max_n; ++n) {
    std::vector<Int> row;
    for (int k = 0; k <= two_g; ++k)
      row.push_back(weyl_ct(k, n, rep.hodge.weights, rep.hodge.roots, w_order));
    rep.m_table.push_back(row);
  }
  for (int p = 0; 2 * p <= two_g; ++p)
    rep.hodge_dims.push_back(hodge_dimension(p, rep.hodge.weights, rep.hodge.roots, w_order));
  rep.endo_rank_value = endo_rank(rep.hodge.weights, rep.hodge.roots, w_order);
  rep.ns_rank_value = ns_rank(rep.hodge.weights, rep.hodge.roots, w_order);
  rep.endo_factors = endo_invariants(X, &rep.outer);
  // self-consistency: the datum's Weyl group must be the relative Galois
  // group, and the Hodge quotient drops the rank by one
  check(rep.datum.weyl_order() == rep.weyl_order, errc::internal,
        "Weyl order mismatch between datum and Galois data");
  check(rep.hodge.rank == rep.rank - 1, errc::internal, "Hodge rank mismatch");
  return rep;
}

inline AnalysisReport analyze(const WeilPolynomial& P_q, const WeilPolynomial& P_p,
                              const AnalysisConfig& cfg) {
  auto rel = relative_group(P_p, P_q, cfg.splitting, cfg.galois);
  long B = rel.gamma.order().get_si();
  PhiGroup phi_p = phi_structure_auto(P_p, rel.roots_p, rel.gamma, B);
  check(phi_p.is_free, errc::rank_mismatch, "Phi at p is not torsion-free");
  PhiGroup phi_q =
      phi_structure_auto(P_q, rel.roots_q, rel.gamma_q, rel.gamma_q.order().get_si());
  check(phi_q.is_free, errc::rank_mismatch, "Phi at q is not torsion-free");
  check(phi_p.rank == phi_q.rank, errc::rank_mismatch,
        "the two primes disagree on the rank of Phi");

  auto mults = label_multiplicities(P_p.poly, rel.roots_p);
  CharacterLattice X = character_lattice(phi_p, mults, rel.gamma, rel.weyl);
  AnalysisReport rep = analyze_lattice(X, 2 * P_p.g, cfg);
  rep.q_prime = P_q.p;
  rep.p_prime = P_p.p;
  rep.q_ordinary = is_ordinary(P_q);
  rep.p_ordinary = is_ordinary(P_p);
  return rep;
}

// ---------------------------------------------------------------------------
// report serialization

inline Json report_to_json(const AnalysisReport& rep) {
  Json j;
  j["q"] = rep.q_prime == 0 ? Json() : Json(rep.q_prime.get_str());
  j["p"] = rep.p_prime == 0 ? Json() : Json(rep.p_prime.get_str());
  j["ordinary"] = {{"q", rep.q_ordinary}, {"p", rep.p_ordinary}};
  j["rank"] = rep.rank;
  j["gamma_order"] = rep.gamma_order.get_str();
  j["weyl_order"] = rep.weyl_order.get_str();
  j["component_types"] = rep.component_types;
  Json datum;
  datum["roots"] = Json::array();
  for (const auto& r : rep.datum.roots) datum["roots"].push_back(json_vec(r));
  datum["coroots"] = Json::array();
  for (const auto& r : rep.datum.coroots) datum["coroots"].push_back(json_vec(r));
  j["root_datum"] = datum;
  Json outer;
  outer["order"] = rep.outer.order();
  outer["reps"] = Json::array();
  for (const auto& m : rep.outer.reps) outer["reps"].push_back(json_mat(m));
  outer["table"] = rep.outer.mult_table;
  j["outer_action"] = outer;
  Json hodge;
  hodge["rank"] = rep.hodge.rank;
  hodge["weights"] = Json::array();
  for (const auto& [v, m] : rep.hodge.weights)
    hodge["weights"].push_back({{"v", json_vec(v)}, {"m", m}});
  hodge["roots"] = Json::array();
  for (const auto& r : rep.hodge.roots) hodge["roots"].push_back(json_vec(r));
  j["hodge_datum"] = hodge;
  Json mt = Json::array();
  for (size_t n = 0; n < rep.m_table.size(); ++n) {
    Json row = Json::array();
    for (const auto& v : rep.m_table[n]) row.push_back(v.get_str());
    mt.push_back(row);
  }
  j["m_table"] = mt;
  Json hd = Json::array();
  for (const auto& v : rep.hodge_dims) hd.push_back(v.get_str());
  j["hodge_class_dims"] = hd;
  j["endo_rank"] = rep.endo_rank_value.get_str();
  j["ns_rank"] = rep.ns_rank_value.get_str();
  Json ef = Json::array();
  for (const auto& f : rep.endo_factors)
    ef.push_back({{"orbit_size", f.orbit_size},
                  {"center_degree", f.center_degree.get_str()},
                  {"m", f.m},
                  {"h_mod_w", f.h_mod_w}});
  j["endo_factors"] = ef;
  if (!rep.prediction.summaries.empty()) {
    Json pr;
    pr["r_prime"] = rep.prediction.r_prime;
    pr["w_prime"] = rep.prediction.w_prime.get_str();
    pr["q_choice"] = rep.prediction.q_choice.get_str();
    pr["p_choice"] = rep.prediction.p_choice.get_str();
    Json sums = Json::array();
    for (const auto& s : rep.prediction.summaries) {
      Json e;
      e["p"] = s.p.get_str();
      e["computed"] = s.computed;
      e["rank"] = s.rank;
      e["free"] = s.is_free;
      e["ordinary"] = s.ordinary;
      Json inv = Json::array();
      for (const auto& d : s.invariant_factors) inv.push_back(d.get_str());
      e["invariant_factors"] = inv;
      e["gamma_order"] = s.gamma_order.get_str();
      if (!s.note.empty()) e["note"] = s.note;
      sums.push_back(e);
    }
    pr["per_prime"] = sums;
    j["prediction"] = pr;
  }
  j["provenance"] = rep.provenance;
  return j;
}

// end-to-end run on a curve file
inline AnalysisReport analyze_curve(const HyperellipticCurve& curve, const AnalysisConfig& cfg,
                                    const std::map<Int, WeilPolynomial>& extra_cache = {}) {
  cfg.validate();
  auto polys = scan_curve(curve, cfg);
  for (const auto& [p, w] : extra_cache) polys.emplace(p, w);
  Prediction pred = predict_invariants(polys, cfg);
  AnalysisReport rep = analyze(polys.at(pred.q_choice), polys.at(pred.p_choice), cfg);
  rep.prediction = pred;
  return rep;
}

}  // namespace mtroot

#endif
