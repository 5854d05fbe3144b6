// Command-line front end: point counting, Frobenius polynomials, Phi
// structure, Galois groups, and the full root-datum analysis.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mtroot/pipeline.hpp"

using namespace mtroot;

namespace {

IntPoly parse_poly(const std::string& spec) {
  // comma-separated coefficients, lowest degree first
  std::vector<Int> cs;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t a = tok.find_first_not_of(" \t");
    size_t b = tok.find_last_not_of(" \t");
    check(a != std::string::npos, errc::bad_input, "empty coefficient");
    cs.emplace_back(tok.substr(a, b - a + 1));
  }
  check(!cs.empty(), errc::bad_input, "no coefficients given");
  return IntPoly(cs);
}

std::pair<long, long> parse_range(const std::string& spec) {
  auto dots = spec.find("..");
  check(dots != std::string::npos, errc::bad_input, "range must look like A..B");
  return {std::stol(spec.substr(0, dots)), std::stol(spec.substr(dots + 2))};
}

void emit(const Json& j, const std::string& out_path, bool json_mode,
          const std::string& plain) {
  std::string text = json_mode ? j.dump(2) : plain;
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    check(out.good(), errc::bad_input, "cannot write " + out_path);
    out << text << "\n";
  }
}

std::string file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  check(in.good(), errc::bad_input, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"root data of Mumford-Tate groups from Frobenius polynomials"};
  app.require_subcommand(1);

  std::string curve_path, poly_spec, poly2_spec, primes_spec, out_path, cache_path,
      fixture_path;
  std::string q_spec = "0", q2_spec = "0";
  long prime = 0;
  int ext_degree = 1;
  bool json_mode = false;
  AnalysisConfig cfg;
  long max_enum = 100000000;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", json_mode, "machine-readable output");
    sub->add_option("--out", out_path, "write output to a file");
    sub->add_option("--aux-prime-min", cfg.splitting.aux_prime_min);
    sub->add_option("--aux-prime-max", cfg.splitting.aux_prime_max);
    sub->add_option("--max-enum", max_enum, "largest field size enumerated");
  };

  auto* count_cmd = app.add_subcommand("count", "count points on a hyperelliptic curve");
  count_cmd->add_option("--curve", curve_path, "curve JSON file")->required();
  count_cmd->add_option("--prime", prime, "characteristic")->required();
  count_cmd->add_option("--ext", ext_degree, "field extension degree");
  add_common(count_cmd);

  auto* frob_cmd = app.add_subcommand("frobpoly", "Frobenius polynomial at one prime");
  frob_cmd->add_option("--curve", curve_path)->required();
  frob_cmd->add_option("--prime", prime)->required();
  add_common(frob_cmd);

  auto* phi_cmd = app.add_subcommand("phi", "structure of the eigenvalue group Phi");
  phi_cmd->add_option("--poly", poly_spec, "coefficients c0,c1,...")->required();
  phi_cmd->add_option("--q", q_spec, "prime power")->required();
  add_common(phi_cmd);

  auto* gal_cmd = app.add_subcommand("galois", "Galois group of a Weil polynomial");
  gal_cmd->add_option("--poly", poly_spec)->required();
  gal_cmd->add_option("--q", q_spec)->required();
  gal_cmd->add_option("--poly2", poly2_spec, "second polynomial for the relative group");
  gal_cmd->add_option("--q2", q2_spec, "prime power of the second polynomial");
  add_common(gal_cmd);

  auto* an_cmd = app.add_subcommand("analyze", "full root-datum analysis");
  an_cmd->add_option("--curve", curve_path, "curve JSON file");
  an_cmd->add_option("--fixture", fixture_path, "synthetic lattice fixture");
  an_cmd->add_option("--cache", cache_path, "Frobenius polynomial cache (JSON lines)");
  an_cmd->add_option("--primes", primes_spec, "scan range A..B");
  add_common(an_cmd);

  auto* hodge_cmd = app.add_subcommand("hodge", "Hodge numbers M_{k,n} of a fixture");
  hodge_cmd->add_option("--fixture", fixture_path, "synthetic lattice fixture")->required();
  hodge_cmd->add_option("--max-n", cfg.max_n, "tensor powers to tabulate");
  add_common(hodge_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage errors
  }
  cfg.counting.max_enumeration = Int(max_enum);

  try {
    if (count_cmd->parsed()) {
      auto curve = load_curve(curve_path);
      Int n = count_points(curve, Int(prime), ext_degree, cfg.counting);
      Json j = {{"p", prime}, {"k", ext_degree}, {"count", n.get_str()}};
      emit(j, out_path, json_mode, n.get_str());
    } else if (frob_cmd->parsed()) {
      auto curve = load_curve(curve_path);
      auto w = frobenius_polynomial_from_curve(curve, Int(prime), cfg.counting);
      Json j = frobpoly_cache_line(w);
      emit(j, out_path, true, j.dump());
    } else if (phi_cmd->parsed()) {
      auto w = validate_weil(parse_poly(poly_spec), Int(q_spec));
      auto s = phi_summary_for(w, cfg);
      check(s.computed, errc::internal, s.note.empty() ? "Phi not computed" : s.note);
      Json inv = Json::array();
      for (const auto& d : s.invariant_factors) inv.push_back(d.get_str());
      Json j = {{"rank", s.rank},
                {"free", s.is_free},
                {"invariant_factors", inv},
                {"ordinary", s.ordinary},
                {"gamma_order", s.gamma_order.get_str()}};
      std::ostringstream plain;
      plain << "rank " << s.rank << (s.is_free ? ", free" : ", torsion");
      emit(j, out_path, json_mode, plain.str());
    } else if (gal_cmd->parsed()) {
      auto w = validate_weil(parse_poly(poly_spec), Int(q_spec));
      Json j;
      std::ostringstream plain;
      if (poly2_spec.empty()) {
        auto roots = build_splitting_field(squarefree_part(w.poly), w.q, cfg.splitting);
        PermGroup g = galois_group(roots, cfg.galois);
        j["gamma_order"] = g.order().get_str();
        Json gens = Json::array();
        for (const auto& perm : g.generators()) gens.push_back(perm);
        j["generators"] = gens;
        plain << "Galois group of order " << g.order().get_str();
      } else {
        auto w2 = validate_weil(parse_poly(poly2_spec), Int(q2_spec));
        auto rel = relative_group(w, w2, cfg.splitting, cfg.galois);
        j["gamma_order"] = rel.gamma.order().get_str();
        j["weyl_order"] = rel.weyl.order().get_str();
        plain << "Gamma order " << rel.gamma.order().get_str() << ", relative order "
              << rel.weyl.order().get_str();
      }
      emit(j, out_path, json_mode, plain.str());
    } else if (an_cmd->parsed()) {
      if (!primes_spec.empty()) {
        auto [a, b] = parse_range(primes_spec);
        cfg.prime_min = a;
        cfg.prime_max = b;
      }
      AnalysisReport rep;
      Json prov;
      if (!fixture_path.empty()) {
        auto X = load_fixture(fixture_path);
        int two_g = 0;
        for (const auto& [v, m] : X.weights) two_g += m;
        rep = analyze_lattice(X, two_g, cfg);
        prov["fixture"] = content_hash(file_bytes(fixture_path));
      } else {
        check(!curve_path.empty() || !cache_path.empty(), errc::bad_input,
              "analyze needs --curve, --cache or --fixture");
        std::map<Int, WeilPolynomial> cache;
        if (!cache_path.empty()) {
          cache = load_frobpoly_cache(cache_path);
          prov["cache"] = content_hash(file_bytes(cache_path));
        }
        if (!curve_path.empty()) {
          auto curve = load_curve(curve_path);
          prov["curve"] = content_hash(file_bytes(curve_path));
          rep = analyze_curve(curve, cfg, cache);
        } else {
          cfg.validate();
          Prediction pred = predict_invariants(cache, cfg);
          rep = analyze(cache.at(pred.q_choice), cache.at(pred.p_choice), cfg);
          rep.prediction = pred;
        }
      }
      prov["primes"] = primes_spec.empty() ? Json() : Json(primes_spec);
      rep.provenance = prov;
      Json j = report_to_json(rep);
      std::ostringstream plain;
      plain << "rank " << rep.rank << ", |W| = " << rep.weyl_order.get_str()
            << ", components:";
      for (const auto& t : rep.component_types) plain << " " << t;
      if (rep.component_types.empty()) plain << " (torus)";
      emit(j, out_path, json_mode, plain.str());
    } else if (hodge_cmd->parsed()) {
      auto X = load_fixture(fixture_path);
      int two_g = 0;
      for (const auto& [v, m] : X.weights) two_g += m;
      auto comps = identify_components(X);
      auto h = hodge_datum(X, comps);
      Int w_order = h.weyl.order();
      Json table = Json::array();
      std::ostringstream plain;
      for (int n = 1; n <= cfg.max_n; ++n) {
        Json row = Json::array();
        for (int k = 0; k <= two_g; ++k) {
          Int v = weyl_ct(k, n, h.weights, h.roots, w_order);
          row.push_back(v.get_str());
          plain << "M_{" << k << "," << n << "} = " << v.get_str() << "\n";
        }
        table.push_back(row);
      }
      Json j = {{"rank", h.rank}, {"m_table", table}};
      emit(j, out_path, json_mode, plain.str());
    }
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
