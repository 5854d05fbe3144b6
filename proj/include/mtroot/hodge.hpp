#ifndef MTROOT_HODGE_HPP_
#define MTROOT_HODGE_HPP_

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "mtroot/matrix.hpp"
#include "mtroot/numeric.hpp"

namespace mtroot {

// sparse Laurent polynomial over Z in m variables; no zero coefficients kept
struct LaurentPoly {
  int vars = 0;
  std::map<std::vector<int>, Int> terms;

  static LaurentPoly one(int vars) {
    LaurentPoly p;
    p.vars = vars;
    p.terms[std::vector<int>(vars, 0)] = 1;
    return p;
  }

  Int coeff(const std::vector<int>& e) const {
    auto it = terms.find(e);
    return it == terms.end() ? Int(0) : it->second;
  }
  Int constant_term() const { return coeff(std::vector<int>(vars, 0)); }
  void add_term(const std::vector<int>& e, const Int& c) {
    auto it = terms.find(e);
    if (it == terms.end()) {
      if (c != 0) terms[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
};

inline std::vector<int> expo_of(const Vec& v) {
  std::vector<int> e(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    check(v[i].fits_sint_p(), errc::internal, "exponent overflow");
    e[i] = static_cast<int>(v[i].get_si());
  }
  return e;
}

inline LaurentPoly laurent_mul(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  r.vars = a.vars;
  for (const auto& [ea, ca] : a.terms)
    for (const auto& [eb, cb] : b.terms) {
      std::vector<int> e(a.vars);
      for (int i = 0; i < a.vars; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

// k-th elementary symmetric Laurent polynomial of the weight monomials,
// computed by folding (1 + alpha z) one weight at a time and keeping the
// z-truncation at degree k
inline LaurentPoly char_coeff(const std::vector<std::pair<Vec, int>>& weights, int k) {
  int total = 0;
  for (const auto& [w, m] : weights) total += m;
  check(k >= 0 && k <= total, errc::k_out_of_range,
        "k must lie between 0 and the number of weights");
  int vars = weights.empty() ? 0 : static_cast<int>(weights[0].first.size());
  std::vector<LaurentPoly> a(k + 1);
  for (int j = 0; j <= k; ++j) a[j].vars = vars;
  a[0] = LaurentPoly::one(vars);
  for (const auto& [w, mult] : weights) {
    auto e = expo_of(w);
    for (int rep = 0; rep < mult; ++rep) {
      for (int j = k; j >= 1; --j) {
        for (const auto& [ea, ca] : a[j - 1].terms) {
          std::vector<int> shifted(vars);
          for (int i = 0; i < vars; ++i) shifted[i] = ea[i] + e[i];
          a[j].add_term(shifted, ca);
        }
      }
    }
  }
  return a[k];
}

// product over the roots of (1 - t^alpha)
inline LaurentPoly root_product(const std::vector<Vec>& roots, int vars) {
  LaurentPoly d = LaurentPoly::one(vars);
  for (const auto& alpha : roots) {
    LaurentPoly f = LaurentPoly::one(vars);
    f.add_term(expo_of(alpha), Int(-1));
    d = laurent_mul(d, f);
  }
  return d;
}

// exact Weyl-integration constant term: CT(a_k^n * prod(1 - t^alpha)) / |W|
inline Int weyl_ct(int k, int n, const std::vector<std::pair<Vec, int>>& weights,
                   const std::vector<Vec>& roots, const Int& weyl_order) {
  check(n >= 0, errc::bad_input, "tensor power must be nonnegative");
  int vars = weights.empty() ? 0 : static_cast<int>(weights[0].first.size());
  LaurentPoly D = root_product(roots, vars);
  LaurentPoly A = char_coeff(weights, k);
  Int ct = 0;
  if (n == 0) {
    ct = D.constant_term();
  } else if (n == 1) {
    for (const auto& [e, c] : D.terms) {
      std::vector<int> neg(vars);
      for (int i = 0; i < vars; ++i) neg[i] = -e[i];
      ct += c * A.coeff(neg);
    }
  } else if (n == 2 && A.terms.size() < D.terms.size()) {
    for (const auto& [ea, ca] : A.terms)
      for (const auto& [eb, cb] : A.terms) {
        std::vector<int> neg(vars);
        for (int i = 0; i < vars; ++i) neg[i] = -(ea[i] + eb[i]);
        ct += ca * cb * D.coeff(neg);
      }
  } else {
    LaurentPoly An = A;
    for (int t = 1; t < n; ++t) An = laurent_mul(An, A);
    for (const auto& [e, c] : D.terms) {
      std::vector<int> neg(vars);
      for (int i = 0; i < vars; ++i) neg[i] = -e[i];
      ct += c * An.coeff(neg);
    }
  }
  return divexact(ct, weyl_order, errc::inexact_division);
}

// dimension of the degree-p Hodge classes
inline Int hodge_dimension(int p, const std::vector<std::pair<Vec, int>>& weights,
                           const std::vector<Vec>& roots, const Int& weyl_order) {
  return weyl_ct(2 * p, 1, weights, roots, weyl_order);
}

// rank of the endomorphism group
inline Int endo_rank(const std::vector<std::pair<Vec, int>>& weights,
                     const std::vector<Vec>& roots, const Int& weyl_order) {
  return weyl_ct(1, 2, weights, roots, weyl_order);
}

// rank of the Neron--Severi group
inline Int ns_rank(const std::vector<std::pair<Vec, int>>& weights,
                   const std::vector<Vec>& roots, const Int& weyl_order) {
  return weyl_ct(2, 1, weights, roots, weyl_order);
}

}  // namespace mtroot

#endif
