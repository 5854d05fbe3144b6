#ifndef MTROOT_WEIL_HPP_
#define MTROOT_WEIL_HPP_

#include <utility>
#include <vector>

#include "mtroot/intpoly.hpp"
#include "mtroot/numeric.hpp"

namespace mtroot {

// a + b*sqrt(q), used for exact sign evaluation at the interval endpoints
// of the real Weil transform
struct QuadInt {
  Int a, b;
};

inline int sgn_int(const Int& v) { return v < 0 ? -1 : (v > 0 ? 1 : 0); }

inline int sign_quad(const QuadInt& v, const Int& q) {
  int sa = sgn_int(v.a), sb = sgn_int(v.b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: the part with larger magnitude decides
  Int cmp = v.a * v.a - v.b * v.b * q;  // |a|^2 vs |b sqrt(q)|^2
  if (cmp > 0) return sa;
  if (cmp < 0) return sb;
  return 0;
}

// h evaluated at sign * 2 sqrt(q), split into rational and sqrt(q) parts
inline QuadInt eval_at_2sqrtq(const IntPoly& h, const Int& q, int sign) {
  QuadInt r{0, 0};
  Int qpow = 1;  // q^floor(k/2)
  for (size_t k = 0; k < h.c.size(); ++k) {
    Int term = h.c[k] * pow_int(Int(2), static_cast<unsigned long>(k)) * qpow;
    if (sign < 0 && (k & 1)) term = -term;
    if (k & 1)
      r.b += term;
    else
      r.a += term;
    if (k & 1) qpow *= q;
  }
  return r;
}

namespace detail {

// integer Sturm chain; entries agree with the rational chain up to positive
// scalars, which is all sign-variation counting needs
inline std::vector<IntPoly> sturm_chain(const IntPoly& h) {
  std::vector<IntPoly> chain;
  chain.push_back(h);
  IntPoly d = derivative(h);
  if (!d.is_zero()) chain.push_back(d);
  while (chain.size() >= 2 && chain.back().degree() > 0) {
    const IntPoly& a = chain[chain.size() - 2];
    const IntPoly& b = chain.back();
    // reducing by -b when lc(b)<0 makes the pseudo-remainder multiplier
    // positive, so signs survive
    IntPoly r = pseudo_rem(a, b.lc() < 0 ? neg(b) : b);
    if (r.is_zero()) break;
    r = neg(r);
    Int cont = content(r);
    std::vector<Int> cs = r.c;
    for (auto& x : cs) x = divexact(x, cont);
    chain.emplace_back(std::move(cs));
  }
  return chain;
}

inline int variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

inline int variations_at_quad(const std::vector<IntPoly>& chain, const Int& q, int side) {
  std::vector<int> signs;
  for (const auto& p : chain) signs.push_back(sign_quad(eval_at_2sqrtq(p, q, side), q));
  return variations(signs);
}

inline int variations_at_infinity(const std::vector<IntPoly>& chain, int side) {
  std::vector<int> signs;
  for (const auto& p : chain) {
    if (p.is_zero()) {
      signs.push_back(0);
      continue;
    }
    int s = sgn_int(p.lc());
    if (side < 0 && (p.degree() & 1)) s = -s;
    signs.push_back(s);
  }
  return variations(signs);
}

}  // namespace detail

// Number of distinct real roots of squarefree h inside the closed interval
// [-2 sqrt(q), 2 sqrt(q)], exact integer arithmetic throughout.
inline int count_roots_in_weil_interval(IntPoly h, const Int& q) {
  check(!h.is_zero(), errc::zero_polynomial, "root count of zero polynomial");
  h = primitive_part(h);
  int count = 0;
  // peel endpoint roots first
  bool peeling = true;
  while (peeling && h.degree() > 0) {
    peeling = false;
    QuadInt plus = eval_at_2sqrtq(h, q, +1);
    QuadInt minus = eval_at_2sqrtq(h, q, -1);
    Int s = isqrt(q);
    bool q_square = (s * s == q);
    if (q_square) {
      if (sign_quad(plus, q) == 0) {
        std::vector<Int> lin = {-2 * s, 1};
        h = divexact_poly(h, IntPoly(lin));
        ++count;
        peeling = true;
        continue;
      }
      if (sign_quad(minus, q) == 0) {
        std::vector<Int> lin = {2 * s, 1};
        h = divexact_poly(h, IntPoly(lin));
        ++count;
        peeling = true;
        continue;
      }
    } else if (sign_quad(plus, q) == 0 || sign_quad(minus, q) == 0) {
      // irrational endpoint root forces the conjugate root as well
      std::vector<Int> quad = {-4 * q, 0, 1};
      h = divexact_poly(h, IntPoly(quad));
      count += 2;
      peeling = true;
      continue;
    }
  }
  if (h.degree() == 0) return count;
  auto chain = detail::sturm_chain(h);
  int va = detail::variations_at_quad(chain, q, -1);
  int vb = detail::variations_at_quad(chain, q, +1);
  return count + (va - vb);
}

inline int count_real_roots(const IntPoly& h) {
  if (h.degree() <= 0) return 0;
  auto chain = detail::sturm_chain(h);
  return detail::variations_at_infinity(chain, -1) - detail::variations_at_infinity(chain, +1);
}

struct WeilPolynomial {
  IntPoly poly;
  Int q;
  Int p;
  unsigned long d = 1;  // q = p^d
  int g = 0;

  Int coeff(int i) const { return poly.coeff(i); }
};

// The transform h with P(x) = x^g h(x + q/x), computed through the recurrence
// T_0 = 2, T_1 = y, T_k = y T_{k-1} - q T_{k-2} which tracks x^k + (q/x)^k.
inline IntPoly real_weil_transform(const IntPoly& P, const Int& q, int g) {
  std::vector<IntPoly> T(g + 1);
  T[0] = IntPoly::constant(2);
  if (g >= 1) T[1] = IntPoly::monomial(1);
  for (int k = 2; k <= g; ++k) T[k] = sub(mul(T[k - 1], IntPoly::monomial(1)), mul(T[k - 2], q));
  IntPoly h = IntPoly::constant(P.coeff(g));
  for (int k = 1; k <= g; ++k) h = add(h, mul(T[k], P.coeff(g + k)));
  return h;
}

inline WeilPolynomial validate_weil(const IntPoly& poly, const Int& q) {
  auto pp = prime_power_decompose(q);
  check(pp.has_value(), errc::bad_input, "q = " + q.get_str() + " is not a prime power");
  check(poly.is_monic(), errc::not_monic, "polynomial is not monic");
  check(poly.degree() >= 2 && poly.degree() % 2 == 0, errc::functional_equation_fails,
        "degree must be a positive even integer");
  int g = poly.degree() / 2;
  for (int j = 0; j < g; ++j) {
    Int expect = pow_int(q, static_cast<unsigned long>(g - j)) * poly.coeff(2 * g - j);
    check(poly.coeff(j) == expect, errc::functional_equation_fails,
          "coefficient " + std::to_string(j) + " violates the functional equation");
  }
  IntPoly h = real_weil_transform(poly, q, g);
  IntPoly hs = squarefree_part(h);
  int inside = count_roots_in_weil_interval(hs, q);
  check(inside == hs.degree(), errc::weil_bound_fails,
        "some root does not have absolute value sqrt(q)");
  return WeilPolynomial{poly, q, pp->p, pp->d, g};
}

}  // namespace mtroot

#endif
