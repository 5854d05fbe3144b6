#ifndef MTROOT_INTPOLY_HPP_
#define MTROOT_INTPOLY_HPP_

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mtroot/numeric.hpp"

namespace mtroot {

// Dense integer polynomial, coefficients stored lowest degree first.
// The zero polynomial has an empty coefficient vector and degree -1.
struct IntPoly {
  std::vector<Int> c;

  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { normalize(); }

  static IntPoly constant(const Int& v) { return IntPoly(std::vector<Int>{v}); }
  // x^k
  static IntPoly monomial(unsigned k, const Int& v = 1) {
    std::vector<Int> cs(k + 1, Int(0));
    cs[k] = v;
    return IntPoly(std::move(cs));
  }

  void normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const Int& lc() const {
    check(!c.empty(), errc::zero_polynomial, "leading coefficient of zero polynomial");
    return c.back();
  }
  Int coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c.size())) return Int(0);
    return c[i];
  }
  bool is_monic() const { return !c.empty() && c.back() == 1; }

  bool operator==(const IntPoly& o) const { return c == o.c; }
  bool operator!=(const IntPoly& o) const { return c != o.c; }
};

inline IntPoly add(const IntPoly& a, const IntPoly& b) {
  std::vector<Int> r(std::max(a.c.size(), b.c.size()), Int(0));
  for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
  return IntPoly(std::move(r));
}

inline IntPoly neg(const IntPoly& a) {
  std::vector<Int> r = a.c;
  for (auto& x : r) x = -x;
  return IntPoly(std::move(r));
}

inline IntPoly sub(const IntPoly& a, const IntPoly& b) { return add(a, neg(b)); }

inline IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<Int> r(a.c.size() + b.c.size() - 1, Int(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
  return IntPoly(std::move(r));
}

inline IntPoly mul(const IntPoly& a, const Int& s) {
  std::vector<Int> r = a.c;
  for (auto& x : r) x *= s;
  return IntPoly(std::move(r));
}

inline IntPoly derivative(const IntPoly& a) {
  if (a.degree() <= 0) return IntPoly();
  std::vector<Int> r(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i) r[i - 1] = Int(i) * a.c[i];
  return IntPoly(std::move(r));
}

inline Int content(const IntPoly& a) {
  Int g = 0;
  for (const auto& x : a.c) g = gcd(g, x);
  return g;
}

// content removed, leading coefficient positive
inline IntPoly primitive_part(const IntPoly& a) {
  if (a.is_zero()) return a;
  Int g = content(a);
  if (a.lc() < 0) g = -g;
  std::vector<Int> r = a.c;
  for (auto& x : r) x = divexact(x, g);
  return IntPoly(std::move(r));
}

inline Int eval(const IntPoly& a, const Int& x) {
  Int r = 0;
  for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) r = r * x + *it;
  return r;
}

inline Rat eval(const IntPoly& a, const Rat& x) {
  Rat r = 0;
  for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) r = r * x + *it;
  return r;
}

// quotient of a by b when the division is exact over Z
inline IntPoly divexact_poly(const IntPoly& a, const IntPoly& b,
                             errc code = errc::internal) {
  check(!b.is_zero(), errc::zero_polynomial, "division by zero polynomial");
  if (a.is_zero()) return IntPoly();
  check(a.degree() >= b.degree(), code, "polynomial division is not exact");
  std::vector<Int> rem = a.c;
  std::vector<Int> q(a.degree() - b.degree() + 1, Int(0));
  for (int i = a.degree() - b.degree(); i >= 0; --i) {
    Int qi = divexact(rem[i + b.degree()], b.lc(), code);
    q[i] = qi;
    if (qi != 0)
      for (int j = 0; j <= b.degree(); ++j) rem[i + j] -= qi * b.c[j];
  }
  for (const auto& x : rem) check(x == 0, code, "polynomial division is not exact");
  return IntPoly(std::move(q));
}

// pseudo-remainder: some power of lc(b) times a, reduced by b
inline IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
  check(!b.is_zero(), errc::zero_polynomial, "pseudo_rem by zero");
  IntPoly r = a;
  int db = b.degree();
  while (!r.is_zero() && r.degree() >= db) {
    int k = r.degree() - db;
    IntPoly shifted = mul(b, IntPoly::monomial(static_cast<unsigned>(k), r.lc()));
    r = sub(mul(r, b.lc()), shifted);
  }
  return r;
}

// gcd over Z, primitive with positive leading coefficient
inline IntPoly gcd_poly(IntPoly a, IntPoly b) {
  a = primitive_part(a);
  b = primitive_part(b);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = primitive_part(pseudo_rem(a, b));
    a = b;
    b = r;
  }
  return primitive_part(a);
}

inline bool is_squarefree(const IntPoly& a) {
  if (a.is_zero()) return false;
  if (a.degree() == 0) return true;
  return gcd_poly(a, derivative(a)).degree() == 0;
}

// Yun's algorithm; factors primitive with positive leading coefficient,
// pairwise coprime, product of factor^multiplicity equals the input up to
// sign and content.
inline std::vector<std::pair<IntPoly, int>> squarefree_factorization(const IntPoly& f0) {
  check(!f0.is_zero(), errc::zero_polynomial, "squarefree factorization of zero");
  IntPoly f = primitive_part(f0);
  std::vector<std::pair<IntPoly, int>> out;
  if (f.degree() == 0) return out;
  IntPoly fp = derivative(f);
  IntPoly a = gcd_poly(f, fp);
  IntPoly b = divexact_poly(f, a);
  IntPoly c = divexact_poly(fp, a);
  IntPoly d = sub(c, derivative(b));
  int i = 1;
  while (b.degree() > 0) {
    IntPoly p = gcd_poly(b, d);
    if (p.degree() > 0) out.emplace_back(p, i);
    b = divexact_poly(b, p.degree() > 0 ? p : IntPoly::constant(1));
    c = divexact_poly(d, p.degree() > 0 ? p : IntPoly::constant(1));
    d = sub(c, derivative(b));
    ++i;
  }
  return out;
}

inline IntPoly squarefree_part(const IntPoly& f) {
  IntPoly r = IntPoly::constant(1);
  for (const auto& [fac, mult] : squarefree_factorization(f)) r = mul(r, fac);
  return r;
}

inline std::string to_string(const IntPoly& a, const std::string& var = "x") {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = a.degree(); i >= 0; --i) {
    Int v = a.coeff(i);
    if (v == 0) continue;
    if (first) {
      if (v < 0) os << "-";
      first = false;
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    Int av = abs(v);
    if (i == 0 || av != 1) os << av.get_str();
    if (i > 0) {
      if (av != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace mtroot

#endif
