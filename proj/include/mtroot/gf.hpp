#ifndef MTROOT_GF_HPP_
#define MTROOT_GF_HPP_

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "mtroot/intpoly.hpp"
#include "mtroot/numeric.hpp"

namespace mtroot {

// Polynomials over F_p for word-sized p.  Coefficients lowest degree first,
// reduced to [0, p).  Used for factorization patterns mod small auxiliary
// primes and for building extension-field moduli.
using FpPoly = std::vector<uint64_t>;

namespace fp {

inline void normalize(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

inline FpPoly from_intpoly(const IntPoly& f, uint64_t p) {
  FpPoly r(f.c.size());
  for (size_t i = 0; i < f.c.size(); ++i) r[i] = mpz_fdiv_ui(f.c[i].get_mpz_t(), p);
  normalize(r);
  return r;
}

inline IntPoly to_intpoly(const FpPoly& a) {
  std::vector<Int> c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = Int(static_cast<unsigned long>(a[i]));
  return IntPoly(std::move(c));
}

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline uint64_t powmod_u(uint64_t b, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = mulmod(r, b, p);
    b = mulmod(b, b, p);
    e >>= 1;
  }
  return r;
}

inline uint64_t invmod_u(uint64_t a, uint64_t p) { return powmod_u(a, p - 2, p); }

inline FpPoly add(const FpPoly& a, const FpPoly& b, uint64_t p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  normalize(r);
  return r;
}

inline FpPoly sub(const FpPoly& a, const FpPoly& b, uint64_t p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  normalize(r);
  return r;
}

inline FpPoly mul(const FpPoly& a, const FpPoly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  normalize(r);
  return r;
}

inline FpPoly scalar_mul(const FpPoly& a, uint64_t s, uint64_t p) {
  FpPoly r = a;
  for (auto& x : r) x = mulmod(x, s % p, p);
  normalize(r);
  return r;
}

inline FpPoly monic(const FpPoly& a, uint64_t p) {
  if (a.empty()) return a;
  return scalar_mul(a, invmod_u(a.back(), p), p);
}

inline FpPoly rem(FpPoly a, const FpPoly& b, uint64_t p) {
  check(!b.empty(), errc::zero_polynomial, "rem by zero mod p");
  uint64_t binv = invmod_u(b.back(), p);
  while (degree(a) >= degree(b)) {
    uint64_t q = mulmod(a.back(), binv, p);
    int shift = degree(a) - degree(b);
    for (size_t j = 0; j < b.size(); ++j) {
      size_t idx = j + shift;
      a[idx] = (a[idx] + p - mulmod(q, b[j], p)) % p;
    }
    normalize(a);
  }
  return a;
}

inline FpPoly quot(FpPoly a, const FpPoly& b, uint64_t p) {
  check(!b.empty(), errc::zero_polynomial, "quot by zero mod p");
  if (degree(a) < degree(b)) return {};
  uint64_t binv = invmod_u(b.back(), p);
  FpPoly q(degree(a) - degree(b) + 1, 0);
  while (degree(a) >= degree(b)) {
    uint64_t qc = mulmod(a.back(), binv, p);
    int shift = degree(a) - degree(b);
    q[shift] = qc;
    for (size_t j = 0; j < b.size(); ++j) {
      size_t idx = j + shift;
      a[idx] = (a[idx] + p - mulmod(qc, b[j], p)) % p;
    }
    normalize(a);
  }
  return q;
}

inline FpPoly gcd(FpPoly a, FpPoly b, uint64_t p) {
  while (!b.empty()) {
    FpPoly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

inline FpPoly derivative(const FpPoly& a, uint64_t p) {
  if (degree(a) <= 0) return {};
  FpPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = mulmod(a[i], i % p, p);
  normalize(r);
  return r;
}

inline FpPoly powmod(FpPoly base, Int e, const FpPoly& mod, uint64_t p) {
  FpPoly r = {1};
  base = rem(std::move(base), mod, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = rem(mul(r, base, p), mod, p);
    base = rem(mul(base, base, p), mod, p);
    e >>= 1;
  }
  return r;
}

inline uint64_t eval(const FpPoly& a, uint64_t x, uint64_t p) {
  uint64_t r = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) r = (mulmod(r, x, p) + *it) % p;
  return r;
}

// inverse of a modulo m over F_p via extended Euclid; a must be coprime to m
inline FpPoly inv_mod(FpPoly a, const FpPoly& m, uint64_t p) {
  a = rem(std::move(a), m, p);
  FpPoly r0 = m, r1 = a;
  FpPoly s0 = {}, s1 = {1};
  while (!r1.empty()) {
    FpPoly q = quot(r0, r1, p);
    FpPoly r2 = sub(r0, mul(q, r1, p), p);
    FpPoly s2 = sub(s0, mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  check(degree(r0) == 0, errc::internal, "element not invertible mod m");
  return scalar_mul(s0, invmod_u(r0[0], p), p);
}

inline bool is_irreducible(const FpPoly& f, uint64_t p) {
  int n = degree(f);
  if (n <= 0) return false;
  if (n == 1) return true;
  // x^(p^n) == x mod f and gcd(x^(p^(n/t)) - x, f) == 1 for prime t | n
  FpPoly x = {0, 1};
  FpPoly xp = powmod(x, pow_int(Int(static_cast<unsigned long>(p)), n), f, p);
  if (sub(xp, x, p) != FpPoly{}) return false;
  for (int t = 2; t <= n; ++t) {
    if (n % t != 0) continue;
    bool t_prime = true;
    for (int d = 2; d * d <= t; ++d)
      if (t % d == 0) t_prime = false;
    if (!t_prime) continue;
    FpPoly xq = powmod(x, pow_int(Int(static_cast<unsigned long>(p)), n / t), f, p);
    if (degree(gcd(sub(xq, x, p), f, p)) != 0) return false;
  }
  return true;
}

// lexicographically least monic irreducible of degree n over F_p, scanning
// constant coefficient fastest; deterministic across runs
inline FpPoly least_irreducible(int n, uint64_t p) {
  check(n >= 1, errc::bad_input, "degree must be positive");
  FpPoly f(n + 1, 0);
  f[n] = 1;
  while (true) {
    if (is_irreducible(f, p)) return f;
    int i = 0;
    while (i < n && f[i] == p - 1) f[i++] = 0;
    check(i < n, errc::internal, "no irreducible polynomial found");
    f[i]++;
  }
}

}  // namespace fp

// Distinct-degree then equal-degree (Cantor--Zassenhaus) factorization of a
// squarefree monic polynomial over F_p; deterministic element sweep keeps
// the output ordering reproducible.
namespace fp_factor {

inline std::vector<FpPoly> equal_degree_split(const FpPoly& f, int d, uint64_t p) {
  using namespace fp;
  std::vector<FpPoly> work = {f}, done;
  Int pd = pow_int(Int(static_cast<unsigned long>(p)), d);
  uint64_t seed = 1;
  while (!work.empty()) {
    FpPoly g = work.back();
    work.pop_back();
    if (degree(g) == d) {
      done.push_back(monic(g, p));
      continue;
    }
    // try split with deterministic pseudo-random elements
    bool split_found = false;
    for (int attempt = 0; attempt < 200 && !split_found; ++attempt) {
      seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
      FpPoly a(degree(g), 0);
      uint64_t s = seed;
      for (auto& x : a) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        x = (s >> 16) % p;
      }
      normalize(a);
      if (a.empty()) continue;
      FpPoly h;
      if (p == 2) {
        // trace map: a + a^2 + a^4 + ... over F_{2^d}
        FpPoly t = a, acc = a;
        for (int i = 1; i < d; ++i) {
          t = rem(mul(t, t, p), g, p);
          acc = add(acc, t, p);
        }
        h = acc;
      } else {
        h = powmod(a, (pd - 1) / 2, g, p);
        h = sub(h, {1}, p);
      }
      FpPoly u = gcd(h, g, p);
      if (degree(u) > 0 && degree(u) < degree(g)) {
        work.push_back(u);
        work.push_back(quot(g, u, p));
        split_found = true;
      }
    }
    check(split_found, errc::internal, "equal-degree splitting stalled");
  }
  std::sort(done.begin(), done.end());
  return done;
}

// complete factorization of arbitrary nonzero f over F_p
inline std::vector<std::pair<FpPoly, int>> factor(const FpPoly& f0, uint64_t p) {
  using namespace fp;
  check(!f0.empty(), errc::vanishes_mod_prime, "polynomial vanishes mod prime");
  std::vector<std::pair<FpPoly, int>> out;
  FpPoly f = monic(f0, p);
  if (degree(f) == 0) return out;
  // squarefree decomposition in characteristic p
  int mult_scale = 1;
  std::vector<std::pair<FpPoly, int>> stack = {{f, 1}};
  std::vector<std::pair<FpPoly, int>> squarefree_parts;
  while (!stack.empty()) {
    auto [g, scale] = stack.back();
    stack.pop_back();
    FpPoly gp = derivative(g, p);
    if (gp.empty()) {
      // g is a p-th power: g(x) = h(x^p)
      FpPoly h((degree(g) / p) + 1, 0);
      for (size_t i = 0; i < h.size(); ++i) h[i] = g[i * p];
      stack.push_back({h, scale * static_cast<int>(p)});
      continue;
    }
    FpPoly c = gcd(g, gp, p);
    FpPoly w = quot(g, c, p);
    int i = 1;
    while (degree(w) > 0) {
      FpPoly y = gcd(w, c, p);
      FpPoly fac = quot(w, y, p);
      if (degree(fac) > 0) squarefree_parts.push_back({fac, scale * i});
      w = y;
      c = quot(c, y, p);
      ++i;
    }
    if (degree(c) > 0) stack.push_back({c, scale});
  }
  (void)mult_scale;
  // distinct-degree + equal-degree on each squarefree part
  for (auto& [part, mult] : squarefree_parts) {
    FpPoly g = part;
    FpPoly x = {0, 1};
    FpPoly h = x;
    int d = 0;
    while (degree(g) > 0) {
      ++d;
      if (2 * d > degree(g)) {
        out.emplace_back(monic(g, p), mult);
        break;
      }
      h = powmod(h, Int(static_cast<unsigned long>(p)), g, p);
      FpPoly u = gcd(sub(h, x, p), g, p);
      if (degree(u) > 0) {
        for (auto& irr : equal_degree_split(u, d, p)) out.emplace_back(irr, mult);
        g = quot(g, u, p);
        h = rem(h, g, p);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fp_factor

// factorization of an integer polynomial modulo a prime; factors returned as
// monic integer lifts with coefficients in [0, p)
inline std::vector<std::pair<IntPoly, int>> factor_mod_prime(const IntPoly& f, const Int& ell) {
  check(is_probable_prime(ell), errc::bad_input, "modulus must be prime");
  check(ell.fits_ulong_p(), errc::bad_input, "prime too large for factorization");
  uint64_t p = ell.get_ui();
  FpPoly fp_ = fp::from_intpoly(f, p);
  check(!fp_.empty(), errc::vanishes_mod_prime, "polynomial vanishes mod " + ell.get_str());
  std::vector<std::pair<IntPoly, int>> out;
  for (auto& [g, m] : fp_factor::factor(fp_, p)) out.emplace_back(fp::to_intpoly(g), m);
  return out;
}

// ---------------------------------------------------------------------------
// Arithmetic in F_{p^k} realized as F_p[t]/(m(t)), m the lexicographically
// least monic irreducible of degree k.  Elements are coefficient vectors.

struct GFContext {
  uint64_t p;
  int k;
  FpPoly modulus;
  Int q;  // p^k

  GFContext(uint64_t p_, int k_) : p(p_), k(k_) {
    modulus = fp::least_irreducible(k, p);
    q = pow_int(Int(static_cast<unsigned long>(p)), k);
  }

  using Elem = FpPoly;

  Elem zero() const { return {}; }
  Elem one() const { return {1}; }
  Elem from_u(uint64_t v) const {
    Elem e = {v % p};
    fp::normalize(e);
    return e;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    return fp::rem(fp::mul(a, b, p), modulus, p);
  }
  Elem add(const Elem& a, const Elem& b) const { return fp::add(a, b, p); }
  Elem sub(const Elem& a, const Elem& b) const { return fp::sub(a, b, p); }
  Elem pow(Elem a, Int e) const {
    if (e < 0) {
      a = inv(a);
      e = -e;
    }
    Elem r = one();
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Elem inv(const Elem& a) const {
    check(!a.empty(), errc::internal, "inverse of zero in GF");
    return pow(a, q - 2);
  }
  // pack coefficients as a base-p integer index in [0, p^k); only valid when
  // p^k fits in a machine word (the point-counting regime)
  uint64_t index(const Elem& a) const {
    uint64_t r = 0;
    for (int i = k - 1; i >= 0; --i)
      r = r * p + (i < static_cast<int>(a.size()) ? a[i] : 0);
    return r;
  }
  Elem from_index(uint64_t idx) const {
    Elem e(k);
    for (int i = 0; i < k; ++i) {
      e[i] = idx % p;
      idx /= p;
    }
    fp::normalize(e);
    return e;
  }
  // deterministic element sweep in coefficient-lex order, works for any p^k
  Elem next_elem(Elem e) const {
    if (static_cast<int>(e.size()) < k) e.resize(k, 0);
    int i = 0;
    while (i < k && e[i] == p - 1) e[i++] = 0;
    if (i < k) e[i]++;
    fp::normalize(e);
    return e;
  }
  // smallest generator of the unit group in element-sweep order
  Elem generator() const {
    auto fac = factorize(q - 1);
    Elem g = one();
    while (true) {
      bool ok = !g.empty();
      for (const auto& [pr, e] : fac) {
        if (!ok) break;
        if (pow(g, divexact(q - 1, pr)) == one()) ok = false;
      }
      if (ok) return g;
      g = next_elem(g);
      check(!g.empty() || k > 0, errc::internal, "no generator found");
    }
  }
};

// polynomials over GF(p^k); used for finding roots of mod-p irreducible
// factors inside the extension field
namespace gfpoly {

using Poly = std::vector<GFContext::Elem>;

inline void normalize(Poly& a) {
  while (!a.empty() && a.back().empty()) a.pop_back();
}
inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly from_fp(const FpPoly& f) {
  Poly r(f.size());
  for (size_t i = 0; i < f.size(); ++i) r[i] = f[i] ? FpPoly{f[i]} : FpPoly{};
  normalize(r);
  return r;
}

inline Poly monic(const Poly& a, const GFContext& F) {
  if (a.empty()) return a;
  auto inv = F.inv(a.back());
  Poly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], inv);
  return r;
}

inline Poly mul(const Poly& a, const Poly& b, const GFContext& F) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, F.zero());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  normalize(r);
  return r;
}

inline Poly sub(const Poly& a, const Poly& b, const GFContext& F) {
  Poly r(std::max(a.size(), b.size()), F.zero());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  normalize(r);
  return r;
}

inline Poly rem(Poly a, const Poly& b, const GFContext& F) {
  check(!b.empty(), errc::zero_polynomial, "rem by zero over GF");
  auto binv = F.inv(b.back());
  while (degree(a) >= degree(b)) {
    auto q = F.mul(a.back(), binv);
    int shift = degree(a) - degree(b);
    for (size_t j = 0; j < b.size(); ++j)
      a[j + shift] = F.sub(a[j + shift], F.mul(q, b[j]));
    normalize(a);
  }
  return a;
}

inline Poly quot(Poly a, const Poly& b, const GFContext& F) {
  check(!b.empty(), errc::zero_polynomial, "quot by zero over GF");
  if (degree(a) < degree(b)) return {};
  auto binv = F.inv(b.back());
  Poly q(degree(a) - degree(b) + 1, F.zero());
  while (degree(a) >= degree(b)) {
    auto qc = F.mul(a.back(), binv);
    int shift = degree(a) - degree(b);
    q[shift] = qc;
    for (size_t j = 0; j < b.size(); ++j)
      a[j + shift] = F.sub(a[j + shift], F.mul(qc, b[j]));
    normalize(a);
  }
  return q;
}

inline Poly gcd(Poly a, Poly b, const GFContext& F) {
  while (!b.empty()) {
    Poly r = rem(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, F);
}

inline Poly powmod(Poly base, Int e, const Poly& mod, const GFContext& F) {
  Poly r = {F.one()};
  base = rem(std::move(base), mod, F);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = rem(mul(r, base, F), mod, F);
    base = rem(mul(base, base, F), mod, F);
    e >>= 1;
  }
  return r;
}

// all roots in F of a squarefree polynomial that splits completely over F;
// Cantor--Zassenhaus with a deterministic sweep, p odd
inline std::vector<GFContext::Elem> roots_in_field(const Poly& f0, const GFContext& F) {
  check(F.p != 2, errc::internal, "root finding requires odd characteristic");
  std::vector<GFContext::Elem> roots;
  std::vector<Poly> work = {monic(f0, F)};
  uint64_t seed = 0x9e3779b97f4a7c15ULL;
  while (!work.empty()) {
    Poly g = work.back();
    work.pop_back();
    if (degree(g) <= 0) continue;
    if (degree(g) == 1) {
      // root of x + c is -c
      roots.push_back(F.sub(F.zero(), g[0]));
      continue;
    }
    bool split = false;
    for (int attempt = 0; attempt < 400 && !split; ++attempt) {
      GFContext::Elem a(F.k);
      for (auto& coef : a) {
        seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
        coef = (seed >> 16) % F.p;
      }
      fp::normalize(a);
      Poly shifted = {a, F.one()};  // x + a
      Poly h = powmod(shifted, divexact(F.q - 1, 2), g, F);
      h = sub(h, {F.one()}, F);
      Poly u = gcd(h, g, F);
      if (degree(u) > 0 && degree(u) < degree(g)) {
        work.push_back(u);
        work.push_back(quot(g, u, F));
        split = true;
      }
    }
    check(split, errc::internal, "root splitting stalled over GF");
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace gfpoly

}  // namespace mtroot

#endif
