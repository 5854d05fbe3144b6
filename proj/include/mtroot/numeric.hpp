#ifndef MTROOT_NUMERIC_HPP_
#define MTROOT_NUMERIC_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mtroot/errors.hpp"

namespace mtroot {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int g;
  mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int pow_int(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// floor division, sign of denominator must be positive
inline Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int mod_pos(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// symmetric remainder in (-m/2, m/2]
inline Int mod_sym(const Int& a, const Int& m) {
  Int r = mod_pos(a, m);
  if (2 * r > m) r -= m;
  return r;
}

inline Int divexact(const Int& a, const Int& b, errc code = errc::internal) {
  Int q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  check(r == 0, code, "division is not exact");
  return q;
}

inline Int invert_mod(const Int& a, const Int& m) {
  Int r;
  int ok = mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  check(ok != 0, errc::internal, "element not invertible");
  return r;
}

inline Int powmod(const Int& b, const Int& e, const Int& m) {
  Int r;
  if (e < 0) {
    Int bi = invert_mod(b, m);
    Int epos = -e;
    mpz_powm(r.get_mpz_t(), bi.get_mpz_t(), epos.get_mpz_t(), m.get_mpz_t());
  } else {
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  }
  return r;
}

inline bool is_probable_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

inline Int next_prime(const Int& n) {
  Int r;
  mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline Int isqrt(const Int& n) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline std::vector<long> primes_up_to(long bound) {
  std::vector<bool> sieve(bound + 1, true);
  std::vector<long> out;
  for (long i = 2; i <= bound; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (long j = 2 * i; j <= bound; j += i) sieve[j] = false;
  }
  return out;
}

// q = p^d with p prime, d >= 1
struct PrimePower {
  Int p;
  unsigned long d = 1;
  Int q;
};

inline std::optional<PrimePower> prime_power_decompose(const Int& q) {
  if (q < 2) return std::nullopt;
  Int base = q;
  unsigned long d = 1;
  if (mpz_perfect_power_p(q.get_mpz_t())) {
    // peel the largest exponent with prime base
    for (unsigned long e = mpz_sizeinbase(q.get_mpz_t(), 2); e >= 2; --e) {
      Int r;
      if (mpz_root(r.get_mpz_t(), q.get_mpz_t(), e) != 0) {
        if (is_probable_prime(r)) {
          base = r;
          d = e;
          break;
        }
      }
    }
  }
  if (!is_probable_prime(base)) return std::nullopt;
  return PrimePower{base, d, q};
}

namespace detail {

inline Int pollard_rho(const Int& n, unsigned long c0) {
  Int x = 2, y = 2, d = 1;
  Int c = c0;
  auto f = [&](const Int& v) { return mod_pos(v * v + c, n); };
  while (d == 1) {
    x = f(x);
    y = f(f(y));
    d = gcd(abs(x - y), n);
  }
  return d;
}

inline void factor_rec(const Int& n, std::map<Int, unsigned long>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out[n]++;
    return;
  }
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out[Int(p)]++;
      factor_rec(divexact(n, p), out);
      return;
    }
  }
  Int d = n;
  for (unsigned long c = 1; d == n || d == 1; ++c) d = pollard_rho(n, c);
  factor_rec(d, out);
  factor_rec(divexact(n, d), out);
}

}  // namespace detail

inline std::map<Int, unsigned long> factorize(const Int& n) {
  check(n >= 1, errc::bad_input, "factorize expects a positive integer");
  std::map<Int, unsigned long> out;
  detail::factor_rec(n, out);
  return out;
}

// lcm of all u with euler_phi(u) <= bound; every torsion element of a field of
// degree <= bound over Q has order dividing this number
inline Int torsion_order_lcm(unsigned long bound) {
  Int result = 1;
  for (long p : primes_up_to(static_cast<long>(bound) + 1)) {
    // largest e with (p-1)p^(e-1) <= bound
    Int pe = p;
    Int phi = p - 1;
    while (phi * p <= Int(bound)) {
      phi *= p;
      pe *= p;
    }
    result *= pe;
  }
  return result;
}

// multiplicative order of a mod m when it divides `divisor_of` (factored)
inline Int order_dividing(const Int& a, const Int& m, const Int& divisor_of) {
  Int ord = divisor_of;
  check(powmod(a, ord, m) == 1, errc::internal, "order does not divide given bound");
  for (const auto& [p, e] : factorize(divisor_of)) {
    for (unsigned long i = 0; i < e; ++i) {
      Int cand = divexact(ord, p);
      if (powmod(a, cand, m) == 1)
        ord = cand;
      else
        break;
    }
  }
  return ord;
}

inline Int factorial(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace mtroot

#endif
