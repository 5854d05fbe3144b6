#ifndef MTROOT_POINTCOUNT_HPP_
#define MTROOT_POINTCOUNT_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "mtroot/gf.hpp"
#include "mtroot/intpoly.hpp"
#include "mtroot/weil.hpp"

namespace mtroot {

struct HyperellipticCurve {
  IntPoly f;  // y^2 = f(x), squarefree over Q, deg >= 3
  int genus = 0;

  explicit HyperellipticCurve(IntPoly rhs) : f(std::move(rhs)) {
    check(f.degree() >= 3, errc::bad_input, "need deg f >= 3");
    check(is_squarefree(f), errc::bad_input, "f must be squarefree over Q");
    genus = (f.degree() - 1) / 2;
  }
};

struct CountConfig {
  Int max_enumeration = Int(100000000);
};

namespace pc_detail {

constexpr int kMaxExt = 8;

// flat F_{p^k} arithmetic tuned for exhaustive loops
struct CountField {
  uint64_t p;
  int k;
  uint64_t q;
  std::array<uint64_t, kMaxExt + 1> mod{};

  CountField(uint64_t p_, int k_) : p(p_), k(k_) {
    check(k >= 1 && k <= kMaxExt, errc::enumeration_too_large, "extension degree too large");
    FpPoly m = fp::least_irreducible(k, p);
    for (int i = 0; i <= k; ++i) mod[i] = m[i];
    q = 1;
    for (int i = 0; i < k; ++i) q *= p;
  }

  using Elem = std::array<uint64_t, kMaxExt>;

  Elem zero() const { return Elem{}; }
  Elem one() const {
    Elem e{};
    e[0] = 1;
    return e;
  }

  void mul(const Elem& a, const Elem& b, Elem& out) const {
    uint64_t acc[2 * kMaxExt - 1] = {0};
    for (int i = 0; i < k; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < k; ++j) acc[i + j] += a[i] * b[j] % p;
    }
    for (int t = 2 * k - 2; t >= k; --t) {
      uint64_t c = acc[t] % p;
      if (c == 0) continue;
      uint64_t negc = p - c;
      for (int j = 0; j < k; ++j) acc[t - k + j] += negc * mod[j] % p;
    }
    for (int i = 0; i < k; ++i) out[i] = acc[i] % p;
    for (int i = k; i < kMaxExt; ++i) out[i] = 0;
  }

  Elem pow(Elem base, uint64_t e) const {
    Elem r = one(), tmp;
    while (e) {
      if (e & 1) {
        mul(r, base, tmp);
        r = tmp;
      }
      mul(base, base, tmp);
      base = tmp;
      e >>= 1;
    }
    return r;
  }

  uint64_t index(const Elem& e) const {
    uint64_t r = 0;
    for (int i = k - 1; i >= 0; --i) r = r * p + e[i];
    return r;
  }

  Elem from_index(uint64_t idx) const {
    Elem e{};
    for (int i = 0; i < k; ++i) {
      e[i] = idx % p;
      idx /= p;
    }
    return e;
  }

  Elem from_int(const Int& v) const {
    Elem e{};
    e[0] = mpz_fdiv_ui(v.get_mpz_t(), p);
    return e;
  }

  Elem generator() const {
    auto fac = factorize(Int(q - 1));
    for (uint64_t idx = 1; idx < q; ++idx) {
      Elem g = from_index(idx);
      bool ok = true;
      for (const auto& [pr, e] : fac) {
        uint64_t cof = (q - 1) / pr.get_ui();
        if (pow(g, cof) == one()) {
          ok = false;
          break;
        }
      }
      if (ok) return g;
    }
    fail(errc::internal, "no generator found");
  }
};

}  // namespace pc_detail

// #C(F_{p^k}) for the smooth projective model of y^2 = f(x):
// sum over x of 1 + chi(f(x)), plus 1 point at infinity for odd deg f and
// 1 + chi(lc f) points for even deg f.
inline Int count_points(const HyperellipticCurve& curve, const Int& p, int k,
                        const CountConfig& config = {}) {
  check(is_probable_prime(p) && p > 2, errc::bad_input, "p must be an odd prime");
  check(k >= 1, errc::bad_input, "k must be positive");
  Int qI = pow_int(p, static_cast<unsigned long>(k));
  check(qI <= config.max_enumeration, errc::enumeration_too_large,
        "field size exceeds the enumeration limit");
  // good reduction: f stays squarefree of full degree mod p
  {
    uint64_t pu = p.get_ui();
    FpPoly fbar = fp::from_intpoly(curve.f, pu);
    check(fp::degree(fbar) == curve.f.degree(), errc::bad_reduction,
          "leading coefficient vanishes mod p");
    FpPoly d = fp::derivative(fbar, pu);
    check(!d.empty() && fp::degree(fp::gcd(fbar, d, pu)) == 0, errc::bad_reduction,
          "f is not separable mod p");
  }

  pc_detail::CountField F(p.get_ui(), k);
  uint64_t q = F.q;

  // quadratic character by table: chi[i] for the element with index i
  std::vector<int8_t> chi(q, -1);
  chi[0] = 0;
  {
    auto g = F.generator();
    pc_detail::CountField::Elem g2, s = F.one(), tmp;
    F.mul(g, g, g2);
    chi[F.index(s)] = 1;
    for (uint64_t i = 1; i < (q - 1) / 2; ++i) {
      F.mul(s, g2, tmp);
      s = tmp;
      chi[F.index(s)] = 1;
    }
  }

  // collect nonzero terms of f
  std::vector<std::pair<int, Int>> terms;
  for (int i = 0; i <= curve.f.degree(); ++i)
    if (curve.f.coeff(i) != 0) terms.emplace_back(i, curve.f.coeff(i));

  long long sum = 0;
  if (terms.size() <= 8) {
    // multiplicative walk: x = g^i, each term steps by g^(exponent)
    auto g = F.generator();
    std::vector<pc_detail::CountField::Elem> val, step;
    Int c0 = 0;
    for (auto& [e, c] : terms) {
      if (e == 0) {
        c0 = c;
        continue;
      }
      val.push_back(F.from_int(c));  // value at x = g^0 = 1
      step.push_back(F.pow(g, static_cast<uint64_t>(e)));
    }
    pc_detail::CountField::Elem base = F.from_int(c0);
    pc_detail::CountField::Elem acc, tmp;
    for (uint64_t i = 0; i < q - 1; ++i) {
      acc = base;
      for (size_t t = 0; t < val.size(); ++t) {
        for (int j = 0; j < F.k; ++j) acc[j] = (acc[j] + val[t][j]) % F.p;
      }
      sum += chi[F.index(acc)];
      for (size_t t = 0; t < val.size(); ++t) {
        F.mul(val[t], step[t], tmp);
        val[t] = tmp;
      }
    }
    // x = 0 contributes chi(f(0))
    sum += chi[F.index(base)];
  } else {
    // Horner sweep over all field elements
    std::vector<pc_detail::CountField::Elem> coeffs;
    for (int i = curve.f.degree(); i >= 0; --i) coeffs.push_back(F.from_int(curve.f.coeff(i)));
    pc_detail::CountField::Elem x, acc, tmp;
    for (uint64_t idx = 0; idx < q; ++idx) {
      x = F.from_index(idx);
      acc = coeffs[0];
      for (size_t t = 1; t < coeffs.size(); ++t) {
        F.mul(acc, x, tmp);
        for (int j = 0; j < F.k; ++j) tmp[j] = (tmp[j] + coeffs[t][j]) % F.p;
        acc = tmp;
      }
      sum += chi[F.index(acc)];
    }
  }

  Int total = qI + Int(static_cast<long>(sum));
  if (curve.f.degree() % 2 == 1) {
    total += 1;
  } else {
    total += 1 + chi[F.index(F.from_int(curve.f.lc()))];
  }
  return total;
}

struct CountVector {
  Int p;
  std::vector<Int> counts;  // #C(F_{p^k}) for k = 1..g

  // every count must lie in the Weil interval
  void validate(int g) const {
    check(static_cast<int>(counts.size()) == g, errc::bad_input, "need counts for k=1..g");
    for (int k = 1; k <= g; ++k) {
      Int qk = pow_int(p, static_cast<unsigned long>(k));
      // (2g sqrt(q^k))^2 bound, checked without floating point:
      // |count - q^k - 1| <= 2g q^(k/2)  <=>  (count - q^k - 1)^2 <= 4g^2 q^k
      Int dev = counts[k - 1] - qk - 1;
      check(dev * dev <= Int(4) * g * g * qk, errc::bad_input,
            "count outside the Weil interval");
    }
  }
};

// power sums s_k = p^k + 1 - #C(F_{p^k}) feed Newton's identities; the top
// half of the coefficients comes from the functional equation
inline WeilPolynomial frobenius_polynomial(const CountVector& counts, int g, const Int& p) {
  counts.validate(g);
  std::vector<Int> s(g + 1, Int(0));
  for (int k = 1; k <= g; ++k)
    s[k] = pow_int(p, static_cast<unsigned long>(k)) + 1 - counts.counts[k - 1];
  std::vector<Int> e(g + 1, Int(0));
  e[0] = 1;
  for (int k = 1; k <= g; ++k) {
    Int acc = 0;
    for (int i = 1; i <= k; ++i) {
      Int term = e[k - i] * s[i];
      acc += (i % 2 == 1) ? term : -term;
    }
    e[k] = divexact(acc, Int(k), errc::weil_validation_fails);
  }
  std::vector<Int> c(2 * g + 1, Int(0));
  c[2 * g] = 1;
  for (int k = 1; k <= g; ++k) c[2 * g - k] = (k % 2 == 1) ? -e[k] : e[k];
  for (int j = 0; j < g; ++j) c[j] = pow_int(p, static_cast<unsigned long>(g - j)) * c[2 * g - j];
  try {
    return validate_weil(IntPoly(c), p);
  } catch (const error& err) {
    fail(errc::weil_validation_fails, err.what());
  }
}

inline WeilPolynomial frobenius_polynomial_from_curve(const HyperellipticCurve& curve,
                                                      const Int& p,
                                                      const CountConfig& config = {}) {
  CountVector cv;
  cv.p = p;
  for (int k = 1; k <= curve.genus; ++k) cv.counts.push_back(count_points(curve, p, k, config));
  return frobenius_polynomial(cv, curve.genus, p);
}

}  // namespace mtroot

#endif
