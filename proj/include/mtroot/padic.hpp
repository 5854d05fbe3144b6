#ifndef MTROOT_PADIC_HPP_
#define MTROOT_PADIC_HPP_

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "mtroot/gf.hpp"
#include "mtroot/intpoly.hpp"
#include "mtroot/numeric.hpp"
#include "mtroot/weil.hpp"

namespace mtroot {

// Unramified extension of Q_ell of residue degree f, realized as
// Z_ell[t]/(modulus) with the lexicographically least irreducible modulus;
// the choice is deterministic across runs.
struct UnramifiedField {
  Int ell;
  int f = 1;
  IntPoly modulus;
};

// Arithmetic in O/(ell^m); elements are coefficient vectors of length f with
// entries in [0, ell^m).
class PadicRing {
 public:
  using Elem = std::vector<Int>;

  PadicRing(const UnramifiedField& field, long m)
      : F_(field), m_(m), ellm_(pow_int(field.ell, static_cast<unsigned long>(m))) {}

  long precision() const { return m_; }
  const Int& modulus_int() const { return ellm_; }
  const UnramifiedField& field() const { return F_; }

  Elem zero() const { return Elem(F_.f, Int(0)); }
  Elem one() const {
    Elem e = zero();
    e[0] = 1;
    return e;
  }
  Elem from_int(const Int& v) const {
    Elem e = zero();
    e[0] = mod_pos(v, ellm_);
    return e;
  }
  Elem reduce(Elem e) const {
    for (auto& x : e) x = mod_pos(x, ellm_);
    return e;
  }

  bool is_zero(const Elem& a) const {
    for (const auto& x : a)
      if (x != 0) return false;
    return true;
  }
  bool is_one(const Elem& a) const {
    if (a[0] != 1) return false;
    for (size_t i = 1; i < a.size(); ++i)
      if (a[i] != 0) return false;
    return true;
  }
  bool is_unit(const Elem& a) const {
    for (const auto& x : a)
      if (mod_pos(x, F_.ell) != 0) return true;
    return false;
  }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r(F_.f);
    for (int i = 0; i < F_.f; ++i) r[i] = mod_pos(a[i] + b[i], ellm_);
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r(F_.f);
    for (int i = 0; i < F_.f; ++i) r[i] = mod_pos(a[i] - b[i], ellm_);
    return r;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    int f = F_.f;
    std::vector<Int> prod(2 * f - 1, Int(0));
    for (int i = 0; i < f; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < f; ++j) prod[i + j] += a[i] * b[j];
    }
    // reduce by the monic modulus
    for (int k = 2 * f - 2; k >= f; --k) {
      if (prod[k] == 0) continue;
      Int c = prod[k];
      prod[k] = 0;
      for (int j = 0; j < f; ++j) prod[k - f + j] -= c * F_.modulus.coeff(j);
    }
    Elem r(f);
    for (int i = 0; i < f; ++i) r[i] = mod_pos(prod[i], ellm_);
    return r;
  }

  // inverse of a unit by lifting the residue-field inverse
  Elem inv(const Elem& a) const {
    check(is_unit(a), errc::internal, "inverse of non-unit in p-adic ring");
    uint64_t ell = F_.ell.get_ui();
    FpPoly abar(F_.f);
    for (int i = 0; i < F_.f; ++i) abar[i] = mpz_fdiv_ui(a[i].get_mpz_t(), ell);
    fp::normalize(abar);
    FpPoly ibar = fp::inv_mod(abar, fp::from_intpoly(F_.modulus, ell), ell);
    Elem x = zero();
    for (size_t i = 0; i < ibar.size(); ++i) x[i] = Int(static_cast<unsigned long>(ibar[i]));
    // Newton: x <- x(2 - a x), doubling correctness each step
    long prec = 1;
    while (prec < m_) {
      prec = std::min(2 * prec, m_);
      Elem ax = mul(a, x);
      Elem two_minus = sub(add(one(), one()), ax);
      x = mul(x, two_minus);
    }
    return x;
  }

  Elem pow(Elem base, Int e) const {
    if (e < 0) {
      base = inv(base);
      e = -e;
    }
    Elem r = one();
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  Elem eval_poly(const IntPoly& P, const Elem& x) const {
    Elem r = zero();
    for (int i = P.degree(); i >= 0; --i) {
      r = mul(r, x);
      r[0] = mod_pos(r[0] + P.coeff(i), ellm_);
    }
    return r;
  }

  // integer in the symmetric range if the element is rational, else nullopt
  std::optional<Int> rational_value(const Elem& a) const {
    for (size_t i = 1; i < a.size(); ++i)
      if (a[i] != 0) return std::nullopt;
    return mod_sym(a[0], ellm_);
  }

 private:
  UnramifiedField F_;
  long m_;
  Int ellm_;
};

struct RootBlock {
  IntPoly poly;  // squarefree, monic
  Int q;
  Int p;
  unsigned long dq = 1;  // q = p^dq
  int offset = 0;
  int count = 0;
};

struct SplittingConfig {
  long aux_prime_min = 3;
  long aux_prime_max = 100000;
  int max_residue_degree = 24;
};

// The distinct roots of one or more Weil polynomials inside a common
// unramified ell-adic field, labeled and paired by pi * pibar = q.
// Labels are arranged per block so that the partner of i is i + count/2.
// For non-Weil toy inputs the pairing can be degenerate: a fixed point
// (pi^2 = q) or missing partners; operations that need the involution call
// require_pairing() first.
class LabeledRoots {
 public:
  UnramifiedField field;
  std::vector<RootBlock> blocks;
  std::vector<std::vector<Int>> residues;  // mod ell, fixes the labeling
  std::vector<int> pairing;                // partner label, -1 if none
  bool clean_pairing = true;               // fixed-point free and total

  int n() const { return static_cast<int>(residues.size()); }

  void require_pairing() const {
    check(clean_pairing, errc::pairing_fails,
          "no fixed-point-free pairing with pi * pibar = q exists");
  }

  const RootBlock& block_of(int label) const {
    for (const auto& b : blocks)
      if (label >= b.offset && label < b.offset + b.count) return b;
    fail(errc::internal, "label out of range");
  }

  long precision() const { return precision_; }

  PadicRing ring() const { return PadicRing(field, precision_); }

  const GFContext& gf() const {
    if (!gf_) gf_ = std::make_shared<GFContext>(field.ell.get_ui(), field.f);
    return *gf_;
  }

  // Hensel lifting by Newton iteration; deterministic, and a no-op when the
  // roots already carry at least the requested precision
  void lift_to(long m) const {
    check(m >= 1, errc::bad_input, "precision must be positive");
    if (roots_.empty()) {
      roots_ = residues;
      precision_ = 1;
    }
    if (m <= precision_) return;
    long cur = precision_;
    while (cur < m) {
      long next = std::min(2 * cur, m);
      PadicRing R(field, next);
      for (int i = 0; i < n(); ++i) {
        const IntPoly& P = block_of(i).poly;
        PadicRing::Elem r = R.reduce(roots_[i]);
        PadicRing::Elem fr = R.eval_poly(P, r);
        PadicRing::Elem dr = R.eval_poly(derivative(P), r);
        check(R.is_unit(dr), errc::derivative_not_unit,
              "derivative vanishes at an approximate root");
        roots_[i] = R.sub(r, R.mul(fr, R.inv(dr)));
      }
      cur = next;
    }
    precision_ = m;
  }

  std::vector<PadicRing::Elem> roots_at(long m) const {
    lift_to(m);
    if (m == precision_) return roots_;
    PadicRing R(field, m);
    std::vector<PadicRing::Elem> out(roots_.size());
    for (size_t i = 0; i < roots_.size(); ++i) out[i] = R.reduce(roots_[i]);
    return out;
  }

 private:
  mutable long precision_ = 1;
  mutable std::vector<std::vector<Int>> roots_;
  mutable std::shared_ptr<GFContext> gf_;
};

namespace padic_detail {

inline double log_d(const Int& v) { return std::log(v.get_d()); }

}  // namespace padic_detail

// smallest working precision that certifies exact products for the exponent
// vector e (entries indexed by label), with B an upper bound for the degree
// of the splitting field over Q
inline long certified_precision(const LabeledRoots& roots, const std::vector<Int>& e, long B) {
  double num = std::log(2.0);
  for (const auto& b : roots.blocks) {
    Int sa = 0, sb = 0;
    for (int i = b.offset; i < b.offset + b.count; ++i) {
      if (e[i] > 0) sa += e[i];
      if (e[i] < 0) sb -= e[i];
    }
    Int mx = std::max(sa, sb);
    num += mx.get_d() / 2.0 * padic_detail::log_d(b.q);
  }
  double denom = roots.field.f * padic_detail::log_d(roots.field.ell);
  long m = static_cast<long>(std::floor(B * num / denom)) + 2;
  return std::max(m, 2L);
}

// exact test for prod_i pi_i^{e_i} * prod_b q_b^{qexp_b} == 1; the q factors
// are folded into the exponents through the pairing relation
inline bool certified_product_is_one(const LabeledRoots& roots, std::vector<Int> e, long B,
                                     const std::vector<Int>& qexp = {}) {
  check(static_cast<int>(e.size()) == roots.n(), errc::bad_input, "exponent length mismatch");
  if (!qexp.empty()) {
    roots.require_pairing();
    check(qexp.size() == roots.blocks.size(), errc::bad_input, "q exponent length mismatch");
    for (size_t b = 0; b < roots.blocks.size(); ++b) {
      if (qexp[b] == 0) continue;
      int i0 = roots.blocks[b].offset;
      e[i0] += qexp[b];
      e[roots.pairing[i0]] += qexp[b];
    }
  }
  long m = certified_precision(roots, e, B);
  auto rts = roots.roots_at(m);
  PadicRing R(roots.field, m);
  PadicRing::Elem num = R.one(), den = R.one();
  for (int i = 0; i < roots.n(); ++i) {
    if (e[i] > 0) num = R.mul(num, R.pow(rts[i], e[i]));
    if (e[i] < 0) den = R.mul(den, R.pow(rts[i], -e[i]));
  }
  return num == den;
}

// order of the product's image in the residue field, when that order is
// consistent with torsion in a degree <= B number field; nullopt otherwise
inline std::optional<Int> residue_torsion_order(const LabeledRoots& roots,
                                                const std::vector<Int>& e, long B) {
  const GFContext& gf = roots.gf();
  GFContext::Elem z = gf.one();
  for (int i = 0; i < roots.n(); ++i) {
    if (e[i] == 0) continue;
    GFContext::Elem base(roots.field.f);
    for (int j = 0; j < roots.field.f; ++j)
      base[j] = mpz_fdiv_ui(roots.residues[i][j].get_mpz_t(), gf.p);
    fp::normalize(base);
    z = gf.mul(z, gf.pow(base, e[i]));
  }
  Int lambda = torsion_order_lcm(static_cast<unsigned long>(B));
  Int D = gcd(lambda, gf.q - 1);
  if (!(gf.pow(z, D) == gf.one())) return std::nullopt;
  Int ord = D;
  for (const auto& [pr, mult] : factorize(D)) {
    for (unsigned long i = 0; i < mult; ++i) {
      Int cand = divexact(ord, pr);
      if (gf.pow(z, cand) == gf.one())
        ord = cand;
      else
        break;
    }
  }
  return ord;
}

// order of prod pi^e when it is a root of unity, nullopt when it is not
inline std::optional<Int> root_of_unity_order(const LabeledRoots& roots,
                                              const std::vector<Int>& e, long B) {
  auto ord = residue_torsion_order(roots, e, B);
  if (!ord) return std::nullopt;
  std::vector<Int> scaled(e.size());
  for (size_t i = 0; i < e.size(); ++i) scaled[i] = e[i] * *ord;
  if (!certified_product_is_one(roots, scaled, B)) return std::nullopt;
  return ord;
}

// ---------------------------------------------------------------------------
// splitting-field construction

namespace padic_detail {

inline bool squarefree_mod(const IntPoly& P, uint64_t ell) {
  FpPoly f = fp::from_intpoly(P, ell);
  if (fp::degree(f) != P.degree()) return false;  // leading coefficient dropped
  FpPoly d = fp::derivative(f, ell);
  if (d.empty()) return false;
  return fp::degree(fp::gcd(f, d, ell)) == 0;
}

}  // namespace padic_detail

inline LabeledRoots build_splitting_field_multi(
    const std::vector<std::pair<IntPoly, Int>>& polys, const SplittingConfig& config = {}) {
  check(!polys.empty(), errc::bad_input, "no polynomials given");
  // squarefree and pairwise coprime input
  IntPoly product = IntPoly::constant(1);
  for (const auto& [P, q] : polys) {
    check(P.is_monic(), errc::bad_input, "polynomial must be monic");
    check(is_squarefree(P), errc::bad_input, "polynomial must be squarefree");
    product = mul(product, P);
  }
  check(is_squarefree(product), errc::polynomials_not_coprime,
        "polynomials share a common factor");

  // auxiliary prime: odd, coprime to all q, product squarefree mod ell,
  // residue degree within bounds
  long chosen = 0;
  int f = 0;
  long start = static_cast<long>(
      next_prime(Int(std::max(2L, config.aux_prime_min - 1))).get_si());
  for (long ellc = start; ellc <= config.aux_prime_max;
       ellc = static_cast<long>(next_prime(Int(ellc)).get_si())) {
    if (ellc % 2 == 0) continue;
    bool ok = true;
    for (const auto& [P, q] : polys)
      if (mpz_fdiv_ui(q.get_mpz_t(), ellc) == 0) ok = false;
    if (!ok) continue;
    if (!padic_detail::squarefree_mod(product, static_cast<uint64_t>(ellc))) continue;
    auto factors = fp_factor::factor(fp::from_intpoly(product, ellc), ellc);
    int flcm = 1;
    for (const auto& [irr, mult] : factors)
      flcm = static_cast<int>(std::lcm(flcm, fp::degree(irr)));
    if (flcm > config.max_residue_degree) continue;
    chosen = ellc;
    f = flcm;
    break;
  }
  check(chosen != 0, errc::no_suitable_aux_prime,
        "no auxiliary prime in the configured range");

  LabeledRoots out;
  out.field.ell = chosen;
  out.field.f = f;
  out.field.modulus = fp::to_intpoly(fp::least_irreducible(f, chosen));

  GFContext gf(static_cast<uint64_t>(chosen), f);
  int offset = 0;
  for (const auto& [P, q] : polys) {
    auto pp = prime_power_decompose(q);
    check(pp.has_value(), errc::bad_input, "q is not a prime power");
    RootBlock blk;
    blk.poly = P;
    blk.q = q;
    blk.p = pp->p;
    blk.dq = pp->d;
    blk.offset = offset;
    blk.count = P.degree();

    // all roots in the residue field, then pair and arrange labels
    std::vector<GFContext::Elem> rts;
    for (const auto& [irr, mult] : fp_factor::factor(fp::from_intpoly(P, chosen), chosen)) {
      auto rr = gfpoly::roots_in_field(gfpoly::from_fp(irr), gf);
      rts.insert(rts.end(), rr.begin(), rr.end());
    }
    check(static_cast<int>(rts.size()) == P.degree(), errc::internal,
          "could not find all roots in the residue field");
    std::sort(rts.begin(), rts.end());
    // involution r -> q / r on residues; degenerate cases are recorded, and
    // operations that need the involution reject them later
    GFContext::Elem qbar = gf.from_u(mpz_fdiv_ui(q.get_mpz_t(), chosen));
    std::vector<int> partner(rts.size(), -1);
    bool clean = (blk.count % 2 == 0);
    for (size_t i = 0; i < rts.size(); ++i) {
      GFContext::Elem target = gf.mul(qbar, gf.inv(rts[i]));
      auto it = std::lower_bound(rts.begin(), rts.end(), target);
      if (it == rts.end() || *it != target) {
        clean = false;
        continue;
      }
      partner[i] = static_cast<int>(it - rts.begin());
      if (partner[i] == static_cast<int>(i)) clean = false;  // pi^2 = q
    }
    std::vector<int> order;
    if (clean) {
      // first half one representative per pair, partner at i + count/2
      int half = blk.count / 2;
      std::vector<bool> taken(rts.size(), false);
      for (size_t i = 0; i < rts.size(); ++i) {
        if (taken[i]) continue;
        order.push_back(static_cast<int>(i));
        taken[i] = taken[partner[i]] = true;
      }
      check(static_cast<int>(order.size()) == half, errc::internal,
            "pairing arrangement failed");
      for (int i = 0; i < half; ++i) order.push_back(partner[order[i]]);
      for (int i = 0; i < half; ++i) out.pairing.push_back(offset + half + i);
      for (int i = 0; i < half; ++i) out.pairing.push_back(offset + i);
    } else {
      out.clean_pairing = false;
      std::vector<int> pos(rts.size());
      for (size_t i = 0; i < rts.size(); ++i) {
        order.push_back(static_cast<int>(i));
        pos[i] = static_cast<int>(i);
      }
      for (size_t i = 0; i < rts.size(); ++i)
        out.pairing.push_back(partner[i] < 0 ? -1 : offset + pos[partner[i]]);
    }
    for (int i = 0; i < blk.count; ++i) {
      std::vector<Int> res(f, Int(0));
      const auto& r = rts[order[i]];
      for (size_t j = 0; j < r.size(); ++j) res[j] = Int(static_cast<unsigned long>(r[j]));
      out.residues.push_back(std::move(res));
    }
    offset += blk.count;
    out.blocks.push_back(blk);
  }
  return out;
}

inline LabeledRoots build_splitting_field(const IntPoly& P, const Int& q,
                                          const SplittingConfig& config = {}) {
  return build_splitting_field_multi({{P, q}}, config);
}

inline void hensel_lift_to(const LabeledRoots& roots, long m) { roots.lift_to(m); }

}  // namespace mtroot

#endif
