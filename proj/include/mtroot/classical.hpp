#ifndef MTROOT_CLASSICAL_HPP_
#define MTROOT_CLASSICAL_HPP_

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "mtroot/matgroup.hpp"
#include "mtroot/matrix.hpp"

namespace mtroot {

// Standard integral models of the classical root data with their minuscule
// weight orbits, built from the textbook coordinates.  Spin-type weights are
// presented in a weight-lattice basis so that every vector is integral.
struct StandardDatum {
  std::string name;
  int dim = 0;                  // ambient lattice rank
  std::vector<Vec> weights;     // minuscule orbit
  std::vector<IMat> weyl_gens;  // column action
  std::vector<Vec> roots;
  std::vector<Vec> coroots;  // dual coordinates, aligned with roots
  Int weyl_order;
};

namespace classical_detail {

inline Vec unit(int n, int i, long s = 1) {
  Vec v(n, Int(0));
  v[i] = s;
  return v;
}

inline IMat perm_matrix(int n, const std::vector<int>& images) {
  IMat m(n, Vec(n, Int(0)));
  for (int i = 0; i < n; ++i) m[images[i]][i] = 1;  // column i holds e_{images[i]}
  return m;
}

inline IMat sign_flip(int n, const std::vector<int>& coords) {
  IMat m = identity_mat(n);
  for (int i : coords) m[i][i] = -1;
  return m;
}

// base change to the spin weight-lattice basis f_j = e_j (j < r-1),
// f_{r-1} = (e_0 + ... + e_{r-1})/2; returns the matrix with 2*F integral
// handled through exact rational conversion
struct SpinBasis {
  int r;
  // x_e = F x_f with F = [I | last column (1/2,...,1/2)]
  Vec to_f(const std::vector<Rat>& xe) const {
    // x_f[r-1] = 2*xe[r-1] is wrong in general: solve explicitly
    // f_j = e_j (j<r-1), f_{r-1} = (sum e)/2:
    // x_e = sum_j x_f[j] f_j  =>  e-coord i<r-1: x_f[i] + x_f[r-1]/2,
    // e-coord r-1: x_f[r-1]/2
    std::vector<Rat> xf(r);
    xf[r - 1] = 2 * xe[r - 1];
    for (int i = 0; i < r - 1; ++i) xf[i] = xe[i] - xe[r - 1];
    Vec out(r);
    for (int i = 0; i < r; ++i) {
      check(xf[i].get_den() == 1, errc::internal, "spin coordinate is not integral");
      out[i] = xf[i].get_num();
    }
    return out;
  }
  // covector transport: v_f = F^T v_e
  Vec dual_to_f(const std::vector<Rat>& ve) const {
    std::vector<Rat> vf(r);
    for (int i = 0; i < r - 1; ++i) vf[i] = ve[i];
    Rat s = 0;
    for (int i = 0; i < r; ++i) s += ve[i];
    vf[r - 1] = s / 2;
    Vec out(r);
    for (int i = 0; i < r; ++i) {
      check(vf[i].get_den() == 1, errc::internal, "spin dual coordinate is not integral");
      out[i] = vf[i].get_num();
    }
    return out;
  }
  // conjugate an e-coordinate matrix into the f basis
  IMat mat_to_f(const IMat& me) const {
    // columns: image of f_j in e-coords, then convert each to f-coords
    IMat out(r, Vec(r));
    for (int j = 0; j < r; ++j) {
      std::vector<Rat> fj(r, Rat(0));
      if (j < r - 1)
        fj[j] = 1;
      else
        for (int i = 0; i < r; ++i) fj[i] = Rat(1, 2);
      std::vector<Rat> img(r, Rat(0));
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) img[a] += Rat(me[a][b]) * fj[b];
      Vec col = to_f(img);
      for (int a = 0; a < r; ++a) out[a][j] = col[a];
    }
    return out;
  }
};

inline std::vector<IMat> signed_perm_gens(int r, bool even_only) {
  std::vector<IMat> gens;
  std::vector<int> cyc(r), tr(r);
  for (int i = 0; i < r; ++i) cyc[i] = (i + 1) % r;
  for (int i = 0; i < r; ++i) tr[i] = i;
  if (r >= 2) std::swap(tr[0], tr[1]);
  gens.push_back(perm_matrix(r, cyc));
  if (r >= 2) gens.push_back(perm_matrix(r, tr));
  if (even_only)
    gens.push_back(sign_flip(r, {0, 1}));
  else
    gens.push_back(sign_flip(r, {0}));
  return gens;
}

}  // namespace classical_detail

// A_r with highest weight the s-th fundamental weight: weights are the 0/1
// vectors of weight s in Z^(r+1); roots e_i - e_j
inline StandardDatum standard_A(int r, int s) {
  using namespace classical_detail;
  check(r >= 1 && s >= 1 && s <= r, errc::bad_input, "A_r needs 1 <= s <= r");
  StandardDatum d;
  d.name = "A" + std::to_string(r) + " w" + std::to_string(s);
  d.dim = r + 1;
  std::vector<int> comb(s);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == s) {
      Vec w(d.dim, Int(0));
      for (int c : comb) w[c] = 1;
      d.weights.push_back(w);
      return;
    }
    for (int i = start; i <= r; ++i) {
      comb[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  std::vector<int> cyc(d.dim), tr(d.dim);
  for (int i = 0; i < d.dim; ++i) cyc[i] = (i + 1) % d.dim;
  for (int i = 0; i < d.dim; ++i) tr[i] = i;
  std::swap(tr[0], tr[1]);
  d.weyl_gens = {perm_matrix(d.dim, cyc), perm_matrix(d.dim, tr)};
  for (int i = 0; i < d.dim; ++i)
    for (int j = 0; j < d.dim; ++j) {
      if (i == j) continue;
      Vec root(d.dim, Int(0));
      root[i] = 1;
      root[j] = -1;
      d.roots.push_back(root);
      d.coroots.push_back(root);  // dual standard basis
    }
  d.weyl_order = factorial(static_cast<unsigned long>(r + 1));
  return d;
}

// C_r with the vector representation: weights +-e_i, roots +-e_i+-e_j, +-2e_i
inline StandardDatum standard_C(int r) {
  using namespace classical_detail;
  check(r >= 2, errc::bad_input, "C_r needs r >= 2");
  StandardDatum d;
  d.name = "C" + std::to_string(r) + " w1";
  d.dim = r;
  for (int i = 0; i < r; ++i) {
    d.weights.push_back(unit(r, i, 1));
    d.weights.push_back(unit(r, i, -1));
  }
  d.weyl_gens = signed_perm_gens(r, false);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (long si : {1L, -1L})
        for (long sj : {1L, -1L}) {
          Vec root(r, Int(0));
          root[i] = si;
          root[j] = sj;
          d.roots.push_back(root);
          d.coroots.push_back(root);
        }
  for (int i = 0; i < r; ++i)
    for (long si : {1L, -1L}) {
      d.roots.push_back(unit(r, i, 2 * si));
      d.coroots.push_back(unit(r, i, si));
    }
  d.weyl_order = pow_int(Int(2), r) * factorial(r);
  return d;
}

// D_r with the vector representation
inline StandardDatum standard_D_vector(int r) {
  using namespace classical_detail;
  check(r >= 4, errc::bad_input, "D_r needs r >= 4");
  StandardDatum d;
  d.name = "D" + std::to_string(r) + " w1";
  d.dim = r;
  for (int i = 0; i < r; ++i) {
    d.weights.push_back(unit(r, i, 1));
    d.weights.push_back(unit(r, i, -1));
  }
  d.weyl_gens = signed_perm_gens(r, true);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (long si : {1L, -1L})
        for (long sj : {1L, -1L}) {
          Vec root(r, Int(0));
          root[i] = si;
          root[j] = sj;
          d.roots.push_back(root);
          d.coroots.push_back(root);
        }
  d.weyl_order = pow_int(Int(2), r - 1) * factorial(r);
  return d;
}

// B_r with the spin representation, in the weight-lattice basis
inline StandardDatum standard_B_spin(int r) {
  using namespace classical_detail;
  check(r >= 3, errc::bad_input, "B_r needs r >= 3");
  StandardDatum d;
  d.name = "B" + std::to_string(r) + " spin";
  d.dim = r;
  SpinBasis sb{r};
  for (long mask = 0; mask < (1L << r); ++mask) {
    std::vector<Rat> w(r);
    for (int i = 0; i < r; ++i) w[i] = Rat((mask >> i) & 1 ? 1 : -1, 2);
    d.weights.push_back(sb.to_f(w));
  }
  for (const auto& m : signed_perm_gens(r, false)) d.weyl_gens.push_back(sb.mat_to_f(m));
  auto add_root = [&](const std::vector<Rat>& e_root, const std::vector<Rat>& e_coroot) {
    d.roots.push_back(sb.to_f(e_root));
    d.coroots.push_back(sb.dual_to_f(e_coroot));
  };
  for (int i = 0; i < r; ++i)
    for (long si : {1L, -1L}) {
      std::vector<Rat> root(r, Rat(0)), coroot(r, Rat(0));
      root[i] = si;
      coroot[i] = 2 * si;
      add_root(root, coroot);  // short root e_i, coroot 2e_i*
    }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (long si : {1L, -1L})
        for (long sj : {1L, -1L}) {
          std::vector<Rat> root(r, Rat(0)), coroot(r, Rat(0));
          root[i] = si;
          root[j] = sj;
          coroot[i] = si;
          coroot[j] = sj;
          add_root(root, coroot);
        }
  d.weyl_order = pow_int(Int(2), r) * factorial(r);
  return d;
}

// D_r with a half-spin representation; eps = +1 or -1 picks the spinor
inline StandardDatum standard_D_spin(int r, int eps) {
  using namespace classical_detail;
  check(r >= 4, errc::bad_input, "D_r needs r >= 4");
  StandardDatum d;
  d.name = "D" + std::to_string(r) + (eps > 0 ? " spin+" : " spin-");
  d.dim = r;
  SpinBasis sb{r};
  for (long mask = 0; mask < (1L << r); ++mask) {
    int parity = __builtin_popcountl(mask) % 2;
    int sign_product = (r - __builtin_popcountl(mask)) % 2 == 0 ? 1 : -1;
    // product of the signs: (-1)^{number of -1s} = (-1)^{r - popcount}
    (void)parity;
    if ((eps > 0) != (sign_product > 0)) continue;
    std::vector<Rat> w(r);
    for (int i = 0; i < r; ++i) w[i] = Rat((mask >> i) & 1 ? 1 : -1, 2);
    d.weights.push_back(sb.to_f(w));
  }
  for (const auto& m : signed_perm_gens(r, true)) d.weyl_gens.push_back(sb.mat_to_f(m));
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (long si : {1L, -1L})
        for (long sj : {1L, -1L}) {
          std::vector<Rat> root(r, Rat(0)), coroot(r, Rat(0));
          root[i] = si;
          root[j] = sj;
          coroot[i] = si;
          coroot[j] = sj;
          d.roots.push_back(sb.to_f(root));
          d.coroots.push_back(sb.dual_to_f(coroot));
        }
  d.weyl_order = pow_int(Int(2), r - 1) * factorial(r);
  return d;
}

// E6 / E7 in fundamental-weight coordinates; reflections act through the
// Cartan matrix columns, all data integral
inline StandardDatum standard_E(int type, int minuscule_node) {
  check(type == 6 || type == 7, errc::bad_input, "only E6 and E7 carry minuscule weights");
  int r = type;
  // Bourbaki numbering: chain 1-3-4-5-6(-7), node 2 attached to 4
  std::vector<std::pair<int, int>> edges = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 4}};
  if (type == 7) edges.push_back({6, 7});
  IMat cartan(r, Vec(r, Int(0)));
  for (int i = 0; i < r; ++i) cartan[i][i] = 2;
  for (auto [a, b] : edges) {
    cartan[a - 1][b - 1] = -1;
    cartan[b - 1][a - 1] = -1;
  }
  StandardDatum d;
  d.name = "E" + std::to_string(type) + " w" + std::to_string(minuscule_node);
  d.dim = r;
  for (int i = 0; i < r; ++i) {
    // s_i(x) = x - x_i * alpha_i with alpha_i the i-th Cartan column
    IMat s = identity_mat(r);
    for (int a = 0; a < r; ++a) s[a][i] -= cartan[a][i];
    d.weyl_gens.push_back(s);
  }
  auto orbit_of = [&](const Vec& seed) {
    std::set<Vec> seen = {seed};
    std::vector<Vec> work = {seed};
    for (size_t t = 0; t < work.size(); ++t)
      for (const auto& s : d.weyl_gens) {
        Vec img = mat_vec(s, work[t]);
        if (seen.insert(img).second) work.push_back(img);
      }
    std::sort(work.begin(), work.end());
    return work;
  };
  d.weights = orbit_of(classical_detail::unit(r, minuscule_node - 1));
  int adjoint_node = (type == 6) ? 2 : 1;  // highest root = that fundamental weight
  d.roots = orbit_of(classical_detail::unit(r, adjoint_node - 1));
  d.weyl_order = (type == 6) ? Int(51840) : Int(2903040);
  return d;
}

}  // namespace mtroot

#endif
