#ifndef MTROOT_MATRIX_HPP_
#define MTROOT_MATRIX_HPP_

#include <algorithm>
#include <utility>
#include <vector>

#include "mtroot/numeric.hpp"

namespace mtroot {

using Vec = std::vector<Int>;
using IMat = std::vector<Vec>;

inline IMat identity_mat(int n) {
  IMat m(n, Vec(n, Int(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline int mat_rows(const IMat& a) { return static_cast<int>(a.size()); }
inline int mat_cols(const IMat& a) { return a.empty() ? 0 : static_cast<int>(a[0].size()); }

inline IMat mat_mul(const IMat& a, const IMat& b) {
  int n = mat_rows(a), k = mat_cols(a), m = mat_cols(b);
  check(k == mat_rows(b), errc::internal, "matrix shape mismatch");
  IMat r(n, Vec(m, Int(0)));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (int j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

// row vector times matrix
inline Vec vec_mat(const Vec& v, const IMat& m) {
  int n = mat_rows(m), c = mat_cols(m);
  check(static_cast<int>(v.size()) == n, errc::internal, "vector/matrix shape mismatch");
  Vec r(c, Int(0));
  for (int i = 0; i < n; ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < c; ++j) r[j] += v[i] * m[i][j];
  }
  return r;
}

inline Vec mat_vec(const IMat& m, const Vec& v) {
  int n = mat_rows(m), c = mat_cols(m);
  check(static_cast<int>(v.size()) == c, errc::internal, "matrix/vector shape mismatch");
  Vec r(n, Int(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < c; ++j) r[i] += m[i][j] * v[j];
  return r;
}

inline IMat transpose(const IMat& a) {
  IMat r(mat_cols(a), Vec(mat_rows(a)));
  for (int i = 0; i < mat_rows(a); ++i)
    for (int j = 0; j < mat_cols(a); ++j) r[j][i] = a[i][j];
  return r;
}

// Row-style Hermite normal form: echelon rows spanning the same lattice,
// positive pivots, entries above each pivot reduced into [0, pivot).
// Zero rows are dropped.  Two lattices are equal iff their HNFs coincide.
inline IMat hnf(IMat a) {
  int rows = mat_rows(a), cols = mat_cols(a);
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    // gcd-reduce entries of this column below row r
    while (true) {
      int piv = -1;
      for (int i = r; i < rows; ++i)
        if (a[i][col] != 0 && (piv == -1 || abs(a[i][col]) < abs(a[piv][col]))) piv = i;
      if (piv == -1) break;
      std::swap(a[r], a[piv]);
      bool clean = true;
      for (int i = r + 1; i < rows; ++i) {
        if (a[i][col] == 0) continue;
        Int q = fdiv(a[i][col], a[r][col]);
        for (int j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
        if (a[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (a[r][col] == 0) continue;
    if (a[r][col] < 0)
      for (int j = 0; j < cols; ++j) a[r][j] = -a[r][j];
    for (int i = 0; i < r; ++i) {
      Int q = fdiv(a[i][col], a[r][col]);
      if (q == 0) continue;
      for (int j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
    }
    ++r;
  }
  a.resize(r);
  return a;
}

inline bool lattice_equal(const IMat& a, const IMat& b) { return hnf(a) == hnf(b); }

// basis of { x in Z^n : A x = 0 } for A acting on column vectors; the result
// rows are a basis of a saturated sublattice
inline IMat kernel(const IMat& a) {
  int n = mat_cols(a);
  IMat at = transpose(a);  // n x m
  int m = mat_cols(at);
  // augment with identity and row reduce the left block
  IMat work(n, Vec(m + n, Int(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) work[i][j] = at[i][j];
    work[i][m + i] = 1;
  }
  int r = 0;
  for (int col = 0; col < m && r < n; ++col) {
    while (true) {
      int piv = -1;
      for (int i = r; i < n; ++i)
        if (work[i][col] != 0 && (piv == -1 || abs(work[i][col]) < abs(work[piv][col]))) piv = i;
      if (piv == -1) break;
      std::swap(work[r], work[piv]);
      bool clean = true;
      for (int i = r + 1; i < n; ++i) {
        if (work[i][col] == 0) continue;
        Int q = fdiv(work[i][col], work[r][col]);
        for (int j = 0; j < m + n; ++j) work[i][j] -= q * work[r][j];
        if (work[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (work[r][col] != 0) ++r;
  }
  IMat out;
  for (int i = r; i < n; ++i) {
    bool zero_left = true;
    for (int j = 0; j < m; ++j)
      if (work[i][j] != 0) zero_left = false;
    check(zero_left, errc::internal, "kernel extraction failed");
    out.emplace_back(work[i].begin() + m, work[i].end());
  }
  return hnf(out);
}

struct SmithForm {
  std::vector<Int> diag;  // nonnegative, divisibility-ordered, length min(m,n)
  IMat P;                 // m x m unimodular
  IMat Q;                 // n x n unimodular, P*A*Q = diag
};

inline SmithForm snf(IMat a) {
  int m = mat_rows(a), n = mat_cols(a);
  SmithForm s;
  s.P = identity_mat(m);
  s.Q = identity_mat(n);
  auto row_op = [&](int i, int k, const Int& q) {  // row_i -= q*row_k
    for (int j = 0; j < n; ++j) a[i][j] -= q * a[k][j];
    for (int j = 0; j < m; ++j) s.P[i][j] -= q * s.P[k][j];
  };
  auto col_op = [&](int j, int k, const Int& q) {  // col_j -= q*col_k
    for (int i = 0; i < m; ++i) a[i][j] -= q * a[i][k];
    for (int i = 0; i < n; ++i) s.Q[i][j] -= q * s.Q[i][k];
  };
  auto row_swap = [&](int i, int k) {
    std::swap(a[i], a[k]);
    std::swap(s.P[i], s.P[k]);
  };
  auto col_swap = [&](int j, int k) {
    for (int i = 0; i < m; ++i) std::swap(a[i][j], a[i][k]);
    for (int i = 0; i < n; ++i) std::swap(s.Q[i][j], s.Q[i][k]);
  };
  auto row_negate = [&](int i) {
    for (int j = 0; j < n; ++j) a[i][j] = -a[i][j];
    for (int j = 0; j < m; ++j) s.P[i][j] = -s.P[i][j];
  };

  int t = 0;
  while (t < m && t < n) {
    // locate minimal nonzero entry in the trailing block
    int bi = -1, bj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j)
        if (a[i][j] != 0 && (bi == -1 || abs(a[i][j]) < abs(a[bi][bj]))) {
          bi = i;
          bj = j;
        }
    if (bi == -1) break;
    row_swap(t, bi);
    col_swap(t, bj);
    bool again = true;
    while (again) {
      again = false;
      for (int i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        Int q = fdiv(a[i][t], a[t][t]);
        row_op(i, t, q);
        if (a[i][t] != 0) {
          row_swap(t, i);
          again = true;
        }
      }
      for (int j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        Int q = fdiv(a[t][j], a[t][t]);
        col_op(j, t, q);
        if (a[t][j] != 0) {
          col_swap(t, j);
          again = true;
        }
      }
    }
    if (a[t][t] < 0) row_negate(t);
    // enforce divisibility of the remaining block by the pivot
    bool fixed = false;
    for (int i = t + 1; i < m && !fixed; ++i)
      for (int j = t + 1; j < n && !fixed; ++j)
        if (a[i][j] % a[t][t] != 0) {
          row_op(t, i, Int(-1));  // add row i to row t
          fixed = true;
        }
    if (fixed) continue;  // redo pivot at same t
    ++t;
  }
  s.diag.assign(std::min(m, n), Int(0));
  for (int i = 0; i < std::min(m, n); ++i) s.diag[i] = a[i][i];
  return s;
}

// determinant by fraction-free elimination
inline Int det(IMat a) {
  int n = mat_rows(a);
  check(n == mat_cols(a), errc::internal, "det of non-square matrix");
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) {
          piv = i;
          break;
        }
      if (piv == -1) return 0;
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a[i][j] = divexact(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// exact inverse of a unimodular integer matrix
inline IMat inverse_unimodular(const IMat& a) {
  int n = mat_rows(a);
  Int d = det(a);
  check(d == 1 || d == -1, errc::internal, "matrix is not unimodular");
  // Gauss-Jordan over rationals, then read off integer entries
  std::vector<std::vector<Rat>> w(n, std::vector<Rat>(2 * n, Rat(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w[i][j] = Rat(a[i][j]);
    w[i][n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (w[i][col] != 0) {
        piv = i;
        break;
      }
    check(piv >= 0, errc::internal, "singular matrix");
    std::swap(w[col], w[piv]);
    Rat inv = 1 / w[col][col];
    for (int j = 0; j < 2 * n; ++j) w[col][j] *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == col || w[i][col] == 0) continue;
      Rat f = w[i][col];
      for (int j = 0; j < 2 * n; ++j) w[i][j] -= f * w[col][j];
    }
  }
  IMat r(n, Vec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat v = w[i][n + j];
      check(v.get_den() == 1, errc::internal, "non-integer inverse entry");
      r[i][j] = v.get_num();
    }
  return r;
}

// rational rank of a set of integer row vectors
inline int rank_of(const std::vector<Vec>& rows) {
  if (rows.empty()) return 0;
  std::vector<std::vector<Rat>> w;
  for (const auto& v : rows) {
    std::vector<Rat> r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    w.push_back(std::move(r));
  }
  int n = static_cast<int>(w.size()), c = static_cast<int>(w[0].size());
  int rank = 0;
  for (int col = 0; col < c && rank < n; ++col) {
    int piv = -1;
    for (int i = rank; i < n; ++i)
      if (w[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv == -1) continue;
    std::swap(w[rank], w[piv]);
    for (int i = rank + 1; i < n; ++i) {
      if (w[i][col] == 0) continue;
      Rat f = w[i][col] / w[rank][col];
      for (int j = col; j < c; ++j) w[i][j] -= f * w[rank][j];
    }
    ++rank;
  }
  return rank;
}

// membership of v in the rational span of the given vectors
inline bool in_span(const Vec& v, const std::vector<Vec>& basis) {
  std::vector<Vec> with = basis;
  with.push_back(v);
  return rank_of(with) == rank_of(basis);
}

}  // namespace mtroot

#endif
