#ifndef MTROOT_PERM_HPP_
#define MTROOT_PERM_HPP_

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

#include "mtroot/numeric.hpp"

namespace mtroot {

// permutation of {0..n-1} as image vector; (a*b)(i) = a(b(i))
using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

inline bool perm_is_identity(const Perm& p) {
  for (int i = 0; i < static_cast<int>(p.size()); ++i)
    if (p[i] != i) return false;
  return true;
}

inline Perm perm_mul(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
  return r;
}

inline Perm perm_inverse(const Perm& a) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int>(i);
  return r;
}

inline std::vector<int> cycle_type(const Perm& p) {
  int n = static_cast<int>(p.size());
  std::vector<bool> seen(n, false);
  std::vector<int> type;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = p[j];
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.begin(), type.end());
  return type;
}

// Permutation group with a deterministic Schreier--Sims stabilizer chain.
class PermGroup {
 public:
  PermGroup() : n_(0) {}
  PermGroup(int degree, std::vector<Perm> gens) : n_(degree), gens_(std::move(gens)) {
    for (auto& g : gens_)
      check(static_cast<int>(g.size()) == n_, errc::bad_input, "generator degree mismatch");
    std::sort(gens_.begin(), gens_.end());
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    build();
  }

  int degree() const { return n_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const Int& order() const { return order_; }

  bool contains(const Perm& g) const {
    if (static_cast<int>(g.size()) != n_) return false;
    Perm h = g;
    size_t lev = sift(h);
    return lev == base_.size() && perm_is_identity(h);
  }

  bool is_subgroup_of(const PermGroup& other) const {
    for (const auto& g : gens_)
      if (!other.contains(g)) return false;
    return true;
  }

  std::vector<int> orbit(int point) const {
    std::vector<int> orb = {point};
    std::set<int> seen = {point};
    for (size_t i = 0; i < orb.size(); ++i)
      for (const auto& g : gens_) {
        int y = g[orb[i]];
        if (seen.insert(y).second) orb.push_back(y);
      }
    std::sort(orb.begin(), orb.end());
    return orb;
  }

  std::vector<std::vector<int>> orbits() const {
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(n_, false);
    for (int i = 0; i < n_; ++i) {
      if (seen[i]) continue;
      auto orb = orbit(i);
      for (int x : orb) seen[x] = true;
      out.push_back(orb);
    }
    return out;
  }

  // all elements, ascending lexicographic; requires order <= cap
  std::vector<Perm> elements(unsigned long cap = 4000000) const {
    check(order_ <= Int(cap), errc::internal, "group too large to enumerate");
    std::vector<Perm> out = {perm_identity(n_)};
    std::set<Perm> seen(out.begin(), out.end());
    for (size_t i = 0; i < out.size(); ++i)
      for (const auto& g : gens_) {
        Perm h = perm_mul(g, out[i]);
        if (seen.insert(h).second) out.push_back(h);
      }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  // strong generators fixing base_[0..k-1]
  std::vector<Perm> strong_at(size_t k) const {
    std::vector<Perm> out;
    for (const auto& g : strong_) {
      bool ok = true;
      for (size_t j = 0; j < k && ok; ++j)
        if (g[base_[j]] != base_[j]) ok = false;
      if (ok) out.push_back(g);
    }
    return out;
  }

  void insert_strong(const Perm& g) {
    size_t j = 0;
    while (j < base_.size() && g[base_[j]] == base_[j]) ++j;
    if (j == base_.size()) {
      int b = 0;
      while (g[b] == b) ++b;
      base_.push_back(b);
      transversal_.emplace_back();
    }
    strong_.push_back(g);
  }

  void rebuild_orbit(size_t k, const std::vector<Perm>& gens_k) {
    auto& tr = transversal_[k];
    tr.clear();
    tr[base_[k]] = perm_identity(n_);
    std::vector<int> frontier = {base_[k]};
    for (size_t i = 0; i < frontier.size(); ++i)
      for (const auto& s : gens_k) {
        int y = s[frontier[i]];
        if (!tr.count(y)) {
          tr[y] = perm_mul(s, tr[frontier[i]]);
          frontier.push_back(y);
        }
      }
  }

  size_t sift_from(Perm& h, size_t start) const {
    for (size_t lev = start; lev < base_.size(); ++lev) {
      int y = h[base_[lev]];
      auto it = transversal_[lev].find(y);
      if (it == transversal_[lev].end()) return lev;
      h = perm_mul(perm_inverse(it->second), h);
    }
    return base_.size();
  }

  size_t sift(Perm& h) const { return sift_from(h, 0); }

  // deterministic Schreier--Sims, completing levels bottom-up
  void build() {
    base_.clear();
    transversal_.clear();
    strong_.clear();
    for (const auto& g : gens_)
      if (!perm_is_identity(g)) insert_strong(g);
    if (!base_.empty()) {
      size_t i = base_.size() - 1;
      while (true) {
        auto gens_i = strong_at(i);
        rebuild_orbit(i, gens_i);
        std::vector<int> pts;
        for (const auto& [pt, u] : transversal_[i]) pts.push_back(pt);
        bool complete = true;
        for (size_t xi = 0; xi < pts.size() && complete; ++xi) {
          for (const auto& s : gens_i) {
            Perm schreier = perm_mul(perm_inverse(transversal_[i].at(s[pts[xi]])),
                                     perm_mul(s, transversal_[i].at(pts[xi])));
            if (perm_is_identity(schreier)) continue;
            Perm h = schreier;
            size_t j = sift_from(h, i + 1);
            if (perm_is_identity(h)) continue;
            insert_strong(h);  // may extend the base
            // deeper levels must be revisited before this one finishes
            for (size_t l = i + 1; l <= std::min(j, base_.size() - 1); ++l)
              rebuild_orbit(l, strong_at(l));
            i = std::min(j, base_.size() - 1);
            complete = false;
            break;
          }
        }
        if (complete) {
          if (i == 0) break;
          --i;
        }
      }
    }
    order_ = 1;
    for (const auto& t : transversal_) order_ *= Int(static_cast<unsigned long>(t.size()));
  }

  int n_;
  std::vector<Perm> gens_;
  Int order_ = 1;
  std::vector<int> base_;
  std::vector<Perm> strong_;
  std::vector<std::map<int, Perm>> transversal_;
};

// Dense group table for subgroup-lattice work; practical for order <= ~5000.
class SmallGroupTable {
 public:
  SmallGroupTable() = default;
  SmallGroupTable(const PermGroup& g, unsigned long cap = 20000) {
    degree_ = g.degree();
    elems_ = g.elements(cap);
    int n = static_cast<int>(elems_.size());
    for (int i = 0; i < n; ++i) index_[elems_[i]] = i;
    mul_.assign(n, std::vector<int>(n));
    inv_.assign(n, 0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) mul_[i][j] = index_.at(perm_mul(elems_[i], elems_[j]));
      inv_[i] = index_.at(perm_inverse(elems_[i]));
    }
    identity_ = index_.at(perm_identity(degree_));
  }

  int size() const { return static_cast<int>(elems_.size()); }
  int degree() const { return degree_; }
  const Perm& elem(int i) const { return elems_[i]; }
  int mul(int i, int j) const { return mul_[i][j]; }
  int inv(int i) const { return inv_[i]; }
  int identity() const { return identity_; }
  int index_of(const Perm& p) const {
    auto it = index_.find(p);
    check(it != index_.end(), errc::internal, "element not in group table");
    return it->second;
  }
  bool contains_perm(const Perm& p) const { return index_.count(p) != 0; }

  using Subgroup = std::vector<int>;  // sorted element indices

  Subgroup closure(std::vector<int> seed) const {
    std::vector<bool> in(size(), false);
    std::vector<int> list;
    auto push = [&](int x) {
      if (!in[x]) {
        in[x] = true;
        list.push_back(x);
      }
    };
    push(identity_);
    for (int s : seed) push(s);
    for (size_t i = 0; i < list.size(); ++i)
      for (int s : seed) {
        push(mul_[list[i]][s]);
        push(mul_[s][list[i]]);
      }
    // list is closed under multiplication by seed on both sides and contains
    // inverses because the group is finite
    std::sort(list.begin(), list.end());
    return list;
  }

  // every subgroup, found as joins of cyclic subgroups
  std::vector<Subgroup> all_subgroups() const {
    std::set<Subgroup> found;
    std::vector<Subgroup> work;
    std::vector<int> cyc_reps;
    {
      std::set<Subgroup> cycs;
      for (int x = 0; x < size(); ++x) {
        auto c = closure({x});
        if (cycs.insert(c).second) cyc_reps.push_back(x);
      }
      found.insert(closure({}));
      for (const auto& c : cycs) found.insert(c);
      work.assign(found.begin(), found.end());
    }
    for (size_t i = 0; i < work.size(); ++i) {
      Subgroup h = work[i];
      std::vector<bool> in(size(), false);
      for (int x : h) in[x] = true;
      for (int c : cyc_reps) {
        if (in[c]) continue;
        Subgroup seed = h;
        seed.push_back(c);
        Subgroup j = closure(seed);
        if (found.insert(j).second) work.push_back(j);
      }
    }
    std::vector<Subgroup> out(found.begin(), found.end());
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    return out;
  }

  // maximal proper subgroups of the subgroup g (indices into g not required;
  // subgroup lists are global element-index lists)
  std::vector<Subgroup> maximal_subgroups(const Subgroup& g,
                                          const std::vector<Subgroup>& all) const {
    std::vector<Subgroup> inside;
    for (const auto& h : all)
      if (h.size() < g.size() && std::includes(g.begin(), g.end(), h.begin(), h.end()))
        inside.push_back(h);
    std::vector<Subgroup> maximal;
    for (const auto& h : inside) {
      bool is_max = true;
      for (const auto& k : inside)
        if (k.size() > h.size() && std::includes(k.begin(), k.end(), h.begin(), h.end())) {
          is_max = false;
          break;
        }
      maximal.push_back(h);
      if (!is_max) maximal.pop_back();
    }
    return maximal;
  }

  Subgroup conjugate_subgroup(const Subgroup& h, int g) const {
    Subgroup r;
    r.reserve(h.size());
    for (int x : h) r.push_back(mul_[mul_[g][x]][inv_[g]]);
    std::sort(r.begin(), r.end());
    return r;
  }

  // left-coset representatives of h in g (indices), identity first; left
  // cosets are what the resolvent correspondence g*F = rep*F needs
  std::vector<int> coset_reps(const Subgroup& g, const Subgroup& h) const {
    std::vector<bool> used(size(), false);
    std::vector<bool> in_g(size(), false);
    for (int x : g) in_g[x] = true;
    std::vector<int> reps;
    for (int x : g) {
      if (used[x]) continue;
      reps.push_back(x);
      for (int y : h) {
        int z = mul_[x][y];
        check(in_g[z], errc::internal, "coset escapes the group");
        used[z] = true;
      }
    }
    return reps;
  }

  PermGroup to_perm_group(const Subgroup& h) const {
    std::vector<Perm> gens;
    for (int x : h) gens.push_back(elems_[x]);
    return PermGroup(degree_, gens);
  }

 private:
  struct PermHash {
    size_t operator()(const Perm& p) const {
      size_t h = 1469598103934665603ULL;
      for (int v : p) {
        h ^= static_cast<size_t>(v);
        h *= 1099511628211ULL;
      }
      return h;
    }
  };

  int degree_ = 0;
  std::vector<Perm> elems_;
  std::unordered_map<Perm, int, PermHash> index_;
  std::vector<std::vector<int>> mul_;
  std::vector<int> inv_;
  int identity_ = 0;
};

}  // namespace mtroot

#endif
